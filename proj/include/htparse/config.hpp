#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "htparse/common.hpp"

namespace htparse {

// Network hyper-parameters.  Defaults are the experiment values; the word
// projection dim doubles as the tree-LSTM input width, so heads and reduced
// modifier encodings share one vector space.
struct ModelConfig {
  std::size_t word_dim = 100;
  std::size_t pos_dim = 25;
  std::size_t rel_dim = 25;
  std::size_t proj_dim = 200;      // d_v without the BiLSTM
  std::size_t tree_hidden = 200;   // d_out
  std::size_t tree_layers = 2;
  std::size_t bilstm_hidden = 100; // per direction
  std::size_t bilstm_layers = 2;
  std::size_t mlp_hidden = 100;    // both scorers
  std::size_t window = 2;          // k
  bool use_pos = true;
  bool use_bilstm = true;
  bool use_tree = true;            // off = head-word-only baseline

  // d_v: per-word vector dim, also the tree-LSTM input and the reduced
  // encoding dim d_enc.
  std::size_t word_vec_dim() const {
    return use_bilstm ? 2 * bilstm_hidden : proj_dim;
  }
  // Dim of a pending item's feature vector c.
  std::size_t item_dim() const {
    return use_tree ? 2 * tree_hidden : word_vec_dim();
  }
  std::size_t window_dim() const { return (2 * window + 2) * item_dim(); }

  void validate() const;

  std::map<std::string, std::string> to_kv() const;
  static ModelConfig from_kv(const std::map<std::string, std::string>& kv);
};

// Training-procedure knobs.
struct TrainConfig {
  std::size_t epochs = 20;
  std::uint64_t seed = 1;
  double p_aug = 0.1;
  double margin = 1.0;
  double dropout_alpha = 0.25;
  std::size_t batch_errors = 50;
  bool explore = true;          // follow model errors (error exploration)
  bool dynamic_oracle = true;   // off forces static gold-following
  bool flip_margin_branch = false;  // appendix-pseudocode reading of p_aug
};

}  // namespace htparse
