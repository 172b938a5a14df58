#pragma once

#include <string>

#include "htparse/config.hpp"
#include "htparse/lstm.hpp"
#include "htparse/mlp.hpp"
#include "htparse/param_store.hpp"
#include "htparse/vocab.hpp"

namespace htparse {

// The trained artifact: configuration, lexicons and every network parameter.
class Model {
 public:
  static Model create(const ModelConfig& config, Vocab vocab, std::uint64_t seed);

  // Binary container: 8-byte magic, u32 version, key/value metadata
  // (dimensions, vocabulary, hyper-parameters), then named tensors as
  // little-endian 64-bit floats.  Round-trips bit-exactly.
  void save(const std::string& path) const;
  static Model load(const std::string& path);

  ModelConfig config;
  Vocab vocab;
  ParamStore store;

  ParamId word_emb, pos_emb, rel_emb;
  ParamId proj_w, proj_b;        // W^v, b^v
  LstmSpec bilstm_fwd, bilstm_bwd;
  LstmSpec tree_left, tree_right;
  ParamId reduce_w, reduce_b;    // W^e, b^e
  ParamId pad_item;              // learned padding vector for window slots
  MlpSpec mlp_u, mlp_l;

 private:
  explicit Model(const ModelConfig& cfg, Vocab v, std::uint64_t seed)
      : config(cfg), vocab(std::move(v)), store(seed) {}
  void register_params();
};

}  // namespace htparse
