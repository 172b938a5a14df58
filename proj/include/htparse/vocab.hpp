#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "htparse/conll.hpp"

namespace htparse {

// Word / POS / relation lexicons with raw training counts.  Ids are dense
// from 0; slots 0 and 1 of the word table are the unknown-word and padding
// symbols.  Word forms are lowercased for lookup.
class Vocab {
 public:
  static constexpr int kUnkWord = 0;
  static constexpr int kPadWord = 1;

  static Vocab build(const std::vector<Sentence>& training);

  int word_id(const std::string& form) const;          // kUnkWord when OOV
  int pos_id(const std::string& pos) const;            // -1 when unseen
  int label_id(const std::string& label) const;        // -1 when unseen
  std::uint64_t word_count(int word_id) const;         // #(w); 0 for unk/pad

  std::size_t num_words() const { return words_.size(); }
  std::size_t num_pos() const { return pos_.size(); }
  std::size_t num_labels() const { return labels_.size(); }
  int root_label() const { return root_label_; }

  const std::string& word_form(int id) const { return words_[id]; }
  const std::string& pos_form(int id) const { return pos_[id]; }
  const std::string& label_form(int id) const { return labels_[id]; }

  // Flat serialization used by the model container.
  std::string encode() const;
  static Vocab decode(const std::string& blob);

  bool operator==(const Vocab& o) const;

 private:
  Vocab() = default;
  void reindex();

  std::vector<std::string> words_;   // [0]=unk, [1]=pad
  std::vector<std::uint64_t> counts_;
  std::vector<std::string> pos_;
  std::vector<std::string> labels_;
  int root_label_ = 0;
  std::unordered_map<std::string, int> word_index_, pos_index_, label_index_;
};

std::string lowercase(const std::string& s);

// p_unk(w) = alpha / (#(w) + alpha); disabled outside training.
struct DropoutPolicy {
  double alpha = 0.25;
  bool enabled = false;

  double replace_prob(std::uint64_t count) const {
    return alpha / (static_cast<double>(count) + alpha);
  }
  int apply(int word_id, const Vocab& vocab, std::mt19937_64& rng) const;
};

// One row per word: form then dim floats.  Returns (word_id, vector) pairs
// for vocabulary words present in the file.
std::vector<std::pair<int, std::vector<double>>> load_pretrained_embeddings(
    const std::string& path, const Vocab& vocab, std::size_t expected_dim);

}  // namespace htparse
