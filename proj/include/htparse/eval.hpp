#pragma once

#include <set>
#include <string>
#include <vector>

#include "htparse/conll.hpp"

namespace htparse {

// Tokens whose *gold* POS is in this set are excluded from attachment
// scores.  Defaults to the usual punctuation tags.
struct PunctPolicy {
  std::set<std::string> exclude_pos = {"``", "''", ":", ",", "."};
  bool excluded(const std::string& gold_pos) const {
    return exclude_pos.count(gold_pos) != 0;
  }
};

struct SentenceScore {
  std::size_t counted = 0;
  std::size_t correct_heads = 0;
  std::size_t correct_labeled = 0;
};

struct EvalReport {
  double uas = 0.0;
  double las = 0.0;
  std::size_t counted = 0;    // scored tokens
  std::size_t excluded = 0;   // punctuation-skipped tokens
  std::vector<SentenceScore> sentences;
};

// Compares predicted arcs against gold.  Throws ParseError naming the
// sentence index if the two sides disagree in length or token forms.
EvalReport evaluate(const std::vector<Sentence>& gold,
                    const std::vector<Sentence>& predicted,
                    const PunctPolicy& punct = PunctPolicy{});

}  // namespace htparse
