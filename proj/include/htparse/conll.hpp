#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "htparse/common.hpp"

namespace htparse {

struct Token {
  int index = 0;  // 1-based
  std::string form;
  std::string pos;
};

struct Arc {
  int head = 0;      // 0 = ROOT
  int modifier = 0;  // 1-based
  std::string label;
};

struct Sentence {
  std::vector<Token> tokens;
  std::optional<std::vector<Arc>> gold_arcs;  // absent for raw parsing input

  std::size_t size() const { return tokens.size(); }
};

// Reads CoNLL-X-style rows: ID FORM LEMMA CPOS POS FEATS HEAD DEPREL [...].
// Blank lines separate sentences, '#' lines and multiword/empty-node ids
// (ranges, decimals) are skipped.  HEAD/DEPREL of '_' yields a sentence
// without gold arcs.  pos_column selects CPOS (4) or POS (5).
std::vector<Sentence> read_conll(std::istream& in, int pos_column = 4);
std::vector<Sentence> read_conll_file(const std::string& path, int pos_column = 4);

void write_conll(std::ostream& out, const std::vector<Sentence>& sentences,
                 const std::string& placeholder_label = "_");
void write_conll_file(const std::string& path, const std::vector<Sentence>& sentences,
                      const std::string& placeholder_label = "_");

// Validates single-root tree structure; throws ParseError on violation.
void check_tree(const Sentence& s);

// True iff no arc (h,m) has a word strictly between h and m whose head lies
// outside [min(h,m), max(h,m)].  Requires gold arcs.
bool is_projective(const Sentence& s);

// Head-of lookup: heads[0] unused, heads[m] = head of word m.
std::vector<int> head_array(const Sentence& s);
std::vector<std::string> label_array(const Sentence& s);

}  // namespace htparse
