#pragma once

#include <vector>

#include "htparse/conll.hpp"
#include "htparse/vocab.hpp"

namespace htparse {

// Dynamic oracle for the easy-first system: per-word counters of
// still-unattached gold modifiers plus availability of each word's gold
// head.  An action (h, m, rel) is in the zero-cost set G iff the modifier
// is complete and the action does not lose any still-achievable gold arc:
// either it is the gold arc itself, or m's gold head has already been
// removed from the pending list (the arc is unrecoverable, so attaching m
// anywhere costs nothing further).  Everything else is W: premature
// attachment, a wrong head while the correct head is still pending, or a
// correct head with the wrong label.
class OracleState {
 public:
  OracleState(const Sentence& gold, const Vocab& vocab);

  bool zero_cost(int h_word, int m_word, int rel) const;
  bool is_gold_arc(int h_word, int m_word, int rel) const;

  // Record an attachment of m (to whatever head was chosen): decrements the
  // unassigned counter of m's gold parent and removes m from pending.
  void on_attach(int m_word);

  int unassigned(int w) const { return unassigned_[static_cast<std::size_t>(w)]; }
  bool pending(int w) const { return pending_[static_cast<std::size_t>(w)] != 0; }
  int gold_head(int w) const { return gold_head_[static_cast<std::size_t>(w)]; }
  int gold_label(int w) const { return gold_label_[static_cast<std::size_t>(w)]; }

 private:
  std::vector<int> gold_head_;
  std::vector<int> gold_label_;
  std::vector<int> unassigned_;
  std::vector<char> pending_;
};

}  // namespace htparse
