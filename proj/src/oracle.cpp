#include "htparse/oracle.hpp"

namespace htparse {

OracleState::OracleState(const Sentence& gold, const Vocab& vocab) {
  if (!gold.gold_arcs) throw ParseError("oracle requires gold arcs");
  const std::size_t n = gold.size();
  gold_head_.assign(n + 1, -1);
  gold_label_.assign(n + 1, -1);
  unassigned_.assign(n + 1, 0);
  pending_.assign(n + 1, 1);
  pending_[0] = 0;
  for (const Arc& a : *gold.gold_arcs) {
    gold_head_[static_cast<std::size_t>(a.modifier)] = a.head;
    const int lid = vocab.label_id(a.label);
    if (lid < 0) throw ParseError("gold label unseen in vocabulary: " + a.label);
    gold_label_[static_cast<std::size_t>(a.modifier)] = lid;
    ++unassigned_[static_cast<std::size_t>(a.head)];
  }
}

bool OracleState::is_gold_arc(int h_word, int m_word, int rel) const {
  return gold_head_[static_cast<std::size_t>(m_word)] == h_word &&
         gold_label_[static_cast<std::size_t>(m_word)] == rel;
}

bool OracleState::zero_cost(int h_word, int m_word, int rel) const {
  if (unassigned_[static_cast<std::size_t>(m_word)] != 0) return false;  // premature
  const int g = gold_head_[static_cast<std::size_t>(m_word)];
  if (g == h_word) return rel == gold_label_[static_cast<std::size_t>(m_word)];
  // wrong head: free only if the gold head is gone for good (ROOT never is)
  return g != 0 && !pending_[static_cast<std::size_t>(g)];
}

void OracleState::on_attach(int m_word) {
  pending_[static_cast<std::size_t>(m_word)] = 0;
  const int g = gold_head_[static_cast<std::size_t>(m_word)];
  if (g >= 0) --unassigned_[static_cast<std::size_t>(g)];
}

}  // namespace htparse
