#include "htparse/encoder.hpp"

#include <algorithm>

namespace htparse {

NodeId embed_token(Graph& g, const Model& m, int word_id, int pos_id) {
  const ModelConfig& c = m.config;
  if (word_id < 0 || static_cast<std::size_t>(word_id) >= m.vocab.num_words())
    throw DimError("word id " + std::to_string(word_id) + " out of range");
  NodeId w = g.slice(g.param(m.word_emb),
                     static_cast<std::size_t>(word_id) * c.word_dim, c.word_dim);
  NodeId lex = w;
  if (c.use_pos) {
    if (pos_id < 0 || static_cast<std::size_t>(pos_id) > m.vocab.num_pos())
      throw DimError("pos id " + std::to_string(pos_id) + " out of range");
    NodeId p = g.slice(g.param(m.pos_emb),
                       static_cast<std::size_t>(pos_id) * c.pos_dim, c.pos_dim);
    const NodeId parts[2] = {w, p};
    lex = g.concat(parts);
  }
  return g.tanh(g.affine(g.param(m.proj_w), lex, g.param(m.proj_b)));
}

std::vector<NodeId> contextualize(Graph& g, const Model& m,
                                  const std::vector<NodeId>& projected) {
  if (!m.config.use_bilstm) return projected;
  const std::size_t n = projected.size();
  std::vector<NodeId> fwd(n), bwd(n);
  LstmState s = lstm_initial(g, m.bilstm_fwd);
  for (std::size_t i = 0; i < n; ++i) {
    s = lstm_advance(g, s, projected[i]);
    fwd[i] = s.output();
  }
  s = lstm_initial(g, m.bilstm_bwd);
  for (std::size_t i = n; i-- > 0;) {
    s = lstm_advance(g, s, projected[i]);
    bwd[i] = s.output();
  }
  std::vector<NodeId> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId parts[2] = {fwd[i], bwd[i]};
    out[i] = g.concat(parts);
  }
  return out;
}

NodeState leaf_state(Graph& g, const Model& m, int head_index, NodeId v) {
  NodeState t;
  t.head_index = head_index;
  t.head_vec = v;
  if (m.config.use_tree) {
    t.left = lstm_advance(g, lstm_initial(g, m.tree_left), v);
    t.right = lstm_advance(g, lstm_initial(g, m.tree_right), v);
  }
  return t;
}

NodeId node_feature(Graph& g, const Model& m, const NodeState& t) {
  if (!m.config.use_tree) return t.head_vec;
  const NodeId parts[2] = {t.left.output(), t.right.output()};
  return g.concat(parts);
}

NodeId finalize_modifier(Graph& g, const Model& m, const NodeState& t, int label_id) {
  if (label_id < 0 || static_cast<std::size_t>(label_id) >= m.vocab.num_labels())
    throw DimError("label id " + std::to_string(label_id) + " out of range");
  NodeId rel = g.slice(g.param(m.rel_emb),
                       static_cast<std::size_t>(label_id) * m.config.rel_dim,
                       m.config.rel_dim);
  const NodeId parts[3] = {t.left.output(), t.right.output(), rel};
  return g.tanh(g.affine(g.param(m.reduce_w), g.concat(parts), g.param(m.reduce_b)));
}

NodeState attach(Graph& g, const NodeState& head, NodeId modifier_enc, Direction d) {
  NodeState out = head;
  if (d == Direction::Left)
    out.left = lstm_advance(g, head.left, modifier_enc);
  else
    out.right = lstm_advance(g, head.right, modifier_enc);
  return out;
}

namespace {
NodeId encode_subtree(Graph& g, const Model& m, const std::vector<NodeId>& word_vecs,
                      const std::vector<std::vector<int>>& children,
                      const std::vector<int>& label_ids, int head) {
  NodeState t = leaf_state(g, m, head, word_vecs[static_cast<std::size_t>(head - 1)]);
  // left modifiers head-outward (closest first), then right likewise
  std::vector<int> left, right;
  for (int c : children[static_cast<std::size_t>(head)])
    (c < head ? left : right).push_back(c);
  std::sort(left.begin(), left.end(), std::greater<int>());
  std::sort(right.begin(), right.end());
  for (int c : left) {
    NodeId enc = encode_subtree(g, m, word_vecs, children, label_ids, c);
    t = attach(g, t, enc, Direction::Left);
  }
  for (int c : right) {
    NodeId enc = encode_subtree(g, m, word_vecs, children, label_ids, c);
    t = attach(g, t, enc, Direction::Right);
  }
  return finalize_modifier(g, m, t, label_ids[static_cast<std::size_t>(head)]);
}
}  // namespace

NodeId encode_tree(Graph& g, const Model& m, const std::vector<NodeId>& word_vecs,
                   const std::vector<int>& heads, const std::vector<int>& label_ids) {
  const int n = static_cast<int>(word_vecs.size());
  std::vector<std::vector<int>> children(static_cast<std::size_t>(n) + 1);
  int root = 0;
  for (int w = 1; w <= n; ++w) {
    const int h = heads[static_cast<std::size_t>(w)];
    if (h == 0)
      root = w;
    else
      children[static_cast<std::size_t>(h)].push_back(w);
  }
  if (root == 0) throw ParseError("tree has no root");
  // cycle guard
  for (int w = 1; w <= n; ++w) {
    int cur = w, steps = 0;
    while (cur != 0) {
      cur = heads[static_cast<std::size_t>(cur)];
      if (++steps > n) throw ParseError("cyclic input tree");
    }
  }
  return encode_subtree(g, m, word_vecs, children, label_ids, root);
}

}  // namespace htparse
