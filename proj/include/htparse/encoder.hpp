#pragma once

#include <vector>

#include "htparse/graph.hpp"
#include "htparse/model.hpp"

namespace htparse {

// v'_i: projected word(+POS) embedding for one token.
NodeId embed_token(Graph& g, const Model& m, int word_id, int pos_id);

// v_i for the whole sentence: BiLSTM end-state concatenations over the v'
// vectors, or the v' vectors themselves when the BiLSTM is off.
std::vector<NodeId> contextualize(Graph& g, const Model& m,
                                  const std::vector<NodeId>& projected);

// A pending subtree: head word index, the two modifier-sequence LSTM states
// (both seeded with the head's v_i), and the reduced encoding once attached.
struct NodeState {
  int head_index = 0;  // 1-based sentence position
  LstmState left;      // RNN_L over head-outward left modifiers
  LstmState right;     // RNN_R over head-outward right modifiers
  NodeId head_vec = 0; // v_{i(t)}; the item vector in baseline mode
};

NodeState leaf_state(Graph& g, const Model& m, int head_index, NodeId v);

// c(t) = e_l(t) o e_r(t); recomputed from the current LSTM states.
NodeId node_feature(Graph& g, const Model& m, const NodeState& t);

// enc(t) = g(W^e (e_l o e_r o rel) + b^e)
NodeId finalize_modifier(Graph& g, const Model& m, const NodeState& t, int label_id);

enum class Direction : std::uint8_t { Left = 0, Right = 1 };

// Advance the head's proper-side LSTM with the modifier encoding.  The other
// side is untouched; the input state is not mutated.
NodeState attach(Graph& g, const NodeState& head, NodeId modifier_enc, Direction d);

// Standalone bottom-up encoding of a fully specified gold tree (modifiers
// folded head-outward).  Returns the root's enc; exists to test equivalence
// with the incremental maintenance in the parser.
NodeId encode_tree(Graph& g, const Model& m, const std::vector<NodeId>& word_vecs,
                   const std::vector<int>& heads, const std::vector<int>& label_ids);

}  // namespace htparse
