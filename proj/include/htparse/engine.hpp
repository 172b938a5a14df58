#pragma once

#include <functional>
#include <vector>

#include "htparse/encoder.hpp"

namespace htparse {

// Combined action scores for one adjacent pair: entry [d*L + rel] is
// Score_U[d] + Score_L[d*L + rel].
struct ScoreTable {
  std::size_t num_labels = 0;
  std::vector<double> s;  // size 2*L

  double at(Direction d, int rel) const {
    return s[static_cast<std::size_t>(d) * num_labels + static_cast<std::size_t>(rel)];
  }
};

struct ActionRef {
  std::size_t pair = 0;
  Direction dir = Direction::Left;
  int rel = 0;
  double score = 0.0;
};

// The pending list plus incremental tree-encoding maintenance.  One instance
// per sentence; all graph state lives in the supplied Graph.
class ParseState {
 public:
  ParseState(Graph& g, const Model& m, const std::vector<int>& word_ids,
             const std::vector<int>& pos_ids);

  std::size_t size() const { return pend_.size(); }
  std::size_t pairs() const { return pend_.size() - 1; }
  const NodeState& item(std::size_t i) const { return pend_[i]; }
  int word_at(std::size_t i) const { return pend_[i].head_index; }
  const Model& model() const { return *model_; }
  Graph& graph() { return *graph_; }

  // Graph expressions for the window at pair p: the MLP_U output (2 scores)
  // and the MLP_L output (2L scores).
  struct PairExprs {
    NodeId u = 0;
    NodeId l = 0;
  };
  PairExprs score_pair(std::size_t p);
  ScoreTable table(const PairExprs& e) const;

  // Combined score expression of one action from the pair's outputs.
  NodeId action_expr(const PairExprs& e, Direction d, int rel);

  // Finalize the modifier with the given label, advance the head's LSTM,
  // drop the modifier; returns the emitted arc.
  Arc apply(std::size_t p, Direction d, int label_id);
  // Attach the last survivor to ROOT with the designated root relation.
  Arc finish_root();

  const std::vector<Arc>& arcs() const { return arcs_; }

 private:
  NodeId window_slot(long idx);

  Graph* graph_;
  const Model* model_;
  std::vector<NodeState> pend_;
  std::vector<Arc> arcs_;
};

// Pluggable scoring for parse(): tests drive the parser with a gold-knowing
// scorer through the same selection machinery.
class ScoreHook {
 public:
  virtual ~ScoreHook() = default;
  virtual ScoreTable score(ParseState& state, std::size_t pair) = 0;
  virtual void applied(const ParseState& state, const Arc& arc) {}
};

// Greedy easy-first parse: repeatedly apply the globally best-scoring
// (pair, direction, relation) until one tree remains, then the root arc.
// Selection uses a lazy-invalidation priority queue; only pairs within
// window reach of an attachment are rescored.
std::vector<Arc> parse_sentence(Model& model, const std::vector<int>& word_ids,
                                const std::vector<int>& pos_ids,
                                ScoreHook* hook = nullptr);

// Convenience: tokens -> ids -> parse; fills in predicted arcs.
Sentence parse_to_sentence(Model& model, const Sentence& input);

}  // namespace htparse
