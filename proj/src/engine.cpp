#include "htparse/engine.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>

namespace htparse {

ParseState::ParseState(Graph& g, const Model& m, const std::vector<int>& word_ids,
                       const std::vector<int>& pos_ids)
    : graph_(&g), model_(&m) {
  if (word_ids.empty()) throw ParseError("cannot parse an empty sentence");
  if (word_ids.size() != pos_ids.size())
    throw DimError("word/pos id length mismatch");
  std::vector<NodeId> projected;
  projected.reserve(word_ids.size());
  for (std::size_t i = 0; i < word_ids.size(); ++i)
    projected.push_back(embed_token(g, m, word_ids[i], pos_ids[i]));
  std::vector<NodeId> vecs = contextualize(g, m, projected);
  for (std::size_t i = 0; i < vecs.size(); ++i)
    pend_.push_back(leaf_state(g, m, static_cast<int>(i) + 1, vecs[i]));
}

NodeId ParseState::window_slot(long idx) {
  if (idx < 0 || idx >= static_cast<long>(pend_.size()))
    return graph_->slice(graph_->param(model_->pad_item), 0, model_->config.item_dim());
  return node_feature(*graph_, *model_, pend_[static_cast<std::size_t>(idx)]);
}

ParseState::PairExprs ParseState::score_pair(std::size_t p) {
  if (p + 1 >= pend_.size())
    throw DimError("pair index " + std::to_string(p) + " out of bounds");
  const long i = static_cast<long>(p);
  std::vector<NodeId> slots;
  slots.reserve(6);
  for (long k = i - 2; k <= i + 3; ++k) slots.push_back(window_slot(k));
  NodeId x = graph_->concat(slots);
  PairExprs e;
  e.u = mlp_apply(*graph_, model_->mlp_u, x);
  e.l = mlp_apply(*graph_, model_->mlp_l, x);
  return e;
}

ScoreTable ParseState::table(const PairExprs& e) const {
  const std::size_t L = model_->vocab.num_labels();
  ScoreTable t;
  t.num_labels = L;
  t.s.resize(2 * L);
  const Tensor& u = graph_->value(e.u);
  const Tensor& l = graph_->value(e.l);
  for (std::size_t d = 0; d < 2; ++d)
    for (std::size_t r = 0; r < L; ++r) t.s[d * L + r] = u[d] + l[d * L + r];
  return t;
}

NodeId ParseState::action_expr(const PairExprs& e, Direction d, int rel) {
  const std::size_t L = model_->vocab.num_labels();
  const std::size_t di = static_cast<std::size_t>(d);
  return graph_->add(graph_->pick(e.u, di),
                     graph_->pick(e.l, di * L + static_cast<std::size_t>(rel)));
}

Arc ParseState::apply(std::size_t p, Direction d, int label_id) {
  if (p + 1 >= pend_.size()) throw DimError("apply: pair out of bounds");
  const std::size_t mi = (d == Direction::Left) ? p : p + 1;
  const std::size_t hi = (d == Direction::Left) ? p + 1 : p;
  NodeState& m = pend_[mi];
  NodeState& h = pend_[hi];
  Arc arc{h.head_index, m.head_index, model_->vocab.label_form(label_id)};
  if (model_->config.use_tree) {
    NodeId enc = finalize_modifier(*graph_, *model_, m, label_id);
    pend_[hi] = attach(*graph_, h, enc, d);
  }
  pend_.erase(pend_.begin() + static_cast<long>(mi));
  arcs_.push_back(arc);
  return arc;
}

Arc ParseState::finish_root() {
  if (pend_.size() != 1) throw ParseError("finish_root with |pend| != 1");
  Arc arc{0, pend_[0].head_index,
          model_->vocab.label_form(model_->vocab.root_label())};
  arcs_.push_back(arc);
  return arc;
}

namespace {

// Heap entry; stale entries are skipped on pop via the version check.
struct HeapEntry {
  double score;
  int left_word;  // word index of the pair's left item: stable identity
  std::uint8_t dir;
  int rel;
  std::uint32_t version;
};

// Ordering matches a full rescan with ties broken by
// (lower pair index, Left before Right, lower label id).  The left word
// index increases with pair position, so it stands in for the index.
struct WorseThan {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.score != b.score) return a.score < b.score;
    if (a.left_word != b.left_word) return a.left_word > b.left_word;
    if (a.dir != b.dir) return a.dir > b.dir;
    return a.rel > b.rel;
  }
};

struct ModelHook final : ScoreHook {
  ScoreTable score(ParseState& state, std::size_t pair) override {
    Graph& g = state.graph();
    const std::size_t m = g.mark();
    ScoreTable t = state.table(state.score_pair(pair));
    g.rewind(m);  // scoring nodes are transient at inference time
    return t;
  }
};

// Best action of one pair under the tie-break order.
HeapEntry best_of(const ScoreTable& t, int left_word, std::uint32_t version) {
  HeapEntry e{t.s[0], left_word, 0, 0, version};
  const std::size_t L = t.num_labels;
  for (std::size_t d = 0; d < 2; ++d)
    for (std::size_t r = 0; r < L; ++r)
      if (t.s[d * L + r] > e.score) {
        e.score = t.s[d * L + r];
        e.dir = static_cast<std::uint8_t>(d);
        e.rel = static_cast<int>(r);
      }
  return e;
}

}  // namespace

std::vector<Arc> parse_sentence(Model& model, const std::vector<int>& word_ids,
                                const std::vector<int>& pos_ids, ScoreHook* hook) {
  ModelHook default_hook;
  if (!hook) hook = &default_hook;

  Graph g(model.store, /*grads_enabled=*/false);
  ParseState state(g, model, word_ids, pos_ids);

  std::priority_queue<HeapEntry, std::vector<HeapEntry>, WorseThan> heap;
  std::unordered_map<int, std::uint32_t> version;

  auto rescore = [&](std::size_t p) {
    const int left = state.word_at(p);
    std::uint32_t& v = version[left];
    ++v;
    heap.push(best_of(hook->score(state, p), left, v));
  };

  for (std::size_t p = 0; p + 1 < state.size(); ++p) rescore(p);

  while (state.size() > 1) {
    long pos = -1;
    HeapEntry e{};
    while (!heap.empty()) {
      e = heap.top();
      heap.pop();
      auto it = version.find(e.left_word);
      if (it == version.end() || it->second != e.version) continue;
      // locate the pair whose left item is e.left_word
      pos = -1;
      for (std::size_t i = 0; i + 1 < state.size(); ++i)
        if (state.word_at(i) == e.left_word) {
          pos = static_cast<long>(i);
          break;
        }
      if (pos >= 0) break;
    }
    if (pos < 0) throw ParseError("selection structure exhausted");

    const int removed_word =
        state.word_at(e.dir == 0 ? static_cast<std::size_t>(pos)
                                 : static_cast<std::size_t>(pos) + 1);
    Arc arc = state.apply(static_cast<std::size_t>(pos),
                          static_cast<Direction>(e.dir), e.rel);
    hook->applied(state, arc);
    version.erase(removed_word);

    if (state.size() > 1) {
      // the head landed at index pos; only window-reachable pairs changed
      const long lo = std::max<long>(0, pos - 4);
      const long hi = std::min<long>(static_cast<long>(state.pairs()) - 1, pos + 4);
      for (long q = lo; q <= hi; ++q) rescore(static_cast<std::size_t>(q));
    }
  }
  state.finish_root();
  return state.arcs();
}

Sentence parse_to_sentence(Model& model, const Sentence& input) {
  Sentence out;
  out.tokens = input.tokens;
  std::vector<int> words, pos;
  for (const Token& t : input.tokens) {
    words.push_back(model.vocab.word_id(t.form));
    int p = model.vocab.pos_id(t.pos);
    if (p < 0) p = static_cast<int>(model.vocab.num_pos());  // unseen-POS row
    pos.push_back(p);
  }
  std::vector<Arc> arcs = parse_sentence(model, words, pos);
  std::sort(arcs.begin(), arcs.end(),
            [](const Arc& a, const Arc& b) { return a.modifier < b.modifier; });
  out.gold_arcs = std::move(arcs);
  return out;
}

}  // namespace htparse
