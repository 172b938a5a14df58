#pragma once

// Shared test utilities: tiny model configs, synthetic sentences, projective
// tree enumeration, a brute-force completion-cost oracle, and a central
// finite-difference gradient checker.

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "htparse/engine.hpp"
#include "htparse/model.hpp"
#include "htparse/oracle.hpp"

namespace htparse::testutil {

inline ModelConfig tiny_config() {
  ModelConfig c;
  c.word_dim = 8;
  c.pos_dim = 4;
  c.rel_dim = 4;
  c.proj_dim = 12;
  c.tree_hidden = 6;
  c.tree_layers = 2;
  c.bilstm_hidden = 6;
  c.bilstm_layers = 1;
  c.mlp_hidden = 10;
  c.window = 2;
  c.proj_dim = 2 * c.bilstm_hidden;  // keep the shared-width invariant
  return c;
}

// Sentence over a closed toy lexicon: form "w<i>", pos cycling over 3 tags,
// labels from heads via label_of.
inline Sentence make_sentence(const std::vector<int>& heads,
                              const std::function<std::string(int, int)>& label_of) {
  Sentence s;
  const int n = static_cast<int>(heads.size());
  for (int i = 1; i <= n; ++i) {
    Token t;
    t.index = i;
    t.form = "w" + std::to_string(i % 7);
    t.pos = "P" + std::to_string(i % 3);
    s.tokens.push_back(t);
  }
  std::vector<Arc> arcs;
  for (int m = 1; m <= n; ++m)
    arcs.push_back(Arc{heads[static_cast<std::size_t>(m - 1)], m,
                       label_of(heads[static_cast<std::size_t>(m - 1)], m)});
  s.gold_arcs = std::move(arcs);
  return s;
}

// Two non-root labels assigned deterministically, "root" for head 0.
inline Sentence make_sentence(const std::vector<int>& heads) {
  return make_sentence(heads, [](int h, int m) -> std::string {
    if (h == 0) return "root";
    return (h + m) % 2 ? "la" : "lb";
  });
}

// All single-root projective head vectors for n words (heads are 1-based,
// index i holds the head of word i+1).
inline std::vector<std::vector<int>> projective_trees(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> heads(static_cast<std::size_t>(n), 0);
  std::function<void(int)> rec = [&](int w) {
    if (w > n) {
      Sentence s = make_sentence(heads);
      try {
        check_tree(s);
      } catch (const ParseError&) {
        return;
      }
      if (is_projective(s)) out.push_back(heads);
      return;
    }
    for (int h = 0; h <= n; ++h) {
      if (h == w) continue;
      heads[static_cast<std::size_t>(w - 1)] = h;
      rec(w + 1);
    }
  };
  rec(1);
  return out;
}

// Minimum number of future arc errors from a pending subset (bitmask over
// words 1..n; bit w-1 set = still pending).  An action attaching adjacent
// (m -> h) errs by 1 for a wrong head, else by a label error if any; labels
// are chosen optimally, so only head errors count here.  The final root
// attachment errs unless the survivor is the gold root (the synthetic gold
// root label always matches the parser's designated root relation).
class BruteCost {
 public:
  explicit BruteCost(const std::vector<int>& heads)
      : heads_(heads), n_(static_cast<int>(heads.size())) {}

  int cost(std::uint32_t mask) {
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
    std::vector<int> words;
    for (int w = 1; w <= n_; ++w)
      if (mask & (1u << (w - 1))) words.push_back(w);
    int best;
    if (words.size() == 1) {
      best = gold_head(words[0]) == 0 ? 0 : 1;
    } else {
      best = 1 << 20;
      for (std::size_t p = 0; p + 1 < words.size(); ++p) {
        for (int d = 0; d < 2; ++d) {
          const int m = d == 0 ? words[p] : words[p + 1];
          const int h = d == 0 ? words[p + 1] : words[p];
          const int err = gold_head(m) == h ? 0 : 1;
          const int rest = cost(mask & ~(1u << (m - 1)));
          best = std::min(best, err + rest);
        }
      }
    }
    memo_.emplace(mask, best);
    return best;
  }

  int gold_head(int w) const { return heads_[static_cast<std::size_t>(w - 1)]; }

 private:
  std::vector<int> heads_;
  int n_;
  std::map<std::uint32_t, int> memo_;
};

// Gold-knowing scorer: +10 for the gold arc when the modifier's gold
// subtree is complete, -10 otherwise; label picked to match gold.
class GoldHook final : public ScoreHook {
 public:
  GoldHook(const Sentence& gold, const Vocab& vocab)
      : oracle_(gold, vocab), vocab_(&vocab) {}

  ScoreTable score(ParseState& state, std::size_t pair) override {
    const std::size_t L = vocab_->num_labels();
    ScoreTable t;
    t.num_labels = L;
    t.s.assign(2 * L, -10.0);
    for (int d = 0; d < 2; ++d) {
      const int m = state.word_at(d == 0 ? pair : pair + 1);
      const int h = state.word_at(d == 0 ? pair + 1 : pair);
      if (oracle_.unassigned(m) == 0 && oracle_.gold_head(m) == h)
        t.s[static_cast<std::size_t>(d) * L +
            static_cast<std::size_t>(oracle_.gold_label(m))] = 10.0;
    }
    return t;
  }

  void applied(const ParseState&, const Arc& arc) override {
    oracle_.on_attach(arc.modifier);
  }

 private:
  OracleState oracle_;
  const Vocab* vocab_;
};

// Deterministic pseudo-random scorer keyed on the words at the pair, used
// to compare selection strategies on identical score streams.
class HashHook : public ScoreHook {
 public:
  HashHook(std::size_t num_labels, std::uint64_t seed, double tie_prob = 0.0)
      : L_(num_labels), seed_(seed), tie_prob_(tie_prob) {}

  // window_sensitive folds the six window word ids (pad = -1) into the
  // hash, mimicking the model's feature locality.
  bool window_sensitive = false;

  ScoreTable score(ParseState& state, std::size_t pair) override {
    const int a = state.word_at(pair);
    const int b = state.word_at(pair + 1);
    std::uint64_t wkey = 0;
    if (window_sensitive) {
      const long i = static_cast<long>(pair);
      for (long k = i - 2; k <= i + 3; ++k) {
        const long w =
            (k < 0 || k >= static_cast<long>(state.size()))
                ? -1
                : state.word_at(static_cast<std::size_t>(k));
        wkey = wkey * 0x100000001b3ULL + static_cast<std::uint64_t>(w + 2);
      }
    }
    ScoreTable t;
    t.num_labels = L_;
    t.s.resize(2 * L_);
    for (std::size_t i = 0; i < 2 * L_; ++i) {
      std::uint64_t h = seed_ ^ wkey;
      h ^= static_cast<std::uint64_t>(a) * 0x9e3779b97f4a7c15ULL;
      h ^= static_cast<std::uint64_t>(b) * 0xc2b2ae3d27d4eb4fULL;
      h ^= (i + 1) * 0x165667b19e3779f9ULL;
      h *= 0x2545f4914f6cdd1dULL;
      h ^= h >> 29;
      if (tie_prob_ > 0.0 &&
          static_cast<double>(h % 1000) < tie_prob_ * 1000.0)
        t.s[i] = 1.0;  // force frequent exact ties
      else
        t.s[i] = static_cast<double>(h % 100000) / 1000.0;
    }
    return t;
  }

 private:
  std::size_t L_;
  std::uint64_t seed_;
  double tie_prob_;
};

// Central finite differences over sampled parameter coordinates.  The
// caller supplies a forward() that rebuilds the loss from the store's
// current values; grads must already hold d(loss)/d(param).  Returns the
// worst symmetric relative error.
inline double fd_worst_error(ParamStore& store,
                             const std::function<double()>& forward,
                             std::size_t max_coords_per_param,
                             std::mt19937_64& rng, double h = 1e-5) {
  double worst = 0.0;
  for (std::size_t pid = 0; pid < store.size(); ++pid) {
    Parameter& p = store.param(static_cast<ParamId>(pid));
    if (!p.trainable) continue;
    const std::size_t n = p.value.numel();
    std::vector<std::size_t> coords;
    if (n <= max_coords_per_param) {
      for (std::size_t i = 0; i < n; ++i) coords.push_back(i);
    } else {
      std::uniform_int_distribution<std::size_t> pickc(0, n - 1);
      for (std::size_t i = 0; i < max_coords_per_param; ++i)
        coords.push_back(pickc(rng));
    }
    for (std::size_t i : coords) {
      const double orig = p.value.data[i];
      p.value.data[i] = orig + h;
      const double up = forward();
      p.value.data[i] = orig - h;
      const double dn = forward();
      p.value.data[i] = orig;
      const double fd = (up - dn) / (2.0 * h);
      const double g = p.grad.data[i];
      const double err = std::abs(g - fd) / (std::abs(g) + std::abs(fd) + 1e-6);
      worst = std::max(worst, err);
    }
  }
  return worst;
}

}  // namespace htparse::testutil
