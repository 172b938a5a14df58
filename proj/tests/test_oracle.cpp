#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace htparse;
using namespace htparse::testutil;

namespace {

// Rebuild an OracleState as if the words missing from `mask` had already
// been attached (order does not matter for the counters).
OracleState state_for(const Sentence& sent, const Vocab& v, std::uint32_t mask) {
  OracleState o(sent, v);
  const int n = static_cast<int>(sent.size());
  for (int w = 1; w <= n; ++w)
    if (!(mask & (1u << (w - 1)))) o.on_attach(w);
  return o;
}

// Verify the zero-cost classification of every action in every pending
// subset of the given tree against the brute-force completion cost.
void verify_tree(const Sentence& sent, const Vocab& v) {
  const int n = static_cast<int>(sent.size());
  std::vector<int> heads;
  for (int w = 1; w <= n; ++w) heads.push_back(head_array(sent)[static_cast<std::size_t>(w)]);
  BruteCost brute(heads);
  std::vector<int> gold_label(static_cast<std::size_t>(n) + 1, -1);
  for (const Arc& a : *sent.gold_arcs)
    gold_label[static_cast<std::size_t>(a.modifier)] = v.label_id(a.label);
  const int L = static_cast<int>(v.num_labels());

  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> words;
    for (int w = 1; w <= n; ++w)
      if (mask & (1u << (w - 1))) words.push_back(w);
    if (words.size() < 2) continue;
    OracleState o = state_for(sent, v, mask);
    const int cost_before = brute.cost(mask);
    bool any_gold = false;
    for (std::size_t p = 0; p + 1 < words.size(); ++p) {
      for (int d = 0; d < 2; ++d) {
        const int m = d == 0 ? words[p] : words[p + 1];
        const int h = d == 0 ? words[p + 1] : words[p];
        const int cost_after = brute.cost(mask & ~(1u << (m - 1)));
        for (int rel = 0; rel < L; ++rel) {
          // true error of this labeled arc
          int err;
          if (brute.gold_head(m) == h)
            err = rel == gold_label[static_cast<std::size_t>(m)] ? 0 : 1;
          else
            err = 1;
          const int f = err + cost_after;
          const bool in_g = o.zero_cost(h, m, rel);
          any_gold = any_gold || in_g;
          if (in_g) {
            // a zero-cost action never increases the reachable-best cost
            CHECK(f == cost_before);
          } else {
            CHECK(f >= cost_before + 1);
          }
        }
      }
    }
    CHECK(any_gold);  // G is never empty
  }
}

}  // namespace

TEST_CASE("oracle counters and basic classification") {
  Sentence sent = make_sentence({2, 0, 2});  // 1<-2->3, 2 is root
  Vocab v = Vocab::build({sent});
  OracleState o(sent, v);
  CHECK(o.unassigned(2) == 2);
  CHECK(o.unassigned(1) == 0);
  const int l1 = v.label_id((*sent.gold_arcs)[0].label);
  // gold arc with gold label is zero cost
  CHECK(o.zero_cost(2, 1, l1));
  // gold arc with a wrong label is not
  CHECK_FALSE(o.zero_cost(2, 1, (l1 + 1) % static_cast<int>(v.num_labels())));
  // attaching the unfinished root prematurely is not
  CHECK_FALSE(o.zero_cost(1, 2, 0));
  o.on_attach(1);
  CHECK(o.unassigned(2) == 1);
  CHECK_FALSE(o.pending(1));
}

TEST_CASE("a modifier whose gold head is gone becomes free to attach anywhere") {
  Sentence sent = make_sentence({2, 3, 0});  // 1->2->3(root)
  Vocab v = Vocab::build({sent});
  OracleState o(sent, v);
  // error: attach word 2 under word 3 before it collected word 1
  o.on_attach(2);
  // word 1's gold head (2) is no longer pending: any attachment of 1 is free
  for (int rel = 0; rel < static_cast<int>(v.num_labels()); ++rel)
    CHECK(o.zero_cost(3, 1, rel));
}

TEST_CASE("the root word is never a lost cause") {
  Sentence sent = make_sentence({0, 1});  // 1(root)->2
  Vocab v = Vocab::build({sent});
  OracleState o(sent, v);
  // attaching the root under word 2 is always a cost: the root arc dies
  for (int rel = 0; rel < static_cast<int>(v.num_labels()); ++rel)
    CHECK_FALSE(o.zero_cost(2, 1, rel));
}

TEST_CASE("zero-cost set matches brute-force completion costs on all small trees") {
  // All projective single-root trees up to n=5 over all pending subsets —
  // this covers every state reachable through any number of errors.
  for (int n = 2; n <= 5; ++n) {
    for (const auto& heads : projective_trees(n)) {
      Sentence sent = make_sentence(heads);
      Vocab v = Vocab::build({sent});
      verify_tree(sent, v);
    }
  }
}

TEST_CASE("brute-force agreement holds on n=6 trees (sampled)") {
  auto trees = projective_trees(6);
  // every 7th tree keeps the runtime modest while sweeping the shape space
  for (std::size_t i = 0; i < trees.size(); i += 7) {
    Sentence sent = make_sentence(trees[i]);
    Vocab v = Vocab::build({sent});
    verify_tree(sent, v);
  }
}
