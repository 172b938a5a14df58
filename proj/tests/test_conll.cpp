#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "htparse/eval.hpp"
#include "htparse/treebank_gen.hpp"

using namespace htparse;
using namespace htparse::testutil;

TEST_CASE("conll reading: comments, ranges, pos column, round trip") {
  const std::string text =
      "# a comment line\n"
      "1\tThe\t_\tDT\tDT2\t_\t2\tdet\n"
      "1-2\tcontracted\t_\t_\t_\t_\t_\t_\n"
      "2\tcat\t_\tNN\tNN2\t_\t3\tnsubj\n"
      "3\tsat\t_\tVB\tVB2\t_\t0\troot\n"
      "\n"
      "1\tok\t_\tX\tX\t_\t0\troot\n";
  std::istringstream in(text);
  std::vector<Sentence> s = read_conll(in, 4);
  REQUIRE(s.size() == 2);
  REQUIRE(s[0].size() == 3);
  CHECK(s[0].tokens[0].form == "The");
  CHECK(s[0].tokens[0].pos == "DT");
  REQUIRE(s[0].gold_arcs.has_value());
  CHECK(head_array(s[0]) == std::vector<int>{-1, 2, 3, 0});
  CHECK(label_array(s[0])[1] == "det");

  std::istringstream in5(text);
  std::vector<Sentence> s5 = read_conll(in5, 5);
  CHECK(s5[0].tokens[0].pos == "DT2");

  std::ostringstream out;
  write_conll(out, s);
  std::istringstream back(out.str());
  std::vector<Sentence> r = read_conll(back, 4);
  REQUIRE(r.size() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(r[i].size() == s[i].size());
    for (std::size_t t = 0; t < s[i].size(); ++t) {
      CHECK(r[i].tokens[t].form == s[i].tokens[t].form);
      CHECK(r[i].tokens[t].pos == s[i].tokens[t].pos);
    }
    CHECK(head_array(r[i]) == head_array(s[i]));
    CHECK(label_array(r[i]) == label_array(s[i]));
  }
  // write -> read -> write is byte identical
  std::ostringstream out2;
  write_conll(out2, r);
  CHECK(out2.str() == out.str());
}

TEST_CASE("conll errors carry line numbers") {
  std::istringstream bad_head("1\ta\t_\tX\tX\t_\tQ\tdep\n\n");
  CHECK_THROWS_WITH_AS(read_conll(bad_head), doctest::Contains("line 1"),
                       ParseError);
  std::istringstream range("1\ta\t_\tX\tX\t_\t5\tdep\n\n");
  CHECK_THROWS_AS(read_conll(range), ParseError);
  std::istringstream dup("1\ta\t_\tX\tX\t_\t0\troot\n1\tb\t_\tX\tX\t_\t1\tdep\n\n");
  CHECK_THROWS_AS(read_conll(dup), ParseError);
}

TEST_CASE("underscore heads produce raw sentences") {
  std::istringstream in("1\ta\t_\tX\tX\t_\t_\t_\n2\tb\t_\tX\tX\t_\t_\t_\n\n");
  std::vector<Sentence> s = read_conll(in);
  REQUIRE(s.size() == 1);
  CHECK_FALSE(s[0].gold_arcs.has_value());
}

TEST_CASE("tree validation rejects cycles, multi-root and multi-head") {
  CHECK_THROWS_AS(check_tree(make_sentence({2, 1, 0})), ParseError);  // cycle
  CHECK_THROWS_AS(check_tree(make_sentence({0, 0, 2})), ParseError);  // two roots
  Sentence s = make_sentence({0, 1, 2});
  s.gold_arcs->push_back(Arc{1, 3, "x"});  // second head for word 3
  CHECK_THROWS_AS(check_tree(s), ParseError);
  CHECK_NOTHROW(check_tree(make_sentence({0, 1, 2})));
}

namespace {
// Reference projectivity: no two arcs (root arc included) cross.
bool no_crossing(const Sentence& s) {
  std::vector<std::pair<int, int>> spans;
  for (const Arc& a : *s.gold_arcs)
    spans.emplace_back(std::min(a.head, a.modifier), std::max(a.head, a.modifier));
  for (std::size_t i = 0; i < spans.size(); ++i)
    for (std::size_t j = i + 1; j < spans.size(); ++j) {
      auto [a1, b1] = spans[i];
      auto [a2, b2] = spans[j];
      if (a1 < a2 && a2 < b1 && b1 < b2) return false;
      if (a2 < a1 && a1 < b2 && b2 < b1) return false;
    }
  return true;
}
}  // namespace

TEST_CASE("projectivity agrees with the no-crossing definition on random trees") {
  std::mt19937_64 rng(123);
  int checked = 0, nonproj_seen = 0;
  while (checked < 10000) {
    std::uniform_int_distribution<int> len(1, 10);
    const int n = len(rng);
    std::vector<int> heads(static_cast<std::size_t>(n));
    std::uniform_int_distribution<int> hd(0, n);
    for (int w = 1; w <= n; ++w) {
      int h;
      do h = hd(rng);
      while (h == w);
      heads[static_cast<std::size_t>(w - 1)] = h;
    }
    Sentence s = make_sentence(heads);
    try {
      check_tree(s);
    } catch (const ParseError&) {
      continue;
    }
    ++checked;
    const bool p = is_projective(s);
    CHECK(p == no_crossing(s));
    if (!p) ++nonproj_seen;
  }
  CHECK(nonproj_seen > 100);  // the sample actually exercises both branches
}

TEST_CASE("vocab: ids, lowercasing, counts, root label vote") {
  std::vector<Sentence> corpus;
  Sentence a;
  for (int i = 1; i <= 3; ++i) {
    Token t;
    t.index = i;
    t.form = (i == 1) ? "The" : (i == 2) ? "the" : "cat";
    t.pos = (i == 3) ? "NN" : "DT";
    a.tokens.push_back(t);
  }
  a.gold_arcs = std::vector<Arc>{{3, 1, "det"}, {3, 2, "det"}, {0, 3, "root"}};
  corpus.push_back(a);
  Vocab v = Vocab::build(corpus);
  CHECK(v.word_id("the") == v.word_id("THE"));
  CHECK(v.word_id("unseen-word") == Vocab::kUnkWord);
  CHECK(v.word_count(v.word_id("the")) == 2);
  CHECK(v.pos_id("ZZZ") == -1);
  CHECK(v.label_id("det") >= 0);
  CHECK(v.label_form(v.root_label()) == "root");

  Vocab r = Vocab::decode(v.encode());
  CHECK(r == v);
}

TEST_CASE("word dropout frequency matches alpha/(count+alpha)") {
  // build a corpus with controlled counts
  std::vector<Sentence> corpus;
  auto add_with_count = [&](const std::string& form, int count) {
    for (int i = 0; i < count; ++i) {
      Sentence s;
      Token t;
      t.index = 1;
      t.form = form;
      t.pos = "X";
      s.tokens.push_back(t);
      s.gold_arcs = std::vector<Arc>{{0, 1, "root"}};
      corpus.push_back(s);
    }
  };
  add_with_count("one", 1);
  add_with_count("two", 2);
  add_with_count("five", 5);
  add_with_count("twenty", 20);
  Vocab v = Vocab::build(corpus);

  DropoutPolicy policy{0.25, true};
  std::mt19937_64 rng(99);
  const int draws = 100000;
  for (const auto& [form, count] : std::vector<std::pair<std::string, int>>{
           {"one", 1}, {"two", 2}, {"five", 5}, {"twenty", 20}}) {
    const int id = v.word_id(form);
    REQUIRE(id != Vocab::kUnkWord);
    int replaced = 0;
    for (int i = 0; i < draws; ++i)
      if (policy.apply(id, v, rng) == Vocab::kUnkWord) ++replaced;
    const double p = policy.replace_prob(static_cast<std::uint64_t>(count));
    const double se = std::sqrt(p * (1 - p) / draws);
    CHECK(std::abs(replaced / static_cast<double>(draws) - p) <= 3 * se);
  }
  DropoutPolicy off{0.25, false};
  const int id = v.word_id("one");
  for (int i = 0; i < 100; ++i) CHECK(off.apply(id, v, rng) == id);
}

TEST_CASE("evaluation counts and punctuation policy") {
  Sentence gold = make_sentence({2, 0, 2, 3});
  Sentence pred = gold;
  EvalReport same = evaluate({gold}, {pred});
  CHECK(same.uas == doctest::Approx(100.0));
  CHECK(same.las == doctest::Approx(100.0));

  // 4 tokens: 3 correct heads, of which 2 correct labels
  (*pred.gold_arcs)[3].head = 1;                 // wrong head for word 4
  (*pred.gold_arcs)[0].label = "zz";             // right head, wrong label
  EvalReport r = evaluate({gold}, {pred});
  CHECK(r.counted == 4);
  CHECK(r.uas == doctest::Approx(75.0));
  CHECK(r.las == doctest::Approx(50.0));
  CHECK(r.las <= r.uas);

  // punctuation-POS tokens contribute nothing
  Sentence pg = gold;
  for (Token& t : pg.tokens) t.pos = ",";
  Sentence pp = pg;
  (*pp.gold_arcs)[0].head = 3;
  EvalReport pr = evaluate({pg}, {pp});
  CHECK(pr.counted == 0);
  CHECK(pr.excluded == 4);

  // disabling the filter recovers plain accuracy
  PunctPolicy none;
  none.exclude_pos.clear();
  EvalReport nr = evaluate({pg}, {pp});
  EvalReport nr2 = evaluate({pg}, {pp}, none);
  CHECK(nr2.counted == 4);
  CHECK(nr.counted == 0);

  // sentence order permutation leaves corpus scores unchanged
  EvalReport two = evaluate({gold, pg}, {pred, pp});
  EvalReport two_swapped = evaluate({pg, gold}, {pp, pred});
  CHECK(two.uas == doctest::Approx(two_swapped.uas));
  CHECK(two.las == doctest::Approx(two_swapped.las));

  // alignment failures name the sentence
  Sentence shorter = make_sentence({0});
  CHECK_THROWS_WITH_AS(evaluate({gold}, {shorter}),
                       doctest::Contains("sentence 1"), ParseError);
  CHECK_THROWS_AS(evaluate({gold, gold}, {pred}), ParseError);
}

TEST_CASE("generator: deterministic, projective, arity reaches four") {
  std::vector<Sentence> a = generate_treebank(7, 300);
  std::vector<Sentence> b = generate_treebank(7, 300);
  REQUIRE(a.size() == 300);
  bool arity4 = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].size() == b[i].size());
    CHECK(head_array(a[i]) == head_array(b[i]));
    CHECK_NOTHROW(check_tree(a[i]));
    CHECK(is_projective(a[i]));
    std::vector<int> kids(a[i].size() + 1, 0);
    for (const Arc& arc : *a[i].gold_arcs)
      if (arc.head > 0) ++kids[static_cast<std::size_t>(arc.head)];
    for (int k : kids) arity4 = arity4 || k >= 4;
  }
  CHECK(arity4);
  std::vector<Sentence> c = generate_treebank(8, 50);
  bool differs = c.size() != a.size();
  for (std::size_t i = 0; i < c.size() && !differs; ++i)
    differs = head_array(c[i]) != head_array(a[i]) ||
              c[i].tokens[0].form != a[i].tokens[0].form;
  CHECK(differs);
}
