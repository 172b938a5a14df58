#include "htparse/eval.hpp"

namespace htparse {

EvalReport evaluate(const std::vector<Sentence>& gold,
                    const std::vector<Sentence>& predicted,
                    const PunctPolicy& punct) {
  if (gold.size() != predicted.size())
    throw ParseError("corpus size mismatch: " + std::to_string(gold.size()) +
                     " gold vs " + std::to_string(predicted.size()) +
                     " predicted sentences");

  EvalReport report;
  std::size_t heads_ok = 0, labeled_ok = 0;
  for (std::size_t si = 0; si < gold.size(); ++si) {
    const Sentence& g = gold[si];
    const Sentence& p = predicted[si];
    if (g.size() != p.size())
      throw ParseError("sentence " + std::to_string(si + 1) +
                       ": token count mismatch (" + std::to_string(g.size()) +
                       " vs " + std::to_string(p.size()) + ")");
    for (std::size_t t = 0; t < g.size(); ++t) {
      if (g.tokens[t].form != p.tokens[t].form)
        throw ParseError("sentence " + std::to_string(si + 1) + ", token " +
                         std::to_string(t + 1) + ": form mismatch ('" +
                         g.tokens[t].form + "' vs '" + p.tokens[t].form + "')");
    }
    if (!g.gold_arcs)
      throw ParseError("sentence " + std::to_string(si + 1) +
                       ": gold side has no arcs");
    if (!p.gold_arcs)
      throw ParseError("sentence " + std::to_string(si + 1) +
                       ": predicted side has no arcs");

    std::vector<int> gh = head_array(g), ph = head_array(p);
    std::vector<std::string> gl = label_array(g), pl = label_array(p);
    SentenceScore score;
    for (std::size_t t = 0; t < g.size(); ++t) {
      if (punct.excluded(g.tokens[t].pos)) {
        ++report.excluded;
        continue;
      }
      ++score.counted;
      const std::size_t w = t + 1;
      if (gh[w] == ph[w]) {
        ++score.correct_heads;
        if (gl[w] == pl[w]) ++score.correct_labeled;
      }
    }
    report.counted += score.counted;
    heads_ok += score.correct_heads;
    labeled_ok += score.correct_labeled;
    report.sentences.push_back(score);
  }

  if (report.counted > 0) {
    report.uas = 100.0 * static_cast<double>(heads_ok) /
                 static_cast<double>(report.counted);
    report.las = 100.0 * static_cast<double>(labeled_ok) /
                 static_cast<double>(report.counted);
  }
  return report;
}

}  // namespace htparse
