#include "htparse/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "htparse/eval.hpp"

namespace htparse {

namespace {

struct Best {
  bool found = false;
  ActionRef action;
  ParseState::PairExprs exprs;
};

// Strictly-greater update preserves the (pair, Left-first, label) tie-break.
void consider(Best& b, const ActionRef& a, const ParseState::PairExprs& e) {
  if (!b.found || a.score > b.action.score) {
    b.found = true;
    b.action = a;
    b.exprs = e;
  }
}

}  // namespace

void train_sentence(Model& model, const Sentence& sentence, const TrainConfig& cfg,
                    std::mt19937_64& rng, LossAccumulator& acc) {
  const std::size_t n = sentence.size();
  if (n == 0) return;

  DropoutPolicy dropout{cfg.dropout_alpha, cfg.dropout_alpha > 0.0};
  std::vector<int> words, pos;
  for (const Token& t : sentence.tokens) {
    words.push_back(dropout.apply(model.vocab.word_id(t.form), model.vocab, rng));
    int p = model.vocab.pos_id(t.pos);
    if (p < 0) p = static_cast<int>(model.vocab.num_pos());
    pos.push_back(p);
  }

  Graph g(model.store, /*grads_enabled=*/true);
  ParseState state(g, model, words, pos);
  OracleState oracle(sentence, model.vocab);
  const int L = static_cast<int>(model.vocab.num_labels());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<NodeId> losses;

  const bool explore = cfg.explore && cfg.dynamic_oracle;

  while (state.size() > 1) {
    Best best_gold, best_wrong;
    for (std::size_t p = 0; p + 1 < state.size(); ++p) {
      ParseState::PairExprs e = state.score_pair(p);
      ScoreTable t = state.table(e);
      for (int d = 0; d < 2; ++d) {
        const Direction dir = static_cast<Direction>(d);
        const int m = state.word_at(d == 0 ? p : p + 1);
        const int h = state.word_at(d == 0 ? p + 1 : p);
        for (int rel = 0; rel < L; ++rel) {
          const ActionRef a{p, dir, rel, t.at(dir, rel)};
          if (oracle.zero_cost(h, m, rel))
            consider(best_gold, a, e);
          else
            consider(best_wrong, a, e);
        }
      }
    }
    if (!best_gold.found)
      throw ParseError("dynamic oracle produced an empty gold action set");

    if (best_wrong.found) {
      const double margin_gap = best_gold.action.score - best_wrong.action.score;
      if (margin_gap < cfg.margin) {
        NodeId sg = state.action_expr(best_gold.exprs, best_gold.action.dir,
                                      best_gold.action.rel);
        NodeId sw = state.action_expr(best_wrong.exprs, best_wrong.action.dir,
                                      best_wrong.action.rel);
        NodeId loss = g.add(g.sub(g.scalar(cfg.margin), sg), sw);
        if (g.scalar_value(loss) > 0.0) losses.push_back(loss);
      }

      ActionRef followed = best_gold.action;
      if (explore) {
        if (margin_gap < 0.0) {
          followed = best_wrong.action;
        } else if (margin_gap < cfg.margin) {
          const bool coin = unit(rng) < cfg.p_aug;
          // prose reading: follow the wrong action with probability p_aug;
          // the flipped flag matches the appendix pseudocode instead
          const bool follow_wrong = cfg.flip_margin_branch ? !coin : coin;
          if (follow_wrong) followed = best_wrong.action;
        }
      }
      const std::size_t mi = (followed.dir == Direction::Left) ? followed.pair
                                                               : followed.pair + 1;
      const int m_word = state.word_at(mi);
      state.apply(followed.pair, followed.dir, followed.rel);
      oracle.on_attach(m_word);
    } else {
      // every action is cost-free: nothing to separate, follow the best
      const std::size_t mi = (best_gold.action.dir == Direction::Left)
                                 ? best_gold.action.pair
                                 : best_gold.action.pair + 1;
      const int m_word = state.word_at(mi);
      state.apply(best_gold.action.pair, best_gold.action.dir, best_gold.action.rel);
      oracle.on_attach(m_word);
    }
  }

  if (!losses.empty()) {
    NodeId total = g.sum(losses);
    g.backward(total);
    acc.pending_errors += losses.size();
    acc.epoch_losses += losses.size();
    acc.epoch_loss_sum += g.scalar_value(total);
  }
}

Model train_model(const ModelConfig& mcfg, const TrainConfig& cfg,
                  const std::vector<Sentence>& train,
                  const std::vector<Sentence>* dev, const EpochLogger& log,
                  const std::function<void(Model&)>& init) {
  Vocab vocab = Vocab::build(train);
  Model model = Model::create(mcfg, std::move(vocab), cfg.seed);
  if (init) init(model);

  std::vector<std::size_t> projective;
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < train.size(); ++i) {
    if (is_projective(train[i]))
      projective.push_back(i);
    else
      ++skipped;
  }
  if (projective.empty())
    throw ParseError("no projective training sentences after filtering");

  std::mt19937_64 rng(cfg.seed * 0x9e3779b97f4a7c15ULL + 1);
  Adam adam;
  LossAccumulator acc;
  double best_dev_uas = -1.0;
  std::optional<Model> best_model;

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    const auto t0 = std::chrono::steady_clock::now();
    acc.epoch_loss_sum = 0.0;
    acc.epoch_losses = 0;
    std::size_t updates = 0;

    std::shuffle(projective.begin(), projective.end(), rng);
    for (std::size_t idx : projective) {
      train_sentence(model, train[idx], cfg, rng, acc);
      if (acc.pending_errors >= cfg.batch_errors) {
        adam.step(model.store);
        acc.pending_errors = 0;
        ++updates;
      }
    }
    if (acc.pending_errors > 0) {
      adam.step(model.store);
      acc.pending_errors = 0;
      ++updates;
    }

    EpochStats stats;
    stats.epoch = epoch;
    stats.losses = acc.epoch_losses;
    stats.mean_loss = acc.epoch_losses
                          ? acc.epoch_loss_sum / static_cast<double>(acc.epoch_losses)
                          : 0.0;
    stats.updates = updates;
    stats.skipped_nonproj = skipped;

    if (dev && !dev->empty()) {
      std::vector<Sentence> predicted;
      predicted.reserve(dev->size());
      for (const Sentence& s : *dev) predicted.push_back(parse_to_sentence(model, s));
      EvalReport report = evaluate(*dev, predicted, PunctPolicy{});
      stats.dev_uas = report.uas;
      stats.dev_las = report.las;
      if (report.uas > best_dev_uas) {
        best_dev_uas = report.uas;
        best_model = model;
      }
    }

    stats.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (log) log(stats);
  }

  if (best_model) return std::move(*best_model);
  return model;
}

}  // namespace htparse
