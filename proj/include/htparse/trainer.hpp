#pragma once

#include <functional>
#include <optional>
#include <random>

#include "htparse/adam.hpp"
#include "htparse/engine.hpp"
#include "htparse/oracle.hpp"

namespace htparse {

struct EpochStats {
  std::size_t epoch = 0;
  double mean_loss = 0.0;      // mean positive step loss over the epoch
  std::size_t losses = 0;      // positive-loss steps
  std::size_t updates = 0;     // ADAM steps
  std::size_t skipped_nonproj = 0;
  std::optional<double> dev_uas, dev_las;
  double seconds = 0.0;
};

using EpochLogger = std::function<void(const EpochStats&)>;

// Shared accumulator: positive-loss steps since the last parameter update
// (the "50 errors" mini-batch counter) plus epoch totals.
struct LossAccumulator {
  std::size_t pending_errors = 0;
  double epoch_loss_sum = 0.0;
  std::size_t epoch_losses = 0;
};

// One pass of Algorithm-style dynamic-oracle training over a single
// projective sentence.  Accumulates gradients of the sentence's summed
// hinge losses into the store; does not update parameters.
void train_sentence(Model& model, const Sentence& sentence, const TrainConfig& cfg,
                    std::mt19937_64& rng, LossAccumulator& acc);

// Full training loop: shuffles each epoch, skips non-projective sentences,
// flushes the accumulated gradients through ADAM at sentence boundaries
// once >= cfg.batch_errors positive losses piled up (plus an end-of-epoch
// flush).  With a dev set, keeps the best-dev-UAS parameters.
// init, if given, runs once on the freshly created model (e.g. to load
// pretrained word embeddings) before the first epoch.
Model train_model(const ModelConfig& mcfg, const TrainConfig& cfg,
                  const std::vector<Sentence>& train,
                  const std::vector<Sentence>* dev = nullptr,
                  const EpochLogger& log = nullptr,
                  const std::function<void(Model&)>& init = nullptr);

}  // namespace htparse
