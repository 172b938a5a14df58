#pragma once

#include <cstdint>
#include <vector>

#include "htparse/param_store.hpp"

namespace htparse {

// Bias-corrected ADAM over a parameter store's grad accumulators.
// step() consumes the accumulated gradients and zeroes them.
class Adam {
 public:
  double alpha = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  void step(ParamStore& store);
  std::uint64_t steps() const { return t_; }

 private:
  struct Moments {
    Tensor m, v;
  };
  std::vector<Moments> moments_;
  std::uint64_t t_ = 0;
};

}  // namespace htparse
