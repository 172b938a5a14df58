#include "htparse/adam.hpp"

#include <cmath>

namespace htparse {

void Adam::step(ParamStore& store) {
  if (moments_.size() < store.size()) {
    for (std::size_t i = moments_.size(); i < store.size(); ++i) {
      const Tensor& v = store.param(static_cast<ParamId>(i)).value;
      moments_.push_back({Tensor::zeros(v.shape), Tensor::zeros(v.shape)});
    }
  }
  ++t_;
  const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(t_));
  for (std::size_t i = 0; i < store.size(); ++i) {
    Parameter& p = store.param(static_cast<ParamId>(i));
    if (!p.trainable) continue;
    Moments& mo = moments_[i];
    // moments decay even where the gradient is zero
    for (std::size_t j = 0; j < p.value.numel(); ++j) {
      const double g = p.grad.data[j];
      mo.m.data[j] = beta1 * mo.m.data[j] + (1.0 - beta1) * g;
      mo.v.data[j] = beta2 * mo.v.data[j] + (1.0 - beta2) * g * g;
      const double mhat = mo.m.data[j] / bc1;
      const double vhat = mo.v.data[j] / bc2;
      p.value.data[j] -= alpha * mhat / (std::sqrt(vhat) + eps);
    }
  }
  store.zero_grads();
}

}  // namespace htparse
