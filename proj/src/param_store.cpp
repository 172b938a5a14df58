#include "htparse/param_store.hpp"

#include <cmath>

namespace htparse {

ParamId ParamStore::add(const std::string& name, Tensor value) {
  if (index_.count(name))
    throw ConfigError("duplicate parameter name: " + name);
  ParamId id = static_cast<ParamId>(params_.size());
  Parameter p;
  p.name = name;
  p.grad = Tensor::zeros(value.shape);
  p.value = std::move(value);
  params_.push_back(std::move(p));
  index_[name] = id;
  return id;
}

ParamId ParamStore::add_matrix(const std::string& name, std::size_t rows,
                               std::size_t cols) {
  Tensor t = Tensor::zeros({rows, cols});
  const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  std::uniform_real_distribution<double> dist(-limit, limit);
  for (double& x : t.data) x = dist(rng_);
  return add(name, std::move(t));
}

ParamId ParamStore::add_vector(const std::string& name, std::size_t n) {
  return add(name, Tensor::zeros({n}));
}

ParamId ParamStore::add_embedding(const std::string& name, std::size_t rows,
                                  std::size_t cols) {
  Tensor t = Tensor::zeros({rows, cols});
  std::uniform_real_distribution<double> dist(-0.1, 0.1);
  for (double& x : t.data) x = dist(rng_);
  return add(name, std::move(t));
}

ParamId ParamStore::id_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ConfigError("unknown parameter: " + name);
  return it->second;
}

void ParamStore::zero_grads() {
  for (Parameter& p : params_) p.grad.fill(0.0);
}

}  // namespace htparse
