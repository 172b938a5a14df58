#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "htparse/tensor.hpp"

namespace htparse {

using ParamId = std::uint32_t;

struct Parameter {
  std::string name;
  Tensor value;
  Tensor grad;  // accumulated across backward passes until the next step
  bool trainable = true;
};

// Named parameter collection.  Registration order is fixed by the model
// builder, so a given seed always yields bit-identical initial values.
class ParamStore {
 public:
  explicit ParamStore(std::uint64_t seed) : rng_(seed) {}

  // Glorot-style scaled uniform: +-sqrt(6 / (rows + cols)).
  ParamId add_matrix(const std::string& name, std::size_t rows, std::size_t cols);
  // Zeros.
  ParamId add_vector(const std::string& name, std::size_t n);
  // Uniform +-0.1 per entry, one row per symbol.
  ParamId add_embedding(const std::string& name, std::size_t rows, std::size_t cols);

  Parameter& param(ParamId id) { return params_[id]; }
  const Parameter& param(ParamId id) const { return params_[id]; }
  std::size_t size() const { return params_.size(); }

  bool has(const std::string& name) const { return index_.count(name) != 0; }
  ParamId id_of(const std::string& name) const;

  void zero_grads();

 private:
  ParamId add(const std::string& name, Tensor value);

  std::vector<Parameter> params_;
  std::unordered_map<std::string, ParamId> index_;
  std::mt19937_64 rng_;
};

}  // namespace htparse
