#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "htparse/common.hpp"

namespace htparse {

// Row-major dense tensor of doubles.  Rank is 1 (vectors, scalars as
// length-1 vectors) or 2 (matrices); nothing in the parser needs more.
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<double> data;

  Tensor() = default;

  static Tensor zeros(std::vector<std::size_t> shape);
  static Tensor scalar(double v);
  static Tensor vec(std::vector<double> values);

  std::size_t numel() const { return data.size(); }
  std::size_t rank() const { return shape.size(); }

  // Matrix accessors; throw on rank mismatch.
  std::size_t rows() const;
  std::size_t cols() const;

  bool same_shape(const Tensor& o) const { return shape == o.shape; }
  std::string shape_str() const;

  double& operator[](std::size_t i) { return data[i]; }
  double operator[](std::size_t i) const { return data[i]; }

  void fill(double v);
  bool all_finite() const;
};

}  // namespace htparse
