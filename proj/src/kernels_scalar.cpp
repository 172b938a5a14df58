#include "htparse/kernels.hpp"

namespace htparse::kernels {
namespace {

void matvec_acc_scalar(double* y, const double* w, const double* x,
                       std::size_t rows, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = w + i * cols;
    double acc = 0.0;
    for (std::size_t j = 0; j < cols; ++j) acc += row[j] * x[j];
    y[i] += acc;
  }
}

void matvec_t_acc_scalar(double* y, const double* w, const double* g,
                         std::size_t rows, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double gi = g[i];
    if (gi == 0.0) continue;
    const double* row = w + i * cols;
    for (std::size_t j = 0; j < cols; ++j) y[j] += gi * row[j];
  }
}

void ger_acc_scalar(double* w, const double* g, const double* x,
                    std::size_t rows, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double gi = g[i];
    if (gi == 0.0) continue;
    double* row = w + i * cols;
    for (std::size_t j = 0; j < cols; ++j) row[j] += gi * x[j];
  }
}

void axpy_scalar(double* y, double a, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void vmul_acc_scalar(double* y, const double* a, const double* b,
                     std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a[i] * b[i];
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops table{"scalar",      matvec_acc_scalar, matvec_t_acc_scalar,
                         ger_acc_scalar, axpy_scalar,       vmul_acc_scalar,
                         dot_scalar};
  return table;
}

}  // namespace htparse::kernels
