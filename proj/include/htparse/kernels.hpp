#pragma once

#include <cstddef>

// Dense double-precision kernels behind the autodiff ops.  Every kernel has a
// scalar reference implementation and (on x86-64) an AVX2/FMA variant; the
// active table is chosen once at startup from cpuid.  Reductions may
// re-associate, so SIMD results match the scalar reference to rounding, not
// bitwise; elementwise kernels agree exactly up to FMA contraction.

namespace htparse::kernels {

struct Ops {
  const char* name;
  // y[i] += dot(W[i,:], x); W row-major, rows x cols
  void (*matvec_acc)(double* y, const double* w, const double* x,
                     std::size_t rows, std::size_t cols);
  // y[j] += sum_i g[i] * W[i,j]
  void (*matvec_t_acc)(double* y, const double* w, const double* g,
                       std::size_t rows, std::size_t cols);
  // W[i,j] += g[i] * x[j]
  void (*ger_acc)(double* w, const double* g, const double* x,
                  std::size_t rows, std::size_t cols);
  // y[i] += a * x[i]
  void (*axpy)(double* y, double a, const double* x, std::size_t n);
  // y[i] += a[i] * b[i]
  void (*vmul_acc)(double* y, const double* a, const double* b, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
};

const Ops& scalar_ops();
const Ops& avx2_ops();  // valid only if avx2_supported()
bool avx2_supported();

// Active table; resolved on first use.
const Ops& ops();

}  // namespace htparse::kernels
