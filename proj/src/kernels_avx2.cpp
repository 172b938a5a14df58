#include "htparse/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define HTPARSE_HAVE_AVX2_BUILD 1
#include <immintrin.h>
#else
#define HTPARSE_HAVE_AVX2_BUILD 0
#endif

namespace htparse::kernels {

#if HTPARSE_HAVE_AVX2_BUILD
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

void matvec_acc_avx2(double* y, const double* w, const double* x,
                     std::size_t rows, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = w + i * cols;
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 8 <= cols; j += 8) {
      a0 = _mm256_fmadd_pd(_mm256_loadu_pd(row + j), _mm256_loadu_pd(x + j), a0);
      a1 = _mm256_fmadd_pd(_mm256_loadu_pd(row + j + 4), _mm256_loadu_pd(x + j + 4), a1);
    }
    for (; j + 4 <= cols; j += 4)
      a0 = _mm256_fmadd_pd(_mm256_loadu_pd(row + j), _mm256_loadu_pd(x + j), a0);
    double acc = hsum(_mm256_add_pd(a0, a1));
    for (; j < cols; ++j) acc += row[j] * x[j];
    y[i] += acc;
  }
}

void axpy_avx2(double* y, double a, const double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void matvec_t_acc_avx2(double* y, const double* w, const double* g,
                       std::size_t rows, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    if (g[i] != 0.0) axpy_avx2(y, g[i], w + i * cols, cols);
  }
}

void ger_acc_avx2(double* w, const double* g, const double* x,
                  std::size_t rows, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    if (g[i] != 0.0) axpy_avx2(w + i * cols, g[i], x, cols);
  }
}

void vmul_acc_avx2(double* y, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a[i] * b[i];
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops table{"avx2",       matvec_acc_avx2, matvec_t_acc_avx2,
                         ger_acc_avx2, axpy_avx2,       vmul_acc_avx2,
                         dot_avx2};
  return table;
}

bool avx2_supported() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

#else

const Ops& avx2_ops() { return scalar_ops(); }
bool avx2_supported() { return false; }

#endif

}  // namespace htparse::kernels
