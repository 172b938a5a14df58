#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "htparse/kernels.hpp"

using namespace htparse::kernels;

namespace {

std::vector<double> randvec(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

bool close(double a, double b, double tol = 1e-10) {
  return std::abs(a - b) <= tol * (1.0 + std::abs(a) + std::abs(b));
}

}  // namespace

TEST_CASE("scalar kernels match naive loops") {
  std::mt19937_64 rng(1);
  const Ops& k = scalar_ops();
  for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{3, 5},
                            {1, 1},
                            {7, 16},
                            {13, 33}}) {
    auto w = randvec(rows * cols, rng);
    auto x = randvec(cols, rng);
    auto g = randvec(rows, rng);
    auto y = randvec(rows, rng);

    auto y2 = y;
    k.matvec_acc(y2.data(), w.data(), x.data(), rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      double acc = y[i];
      for (std::size_t j = 0; j < cols; ++j) acc += w[i * cols + j] * x[j];
      CHECK(close(y2[i], acc));
    }

    auto yt = randvec(cols, rng);
    auto yt2 = yt;
    k.matvec_t_acc(yt2.data(), w.data(), g.data(), rows, cols);
    for (std::size_t j = 0; j < cols; ++j) {
      double acc = yt[j];
      for (std::size_t i = 0; i < rows; ++i) acc += g[i] * w[i * cols + j];
      CHECK(close(yt2[j], acc));
    }

    auto w2 = w;
    k.ger_acc(w2.data(), g.data(), x.data(), rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        CHECK(close(w2[i * cols + j], w[i * cols + j] + g[i] * x[j]));
  }

  auto a = randvec(37, rng), b = randvec(37, rng), y = randvec(37, rng);
  auto y2 = y;
  k.axpy(y2.data(), 1.7, a.data(), 37);
  for (std::size_t i = 0; i < 37; ++i) CHECK(close(y2[i], y[i] + 1.7 * a[i]));
  y2 = y;
  k.vmul_acc(y2.data(), a.data(), b.data(), 37);
  for (std::size_t i = 0; i < 37; ++i) CHECK(close(y2[i], y[i] + a[i] * b[i]));
  double d = 0;
  for (std::size_t i = 0; i < 37; ++i) d += a[i] * b[i];
  CHECK(close(k.dot(a.data(), b.data(), 37), d, 1e-12));
}

TEST_CASE("simd kernels agree with scalar reference") {
  if (!avx2_supported()) {
    MESSAGE("no AVX2 on this host; skipping");
    return;
  }
  const Ops& s = scalar_ops();
  const Ops& v = avx2_ops();
  std::mt19937_64 rng(7);
  // sizes straddling vector width boundaries
  for (std::size_t rows : {1u, 2u, 3u, 4u, 5u, 8u, 17u, 64u, 100u})
    for (std::size_t cols : {1u, 3u, 4u, 7u, 8u, 15u, 16u, 33u, 200u}) {
      auto w = randvec(rows * cols, rng);
      auto x = randvec(cols, rng);
      auto g = randvec(rows, rng);

      std::vector<double> y1(rows, 0.5), y2(rows, 0.5);
      s.matvec_acc(y1.data(), w.data(), x.data(), rows, cols);
      v.matvec_acc(y2.data(), w.data(), x.data(), rows, cols);
      for (std::size_t i = 0; i < rows; ++i) CHECK(close(y1[i], y2[i]));

      std::vector<double> t1(cols, -0.25), t2(cols, -0.25);
      s.matvec_t_acc(t1.data(), w.data(), g.data(), rows, cols);
      v.matvec_t_acc(t2.data(), w.data(), g.data(), rows, cols);
      for (std::size_t j = 0; j < cols; ++j) CHECK(close(t1[j], t2[j]));

      auto w1 = w, w2 = w;
      s.ger_acc(w1.data(), g.data(), x.data(), rows, cols);
      v.ger_acc(w2.data(), g.data(), x.data(), rows, cols);
      for (std::size_t i = 0; i < rows * cols; ++i) CHECK(close(w1[i], w2[i]));

      std::vector<double> a1(cols, 0.0), a2(cols, 0.0);
      s.axpy(a1.data(), -1.3, x.data(), cols);
      v.axpy(a2.data(), -1.3, x.data(), cols);
      for (std::size_t j = 0; j < cols; ++j) CHECK(close(a1[j], a2[j]));

      std::vector<double> m1(cols, 1.0), m2(cols, 1.0);
      auto b = randvec(cols, rng);
      s.vmul_acc(m1.data(), x.data(), b.data(), cols);
      v.vmul_acc(m2.data(), x.data(), b.data(), cols);
      for (std::size_t j = 0; j < cols; ++j) CHECK(close(m1[j], m2[j]));

      CHECK(close(s.dot(x.data(), b.data(), cols), v.dot(x.data(), b.data(), cols)));
    }
}

TEST_CASE("dispatch honours the environment override") {
  // ops() is resolved from cpuid unless HTPARSE_KERNELS=scalar; either way
  // the table must be one of the two known implementations.
  const Ops& active = ops();
  const bool is_scalar = std::string(active.name) == "scalar";
  const bool is_avx2 = std::string(active.name) == "avx2";
  CHECK((is_scalar || is_avx2));
  if (is_avx2) CHECK(avx2_supported());
}
