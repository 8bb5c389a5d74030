#include "bql/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bql::kernels {

namespace {
std::atomic<Exec> g_exec{Exec::Parallel};
std::atomic<int> g_threads{0};  // 0 = library default

// Below this size the OpenMP region overhead outweighs the work; results
// are bitwise identical either way.
constexpr std::size_t kParallelCutoff = 1u << 15;

inline bool parallel(Exec mode, std::size_t n = kParallelCutoff) {
#ifdef _OPENMP
  return mode == Exec::Parallel && n >= kParallelCutoff;
#else
  (void)mode;
  (void)n;
  return false;
#endif
}
}  // namespace

Exec default_exec() { return g_exec.load(); }
void set_default_exec(Exec mode) { g_exec.store(mode); }

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_thread_count(int n) {
  g_threads.store(n);
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#endif
}

void mul(cplx* dst, const cplx* a, const cplx* b, std::size_t n, Exec mode) {
  const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
  if (parallel(mode, n)) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < sn; ++i) dst[i] = a[i] * b[i];
  } else {
    for (std::ptrdiff_t i = 0; i < sn; ++i) dst[i] = a[i] * b[i];
  }
}

void mul_inplace(cplx* dst, const cplx* table, std::size_t n, Exec mode) {
  const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
  if (parallel(mode, n)) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < sn; ++i) dst[i] *= table[i];
  } else {
    for (std::ptrdiff_t i = 0; i < sn; ++i) dst[i] *= table[i];
  }
}

void axpy(cplx* dst, cplx alpha, const cplx* x, const cplx* y, std::size_t n, Exec mode) {
  const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
  if (parallel(mode, n)) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < sn; ++i) dst[i] = alpha * x[i] + y[i];
  } else {
    for (std::ptrdiff_t i = 0; i < sn; ++i) dst[i] = alpha * x[i] + y[i];
  }
}

void axpy_acc(cplx* y, cplx alpha, const cplx* x, std::size_t n, Exec mode) {
  const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
  if (parallel(mode, n)) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < sn; ++i) y[i] += alpha * x[i];
  } else {
    for (std::ptrdiff_t i = 0; i < sn; ++i) y[i] += alpha * x[i];
  }
}

void scale(cplx* dst, cplx alpha, const cplx* a, std::size_t n, Exec mode) {
  const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
  if (parallel(mode, n)) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < sn; ++i) dst[i] = alpha * a[i];
  } else {
    for (std::ptrdiff_t i = 0; i < sn; ++i) dst[i] = alpha * a[i];
  }
}

namespace {

inline double abs2(cplx z) {
  return z.real() * z.real() + z.imag() * z.imag();
}

// Recursive halving over the leaf-sum array; tree shape depends only on n.
double combine(const double* s, std::size_t n) {
  if (n == 1) return s[0];
  if (n == 2) return s[0] + s[1];
  const std::size_t h = n / 2;
  return combine(s, h) + combine(s + h, n - h);
}

}  // namespace

namespace detail {

std::vector<double> leaf_sums_abs2(const cplx* p, std::size_t n, Exec mode) {
  const std::size_t leaves = n == 0 ? 0 : (n + kLeaf - 1) / kLeaf;
  std::vector<double> s(leaves, 0.0);
  const std::ptrdiff_t sl = static_cast<std::ptrdiff_t>(leaves);
  if (parallel(mode, n)) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t l = 0; l < sl; ++l) {
      const std::size_t lo = static_cast<std::size_t>(l) * kLeaf;
      const std::size_t hi = std::min(lo + kLeaf, n);
      double acc = 0.0;
      for (std::size_t i = lo; i < hi; ++i) acc += abs2(p[i]);
      s[l] = acc;
    }
  } else {
    for (std::ptrdiff_t l = 0; l < sl; ++l) {
      const std::size_t lo = static_cast<std::size_t>(l) * kLeaf;
      const std::size_t hi = std::min(lo + kLeaf, n);
      double acc = 0.0;
      for (std::size_t i = lo; i < hi; ++i) acc += abs2(p[i]);
      s[l] = acc;
    }
  }
  return s;
}

}  // namespace detail

double sum_abs2(const cplx* p, std::size_t n, Exec mode) {
  if (n == 0) return 0.0;
  auto s = detail::leaf_sums_abs2(p, n, mode);
  return combine(s.data(), s.size());
}

double sum_weighted_abs2(const double* w, const cplx* p, std::size_t n, Exec mode) {
  if (n == 0) return 0.0;
  const std::size_t leaves = (n + detail::kLeaf - 1) / detail::kLeaf;
  std::vector<double> s(leaves, 0.0);
  const std::ptrdiff_t sl = static_cast<std::ptrdiff_t>(leaves);
  if (parallel(mode, n)) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t l = 0; l < sl; ++l) {
      const std::size_t lo = static_cast<std::size_t>(l) * detail::kLeaf;
      const std::size_t hi = std::min(lo + detail::kLeaf, n);
      double acc = 0.0;
      for (std::size_t i = lo; i < hi; ++i) acc += w[i] * abs2(p[i]);
      s[l] = acc;
    }
  } else {
    for (std::ptrdiff_t l = 0; l < sl; ++l) {
      const std::size_t lo = static_cast<std::size_t>(l) * detail::kLeaf;
      const std::size_t hi = std::min(lo + detail::kLeaf, n);
      double acc = 0.0;
      for (std::size_t i = lo; i < hi; ++i) acc += w[i] * abs2(p[i]);
      s[l] = acc;
    }
  }
  return combine(s.data(), s.size());
}

double max_abs(const cplx* p, std::size_t n, Exec mode) {
  if (n == 0) return 0.0;
  double m2 = 0.0;
  const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
  if (parallel(mode, n)) {
#pragma omp parallel for schedule(static) reduction(max : m2)
    for (std::ptrdiff_t i = 0; i < sn; ++i) m2 = std::max(m2, abs2(p[i]));
  } else {
    for (std::ptrdiff_t i = 0; i < sn; ++i) m2 = std::max(m2, abs2(p[i]));
  }
  return std::sqrt(m2);
}

double pairwise_sum(const double* p, std::size_t n) {
  if (n == 0) return 0.0;
  if (n <= detail::kLeaf) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += p[i];
    return acc;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(p, h) + pairwise_sum(p + h, n - h);
}

}  // namespace bql::kernels
