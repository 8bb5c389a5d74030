#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace bql::kernels {

using cplx = std::complex<double>;

/// Execution mode for the data-parallel kernels.  Serial is the reference
/// implementation; Parallel uses OpenMP when built with it.  Both modes
/// produce bit-identical results: pointwise kernels touch disjoint elements
/// and reductions use a fixed pairwise tree independent of the thread count.
enum class Exec { Serial, Parallel };

Exec default_exec();
void set_default_exec(Exec mode);

/// Threads used by Parallel mode (1 when OpenMP is unavailable).
int thread_count();
void set_thread_count(int n);

// dst[i] = a[i] * b[i]
void mul(cplx* dst, const cplx* a, const cplx* b, std::size_t n, Exec mode);
// dst[i] *= table[i]
void mul_inplace(cplx* dst, const cplx* table, std::size_t n, Exec mode);
// dst[i] = alpha * x[i] + y[i]
void axpy(cplx* dst, cplx alpha, const cplx* x, const cplx* y, std::size_t n, Exec mode);
// y[i] += alpha * x[i]
void axpy_acc(cplx* y, cplx alpha, const cplx* x, std::size_t n, Exec mode);
// dst[i] = alpha * a[i]
void scale(cplx* dst, cplx alpha, const cplx* a, std::size_t n, Exec mode);

/// Fixed-tree pairwise summation: leaves of 128 elements summed
/// sequentially, leaf results combined by recursive halving.  The tree
/// depends only on n, so Serial and Parallel agree bitwise.
double sum_abs2(const cplx* p, std::size_t n, Exec mode);
double sum_weighted_abs2(const double* w, const cplx* p, std::size_t n, Exec mode);
double max_abs(const cplx* p, std::size_t n, Exec mode);

double pairwise_sum(const double* p, std::size_t n);

namespace detail {
constexpr std::size_t kLeaf = 128;
std::vector<double> leaf_sums_abs2(const cplx* p, std::size_t n, Exec mode);
}  // namespace detail

}  // namespace bql::kernels
