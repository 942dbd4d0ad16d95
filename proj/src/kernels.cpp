#include "sch/kernels.hpp"

#include <cmath>

namespace sch::kernels {

namespace {

// Blocked sum: block partials are independent, the final pass combines them
// in index order, so the result does not depend on the thread count.
template <typename BlockOp>
double blocked_reduce(std::size_t n, BlockOp&& op) {
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  if (nblocks <= 1) return op(0, n);
  std::vector<double> partial(nblocks);
#pragma omp parallel for schedule(static)
  for (long long bi = 0; bi < static_cast<long long>(nblocks); ++bi) {
    const std::size_t lo = static_cast<std::size_t>(bi) * kBlock;
    const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
    partial[static_cast<std::size_t>(bi)] = op(lo, hi);
  }
  double acc = 0.0;
  for (double p : partial) acc += p;
  return acc;
}

template <typename BlockOp>
double blocked_reduce_serial(std::size_t n, BlockOp&& op) {
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  if (nblocks <= 1) return op(0, n);
  double acc = 0.0;
  for (std::size_t bi = 0; bi < nblocks; ++bi) {
    const std::size_t lo = bi * kBlock;
    const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
    acc += op(lo, hi);
  }
  return acc;
}

inline double dot_block(std::span<const double> a, std::span<const double> b,
                        std::size_t lo, std::size_t hi) {
  double s = 0.0;
  for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i];
  return s;
}

inline double sum_block(std::span<const double> a, std::size_t lo, std::size_t hi) {
  double s = 0.0;
  for (std::size_t i = lo; i < hi; ++i) s += a[i];
  return s;
}

} // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  return blocked_reduce(a.size(), [&](std::size_t lo, std::size_t hi) {
    return dot_block(a, b, lo, hi);
  });
}

double sum(std::span<const double> a) {
  return blocked_reduce(a.size(), [&](std::size_t lo, std::size_t hi) {
    return sum_block(a, lo, hi);
  });
}

double nrm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const long long n = static_cast<long long>(x.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void xpay(std::span<const double> x, double alpha, std::span<double> y) {
  const long long n = static_cast<long long>(x.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) y[i] = x[i] + alpha * y[i];
}

void scale(double alpha, std::span<double> x) {
  const long long n = static_cast<long long>(x.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) x[i] *= alpha;
}

void fill(std::span<double> x, double value) {
  const long long n = static_cast<long long>(x.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) x[i] = value;
}

void copy(std::span<const double> src, std::span<double> dst) {
  const long long n = static_cast<long long>(src.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) dst[i] = src[i];
}

namespace serial {

double dot(std::span<const double> a, std::span<const double> b) {
  return blocked_reduce_serial(a.size(), [&](std::size_t lo, std::size_t hi) {
    return dot_block(a, b, lo, hi);
  });
}

double sum(std::span<const double> a) {
  return blocked_reduce_serial(a.size(), [&](std::size_t lo, std::size_t hi) {
    return sum_block(a, lo, hi);
  });
}

double nrm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void xpay(std::span<const double> x, double alpha, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + alpha * y[i];
}

void scale(double alpha, std::span<double> x) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] *= alpha;
}

} // namespace serial

} // namespace sch::kernels
