#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Data-parallel array kernels used by every solver, plus the serial
// reference implementations the tests compare against.
//
// Determinism contract: for identical inputs the parallel and serial
// variants return bitwise-identical results, independent of thread count.
// Reductions are therefore summed over fixed-size blocks (each block
// serially, block results combined in block order); elementwise kernels
// assign each output entry to exactly one iteration.

namespace sch::kernels {

inline constexpr std::size_t kBlock = 4096;

// -- parallel variants (OpenMP when enabled) --
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
double nrm2(std::span<const double> a);
// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
// y = x + alpha * y
void xpay(std::span<const double> x, double alpha, std::span<double> y);
void scale(double alpha, std::span<double> x);
void fill(std::span<double> x, double value);
void copy(std::span<const double> src, std::span<double> dst);

namespace serial {
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
double nrm2(std::span<const double> a);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void xpay(std::span<const double> x, double alpha, std::span<double> y);
void scale(double alpha, std::span<double> x);
} // namespace serial

} // namespace sch::kernels
