#include <doctest.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sch/kernels.hpp"
#include "sch/rng.hpp"

using namespace sch;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = rng.next_symmetric();
  return v;
}

} // namespace

TEST_CASE("parallel reductions match the serial reference bitwise") {
  // sizes straddling the block boundary
  for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{17}, kernels::kBlock - 1,
                        kernels::kBlock, kernels::kBlock + 1, std::size_t{100003}}) {
    const auto a = random_vector(n, 10 + n);
    const auto b = random_vector(n, 20 + n);
    CHECK(kernels::dot(a, b) == kernels::serial::dot(a, b));
    CHECK(kernels::sum(a) == kernels::serial::sum(a));
    CHECK(kernels::nrm2(a) == kernels::serial::nrm2(a));
  }
}

TEST_CASE("reductions are independent of the thread count") {
  const auto a = random_vector(kernels::kBlock * 7 + 5, 1);
  const auto b = random_vector(a.size(), 2);
#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const double d1 = kernels::dot(a, b);
  omp_set_num_threads(saved > 1 ? saved : 2);
  const double d2 = kernels::dot(a, b);
  omp_set_num_threads(saved);
  CHECK(d1 == d2);
#else
  CHECK(kernels::dot(a, b) == kernels::serial::dot(a, b));
#endif
}

TEST_CASE("elementwise kernels match serial variants") {
  const auto x = random_vector(12345, 3);
  auto y1 = random_vector(x.size(), 4);
  auto y2 = y1;
  kernels::axpy(0.37, x, y1);
  kernels::serial::axpy(0.37, x, y2);
  CHECK(y1 == y2);
  kernels::xpay(x, -1.25, y1);
  kernels::serial::xpay(x, -1.25, y2);
  CHECK(y1 == y2);
  kernels::scale(3.5, y1);
  kernels::serial::scale(3.5, y2);
  CHECK(y1 == y2);
}
