// Times the OpenMP kernels against their serial references and checks the
// two paths agree bitwise; run with --quick for the small CI variant.
#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sch/geometry.hpp"
#include "sch/kernels.hpp"
#include "sch/operators.hpp"
#include "sch/rng.hpp"
#include "sch/sparse.hpp"

using sch::kernels::axpy;
using sch::kernels::dot;

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <typename F>
double time_best_of(int reps, F&& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = now_seconds();
    body();
    best = std::min(best, now_seconds() - t0);
  }
  return best;
}

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  sch::SplitMix64 rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = rng.next_symmetric();
  return v;
}

// serial CSR matvec reference, same per-row accumulation order
void matvec_serial(const sch::SparseMatrix& m, const std::vector<double>& x,
                   std::vector<double>& y) {
  const auto& offs = m.row_offsets();
  const auto& cols = m.col_indices();
  const auto& vals = m.values();
  for (int r = 0; r < m.rows(); ++r) {
    double acc = 0.0;
    for (int p = offs[r]; p < offs[static_cast<std::size_t>(r) + 1]; ++p)
      acc += vals[p] * x[cols[p]];
    y[r] = acc;
  }
}

} // namespace

int main(int argc, char** argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--quick") == 0) quick = true;

  const std::size_t nvec = quick ? (1u << 16) : (1u << 22);
  const int grid = quick ? 64 : 512;
  const int reps = quick ? 3 : 7;

#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled at build time\n");
#endif
  std::printf("vector length %zu, grid %dx%d, best of %d\n\n", nvec, grid, grid, reps);

  const std::vector<double> a = random_vector(nvec, 1);
  const std::vector<double> b = random_vector(nvec, 2);

  int failures = 0;
  auto check = [&](const char* name, double got, double want) {
    if (std::memcmp(&got, &want, sizeof(double)) != 0) {
      std::printf("MISMATCH %s: %.17g vs %.17g\n", name, got, want);
      ++failures;
    }
  };

  {
    const double ts = time_best_of(reps, [&] { sch::kernels::serial::dot(a, b); });
    const double tp = time_best_of(reps, [&] { dot(a, b); });
    check("dot", dot(a, b), sch::kernels::serial::dot(a, b));
    std::printf("%-12s serial %8.3f ms   parallel %8.3f ms   speedup %5.2fx\n", "dot",
                ts * 1e3, tp * 1e3, ts / tp);
  }
  {
    std::vector<double> ys = b, yp = b;
    const double ts = time_best_of(reps, [&] { sch::kernels::serial::axpy(0.5, a, ys); });
    const double tp = time_best_of(reps, [&] { axpy(0.5, a, yp); });
    check("axpy", ys[nvec / 3], yp[nvec / 3]);
    std::printf("%-12s serial %8.3f ms   parallel %8.3f ms   speedup %5.2fx\n", "axpy",
                ts * 1e3, tp * 1e3, ts / tp);
  }
  {
    const sch::CellMask mask = sch::build_cell_mask(sch::CellGeometry::disc(0.25), grid);
    const sch::CellMap cells = sch::build_cell_map(mask);
    const sch::SparseMatrix L = sch::scalar_laplacian(mask, sch::Outer::Periodic, cells);
    const std::vector<double> x = random_vector(static_cast<std::size_t>(L.cols()), 3);
    std::vector<double> ys(L.rows()), yp(L.rows());
    const double ts = time_best_of(reps, [&] { matvec_serial(L, x, ys); });
    const double tp = time_best_of(reps, [&] { L.matvec(x, yp); });
    for (int r = 0; r < L.rows(); ++r)
      if (ys[r] != yp[r]) {
        ++failures;
        std::printf("MISMATCH matvec row %d\n", r);
        break;
      }
    std::printf("%-12s serial %8.3f ms   parallel %8.3f ms   speedup %5.2fx\n", "csr matvec",
                ts * 1e3, tp * 1e3, ts / tp);
  }

  if (failures) {
    std::printf("\n%d kernel mismatches\n", failures);
    return 1;
  }
  std::printf("\nall parallel kernels match their serial references bitwise\n");
  return 0;
}
