#pragma once

#include <functional>
#include <span>
#include <vector>

#include "sch/sparse.hpp"

namespace sch {

struct SolveReport {
  int iterations = 0;
  double final_residual_norm = 0.0;
  bool converged = false;
};

using PrecondFn = std::function<void(std::span<const double>, std::span<double>)>;

struct IterOptions {
  double tol = 1e-12;   // relative to ||b|| (+ tiny guard)
  int max_iter = 20000;
  bool jacobi = false;  // diagonal preconditioner (|diag| for minres)
  // When set, the system is singular with null space = constants on the
  // weighted support; rhs and iterates are projected to weighted mean zero
  // instead of pinning a node.
  const std::vector<double>* mean_zero_weights = nullptr;
  // Custom symmetric positive definite preconditioner; overrides jacobi.
  PrecondFn precond;
};

// Fixed-degree Chebyshev approximation of H^{-1} on a spectral interval
// [lo, hi] containing the spectrum of the SPD matrix H. A fixed polynomial
// is a linear symmetric operator, so it is a valid CG preconditioner and
// deterministic by construction.
class ChebyshevApprox {
 public:
  ChebyshevApprox(const SparseMatrix& H, double lo, double hi, int degree);
  void apply(std::span<const double> r, std::span<double> y) const;
  int degree() const { return degree_; }

 private:
  const SparseMatrix& matrix_;
  double theta_, delta_;
  int degree_;
  mutable std::vector<double> d_, res_;
};

// Conjugate gradients on a symmetric (positive definite on its range)
// matrix. x is the starting guess and carries back the solution. The
// reported residual is recomputed from scratch at exit.
SolveReport cg_solve(const SparseMatrix& A, std::span<const double> b, std::vector<double>& x,
                     const IterOptions& opt = {});

// MINRES for symmetric indefinite systems; same contract as cg_solve.
SolveReport minres_solve(const SparseMatrix& A, std::span<const double> b, std::vector<double>& x,
                         const IterOptions& opt = {});

// Subtract the weighted mean over entries with weight > 0; zero-weight
// entries are left untouched. Errors if the total weight is not positive.
std::vector<double> project_mean_zero(std::span<const double> v, std::span<const double> weights);
void project_mean_zero_inplace(std::span<double> v, std::span<const double> weights);

struct UzawaOptions {
  double tol = 1e-11;  // on momentum and divergence residuals, relative to ||f||
  int max_iter = 2000;
  double omega = 1.0;  // fixed step; 1 suits the unit-viscosity MAC Laplacian
  IterOptions inner;   // CG on the velocity block
  // Accelerate the pressure update with CG on the Schur complement instead
  // of the fixed-step sweep; same fixed point, far fewer outer iterations
  // on masked geometries. Disable to run the plain fixed-step iteration.
  bool accelerate = true;
};

struct SaddleSolution {
  std::vector<double> u;
  std::vector<double> p;
  SolveReport report;
};

// Uzawa iteration for [A B^T; B 0][u;p] = [f;0] with A SPD on the velocity
// space and B^T the discrete pressure gradient. p is returned with zero
// weighted mean. Optional warm starts come from u0/p0.
SaddleSolution uzawa_solve(const SparseMatrix& A, const SparseMatrix& B,
                           std::span<const double> f, std::span<const double> p_weights,
                           const UzawaOptions& opt = {},
                           const std::vector<double>* u0 = nullptr,
                           const std::vector<double>* p0 = nullptr);

} // namespace sch
