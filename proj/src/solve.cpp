#include "sch/solve.hpp"

#include <algorithm>
#include <cmath>

#include "sch/io.hpp"
#include "sch/kernels.hpp"

namespace sch {

namespace {

constexpr double kGuard = 1e-300;

void maybe_project(std::span<double> v, const IterOptions& opt) {
  if (opt.mean_zero_weights) project_mean_zero_inplace(v, *opt.mean_zero_weights);
}

std::vector<double> inverse_diagonal(const SparseMatrix& A, bool absolute) {
  std::vector<double> d = A.diagonal();
  for (double& x : d) {
    const double m = absolute ? std::fabs(x) : x;
    x = m > 0.0 ? 1.0 / m : 1.0;
  }
  return d;
}

double true_residual(const SparseMatrix& A, std::span<const double> b,
                     std::span<const double> x, std::vector<double>& scratch) {
  A.matvec(x, scratch);
  kernels::xpay(b, -1.0, scratch);  // scratch = b - A x
  return kernels::nrm2(scratch);
}

} // namespace

ChebyshevApprox::ChebyshevApprox(const SparseMatrix& H, double lo, double hi, int degree)
    : matrix_(H), theta_((hi + lo) / 2.0), delta_((hi - lo) / 2.0), degree_(degree),
      d_(static_cast<std::size_t>(H.rows())), res_(static_cast<std::size_t>(H.rows())) {
  if (!(lo > 0.0) || hi <= lo) throw SolverError("chebyshev: bad spectral interval");
}

void ChebyshevApprox::apply(std::span<const double> r, std::span<double> y) const {
  const std::size_t n = r.size();
  const double sigma1 = theta_ / delta_;
  double rho = 1.0 / sigma1;
  for (std::size_t i = 0; i < n; ++i) {
    d_[i] = r[i] / theta_;
    y[i] = d_[i];
  }
  for (int k = 2; k <= degree_; ++k) {
    const double rho_new = 1.0 / (2.0 * sigma1 - rho);
    matrix_.matvec(y, res_);
    const double c1 = rho_new * rho;
    const double c2 = 2.0 * rho_new / delta_;
    for (std::size_t i = 0; i < n; ++i) {
      d_[i] = c1 * d_[i] + c2 * (r[i] - res_[i]);
      y[i] += d_[i];
    }
    rho = rho_new;
  }
}

std::vector<double> project_mean_zero(std::span<const double> v, std::span<const double> weights) {
  std::vector<double> out(v.begin(), v.end());
  project_mean_zero_inplace(out, weights);
  return out;
}

void project_mean_zero_inplace(std::span<double> v, std::span<const double> weights) {
  double wsum = 0.0, acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (weights[i] > 0.0) {
      wsum += weights[i];
      acc += weights[i] * v[i];
    }
  }
  if (!(wsum > 0.0)) throw SolverError("project_mean_zero: total weight is zero");
  const double mean = acc / wsum;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (weights[i] > 0.0) v[i] -= mean;
}

SolveReport cg_solve(const SparseMatrix& A, std::span<const double> b, std::vector<double>& x,
                     const IterOptions& opt) {
  const std::size_t n = static_cast<std::size_t>(A.rows());
  if (x.size() != n) x.assign(n, 0.0);

  std::vector<double> bp(b.begin(), b.end());
  maybe_project(bp, opt);
  maybe_project(x, opt);

  const double bnorm = kernels::nrm2(bp);
  const double stop = opt.tol * (bnorm + kGuard);

  std::vector<double> r(n), z(n), p(n), q(n), scratch(n);
  A.matvec(x, r);
  kernels::xpay(bp, -1.0, r);  // r = b - A x

  std::vector<double> dinv;
  if (opt.jacobi && !opt.precond) dinv = inverse_diagonal(A, false);
  auto precondition = [&](const std::vector<double>& in, std::vector<double>& out) {
    if (opt.precond) {
      opt.precond(in, out);
    } else if (opt.jacobi) {
      for (std::size_t i = 0; i < n; ++i) out[i] = dinv[i] * in[i];
    } else {
      kernels::copy(in, out);
    }
  };

  SolveReport report;
  double rnorm = kernels::nrm2(r);
  if (rnorm <= stop) {
    report.final_residual_norm = true_residual(A, bp, x, scratch);
    report.converged = report.final_residual_norm <= stop;
    return report;
  }

  precondition(r, z);
  kernels::copy(z, p);
  double rho = kernels::dot(r, z);

  // exit when rounding stops further progress (residual plateau)
  double best_rnorm = rnorm;
  int stalled = 0;

  for (int it = 1; it <= opt.max_iter; ++it) {
    A.matvec(p, q);
    const double pq = kernels::dot(p, q);
    if (!(pq > 0.0) && !(pq < 0.0)) break;  // breakdown (zero or NaN curvature)
    const double alpha = rho / pq;
    kernels::axpy(alpha, p, x);
    kernels::axpy(-alpha, q, r);
    report.iterations = it;

    if (it % 64 == 0) {
      // refresh against drift, and keep singular systems on the mean-zero slice
      maybe_project(x, opt);
      A.matvec(x, r);
      kernels::xpay(bp, -1.0, r);
      maybe_project(r, opt);
      const double true_norm = kernels::nrm2(r);
      if (true_norm < 0.99 * best_rnorm) {
        best_rnorm = true_norm;
        stalled = 0;
      } else if (++stalled >= 4) {
        break;
      }
    }
    rnorm = kernels::nrm2(r);
    if (rnorm <= stop) {
      maybe_project(x, opt);
      const double actual = true_residual(A, bp, x, scratch);
      if (actual <= stop) {
        report.final_residual_norm = actual;
        report.converged = true;
        return report;
      }
      kernels::copy(scratch, r);  // continue from the true residual
      rnorm = actual;
    }
    precondition(r, z);
    const double rho_new = kernels::dot(r, z);
    const double beta = rho_new / rho;
    rho = rho_new;
    kernels::xpay(z, beta, p);
  }

  maybe_project(x, opt);
  report.final_residual_norm = true_residual(A, bp, x, scratch);
  report.converged = report.final_residual_norm <= stop;
  return report;
}

// Paige–Saunders MINRES with an optional |diag| preconditioner.
SolveReport minres_solve(const SparseMatrix& A, std::span<const double> b, std::vector<double>& x,
                         const IterOptions& opt) {
  const std::size_t n = static_cast<std::size_t>(A.rows());
  if (x.size() != n) x.assign(n, 0.0);

  std::vector<double> bp(b.begin(), b.end());
  maybe_project(bp, opt);
  maybe_project(x, opt);

  const double bnorm = kernels::nrm2(bp);
  const double stop = opt.tol * (bnorm + kGuard);

  std::vector<double> dinv;
  if (opt.jacobi) dinv = inverse_diagonal(A, true);
  auto apply_m = [&](const std::vector<double>& in, std::vector<double>& out) {
    if (opt.jacobi) {
      for (std::size_t i = 0; i < n; ++i) out[i] = dinv[i] * in[i];
    } else {
      kernels::copy(in, out);
    }
  };

  std::vector<double> r1(n), r2(n), y(n), v(n), w(n, 0.0), w1(n, 0.0), w2(n, 0.0), scratch(n);

  SolveReport report;
  A.matvec(x, r1);
  kernels::xpay(bp, -1.0, r1);  // r1 = b - A x
  kernels::copy(r1, r2);
  apply_m(r1, y);
  double beta1 = kernels::dot(r1, y);
  if (beta1 < 0.0) throw SolverError("minres: preconditioner is not positive definite");
  beta1 = std::sqrt(beta1);
  if (beta1 == 0.0 || kernels::nrm2(r1) <= stop) {
    report.final_residual_norm = true_residual(A, bp, x, scratch);
    report.converged = report.final_residual_norm <= stop;
    return report;
  }

  double oldb = 0.0, beta = beta1, dbar = 0.0, epsln = 0.0, phibar = beta1;
  double cs = -1.0, sn = 0.0;
  double window_phibar = phibar;
  int stalled = 0;

  for (int it = 1; it <= opt.max_iter; ++it) {
    const double s = 1.0 / beta;
    for (std::size_t i = 0; i < n; ++i) v[i] = s * y[i];
    A.matvec(v, y);
    if (it >= 2) kernels::axpy(-beta / oldb, r1, y);
    const double alfa = kernels::dot(v, y);
    kernels::axpy(-alfa / beta, r2, y);
    kernels::copy(r2, r1);
    kernels::copy(y, r2);
    apply_m(r2, y);
    oldb = beta;
    double beta2 = kernels::dot(r2, y);
    if (beta2 < 0.0) throw SolverError("minres: preconditioner breakdown");
    beta = std::sqrt(beta2);

    const double oldeps = epsln;
    const double delta = cs * dbar + sn * alfa;
    const double gbar = sn * dbar - cs * alfa;
    epsln = sn * beta;
    dbar = -cs * beta;
    double gamma = std::sqrt(gbar * gbar + beta * beta);
    gamma = std::max(gamma, 1e-300);
    cs = gbar / gamma;
    sn = beta / gamma;
    const double phi = cs * phibar;
    phibar = sn * phibar;

    kernels::copy(w2, w1);
    kernels::copy(w, w2);
    for (std::size_t i = 0; i < n; ++i)
      w[i] = (v[i] - oldeps * w1[i] - delta * w2[i]) / gamma;
    kernels::axpy(phi, w, x);
    report.iterations = it;

    if (it % 64 == 0) {
      if (phibar < 0.99 * window_phibar) {
        window_phibar = phibar;
        stalled = 0;
      } else if (++stalled >= 4) {
        break;  // rounding floor reached
      }
    }
    if (phibar <= stop || it == opt.max_iter) {
      maybe_project(x, opt);
      const double actual = true_residual(A, bp, x, scratch);
      if (actual <= stop) {
        report.final_residual_norm = actual;
        report.converged = true;
        return report;
      }
      if (it == opt.max_iter) break;
    }
  }

  maybe_project(x, opt);
  report.final_residual_norm = true_residual(A, bp, x, scratch);
  report.converged = report.final_residual_norm <= stop;
  return report;
}

namespace {

struct SaddleWork {
  const SparseMatrix& A;
  const SparseMatrix& B;
  SparseMatrix Bt;
  std::span<const double> f;
  std::span<const double> p_weights;
  const UzawaOptions& opt;
  double scale;
  std::vector<double> u, rhs, gp, au, d;

  SaddleWork(const SparseMatrix& a, const SparseMatrix& b, std::span<const double> f_,
             std::span<const double> w, const UzawaOptions& o)
      : A(a), B(b), Bt(b.transpose()), f(f_), p_weights(w), opt(o),
        scale(kernels::nrm2(f_) + kGuard),
        u(static_cast<std::size_t>(a.rows()), 0.0),
        rhs(u.size()), gp(u.size()), au(u.size()),
        d(static_cast<std::size_t>(b.rows())) {}

  // u <- A^{-1} (f - B^T p), warm-started from the previous velocity
  void velocity_solve(std::span<const double> p, double inner_tol) {
    Bt.matvec(p, gp);
    for (std::size_t i = 0; i < u.size(); ++i) rhs[i] = f[i] - gp[i];
    IterOptions inner = opt.inner;
    inner.tol = inner_tol;
    const SolveReport ir = cg_solve(A, rhs, u, inner);
    if (!ir.converged && ir.final_residual_norm > opt.tol * scale)
      throw SolverError("uzawa: velocity block solve failed");
  }

  double momentum_residual(std::span<const double> p) {
    Bt.matvec(p, gp);
    A.matvec(u, au);
    double mom_sq = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double r = f[i] - au[i] - gp[i];
      mom_sq += r * r;
    }
    return std::sqrt(mom_sq);
  }
};

// Plain fixed-step pressure sweep.
SolveReport uzawa_fixed_step(SaddleWork& w, std::vector<double>& p) {
  SolveReport report;
  double div_rel = 1.0;
  for (int outer = 1; outer <= w.opt.max_iter; ++outer) {
    w.velocity_solve(p, std::clamp(0.1 * div_rel, w.opt.tol * 0.05, 1e-2));
    w.B.matvec(w.u, w.d);
    const double div_res = kernels::nrm2(w.d);
    div_rel = div_res / w.scale;

    kernels::axpy(w.opt.omega, w.d, p);
    project_mean_zero_inplace(p, w.p_weights);
    report.iterations = outer;

    const double mom_res = w.momentum_residual(p);
    report.final_residual_norm = std::sqrt(mom_res * mom_res + div_res * div_res);
    if (mom_res <= w.opt.tol * w.scale && div_res <= w.opt.tol * w.scale) {
      report.converged = true;
      return report;
    }
  }
  report.converged = false;
  return report;
}

// CG on the Schur complement S = B A^{-1} B^T (positive semidefinite with
// the constant-pressure null space projected out). Runs in two sweeps: a
// loose velocity tolerance carries the bulk of the reduction, a tight one
// restarts from the result and secures the final digits.
SolveReport uzawa_schur_cg(SaddleWork& w, std::vector<double>& p) {
  const std::size_t np = p.size();
  SolveReport report;

  const double tight_tol = std::max(w.opt.tol * 1e-2, 1e-13);
  const double loose_tol = std::max(1e-6, tight_tol);

  for (const double inner_tol : {loose_tol, tight_tol}) {
    std::vector<double> uw = w.u;  // scratch velocity for S applications

    auto apply_schur = [&](std::span<const double> x, std::span<double> y) {
      w.Bt.matvec(x, w.gp);
      IterOptions inner = w.opt.inner;
      inner.tol = inner_tol;
      const SolveReport ir = cg_solve(w.A, w.gp, uw, inner);
      if (!ir.converged && ir.final_residual_norm > w.opt.tol * w.scale)
        throw SolverError("uzawa: Schur application failed");
      w.B.matvec(uw, y);
    };

    // g = B A^{-1} f
    w.velocity_solve(std::vector<double>(np, 0.0), inner_tol);
    std::vector<double> g(np);
    w.B.matvec(w.u, g);
    project_mean_zero_inplace(g, w.p_weights);
    const double gnorm = kernels::nrm2(g) + kGuard;
    // the loose sweep stops where velocity noise would start to dominate
    const double target =
        inner_tol == loose_tol && loose_tol > tight_tol
            ? std::max(0.05 * w.opt.tol, 20.0 * loose_tol) * gnorm
            : 0.05 * w.opt.tol * gnorm;

    std::vector<double> r(np), q(np), dir(np);
    apply_schur(p, r);
    kernels::xpay(g, -1.0, r);  // r = g - S p
    project_mean_zero_inplace(r, w.p_weights);
    kernels::copy(r, dir);
    double rho = kernels::dot(r, r);
    double best_rho = rho;
    int stalled = 0;

    for (int it = 1; it <= w.opt.max_iter; ++it) {
      ++report.iterations;
      if (std::sqrt(rho) <= target) break;
      apply_schur(dir, q);
      project_mean_zero_inplace(q, w.p_weights);
      const double dq = kernels::dot(dir, q);
      if (!(dq > 0.0)) break;
      const double alpha = rho / dq;
      kernels::axpy(alpha, dir, p);
      kernels::axpy(-alpha, q, r);
      const double rho_new = kernels::dot(r, r);
      // inexact applications put a floor under the reachable residual
      if (rho_new < 0.98 * best_rho) {
        best_rho = rho_new;
        stalled = 0;
      } else if (++stalled >= 12) {
        rho = rho_new;
        break;
      }
      kernels::xpay(r, rho_new / rho, dir);
      rho = rho_new;
    }
    project_mean_zero_inplace(p, w.p_weights);
    if (loose_tol == tight_tol) break;  // nothing to gain from a second sweep
  }

  // final velocity consistent with the converged pressure
  w.velocity_solve(p, tight_tol);
  w.B.matvec(w.u, w.d);
  const double div_res = kernels::nrm2(w.d);
  const double mom_res = w.momentum_residual(p);
  report.final_residual_norm = std::sqrt(mom_res * mom_res + div_res * div_res);
  report.converged = mom_res <= w.opt.tol * w.scale && div_res <= w.opt.tol * w.scale;
  return report;
}

} // namespace

SaddleSolution uzawa_solve(const SparseMatrix& A, const SparseMatrix& B,
                           std::span<const double> f, std::span<const double> p_weights,
                           const UzawaOptions& opt, const std::vector<double>* u0,
                           const std::vector<double>* p0) {
  const std::size_t nu = static_cast<std::size_t>(A.rows());
  const std::size_t np = static_cast<std::size_t>(B.rows());

  SaddleWork work(A, B, f, p_weights, opt);
  std::vector<double> p = p0 ? *p0 : std::vector<double>(np, 0.0);
  if (u0) work.u = *u0;
  if (work.u.size() != nu || p.size() != np)
    throw SolverError("uzawa: warm-start size mismatch");
  project_mean_zero_inplace(p, p_weights);

  SolveReport report = opt.accelerate ? uzawa_schur_cg(work, p) : uzawa_fixed_step(work, p);
  if (!report.converged && opt.accelerate) {
    // polish with the plain sweep if CG stopped shy of the target
    SolveReport polish = uzawa_fixed_step(work, p);
    polish.iterations += report.iterations;
    report = polish;
  }
  return {std::move(work.u), std::move(p), report};
}

} // namespace sch
