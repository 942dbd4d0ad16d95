#include "sch/macro.hpp"

#include <cmath>

#include "sch/io.hpp"
#include "sch/kernels.hpp"
#include "sch/operators.hpp"

namespace sch {

std::string to_string(Orientation o) {
  return o == Orientation::AsWritten ? "aswritten" : "gradientflow";
}

Orientation orientation_from_string(const std::string& s) {
  if (s == "aswritten") return Orientation::AsWritten;
  if (s == "gradientflow") return Orientation::GradientFlow;
  throw ConfigError("unknown orientation: " + s + " (expected aswritten | gradientflow)");
}

int MacroParams::steps() const {
  const double raw = T / dt;
  const int n_steps = static_cast<int>(std::llround(raw));
  if (std::fabs(n_steps - raw) > 1e-9 * std::max(1.0, raw))
    throw ConfigError("T must be an integer multiple of dt");
  return n_steps;
}

void MacroParams::validate() const {
  if (n < 4) throw ConfigError("macro resolution must be >= 4");
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(lambda > 0.0) || !(mu > 0.0)) throw ConfigError("lambda and mu must be positive");
  (void)steps();
  if (orientation == Orientation::AsWritten && sigma_bar() == 0.0)
    throw ConfigError("macro equation degenerate (sigma_bar = 0); supply sigma_bar override");
}

namespace {

// Face fluxes of the Darcy law on the n x n box (no wraparound; boundary
// faces carry zero flux). Interior x-faces are indexed (i,j), i in 1..n-1.
struct DarcyAssembly {
  int n;
  double h;
  double Ks[2][2];  // K / mu
  double Ms[2];     // (lambda / 2 mu) M

  // tangential pressure gradient averaged from the available differences
  double dtan_x(const std::vector<double>& p, int i, int j) const {
    double acc = 0.0;
    int cnt = 0;
    for (int ci : {i - 1, i}) {
      if (j + 1 < n) {
        acc += p[(j + 1) * n + ci] - p[j * n + ci];
        ++cnt;
      }
      if (j - 1 >= 0) {
        acc += p[j * n + ci] - p[(j - 1) * n + ci];
        ++cnt;
      }
    }
    return cnt ? acc / (cnt * h) : 0.0;
  }
  double dtan_y(const std::vector<double>& p, int i, int j) const {
    double acc = 0.0;
    int cnt = 0;
    for (int cj : {j - 1, j}) {
      if (i + 1 < n) {
        acc += p[cj * n + i + 1] - p[cj * n + i];
        ++cnt;
      }
      if (i - 1 >= 0) {
        acc += p[cj * n + i] - p[cj * n + i - 1];
        ++cnt;
      }
    }
    return cnt ? acc / (cnt * h) : 0.0;
  }

  double flux_x(const std::vector<double>& p, const ScalarField& g, int i, int j) const {
    const double dn = (p[j * n + i] - p[j * n + i - 1]) / h;
    const double gface = 0.5 * (g.at(i - 1, j) + g.at(i, j));
    return -(Ks[0][0] * dn + Ks[0][1] * dtan_x(p, i, j)) - Ms[0] * gface;
  }
  double flux_y(const std::vector<double>& p, const ScalarField& g, int i, int j) const {
    const double dn = (p[j * n + i] - p[(j - 1) * n + i]) / h;
    const double gface = 0.5 * (g.at(i, j - 1) + g.at(i, j));
    return -(Ks[1][1] * dn + Ks[0][1] * dtan_y(p, i, j)) - Ms[1] * gface;
  }

  // divergence of the flux field for given p (linear part) plus drive
  std::vector<double> divergence(const std::vector<double>& p, const ScalarField& g) const {
    std::vector<double> div(static_cast<std::size_t>(n) * n, 0.0);
    for (int j = 0; j < n; ++j) {
      for (int i = 1; i < n; ++i) {
        const double fx = flux_x(p, g, i, j);
        div[j * n + i] -= fx / h;
        div[j * n + i - 1] += fx / h;
      }
    }
    for (int j = 1; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const double fy = flux_y(p, g, i, j);
        div[j * n + i] -= fy / h;
        div[(j - 1) * n + i] += fy / h;
      }
    }
    return div;
  }
};

} // namespace

DarcyResult darcy_solve(const ScalarField& c, const ScalarField& dcdt, const MacroParams& params) {
  if (!params.coeffs.K_defined)
    throw SolverError("darcy: permeability is not defined for this geometry");
  const int n = params.n;
  if (c.n != n || dcdt.n != n) throw SolverError("darcy: field resolution mismatch");

  DarcyAssembly asmb;
  asmb.n = n;
  asmb.h = c.h;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) asmb.Ks[a][b] = params.coeffs.K[a][b] / params.mu;
  asmb.Ms[0] = 0.5 * params.lambda / params.mu * params.coeffs.M[0];
  asmb.Ms[1] = 0.5 * params.lambda / params.mu * params.coeffs.M[1];

  // d/dt (c^2) = 2 c dcdt
  ScalarField g(n);
  for (std::size_t q = 0; q < g.v.size(); ++q) g.v[q] = 2.0 * c.v[q] * dcdt.v[q];

  const std::size_t m = static_cast<std::size_t>(n) * n;
  const std::vector<double> zero(m, 0.0);

  // rhs = -div(drive part); matrix rows by probing the linear part
  std::vector<double> rhs = asmb.divergence(zero, g);
  for (double& v : rhs) v = -v;

  // triplets straight from the flux stencils: each face flux is linear in p,
  // and its divergence scatters into the two adjacent cells
  std::vector<Triplet> t;
  t.reserve(m * 16);
  auto scatter = [&](int cell_hi, int cell_lo,
                     const std::vector<std::pair<int, double>>& flux_coefs) {
    for (const auto& [col, w] : flux_coefs) {
      t.push_back({cell_hi, col, -w / asmb.h});
      t.push_back({cell_lo, col, w / asmb.h});
    }
  };
  std::vector<std::pair<int, double>> coefs;
  for (int j = 0; j < n; ++j) {
    for (int i = 1; i < n; ++i) {
      coefs.clear();
      coefs.push_back({j * n + i, -asmb.Ks[0][0] / asmb.h});
      coefs.push_back({j * n + i - 1, asmb.Ks[0][0] / asmb.h});
      if (asmb.Ks[0][1] != 0.0) {
        int cnt = (j + 1 < n ? 2 : 0) + (j - 1 >= 0 ? 2 : 0);
        if (cnt) {
          const double w = asmb.Ks[0][1] / (cnt * asmb.h);
          for (int ci : {i - 1, i}) {
            if (j + 1 < n) {
              coefs.push_back({(j + 1) * n + ci, -w});
              coefs.push_back({j * n + ci, w});
            }
            if (j - 1 >= 0) {
              coefs.push_back({j * n + ci, -w});
              coefs.push_back({(j - 1) * n + ci, w});
            }
          }
        }
      }
      scatter(j * n + i, j * n + i - 1, coefs);
    }
  }
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      coefs.clear();
      coefs.push_back({j * n + i, -asmb.Ks[1][1] / asmb.h});
      coefs.push_back({(j - 1) * n + i, asmb.Ks[1][1] / asmb.h});
      if (asmb.Ks[0][1] != 0.0) {
        int cnt = (i + 1 < n ? 2 : 0) + (i - 1 >= 0 ? 2 : 0);
        if (cnt) {
          const double w = asmb.Ks[0][1] / (cnt * asmb.h);
          for (int cj : {j - 1, j}) {
            if (i + 1 < n) {
              coefs.push_back({cj * n + i + 1, -w});
              coefs.push_back({cj * n + i, w});
            }
            if (i - 1 >= 0) {
              coefs.push_back({cj * n + i, -w});
              coefs.push_back({cj * n + i - 1, w});
            }
          }
        }
      }
      scatter(j * n + i, (j - 1) * n + i, coefs);
    }
  }
  SparseMatrix T = SparseMatrix::assemble(std::move(t), static_cast<int>(m),
                                          static_cast<int>(m));

  std::vector<double> weights(m, c.h * c.h);
  IterOptions iter = params.darcy_solver;
  iter.mean_zero_weights = &weights;
  std::vector<double> p(m, 0.0);
  const SolveReport rep = cg_solve(T, rhs, p, iter);
  if (!rep.converged) throw SolverError("darcy: CG did not converge");

  DarcyResult out;
  out.report = rep;
  out.p = ScalarField(n);
  out.p.v = p;
  out.u = StaggeredField(n);
  for (int j = 0; j < n; ++j)
    for (int i = 1; i < n; ++i) out.u.ux[j * n + i] = asmb.flux_x(p, g, i, j);
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < n; ++i) out.u.uy[j * n + i] = asmb.flux_y(p, g, i, j);

  const std::vector<double> div = asmb.divergence(p, g);
  out.max_div = max_abs(div);
  return out;
}

namespace {

struct MacroOperator {
  SparseMatrix matrix;
  double mass_coef;  // sigma_bar/dt +- S
  bool spd;
};

MacroOperator macro_operator(const MacroParams& params) {
  MacroOperator op;
  const double sb = params.sigma_bar();
  const SparseMatrix stiffness = tensor_stiffness(params.n, params.coeffs.D);
  const double h2 = 1.0 / (static_cast<double>(params.n) * params.n);
  std::vector<Triplet> t;
  const auto& offs = stiffness.row_offsets();
  const auto& cols = stiffness.col_indices();
  const auto& vals = stiffness.values();
  const int m = params.n * params.n;

  if (params.orientation == Orientation::GradientFlow) {
    op.mass_coef = sb / params.dt + params.S;
    for (int r = 0; r < m; ++r) {
      for (int p = offs[r]; p < offs[static_cast<std::size_t>(r) + 1]; ++p)
        t.push_back({r, cols[p], vals[p]});
      t.push_back({r, r, op.mass_coef * h2});
    }
    op.spd = op.mass_coef > 0.0;
  } else {
    op.mass_coef = sb / params.dt - params.S;
    for (int r = 0; r < m; ++r) {
      for (int p = offs[r]; p < offs[static_cast<std::size_t>(r) + 1]; ++p)
        t.push_back({r, cols[p], -vals[p]});
      t.push_back({r, r, op.mass_coef * h2});
    }
    op.spd = false;
  }
  op.matrix = SparseMatrix::assemble(std::move(t), m, m, true);
  return op;
}

} // namespace

MacroStepResult macro_ch_step(const ScalarField& c, const MacroParams& params) {
  params.validate();
  if (c.n != params.n) throw SolverError("macro step: field resolution mismatch");
  const int m = params.n * params.n;
  const double h2 = c.h * c.h;
  const MacroOperator op = macro_operator(params);

  std::vector<double> rhs(static_cast<std::size_t>(m));
  const double sb = params.sigma_bar();
  for (int q = 0; q < m; ++q) {
    const double cv = c.v[q];
    const double fv = double_well(cv).f;
    if (params.orientation == Orientation::GradientFlow)
      rhs[q] = h2 * ((sb / params.dt + params.S) * cv - fv);
    else
      rhs[q] = h2 * ((sb / params.dt - params.S) * cv + fv);
  }

  std::vector<double> x = c.v;  // warm start from the current state
  const SolveReport rep = op.spd ? cg_solve(op.matrix, rhs, x, params.ch_solver)
                                 : minres_solve(op.matrix, rhs, x, params.ch_solver);
  if (!rep.converged) throw SolverError("macro step: linear solve did not converge");

  MacroStepResult out;
  out.report = rep;
  out.c_next = ScalarField(params.n);
  out.c_next.v = x;
  out.wbar = ScalarField(params.n);
  for (int q = 0; q < m; ++q) out.wbar.v[q] = sb * (x[q] - c.v[q]) / params.dt;

  std::vector<double> ax(static_cast<std::size_t>(m));
  op.matrix.matvec(x, ax);
  kernels::xpay(rhs, -1.0, ax);
  out.equation_residual = kernels::nrm2(ax);
  return out;
}

const std::vector<std::string>& MacroResult::ledger_columns() {
  static const std::vector<std::string> cols = {"step", "t",       "mass",   "c_l2",
                                                "c_linf", "u_l2", "max_div", "equation_residual"};
  return cols;
}

std::string MacroResult::ledger_csv() const {
  std::string out;
  const auto& cols = ledger_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ',';
    out += cols[i];
  }
  out += '\n';
  for (const MacroLedgerRow& r : ledger) {
    const double vals[8] = {static_cast<double>(r.step), r.t,      r.mass,    r.c_l2,
                            r.c_linf,                    r.u_l2,   r.max_div, r.equation_residual};
    for (int i = 0; i < 8; ++i) {
      if (i) out += ',';
      out += format_double(vals[i]);
    }
    out += '\n';
  }
  return out;
}

MacroResult run_macro(const MacroParams& params, const InitialData& init) {
  params.validate();
  const int n = params.n;
  const double h = 1.0 / n;
  const double h2 = h * h;

  MacroResult result;
  MacroState state;
  state.c = ScalarField(n);
  state.wbar = ScalarField(n);
  state.p = ScalarField(n);
  state.u = StaggeredField(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) state.c.at(i, j) = init.eval((i + 0.5) * h, (j + 0.5) * h);

  auto record = [&](double residual) {
    MacroLedgerRow row;
    row.step = state.step;
    row.t = state.t;
    double mass = 0.0, l2 = 0.0, linf = 0.0;
    for (double v : state.c.v) {
      mass += v;
      l2 += v * v;
      linf = std::max(linf, std::fabs(v));
    }
    row.mass = mass * h2;
    row.c_l2 = std::sqrt(l2 * h2);
    row.c_linf = linf;
    double ul2 = 0.0;
    for (double v : state.u.ux) ul2 += v * v;
    for (double v : state.u.uy) ul2 += v * v;
    row.u_l2 = std::sqrt(ul2 * h2);
    row.max_div = 0.0;
    row.equation_residual = residual;
    result.ledger.push_back(row);
  };

  record(0.0);
  result.snapshots.push_back(state);

  const int steps = params.steps();
  for (int stepno = 1; stepno <= steps; ++stepno) {
    const MacroStepResult step = macro_ch_step(state.c, params);
    ScalarField dcdt(n);
    for (std::size_t q = 0; q < dcdt.v.size(); ++q)
      dcdt.v[q] = (step.c_next.v[q] - state.c.v[q]) / params.dt;
    state.c = step.c_next;
    state.wbar = step.wbar;

    const DarcyResult darcy = darcy_solve(state.c, dcdt, params);
    state.u = darcy.u;
    state.p = darcy.p;
    state.t = stepno * params.dt;
    state.step = stepno;

    record(step.equation_residual);
    result.ledger.back().max_div = darcy.max_div;

    double linf = 0.0;
    for (double v : state.c.v) linf = std::max(linf, std::fabs(v));
    if (linf > params.growth_guard)
      throw SolverError("macro growth guard tripped at step " + std::to_string(stepno) +
                        " (|c|_inf = " + format_double(linf) + ")");

    const bool snap = (params.snapshot_stride > 0 && stepno % params.snapshot_stride == 0) ||
                      stepno == steps;
    if (snap) result.snapshots.push_back(state);
  }
  return result;
}

} // namespace sch
