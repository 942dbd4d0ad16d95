#include "sch/micro.hpp"

#include <cmath>
#include <numbers>

#include "sch/io.hpp"
#include "sch/kernels.hpp"

namespace sch {

DoubleWell double_well(double s) {
  const double q = s * s - 1.0;
  return {0.25 * q * q, s * s * s - s};
}

int MicroParams::steps() const {
  const double raw = T / dt;
  const int n = static_cast<int>(std::llround(raw));
  if (std::fabs(n - raw) > 1e-9 * std::max(1.0, raw))
    throw ConfigError("T must be an integer multiple of dt");
  return n;
}

void MicroParams::validate() const {
  if (k < 1) throw ConfigError("eps must be 1/k with integer k >= 1");
  if (n_cell < 4) throw ConfigError("N must be >= 4");
  if (!(lambda > 0.0) || !(mu > 0.0)) throw ConfigError("lambda and mu must be positive");
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (T < 0.0) throw ConfigError("T must be nonnegative");
  if (S < 0.0) throw ConfigError("S must be nonnegative");
  const bool canonical = alpha == 2.0 && beta == 1.0 && gamma == 0.0;
  if (!canonical && !exponent_override)
    throw ConfigError("scaling exponents are fixed to alpha=2 beta=1 gamma=0; set "
                      "exponent_override=1 to experiment");
  (void)steps();
}

const std::vector<std::string>& EnergyLedger::columns() {
  static const std::vector<std::string> cols = {
      "step", "t",          "E",          "D_u",       "D_w",  "mass",
      "grad_u_l2", "grad_w_l2", "grad_c_l2", "c_l4", "w_l2", "dtc_dual"};
  return cols;
}

std::string EnergyLedger::to_csv() const {
  std::string out;
  const auto& cols = columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ',';
    out += cols[i];
  }
  out += '\n';
  for (const LedgerRow& r : rows) {
    const double vals[12] = {static_cast<double>(r.step),
                             r.t,
                             r.E,
                             r.D_u,
                             r.D_w,
                             r.mass,
                             r.grad_u_l2,
                             r.grad_w_l2,
                             r.grad_c_l2,
                             r.c_l4,
                             r.w_l2,
                             r.dtc_dual};
    for (int i = 0; i < 12; ++i) {
      if (i) out += ',';
      out += format_double(vals[i]);
    }
    out += '\n';
  }
  return out;
}

const char* MonitorReport::name(int i) {
  static const char* names[kCount] = {"sqrt_mu_eps_grad_u_l2t",  "sqrt_lambda_eps_grad_w_l2t",
                                      "grad_c_linf_l2",          "c_linf_l4",
                                      "w_l2t",                   "dtc_dual_l2t"};
  return names[i];
}

MonitorReport estimate_report(const EnergyLedger& ledger, const MicroParams& params) {
  if (ledger.rows.empty()) throw SolverError("estimate_report: empty ledger");
  const double eps = params.eps();
  double gu2 = 0.0, gw2 = 0.0, w2 = 0.0, dual2 = 0.0;
  double gc_sup = 0.0, c4_sup = 0.0;
  for (std::size_t i = 0; i < ledger.rows.size(); ++i) {
    const LedgerRow& r = ledger.rows[i];
    gc_sup = std::max(gc_sup, r.grad_c_l2);
    c4_sup = std::max(c4_sup, r.c_l4);
    if (i > 0) {
      gu2 += params.dt * r.grad_u_l2 * r.grad_u_l2;
      gw2 += params.dt * r.grad_w_l2 * r.grad_w_l2;
      w2 += params.dt * r.w_l2 * r.w_l2;
      dual2 += params.dt * r.dtc_dual * r.dtc_dual;
    }
  }
  // a ledger with only the initial row still reports its instantaneous norms
  if (ledger.rows.size() == 1) {
    const LedgerRow& r = ledger.rows[0];
    gu2 = r.grad_u_l2 * r.grad_u_l2;
    gw2 = r.grad_w_l2 * r.grad_w_l2;
    w2 = r.w_l2 * r.w_l2;
  }
  MonitorReport rep;
  rep.values[0] = std::sqrt(params.mu) * eps * std::sqrt(gu2);
  rep.values[1] = std::sqrt(params.lambda) * std::pow(eps, params.alpha / 2.0) * std::sqrt(gw2);
  rep.values[2] = std::sqrt(params.lambda / 2.0) * gc_sup;
  rep.values[3] = c4_sup;
  rep.values[4] = std::sqrt(w2);
  rep.values[5] = std::sqrt(dual2);
  return rep;
}

InitialData InitialData::parse(const std::string& text, std::uint64_t seed) {
  InitialData init;
  if (text.rfind("constant:", 0) == 0) {
    init.kind = Kind::Constant;
    try {
      init.value = std::stod(text.substr(9));
    } catch (const std::exception&) {
      throw ConfigError("malformed c0 value: " + text);
    }
    if (std::fabs(init.value) > 1.0) throw ConfigError("c0 constant must lie in [-1,1]");
    return init;
  }
  if (text == "stripe") {
    init.kind = Kind::Stripe;
    return init;
  }
  if (text == "random") {
    init.kind = Kind::Random;
    // low-frequency trigonometric polynomial; coefficients depend only on
    // the seed, so every resolution samples the same macroscopic function
    SplitMix64 rng = SplitMix64::stream(seed, 1);
    double norm = 0.0;
    for (int my = 0; my < 4; ++my) {
      for (int mx = 0; mx < 4; ++mx) {
        if (mx == 0 && my == 0) continue;
        Mode m;
        m.mx = mx;
        m.my = my;
        m.amp = rng.next_symmetric() / (1.0 + mx * mx + my * my);
        m.phase = 2.0 * std::numbers::pi * rng.next_double();
        norm += std::fabs(m.amp);
        init.modes_.push_back(m);
      }
    }
    for (Mode& m : init.modes_) m.amp *= 0.85 / norm;  // |c0| <= 0.85 pointwise
    return init;
  }
  throw ConfigError("unknown c0 spec: " + text + " (expected constant:<v> | random | stripe)");
}

double InitialData::eval(double x1, double x2) const {
  switch (kind) {
    case Kind::Constant:
      return value;
    case Kind::Stripe:
      return std::tanh((0.25 - std::fabs(x2 - 0.5)) / 0.05);
    case Kind::Random: {
      double acc = 0.0;
      for (const Mode& m : modes_)
        acc += m.amp * std::cos(2.0 * std::numbers::pi * (m.mx * x1 + m.my * x2) + m.phase);
      return acc;
    }
  }
  return 0.0;
}

MicroStokes::MicroStokes(const DomainMask& mask, const MicroParams& params,
                         const StokesOperators& ops)
    : mask_(mask), params_(params), ops_(ops) {
  warm_u_.assign(static_cast<std::size_t>(ops_.faces.count()), 0.0);
  warm_p_.assign(static_cast<std::size_t>(ops_.cells.count), 0.0);
}

std::pair<StaggeredField, ScalarField> MicroStokes::solve(const ScalarField& c,
                                                          const ScalarField& w) {
  const int n = mask_.n;
  const double eps = params_.eps();
  const double visc = params_.mu * eps * eps;
  // unit-viscosity normalization: -lap(u) + grad(p/visc) = f/visc
  const double coef = -params_.lambda / (params_.mu * eps);

  std::vector<double> f(static_cast<std::size_t>(ops_.faces.count()), 0.0);
  for (int q = 0; q < ops_.faces.count_x; ++q) {
    const int g = ops_.faces.to_grid_x[q];
    const int i = g % n, j = g / n;
    const int left = mask_.idx(i - 1, j);
    f[q] = coef * 0.5 * (c.v[left] + c.v[g]) * (w.v[g] - w.v[left]) / mask_.h;
  }
  for (int q = 0; q < ops_.faces.count_y; ++q) {
    const int g = ops_.faces.to_grid_y[q];
    const int i = g % n, j = g / n;
    const int down = mask_.idx(i, j - 1);
    f[ops_.faces.count_x + q] =
        coef * 0.5 * (c.v[down] + c.v[g]) * (w.v[g] - w.v[down]) / mask_.h;
  }

  const SaddleSolution sol = uzawa_solve(ops_.A, ops_.B, f, ops_.cells.weights,
                                         params_.stokes_solver, &warm_u_, &warm_p_);
  if (!sol.report.converged)
    throw SolverError("pore-scale Stokes solve failed (residual " +
                      format_double(sol.report.final_residual_norm) + ")");
  warm_u_ = sol.u;
  warm_p_ = sol.p;
  last_report = sol.report;

  std::pair<StaggeredField, ScalarField> out{StaggeredField(n), ScalarField(n)};
  prolong_faces(sol.u, ops_.faces, out.first);
  std::vector<double> p = sol.p;
  kernels::scale(visc, p);
  prolong_cells(p, ops_.cells, out.second);
  return out;
}

CHStepper::CHStepper(const DomainMask& mask, const MicroParams& params)
    : mask_(mask), params_(params), cells_(build_cell_map(mask)) {
  laplacian_ = scalar_laplacian(mask, Outer::Walled, cells_);
  const int m = cells_.count;
  const double eps = params.eps();
  const double diff = params.dt * std::pow(eps, params.alpha);
  const double eg = std::pow(eps, params.gamma);

  // One step couples the two equations into the symmetric pair system
  //   [ eps^g L + S I     -I          ] [c']   [ S c - f(c)             ]
  //   [ -I                -dt eps^a L ] [w'] = [ -c + dt eps^b div(u c) ]
  // Eliminating w' gives its positive definite condensation in c',
  //   [ (1/dt) I + eps^a L (eps^g L + S I) ] c' = rhs,
  // the default solve path; w' is recovered from the first equation.
  std::vector<Triplet> t;
  t.reserve(laplacian_.nnz() * 2 + static_cast<std::size_t>(m) * 4);
  const auto& offs = laplacian_.row_offsets();
  const auto& cols = laplacian_.col_indices();
  const auto& vals = laplacian_.values();
  for (int r = 0; r < m; ++r) {
    for (int p = offs[r]; p < offs[static_cast<std::size_t>(r) + 1]; ++p) {
      t.push_back({r, cols[p], eg * vals[p]});
      t.push_back({m + r, m + cols[p], -diff * vals[p]});
    }
    t.push_back({r, r, params.S});
    t.push_back({r, m + r, -1.0});
    t.push_back({m + r, r, -1.0});
  }
  block_ = SparseMatrix::assemble(std::move(t), 2 * m, 2 * m, true);

  const double ea = std::pow(eps, params.alpha);
  const SparseMatrix l2 = laplacian_.multiply(laplacian_);
  std::vector<Triplet> tc;
  tc.reserve(l2.nnz() + laplacian_.nnz() + static_cast<std::size_t>(m));
  const auto& offs2 = l2.row_offsets();
  const auto& cols2 = l2.col_indices();
  const auto& vals2 = l2.values();
  for (int r = 0; r < m; ++r) {
    for (int p = offs2[r]; p < offs2[static_cast<std::size_t>(r) + 1]; ++p)
      tc.push_back({r, cols2[p], ea * eg * vals2[p]});
    for (int p = offs[r]; p < offs[static_cast<std::size_t>(r) + 1]; ++p)
      tc.push_back({r, cols[p], ea * params.S * vals[p]});
    tc.push_back({r, r, 1.0 / params.dt});
  }
  condensed_ = SparseMatrix::assemble(std::move(tc), m, m, true);

  {
    const double scale = ea * eg;
    const double sigma = 1.0 / std::sqrt(scale * params.dt);
    std::vector<Triplet> th;
    th.reserve(laplacian_.nnz() + static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r) {
      for (int p = offs[r]; p < offs[static_cast<std::size_t>(r) + 1]; ++p)
        th.push_back({r, cols[p], vals[p]});
      th.push_back({r, r, sigma});
    }
    helmholtz_ = SparseMatrix::assemble(std::move(th), m, m, true);
    const double hi = 8.0 / (mask.h * mask.h) + sigma;
    const double ratio = std::sqrt(hi / sigma);
    const double factor = (ratio - 1.0) / (ratio + 1.0);
    const int degree =
        std::clamp(static_cast<int>(std::ceil(-3.0 / std::log(std::max(factor, 1e-6)))), 6, 64);
    cheb_ = std::make_unique<ChebyshevApprox>(helmholtz_, sigma, hi, degree);
    pc_tmp_.assign(static_cast<std::size_t>(m), 0.0);
    precond_ = [this, scale](std::span<const double> r, std::span<double> z) {
      cheb_->apply(r, pc_tmp_);
      cheb_->apply(pc_tmp_, z);
      const double inv = 1.0 / scale;
      for (std::size_t i = 0; i < z.size(); ++i) z[i] *= inv;
    };
  }

  cn_.assign(static_cast<std::size_t>(m), 0.0);
  wn_.assign(static_cast<std::size_t>(m), 0.0);
  cn_prev_.assign(static_cast<std::size_t>(m), 0.0);
}

void CHStepper::solve_positive_definite(const std::vector<double>& rhs_c,
                                        const ScalarField& c) {
  const int m = cells_.count;
  // linear extrapolation of the two previous solutions as the start
  std::vector<double> x(static_cast<std::size_t>(m));
  if (solves_done_ >= 2) {
    for (int q = 0; q < m; ++q) x[q] = 2.0 * cn_[q] - cn_prev_[q];
  } else if (solves_done_ == 1) {
    x = cn_;
  } else {
    for (int q = 0; q < m; ++q) x[q] = c.v[cells_.to_grid[q]];
  }

  IterOptions opts = params_.ch_solver;
  opts.precond = precond_;
  SolveReport rep = cg_solve(condensed_, rhs_c, x, opts);
  if (!rep.converged)
    throw SolverError("Cahn-Hilliard step: CG did not converge (residual " +
                      format_double(rep.final_residual_norm) + ")");

  // refine until the absolute residual meets the horizon mass budget
  const double h2 = mask_.h * mask_.h;
  const double target =
      1e-14 / (params_.dt * h2 * std::sqrt(static_cast<double>(m)));
  for (int pass = 0; pass < 3; ++pass) {
    std::vector<double> resid(rhs_c.size());
    condensed_.matvec(x, resid);
    kernels::xpay(rhs_c, -1.0, resid);
    if (kernels::nrm2(resid) <= target) break;
    std::vector<double> corr(rhs_c.size(), 0.0);
    IterOptions refine = opts;
    refine.tol = 1e-4;
    const SolveReport rep2 = cg_solve(condensed_, resid, corr, refine);
    if (!rep2.converged && rep2.final_residual_norm >= kernels::nrm2(resid)) break;
    kernels::axpy(1.0, corr, x);
  }
  last_report = rep;
  cn_prev_ = cn_;
  cn_ = std::move(x);
}

void CHStepper::solve_block_minres(const std::vector<double>& rhs_c, const ScalarField& c,
                                   const ScalarField& adv, double adv_scale) {
  const int m = cells_.count;
  const double eg = std::pow(params_.eps(), params_.gamma);
  std::vector<double> rhs(static_cast<std::size_t>(2 * m));
  std::vector<double> x(static_cast<std::size_t>(2 * m));
  {
    // start from the current state and its constitutive potential; for the
    // well minima this guess already solves the step, keeping them exact
    std::vector<double> cv(static_cast<std::size_t>(m));
    for (int q = 0; q < m; ++q) cv[q] = c.v[cells_.to_grid[q]];
    std::vector<double> lc(cv.size());
    laplacian_.matvec(cv, lc);
    for (int q = 0; q < m; ++q) {
      const int g = cells_.to_grid[q];
      rhs[q] = params_.S * c.v[g] - double_well(c.v[g]).f;
      rhs[m + q] = -c.v[g] + adv_scale * adv.v[g];
      x[q] = cv[q];
      x[m + q] = eg * lc[q] + double_well(cv[q]).f;
    }
  }
  (void)rhs_c;
  SolveReport rep = minres_solve(block_, rhs, x, params_.ch_solver);
  if (!rep.converged)
    throw SolverError("Cahn-Hilliard step: MINRES did not converge (residual " +
                      format_double(rep.final_residual_norm) + ")");
  {
    std::vector<double> resid(rhs.size());
    block_.matvec(x, resid);
    kernels::xpay(rhs, -1.0, resid);
    std::vector<double> corr(rhs.size(), 0.0);
    IterOptions refine = params_.ch_solver;
    refine.tol = 1e-4;
    const SolveReport rep2 = minres_solve(block_, resid, corr, refine);
    if (rep2.converged) kernels::axpy(1.0, corr, x);
  }
  last_report = rep;
  cn_prev_ = cn_;
  for (int q = 0; q < m; ++q) cn_[q] = x[q];
}

std::pair<ScalarField, ScalarField> CHStepper::step(const ScalarField& c,
                                                    const StaggeredField& u) {
  const int m = cells_.count;
  const double eps = params_.eps();
  const double adv_scale = params_.dt * std::pow(eps, params_.beta);
  const double ea = std::pow(eps, params_.alpha);
  const double eg = std::pow(eps, params_.gamma);

  const ScalarField adv = advect_upwind(c, u, mask_, Outer::Walled);

  // rhs of the condensed form: c/dt - eps^b div(u c) - eps^a L (f(c) - S c)
  std::vector<double> fc(static_cast<std::size_t>(m));
  for (int q = 0; q < m; ++q) {
    const double cv = c.v[cells_.to_grid[q]];
    fc[q] = double_well(cv).f - params_.S * cv;
  }
  std::vector<double> lfc(fc.size());
  laplacian_.matvec(fc, lfc);
  std::vector<double> rhs_c(fc.size());
  for (int q = 0; q < m; ++q) {
    const int g = cells_.to_grid[q];
    rhs_c[q] = c.v[g] / params_.dt - std::pow(eps, params_.beta) * adv.v[g] - ea * lfc[q];
  }

  if (params_.ch_use_minres)
    solve_block_minres(rhs_c, c, adv, adv_scale);
  else
    solve_positive_definite(rhs_c, c);
  ++solves_done_;

  // chemical potential from the stabilized relation, exactly
  std::vector<double> lc(static_cast<std::size_t>(m));
  laplacian_.matvec(cn_, lc);
  for (int q = 0; q < m; ++q) {
    const double cv = c.v[cells_.to_grid[q]];
    wn_[q] = eg * lc[q] + double_well(cv).f + params_.S * (cn_[q] - cv);
  }

  std::pair<ScalarField, ScalarField> out{ScalarField(mask_.n), ScalarField(mask_.n)};
  prolong_cells(cn_, cells_, out.first);
  prolong_cells(wn_, cells_, out.second);
  return out;
}

std::pair<ScalarField, ScalarField> ch_step(const MicroState& state, const MicroParams& params,
                                            const DomainMask& mask) {
  CHStepper stepper(mask, params);
  return stepper.step(state.c, state.u);
}

namespace {

LedgerRow make_row(int step, double t, const MicroState& s, const MicroParams& params,
                   const DomainMask& mask, const SparseMatrix& stokes_a,
                   const FaceMap& faces, double dtc_dual) {
  const double h2 = mask.h * mask.h;
  const double eps = params.eps();

  double Fsum = 0.0, c4 = 0.0, w2 = 0.0;
  for (std::size_t g = 0; g < s.c.v.size(); ++g) {
    if (!mask.cell[g]) continue;
    const double cv = s.c.v[g];
    Fsum += double_well(cv).F;
    c4 += cv * cv * cv * cv;
    w2 += s.w.v[g] * s.w.v[g];
  }
  const double gc2 = grad_norm_sq(s.c, mask, Outer::Walled);
  const double gw2 = grad_norm_sq(s.w, mask, Outer::Walled);

  std::vector<double> uv = restrict_faces(s.u, faces);
  std::vector<double> au(uv.size());
  stokes_a.matvec(uv, au);
  const double gu2 = h2 * kernels::dot(uv, au);

  LedgerRow r;
  r.step = step;
  r.t = t;
  r.E = 0.5 * params.lambda * gc2 + params.lambda * Fsum * h2;
  r.D_u = params.mu * eps * eps * gu2;
  r.D_w = params.lambda * std::pow(eps, params.alpha) * gw2;
  r.mass = sum_active(s.c, mask);
  r.grad_u_l2 = std::sqrt(gu2);
  r.grad_w_l2 = std::sqrt(gw2);
  r.grad_c_l2 = std::sqrt(gc2);
  r.c_l4 = std::pow(c4 * h2, 0.25);
  r.w_l2 = std::sqrt(w2 * h2);
  r.dtc_dual = dtc_dual;
  return r;
}

} // namespace

MicroResult run_micro(const CellGeometry& geom, const MicroParams& params,
                      const InitialData& init) {
  params.validate();
  MicroResult result;
  result.mask = build_domain_mask(geom, params.k, params.n_cell);
  const DomainMask& mask = result.mask;
  const int n = mask.n;

  const CellMap cells = build_cell_map(mask);
  const SparseMatrix laplacian = scalar_laplacian(mask, Outer::Walled, cells);

  // Riesz operator for the discrete H^1* norm of dc/dt
  SparseMatrix riesz;
  {
    std::vector<Triplet> t;
    const auto& offs = laplacian.row_offsets();
    const auto& cols = laplacian.col_indices();
    const auto& vals = laplacian.values();
    for (int r = 0; r < cells.count; ++r) {
      for (int p = offs[r]; p < offs[static_cast<std::size_t>(r) + 1]; ++p)
        t.push_back({r, cols[p], vals[p]});
      t.push_back({r, r, 1.0});
    }
    riesz = SparseMatrix::assemble(std::move(t), cells.count, cells.count, true);
  }

  const StokesOperators stokes_ops = stokes_operators(mask, Outer::Walled);
  MicroStokes stokes(mask, params, stokes_ops);
  CHStepper stepper(mask, params);

  MicroState state;
  state.t = 0.0;
  state.step = 0;
  state.c = ScalarField(n);
  state.w = ScalarField(n);
  state.p = ScalarField(n);
  state.u = StaggeredField(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (mask.cell[j * n + i])
        state.c.at(i, j) = init.eval((i + 0.5) * mask.h, (j + 0.5) * mask.h);

  // startup chemical potential from the constitutive relation
  {
    const double eg = std::pow(params.eps(), params.gamma);
    std::vector<double> cv = restrict_cells(state.c, cells);
    std::vector<double> lc(cv.size());
    laplacian.matvec(cv, lc);
    std::vector<double> wv(cv.size());
    for (int q = 0; q < cells.count; ++q) wv[q] = eg * lc[q] + double_well(cv[q]).f;
    prolong_cells(wv, cells, state.w);
  }
  if (params.stokes_on) {
    auto up = stokes.solve(state.c, state.w);
    state.u = std::move(up.first);
    state.p = std::move(up.second);
  }

  result.ledger.rows.push_back(
      make_row(0, 0.0, state, params, mask, stokes_ops.A, stokes_ops.faces, 0.0));
  result.snapshots.push_back(state);

  const int steps = params.steps();
  ScalarField c_prev = state.c;
  for (int stepno = 1; stepno <= steps; ++stepno) {
    if (params.stokes_on) {
      auto up = stokes.solve(state.c, state.w);
      state.u = std::move(up.first);
      state.p = std::move(up.second);
    }
    c_prev = state.c;
    try {
      auto cw = stepper.step(state.c, state.u);
      state.c = std::move(cw.first);
      state.w = std::move(cw.second);
    } catch (const SolverError& err) {
      throw SolverError("step " + std::to_string(stepno) + ": " + err.what());
    }
    state.t = stepno * params.dt;
    state.step = stepno;

    double dual = result.ledger.rows.back().dtc_dual;
    if (params.dual_stride > 0 && stepno % params.dual_stride == 0) {
      std::vector<double> g(static_cast<std::size_t>(cells.count));
      for (int q = 0; q < cells.count; ++q) {
        const int gi = cells.to_grid[q];
        g[q] = (state.c.v[gi] - c_prev.v[gi]) / params.dt;
      }
      std::vector<double> phi(g.size(), 0.0);
      const SolveReport rep = cg_solve(riesz, g, phi, params.dual_solver);
      if (!rep.converged) throw SolverError("H^1-dual monitor solve failed");
      const double q = kernels::dot(g, phi) * mask.h * mask.h;
      dual = std::sqrt(std::max(0.0, q));
    }
    result.ledger.rows.push_back(make_row(stepno, state.t, state, params, mask, stokes_ops.A,
                                          stokes_ops.faces, dual));
    const bool snap = (params.snapshot_stride > 0 && stepno % params.snapshot_stride == 0) ||
                      stepno == steps;
    if (snap) result.snapshots.push_back(state);
  }
  result.c_prev_final = steps > 0 ? c_prev : state.c;
  return result;
}

} // namespace sch
