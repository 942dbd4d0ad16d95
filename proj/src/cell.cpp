#include "sch/cell.hpp"

#include <cmath>

#include <json.hpp>

#include "sch/io.hpp"
#include "sch/kernels.hpp"

namespace sch {

std::string to_string(SigmaConvention c) {
  return c == SigmaConvention::FluxBalance ? "fluxbalance" : "meanproject";
}

SigmaConvention sigma_convention_from_string(const std::string& s) {
  if (s == "fluxbalance") return SigmaConvention::FluxBalance;
  if (s == "meanproject") return SigmaConvention::MeanProject;
  throw ConfigError("unknown convention: " + s + " (expected fluxbalance | meanproject)");
}

namespace {

// Number of closed (solid-adjacent) faces per active cell, and in total.
// Each closed face borders exactly one active cell.
std::vector<int> closed_face_counts(const CellMask& mask, int& total) {
  const int n = mask.n;
  std::vector<int> counts(static_cast<std::size_t>(n) * n, 0);
  total = 0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (!mask.cell[j * n + i]) continue;
      const int nbrs[4][2] = {{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}};
      for (const auto& nb : nbrs) {
        if (!mask.cell_at(nb[0], nb[1])) {
          ++counts[j * n + i];
          ++total;
        }
      }
    }
  }
  return counts;
}

} // namespace

SigmaSolution solve_sigma(const CellGeometry& geom, const CellMask& mask,
                          SigmaConvention convention, const CellSolverOptions& opts) {
  const CellMap cells = build_cell_map(mask);
  const SparseMatrix L = scalar_laplacian(mask, Outer::Periodic, cells);
  const double h = mask.h;
  const double h2 = h * h;

  SigmaSolution out;
  out.sigma = ScalarField(mask.n);

  int total_closed = 0;
  const std::vector<int> closed = closed_face_counts(mask, total_closed);

  // finite-volume balance per pore cell:  -(L s)_P h^2 + flux * h * m_P = h^2
  std::vector<double> rhs(static_cast<std::size_t>(cells.count));
  if (convention == SigmaConvention::FluxBalance) {
    if (total_closed == 0)
      throw SolverError(
          "sigma flux-balance convention needs a solid boundary; use meanproject for "
          "the empty cell");
    out.flux = geom.pore_area() / geom.solid_perimeter();
    for (int q = 0; q < cells.count; ++q)
      rhs[q] = out.flux * closed[cells.to_grid[q]] / h - 1.0;
  } else {
    for (int q = 0; q < cells.count; ++q) rhs[q] = -1.0;
  }

  // discrete divergence theorem bookkeeping before projection
  double rhs_sum = 0.0;
  for (double v : rhs) rhs_sum += v;
  const double flux_sum = out.flux * h * total_closed;  // = sum of prescribed fluxes * h
  out.source_imbalance = -rhs_sum * h2;                 // defect of source vs boundary flux

  IterOptions iter = opts.elliptic;
  iter.mean_zero_weights = &cells.weights;
  std::vector<double> x(static_cast<std::size_t>(cells.count), 0.0);
  out.report = cg_solve(L, rhs, x, iter);
  if (!out.report.converged) throw SolverError("sigma cell problem: CG did not converge");

  // after projection, the source the solver saw balances the flux exactly;
  // report the defect between the two surface terms
  std::vector<double> effective = project_mean_zero(rhs, cells.weights);
  double eff_sum = 0.0;
  for (double v : effective) eff_sum += v;
  // effective source integral = -(sum effective) h^2 + flux-term; compare with flux_sum
  double source_integral = 0.0;
  for (int q = 0; q < cells.count; ++q)
    source_integral += (out.flux * closed[cells.to_grid[q]] / h - effective[q]) * h2;
  out.compat_residual = std::fabs(source_integral - flux_sum);

  prolong_cells(x, cells, out.sigma);
  subtract_mean_active(out.sigma, mask);
  out.sigma_bar = sum_active(out.sigma, mask) / (cells.count * h2);
  return out;
}

CorrectorSolution solve_correctors(const CellMask& mask, const CellSolverOptions& opts) {
  const CellMap cells = build_cell_map(mask);
  const SparseMatrix L = scalar_laplacian(mask, Outer::Periodic, cells);
  const int n = mask.n;
  const double h = mask.h;
  const double h2 = h * h;

  CorrectorSolution out;
  out.chi1 = ScalarField(n);
  out.chi2 = ScalarField(n);

  // prescribed flux -n_j on each closed face, n = pore-to-solid unit normal
  std::vector<double> rhs1(static_cast<std::size_t>(cells.count), 0.0);
  std::vector<double> rhs2(static_cast<std::size_t>(cells.count), 0.0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int q = cells.from_grid[j * n + i];
      if (q < 0) continue;
      // (L chi)_P = -(sum over closed faces of n_component)/h
      if (!mask.cell_at(i + 1, j)) rhs1[q] -= 1.0 / h;
      if (!mask.cell_at(i - 1, j)) rhs1[q] += 1.0 / h;
      if (!mask.cell_at(i, j + 1)) rhs2[q] -= 1.0 / h;
      if (!mask.cell_at(i, j - 1)) rhs2[q] += 1.0 / h;
    }
  }
  double s1 = 0.0, s2 = 0.0;
  for (int q = 0; q < cells.count; ++q) {
    s1 += rhs1[q];
    s2 += rhs2[q];
  }
  out.compat_residual = std::max(std::fabs(s1), std::fabs(s2)) * h2;

  IterOptions iter = opts.elliptic;
  iter.mean_zero_weights = &cells.weights;
  std::vector<double> x1(static_cast<std::size_t>(cells.count), 0.0);
  std::vector<double> x2(static_cast<std::size_t>(cells.count), 0.0);
  out.report1 = cg_solve(L, rhs1, x1, iter);
  out.report2 = cg_solve(L, rhs2, x2, iter);
  if (!out.report1.converged || !out.report2.converged)
    throw SolverError("corrector cell problem: CG did not converge");

  // mean gradient via the boundary form: (1/|Y_p|) int d_i chi^j
  //   = -(h^2/|Y_p|) chi_i^T L chi_j, symmetric by construction
  const double pore = cells.count * h2;
  std::vector<double> lx1(x1.size()), lx2(x2.size());
  L.matvec(x1, lx1);
  L.matvec(x2, lx2);
  const double a11 = -h2 * kernels::dot(x1, lx1) / pore;
  const double a12 = -h2 * kernels::dot(x1, lx2) / pore;
  const double a22 = -h2 * kernels::dot(x2, lx2) / pore;
  out.D[0][0] = 1.0 + a11;
  out.D[0][1] = a12;
  out.D[1][0] = a12;
  out.D[1][1] = 1.0 + a22;

  prolong_cells(x1, cells, out.chi1);
  prolong_cells(x2, cells, out.chi2);
  subtract_mean_active(out.chi1, mask);
  subtract_mean_active(out.chi2, mask);
  return out;
}

StokesCellSolution solve_stokes_cell(const CellMask& mask, CellForcing forcing,
                                     const ScalarField* sigma, const CellSolverOptions& opts) {
  const StokesOperators ops = stokes_operators(mask, Outer::Periodic);
  const int n = mask.n;

  if (forcing != CellForcing::GradSigma && ops.cells.count == n * n)
    throw SolverError(
        "cell Stokes problem ill-posed without solid obstacle: constant forcing on the "
        "empty cell has no periodic balance");
  if (forcing == CellForcing::GradSigma && sigma == nullptr)
    throw SolverError("GradSigma forcing needs a sigma field");

  std::vector<double> f(static_cast<std::size_t>(ops.faces.count()), 0.0);
  if (forcing == CellForcing::E1) {
    for (int q = 0; q < ops.faces.count_x; ++q) f[q] = 1.0;
  } else if (forcing == CellForcing::E2) {
    for (int q = 0; q < ops.faces.count_y; ++q) f[ops.faces.count_x + q] = 1.0;
  } else {
    for (int q = 0; q < ops.faces.count_x; ++q) {
      const int g = ops.faces.to_grid_x[q];
      const int i = g % n, j = g / n;
      f[q] = -(sigma->v[g] - sigma->v[mask.idx(i - 1, j)]) / mask.h;
    }
    for (int q = 0; q < ops.faces.count_y; ++q) {
      const int g = ops.faces.to_grid_y[q];
      const int i = g % n, j = g / n;
      f[ops.faces.count_x + q] = -(sigma->v[g] - sigma->v[mask.idx(i, j - 1)]) / mask.h;
    }
  }

  const SaddleSolution sol = uzawa_solve(ops.A, ops.B, f, ops.cells.weights, opts.stokes);
  if (!sol.report.converged)
    throw SolverError("cell Stokes problem: Uzawa did not converge (residual " +
                      format_double(sol.report.final_residual_norm) + ")");

  StokesCellSolution out;
  out.flow = StaggeredField(n);
  out.pressure = ScalarField(n);
  prolong_faces(sol.u, ops.faces, out.flow);
  prolong_cells(sol.p, ops.cells, out.pressure);
  out.report = sol.report;
  return out;
}

PermeabilityResult permeability(const CellMask& mask, const CellSolverOptions& opts) {
  PermeabilityResult out;
  out.flow1 = solve_stokes_cell(mask, CellForcing::E1, nullptr, opts);
  out.flow2 = solve_stokes_cell(mask, CellForcing::E2, nullptr, opts);
  const double h2 = mask.h * mask.h;
  auto integrate = [&](const std::vector<double>& comp) {
    double acc = 0.0;
    for (double v : comp) acc += v;
    return acc * h2;
  };
  out.K[0][0] = integrate(out.flow1.flow.ux);
  out.K[1][0] = integrate(out.flow1.flow.uy);
  out.K[0][1] = integrate(out.flow2.flow.ux);
  out.K[1][1] = integrate(out.flow2.flow.uy);
  return out;
}

EffectiveCoefficients effective_coefficients(const CellGeometry& geom, int n,
                                             SigmaConvention convention,
                                             const CellSolverOptions& opts) {
  const CellMask mask = build_cell_mask(geom, n);

  EffectiveCoefficients out;
  out.theta = porosity(mask);
  out.convention = to_string(convention);
  out.n = n;
  out.geometry = geom.label();

  const SigmaSolution sig = solve_sigma(geom, mask, convention, opts);
  out.sigma_bar = sig.sigma_bar;
  out.sigma_flux = sig.flux;
  out.sigma_source_imbalance = sig.source_imbalance;
  out.residual_sigma = sig.report.final_residual_norm;

  const CorrectorSolution cor = solve_correctors(mask, opts);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out.D[a][b] = cor.D[a][b];
  out.residual_chi = std::max(cor.report1.final_residual_norm, cor.report2.final_residual_norm);

  if (geom.kind != CellGeometry::Kind::Empty) {
    const PermeabilityResult perm = permeability(mask, opts);
    out.K_defined = true;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) out.K[a][b] = perm.K[a][b];
    out.residual_stokes = std::max(perm.flow1.report.final_residual_norm,
                                   perm.flow2.report.final_residual_norm);
  }

  // surface-tension drive: mean of the cell flow forced by -grad(sigma);
  // the forcing is a pure gradient, so the flow (and hence M) vanishes up
  // to solver tolerance and the term is carried by the cell pressure
  const StokesCellSolution ms = solve_stokes_cell(mask, CellForcing::GradSigma, &sig.sigma, opts);
  const double h2 = mask.h * mask.h;
  double m1 = 0.0, m2 = 0.0;
  for (double v : ms.flow.ux) m1 += v;
  for (double v : ms.flow.uy) m2 += v;
  out.M[0] = m1 * h2;
  out.M[1] = m2 * h2;
  out.residual_stokes = std::max(out.residual_stokes, ms.report.final_residual_norm);
  return out;
}

void eigenvalues_sym2(const double T[2][2], double& lo, double& hi) {
  const double tr = T[0][0] + T[1][1];
  const double det = T[0][0] * T[1][1] - T[0][1] * T[1][0];
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  lo = tr / 2.0 - disc;
  hi = tr / 2.0 + disc;
}

std::string EffectiveCoefficients::to_json() const {
  nlohmann::ordered_json j;
  j["geometry"] = geometry;
  j["N"] = n;
  j["convention"] = convention;
  j["theta"] = theta;
  j["sigma_bar"] = sigma_bar;
  j["D_eff"] = {{D[0][0], D[0][1]}, {D[1][0], D[1][1]}};
  if (K_defined)
    j["K"] = {{K[0][0], K[0][1]}, {K[1][0], K[1][1]}};
  else
    j["K"] = "not defined";
  j["M"] = {M[0], M[1]};
  j["residuals"] = nlohmann::ordered_json{{"sigma", residual_sigma},
                                          {"chi", residual_chi},
                                          {"stokes", residual_stokes},
                                          {"sigma_flux", sigma_flux},
                                          {"sigma_source_imbalance", sigma_source_imbalance}};
  return j.dump(2) + "\n";
}

EffectiveCoefficients EffectiveCoefficients::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  EffectiveCoefficients out;
  out.geometry = j.at("geometry").get<std::string>();
  out.n = j.at("N").get<int>();
  out.convention = j.at("convention").get<std::string>();
  out.theta = j.at("theta").get<double>();
  out.sigma_bar = j.at("sigma_bar").get<double>();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out.D[a][b] = j.at("D_eff")[a][b].get<double>();
  if (j.at("K").is_string()) {
    out.K_defined = false;
  } else {
    out.K_defined = true;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) out.K[a][b] = j.at("K")[a][b].get<double>();
  }
  out.M[0] = j.at("M")[0].get<double>();
  out.M[1] = j.at("M")[1].get<double>();
  if (j.contains("residuals")) {
    const auto& r = j.at("residuals");
    out.residual_sigma = r.value("sigma", 0.0);
    out.residual_chi = r.value("chi", 0.0);
    out.residual_stokes = r.value("stokes", 0.0);
    out.sigma_flux = r.value("sigma_flux", 0.0);
    out.sigma_source_imbalance = r.value("sigma_source_imbalance", 0.0);
  }
  return out;
}

} // namespace sch
