#pragma once

#include <string>
#include <vector>

#include "sch/cell.hpp"
#include "sch/field.hpp"
#include "sch/micro.hpp"
#include "sch/solve.hpp"

namespace sch {

// Orientation of the closed macro equation. AsWritten keeps the sign
// structure of the upscaled system, which is anti-dissipative and only runs
// behind a growth guard; GradientFlow flips it into the dissipative form
// usable over long horizons. Neither is silently preferred: every report
// names the mode it used.
enum class Orientation { AsWritten, GradientFlow };

std::string to_string(Orientation o);
Orientation orientation_from_string(const std::string& s);

struct MacroParams {
  int n = 32;  // macro grid resolution
  double lambda = 1.0;
  double mu = 1.0;
  double S = 2.0;
  double dt = 1e-3;
  double T = 0.05;
  int snapshot_stride = 0;
  Orientation orientation = Orientation::GradientFlow;
  EffectiveCoefficients coeffs;
  bool has_sigma_override = false;
  double sigma_bar_override = 0.0;
  double growth_guard = 10.0;

  IterOptions ch_solver{1e-12, 200000, true, nullptr};
  IterOptions darcy_solver{1e-9, 100000, false, nullptr};

  double sigma_bar() const {
    return has_sigma_override ? sigma_bar_override : coeffs.sigma_bar;
  }
  int steps() const;
  void validate() const;
};

struct DarcyResult {
  StaggeredField u;  // face fluxes; their divergence is the solver residual
  ScalarField p;     // mean-zero
  SolveReport report;
  double max_div = 0.0;
};

// Darcy reconstruction: u = -(1/mu) K grad p - (lambda/2mu) M d/dt(c^2),
// with d/dt(c^2) = 2 c dcdt pointwise, no-flux outer boundary, and p the
// mean-zero solution of the induced conservation equation div u = 0.
DarcyResult darcy_solve(const ScalarField& c, const ScalarField& dcdt, const MacroParams& params);

struct MacroStepResult {
  ScalarField c_next;
  ScalarField wbar;  // sigma_bar * (c_next - c)/dt
  SolveReport report;
  double equation_residual = 0.0;  // recomputed ||A c_next - rhs||
};

// One implicit step of the closed macro equation (both orientations use the
// stabilized splitting f(c^n) + S (c^{n+1} - c^n)); homogeneous Neumann.
MacroStepResult macro_ch_step(const ScalarField& c, const MacroParams& params);

struct MacroLedgerRow {
  int step;
  double t, mass, c_l2, c_linf, u_l2, max_div, equation_residual;
};

struct MacroState {
  double t = 0.0;
  int step = 0;
  ScalarField c, wbar, p;
  StaggeredField u;
};

struct MacroResult {
  std::vector<MacroState> snapshots;
  std::vector<MacroLedgerRow> ledger;
  static const std::vector<std::string>& ledger_columns();
  std::string ledger_csv() const;
};

MacroResult run_macro(const MacroParams& params, const InitialData& init);

} // namespace sch
