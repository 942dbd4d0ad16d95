#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sch/cell.hpp"
#include "sch/geometry.hpp"
#include "sch/macro.hpp"
#include "sch/micro.hpp"

namespace sch {

// Experiment description parsed from `key=value` lines (# comments).
// Unknown keys are errors so typos fail loudly.
struct ExperimentConfig {
  std::string command;  // cell | micro | macro | unfold | sweep

  std::optional<CellGeometry> geometry;
  std::vector<int> eps_k;  // eps values as 1/k
  int N = 0;               // cells per eps-cell (micro/sweep/unfold), grid size (cell/macro)

  double lambda = 1.0, mu = 1.0, S = 2.0;
  double dt = 1e-3, T = 0.05;
  int stride = 0;
  int dual_stride = 1;
  std::uint64_t seed = 0;
  std::string c0 = "random";
  bool stokes_on = true;
  SigmaConvention convention = SigmaConvention::FluxBalance;
  Orientation orientation = Orientation::GradientFlow;
  std::optional<double> sigma_bar;
  std::string coefficients;  // macro: path to a coefficients JSON, or "auto"
  std::string snapshot;      // unfold: path to a snapshot sidecar JSON
  std::string field = "c";   // unfold: which field to unfold
  std::string extension = "zero";  // sweep comparisons: zero | cellavg
  double alpha = 2.0, beta = 1.0, gamma = 0.0;
  bool exponent_override = false;
  double tol = 0.0;  // 0: per-solver defaults

  MicroParams micro_params() const;
  MacroParams macro_params(const EffectiveCoefficients& coeffs) const;
  void require(const std::string& key_name, bool present) const;
};

ExperimentConfig parse_config(const std::string& text);

// "1/8" or an equivalent decimal -> 8
int parse_eps_k(const std::string& token);

} // namespace sch
