#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sch/cell.hpp"
#include "sch/micro.hpp"
#include "sch/unfold.hpp"

namespace sch {

enum class SolidExtension { Zero, CellAverage };

// Fill solid cells with the pore average of their eps-cell; reduces the
// artificial interface error when comparing order parameters across scales.
ScalarField extend_cell_average(const ScalarField& f, const DomainMask& mask);

struct SweepLevel {
  int k;  // eps = 1/k
  MonitorReport monitors;
  double dist_c = 0.0;  // L2(Omega x Y) distance of unfolded c to its limit candidate
  double dist_w = 0.0;  // same for w against the separated ansatz
};

struct SweepReport {
  std::vector<SweepLevel> levels;  // sorted by decreasing eps
  double ansatz_scale = 0.0;       // amplitude fitted on the finest level
  double worst_monitor_ratio = 0.0;
  bool ratio_ok = false;     // every monitor max/min <= 3 across eps
  bool monotone_c = false;   // distances strictly decreasing in eps
  bool monotone_w = false;

  static const std::vector<std::string>& columns();
  std::string to_csv() const;
  std::string verdict_json() const;
};

struct SweepOptions {
  SigmaConvention convention = SigmaConvention::FluxBalance;
  SolidExtension extension = SolidExtension::Zero;
};

// Runs the pore-scale solver at every eps with identical macroscopic data,
// unfolds the final order parameter and chemical potential, and compares
// them against the limit candidates built from the finest level: c(x)
// (micro-cell pore average) and dtc(x) * sigma(y), with the ansatz amplitude
// calibrated on the finest level.
SweepReport two_scale_sweep(const CellGeometry& geom, const std::vector<int>& ks,
                            const MicroParams& base, const InitialData& init,
                            const SweepOptions& options = {},
                            std::vector<MicroResult>* runs_out = nullptr);

} // namespace sch
