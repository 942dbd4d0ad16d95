#pragma once

#include <optional>
#include <string>

#include "sch/field.hpp"
#include "sch/geometry.hpp"
#include "sch/operators.hpp"
#include "sch/solve.hpp"

namespace sch {

// Solvability convention for the sigma cell problem (Laplacian(sigma) = 1 on
// the pore part, periodic outer boundary):
//   FluxBalance -- prescribe the outward flux |Y_p|/|Gamma_s| on the solid
//                  boundary so the source is balanced; the leftover discrete
//                  imbalance is removed by mean projection of the source.
//   MeanProject -- homogeneous Neumann everywhere and the source projected
//                  to zero mean, which makes sigma vanish identically.
enum class SigmaConvention { FluxBalance, MeanProject };

std::string to_string(SigmaConvention c);
SigmaConvention sigma_convention_from_string(const std::string& s);

struct CellSolverOptions {
  IterOptions elliptic{1e-11, 50000, false, nullptr};
  UzawaOptions stokes{1e-11, 4000, 1.0, IterOptions{1e-12, 50000, false, nullptr}};
};

struct SigmaSolution {
  ScalarField sigma;        // mean-zero over the pore cells
  double sigma_bar = 0.0;   // (1/|Y_p|) sum sigma h^2 (zero by construction)
  double flux = 0.0;        // prescribed boundary flux (FluxBalance)
  double source_imbalance = 0.0;  // pre-projection discrete compatibility defect
  double compat_residual = 0.0;   // | sum(effective source) h^2 - sum(flux) h |
  SolveReport report;
};

SigmaSolution solve_sigma(const CellGeometry& geom, const CellMask& mask,
                          SigmaConvention convention, const CellSolverOptions& opts = {});

struct CorrectorSolution {
  ScalarField chi1, chi2;   // mean-zero harmonic correctors
  double D[2][2] = {{1.0, 0.0}, {0.0, 1.0}};  // I + mean grad correction
  double compat_residual = 0.0;
  SolveReport report1, report2;
};

CorrectorSolution solve_correctors(const CellMask& mask, const CellSolverOptions& opts = {});

enum class CellForcing { E1, E2, GradSigma };

struct StokesCellSolution {
  StaggeredField flow;
  ScalarField pressure;  // mean-zero over pore cells
  SolveReport report;
};

// -Δw + grad(pi) = F on the pore part, div w = 0, w = 0 on the solid
// boundary, periodic outer boundary, unit viscosity. GradSigma forcing is
// -grad(sigma) sampled on open faces.
StokesCellSolution solve_stokes_cell(const CellMask& mask, CellForcing forcing,
                                     const ScalarField* sigma = nullptr,
                                     const CellSolverOptions& opts = {});

struct PermeabilityResult {
  double K[2][2];
  StokesCellSolution flow1, flow2;
};

// K_ij = integral over the pore part of the i-th component of the unit-e_j
// cell flow.
PermeabilityResult permeability(const CellMask& mask, const CellSolverOptions& opts = {});

struct EffectiveCoefficients {
  double theta = 1.0;
  double sigma_bar = 0.0;
  double D[2][2] = {{1.0, 0.0}, {0.0, 1.0}};
  bool K_defined = false;
  double K[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  double M[2] = {0.0, 0.0};
  std::string convention;
  int n = 0;
  std::string geometry;
  double sigma_flux = 0.0;
  double sigma_source_imbalance = 0.0;
  double residual_sigma = 0.0;
  double residual_chi = 0.0;
  double residual_stokes = 0.0;

  std::string to_json() const;            // deterministic serialization
  static EffectiveCoefficients from_json(const std::string& text);
};

EffectiveCoefficients effective_coefficients(const CellGeometry& geom, int n,
                                             SigmaConvention convention,
                                             const CellSolverOptions& opts = {});

void eigenvalues_sym2(const double T[2][2], double& lo, double& hi);

} // namespace sch
