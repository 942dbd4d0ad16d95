#pragma once

#include <vector>

#include "sch/geometry.hpp"

namespace sch {

// Cell-centered field on an n x n grid. Entries on solid cells are kept at
// zero (the zero-fill extension all diagnostics assume).
struct ScalarField {
  int n = 0;
  double h = 0.0;
  std::vector<double> v;

  ScalarField() = default;
  explicit ScalarField(int n_) : n(n_), h(1.0 / n_), v(static_cast<std::size_t>(n_) * n_, 0.0) {}

  double& at(int i, int j) { return v[static_cast<std::size_t>(j) * n + i]; }
  double at(int i, int j) const { return v[static_cast<std::size_t>(j) * n + i]; }
};

// MAC velocity on the same torus-indexed face layout as Mask: ux(i,j) lives
// at (i*h,(j+0.5)h), uy(i,j) at ((i+0.5)h, j*h). Inactive faces stay zero.
struct StaggeredField {
  int n = 0;
  double h = 0.0;
  std::vector<double> ux, uy;

  StaggeredField() = default;
  explicit StaggeredField(int n_)
      : n(n_), h(1.0 / n_),
        ux(static_cast<std::size_t>(n_) * n_, 0.0),
        uy(static_cast<std::size_t>(n_) * n_, 0.0) {}
};

// weighted by h^2 over active cells
double mean_active(const ScalarField& f, const Mask& mask);
double sum_active(const ScalarField& f, const Mask& mask);  // integral, h^2 weights
void subtract_mean_active(ScalarField& f, const Mask& mask);

double max_abs(const std::vector<double>& v);

} // namespace sch
