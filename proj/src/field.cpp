#include "sch/field.hpp"

#include <cmath>

namespace sch {

double sum_active(const ScalarField& f, const Mask& mask) {
  // fixed row order keeps the sum deterministic
  double acc = 0.0;
  for (std::size_t c = 0; c < f.v.size(); ++c)
    if (mask.cell[c]) acc += f.v[c];
  return acc * f.h * f.h;
}

double mean_active(const ScalarField& f, const Mask& mask) {
  double acc = 0.0;
  for (std::size_t c = 0; c < f.v.size(); ++c)
    if (mask.cell[c]) acc += f.v[c];
  return acc / mask.active_cells;
}

void subtract_mean_active(ScalarField& f, const Mask& mask) {
  const double m = mean_active(f, mask);
  for (std::size_t c = 0; c < f.v.size(); ++c)
    if (mask.cell[c]) f.v[c] -= m;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

} // namespace sch
