#pragma once

#include <functional>

#include "sch/field.hpp"

namespace sch {

// T^eps u sampled on the product grid: macro index (I,J) runs over the
// eps-lattice of Omega, micro index (i,j) over the N x N cell grid of Y.
// On a grid aligned with the lattice (n = k*N) the operator is an exact
// block reshape: value(I,J,i,j) = u(I*N+i, J*N+j).
struct UnfoldedField {
  int k = 0;  // macro cells per side, eps = 1/k
  int N = 0;  // micro resolution
  std::vector<double> v;

  UnfoldedField() = default;
  UnfoldedField(int k_, int N_)
      : k(k_), N(N_),
        v(static_cast<std::size_t>(k_) * k_ * N_ * N_, 0.0) {}

  double eps() const { return 1.0 / k; }
  std::size_t index(int I, int J, int i, int j) const {
    return ((static_cast<std::size_t>(J) * k + I) * N + static_cast<std::size_t>(j)) * N + i;
  }
  double& at(int I, int J, int i, int j) { return v[index(I, J, i, j)]; }
  double at(int I, int J, int i, int j) const { return v[index(I, J, i, j)]; }
};

// Errors if the field resolution is not an exact multiple of k; no
// interpolation is ever performed.
UnfoldedField unfold(const ScalarField& field, int k);

// exact inverse of unfold
ScalarField refold(const UnfoldedField& unfolded);

struct IntegralCheck {
  double lhs;   // sum over Omega, h^2 weights
  double rhs;   // (1/|Y|) sum over Omega x Y, eps^2 h_y^2 weights
  double diff;  // |lhs - rhs|, zero up to rounding on aligned grids
};

IntegralCheck integral_identity_check(const ScalarField& field, int k);

// Limit candidates are sampled at macro cell centers x_hat(I,J) and micro
// cell centers y_hat(i,j); arguments are (x1, x2, y1, y2).
using ProductFunction = std::function<double(double, double, double, double)>;

UnfoldedField sample_product(int k, int N, const ProductFunction& limit);

// discrete L2(Omega x Y) distance, product measure eps^2 h_y^2
double two_scale_error(const UnfoldedField& a, const UnfoldedField& b);
double two_scale_error(const UnfoldedField& a, const ProductFunction& limit);

double product_l2_norm(const UnfoldedField& a);

// sum over Omega of u(x) phi(x, {x/eps}) h^2; the oscillation argument is
// the in-cell fraction of the grid point
double pairing(const ScalarField& field, int k, const ProductFunction& testfn);

} // namespace sch
