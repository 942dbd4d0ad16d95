#include "sch/unfold.hpp"

#include <cmath>

#include "sch/io.hpp"

namespace sch {

namespace {

int micro_resolution(const ScalarField& field, int k) {
  if (k < 1) throw ConfigError("unfold: eps must be 1/k with integer k >= 1");
  if (field.n % k != 0)
    throw ConfigError("unfold: grid of " + std::to_string(field.n) +
                      " cells is not aligned with the 1/" + std::to_string(k) + " lattice");
  return field.n / k;
}

} // namespace

UnfoldedField unfold(const ScalarField& field, int k) {
  const int N = micro_resolution(field, k);
  UnfoldedField out(k, N);
  for (int J = 0; J < k; ++J)
    for (int I = 0; I < k; ++I)
      for (int j = 0; j < N; ++j)
        for (int i = 0; i < N; ++i)
          out.at(I, J, i, j) = field.at(I * N + i, J * N + j);
  return out;
}

ScalarField refold(const UnfoldedField& unfolded) {
  const int n = unfolded.k * unfolded.N;
  ScalarField out(n);
  for (int J = 0; J < unfolded.k; ++J)
    for (int I = 0; I < unfolded.k; ++I)
      for (int j = 0; j < unfolded.N; ++j)
        for (int i = 0; i < unfolded.N; ++i)
          out.at(I * unfolded.N + i, J * unfolded.N + j) = unfolded.at(I, J, i, j);
  return out;
}

IntegralCheck integral_identity_check(const ScalarField& field, int k) {
  const UnfoldedField unfolded = unfold(field, k);
  const double h2 = field.h * field.h;
  double lhs = 0.0;
  for (double x : field.v) lhs += x;
  lhs *= h2;
  const double weight = unfolded.eps() * unfolded.eps() /
                        (static_cast<double>(unfolded.N) * unfolded.N);
  double rhs = 0.0;
  for (double x : unfolded.v) rhs += x;
  rhs *= weight;
  return {lhs, rhs, std::fabs(lhs - rhs)};
}

UnfoldedField sample_product(int k, int N, const ProductFunction& limit) {
  UnfoldedField out(k, N);
  const double eps = out.eps();
  for (int J = 0; J < k; ++J) {
    for (int I = 0; I < k; ++I) {
      const double x1 = (I + 0.5) * eps;
      const double x2 = (J + 0.5) * eps;
      for (int j = 0; j < N; ++j) {
        const double y2 = (j + 0.5) / N;
        for (int i = 0; i < N; ++i) {
          const double y1 = (i + 0.5) / N;
          out.at(I, J, i, j) = limit(x1, x2, y1, y2);
        }
      }
    }
  }
  return out;
}

double two_scale_error(const UnfoldedField& a, const UnfoldedField& b) {
  if (a.k != b.k || a.N != b.N) throw ConfigError("two_scale_error: product grids differ");
  const double weight = a.eps() * a.eps() / (static_cast<double>(a.N) * a.N);
  double acc = 0.0;
  for (std::size_t q = 0; q < a.v.size(); ++q) {
    const double d = a.v[q] - b.v[q];
    acc += d * d;
  }
  return std::sqrt(acc * weight);
}

double two_scale_error(const UnfoldedField& a, const ProductFunction& limit) {
  return two_scale_error(a, sample_product(a.k, a.N, limit));
}

double product_l2_norm(const UnfoldedField& a) {
  const double weight = a.eps() * a.eps() / (static_cast<double>(a.N) * a.N);
  double acc = 0.0;
  for (double x : a.v) acc += x * x;
  return std::sqrt(acc * weight);
}

double pairing(const ScalarField& field, int k, const ProductFunction& testfn) {
  const int N = micro_resolution(field, k);
  const double h2 = field.h * field.h;
  double acc = 0.0;
  for (int gj = 0; gj < field.n; ++gj) {
    const double x2 = (gj + 0.5) * field.h;
    const double y2 = (gj % N + 0.5) / N;
    for (int gi = 0; gi < field.n; ++gi) {
      const double x1 = (gi + 0.5) * field.h;
      const double y1 = (gi % N + 0.5) / N;
      acc += field.at(gi, gj) * testfn(x1, x2, y1, y2);
    }
  }
  return acc * h2;
}

} // namespace sch
