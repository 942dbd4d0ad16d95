#include "sch/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sch/io.hpp"

namespace sch {

SparseMatrix SparseMatrix::assemble(std::vector<Triplet> triplets, int n_rows, int n_cols,
                                    bool symmetric) {
  for (const Triplet& t : triplets) {
    if (t.row < 0 || t.row >= n_rows || t.col < 0 || t.col >= n_cols)
      throw SolverError("assembly: triplet (" + std::to_string(t.row) + "," +
                        std::to_string(t.col) + "," + format_double(t.value) +
                        ") out of range for " + std::to_string(n_rows) + "x" +
                        std::to_string(n_cols));
  }
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseMatrix m;
  m.n_rows_ = n_rows;
  m.n_cols_ = n_cols;
  m.offsets_.assign(static_cast<std::size_t>(n_rows) + 1, 0);
  m.columns_.reserve(triplets.size());
  m.values_.reserve(triplets.size());

  std::size_t pos = 0;
  for (int r = 0; r < n_rows; ++r) {
    while (pos < triplets.size() && triplets[pos].row == r) {
      const int c = triplets[pos].col;
      double v = 0.0;
      while (pos < triplets.size() && triplets[pos].row == r && triplets[pos].col == c) {
        v += triplets[pos].value;
        ++pos;
      }
      if (v != 0.0) {
        m.columns_.push_back(c);
        m.values_.push_back(v);
      }
    }
    m.offsets_[static_cast<std::size_t>(r) + 1] = static_cast<int>(m.columns_.size());
  }

  if (symmetric) {
    if (n_rows != n_cols) throw SolverError("symmetric flag on a non-square matrix");
    if (m.max_asymmetry() != 0.0)
      throw SolverError("matrix flagged symmetric fails the transpose check");
  }
  return m;
}

void SparseMatrix::matvec(std::span<const double> x, std::span<double> y) const {
#pragma omp parallel for schedule(static)
  for (int r = 0; r < n_rows_; ++r) {
    double acc = 0.0;
    for (int p = offsets_[r]; p < offsets_[static_cast<std::size_t>(r) + 1]; ++p)
      acc += values_[p] * x[columns_[p]];
    y[r] = acc;
  }
}

void SparseMatrix::matvec_transpose(std::span<const double> x, std::span<double> y) const {
  std::fill(y.begin(), y.end(), 0.0);
  for (int r = 0; r < n_rows_; ++r)
    for (int p = offsets_[r]; p < offsets_[static_cast<std::size_t>(r) + 1]; ++p)
      y[columns_[p]] += values_[p] * x[r];
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Triplet> t;
  t.reserve(values_.size());
  for (int r = 0; r < n_rows_; ++r)
    for (int p = offsets_[r]; p < offsets_[static_cast<std::size_t>(r) + 1]; ++p)
      t.push_back({columns_[p], r, values_[p]});
  return assemble(std::move(t), n_cols_, n_rows_);
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& other) const {
  if (n_cols_ != other.n_rows_) throw SolverError("multiply: dimension mismatch");
  SparseMatrix out;
  out.n_rows_ = n_rows_;
  out.n_cols_ = other.n_cols_;
  out.offsets_.assign(static_cast<std::size_t>(n_rows_) + 1, 0);

  std::vector<double> acc(static_cast<std::size_t>(other.n_cols_), 0.0);
  std::vector<int> mark(static_cast<std::size_t>(other.n_cols_), -1);
  std::vector<int> touched;
  for (int r = 0; r < n_rows_; ++r) {
    touched.clear();
    for (int p = offsets_[r]; p < offsets_[static_cast<std::size_t>(r) + 1]; ++p) {
      const double a = values_[p];
      const int mid = columns_[p];
      for (int q = other.offsets_[mid]; q < other.offsets_[static_cast<std::size_t>(mid) + 1];
           ++q) {
        const int c = other.columns_[q];
        if (mark[c] != r) {
          mark[c] = r;
          acc[c] = 0.0;
          touched.push_back(c);
        }
        acc[c] += a * other.values_[q];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (int c : touched) {
      if (acc[c] != 0.0) {
        out.columns_.push_back(c);
        out.values_.push_back(acc[c]);
      }
    }
    out.offsets_[static_cast<std::size_t>(r) + 1] = static_cast<int>(out.columns_.size());
  }
  return out;
}

double SparseMatrix::max_asymmetry() const {
  const SparseMatrix at = transpose();
  double worst = 0.0;
  for (int r = 0; r < n_rows_; ++r) {
    int pa = offsets_[r], pb = at.offsets_[r];
    const int ea = offsets_[static_cast<std::size_t>(r) + 1];
    const int eb = at.offsets_[static_cast<std::size_t>(r) + 1];
    while (pa < ea || pb < eb) {
      const int ca = pa < ea ? columns_[pa] : n_cols_;
      const int cb = pb < eb ? at.columns_[pb] : n_cols_;
      if (ca == cb) {
        worst = std::max(worst, std::fabs(values_[pa] - at.values_[pb]));
        ++pa;
        ++pb;
      } else if (ca < cb) {
        worst = std::max(worst, std::fabs(values_[pa]));
        ++pa;
      } else {
        worst = std::max(worst, std::fabs(at.values_[pb]));
        ++pb;
      }
    }
  }
  return worst;
}

std::vector<double> SparseMatrix::diagonal() const {
  std::vector<double> d(static_cast<std::size_t>(n_rows_), 0.0);
  for (int r = 0; r < n_rows_; ++r)
    for (int p = offsets_[r]; p < offsets_[static_cast<std::size_t>(r) + 1]; ++p)
      if (columns_[p] == r) d[r] = values_[p];
  return d;
}

} // namespace sch
