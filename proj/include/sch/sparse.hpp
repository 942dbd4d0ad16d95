#pragma once

#include <span>
#include <vector>

namespace sch {

struct Triplet {
  int row;
  int col;
  double value;
};

// Compressed-row matrix. Rows are sorted by column, duplicates summed and
// explicit zeros dropped at assembly.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  // symmetric: verify A == A^T entrywise (tolerance 0) and fail otherwise.
  static SparseMatrix assemble(std::vector<Triplet> triplets, int n_rows, int n_cols,
                               bool symmetric = false);

  int rows() const { return n_rows_; }
  int cols() const { return n_cols_; }
  std::size_t nnz() const { return values_.size(); }

  // y = A x;  row sums are accumulated in column order, so the result is
  // deterministic for any thread count.
  void matvec(std::span<const double> x, std::span<double> y) const;
  // y = A^T x (serial; used only at assembly scale)
  void matvec_transpose(std::span<const double> x, std::span<double> y) const;

  SparseMatrix transpose() const;

  // C = (*this) * other, deterministic accumulation order
  SparseMatrix multiply(const SparseMatrix& other) const;

  // max |A - A^T| over all entries
  double max_asymmetry() const;

  std::vector<double> diagonal() const;

  const std::vector<int>& row_offsets() const { return offsets_; }
  const std::vector<int>& col_indices() const { return columns_; }
  const std::vector<double>& values() const { return values_; }

 private:
  int n_rows_ = 0;
  int n_cols_ = 0;
  std::vector<int> offsets_;
  std::vector<int> columns_;
  std::vector<double> values_;
};

} // namespace sch
