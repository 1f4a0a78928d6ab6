#pragma once

#include <map>
#include <utility>
#include <vector>

#include "opk/linalg/ring.hpp"

namespace opk::linalg {

/// Sparse vector: (index, value) pairs sorted by index, no stored zeros.
using SparseVec = std::vector<std::pair<int, Scalar>>;

/** Accumulates terms of a sparse vector over a ring. */
class VecBuilder {
 public:
  explicit VecBuilder(const CoefficientRing& ring) : ring_(&ring) {}
  void add(int index, const Scalar& value);
  void add(const SparseVec& v, const Scalar& coeff);
  SparseVec take();
  bool empty() const { return terms_.empty(); }

 private:
  const CoefficientRing* ring_;
  std::map<int, Scalar> terms_;
};

SparseVec scale(const SparseVec& v, const Scalar& c, const CoefficientRing& ring);
SparseVec add_scaled(const SparseVec& a, const SparseVec& b, const Scalar& c, const CoefficientRing& ring);
Scalar entry(const SparseVec& v, int index);

/**
 * Sparse matrix over a coefficient ring, stored by columns.
 * Column j is the image of the j-th source basis vector.
 */
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(const CoefficientRing& ring, int rows, int cols);

  static ExactMatrix identity(const CoefficientRing& ring, int n);
  /// Rows given as dense integer lists.
  static ExactMatrix from_rows(const CoefficientRing& ring, const std::vector<std::vector<long>>& rows);
  static ExactMatrix from_dense(const CoefficientRing& ring, const std::vector<std::vector<Scalar>>& rows);

  const CoefficientRing& ring() const { return ring_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Scalar at(int r, int c) const;
  void set(int r, int c, const Scalar& v);
  void add_to(int r, int c, const Scalar& v);
  /// Replaces a whole column; the vector must be normalized and sorted.
  void set_column(int c, SparseVec v);
  const SparseVec& column(int c) const { return cols_data_[c]; }

  std::size_t nonzeros() const;
  bool is_zero() const;
  ExactMatrix transpose() const;
  ExactMatrix operator*(const ExactMatrix& o) const;
  ExactMatrix operator+(const ExactMatrix& o) const;
  ExactMatrix operator-(const ExactMatrix& o) const;
  SparseVec apply(const SparseVec& v) const;
  ExactMatrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;
  Scalar trace() const;
  std::vector<std::vector<Scalar>> to_dense() const;
  /// Same entries reinterpreted in another ring (entries renormalized).
  ExactMatrix change_ring(const CoefficientRing& ring) const;

  bool operator==(const ExactMatrix& o) const;
  bool operator!=(const ExactMatrix& o) const { return !(*this == o); }

 private:
  CoefficientRing ring_;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<SparseVec> cols_data_;
};

}  // namespace opk::linalg
