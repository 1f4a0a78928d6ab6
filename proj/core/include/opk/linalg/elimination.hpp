#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "opk/linalg/matrix.hpp"

namespace opk::linalg {

/// Rank over the fraction field of the ring (Q for integer input).
int rank(const ExactMatrix& a);

/**
 * Basis of {x : A x = 0}, returned as the columns of a matrix.
 * Over Z the columns form a basis of the integer kernel lattice, which is
 * always saturated.
 */
ExactMatrix kernel_basis(const ExactMatrix& a);

/// Nonzero invariant factors of an integer matrix in divisibility order (ones included).
std::vector<Integer> invariant_factors(const ExactMatrix& a);

/// True if the Z-span of the columns is a direct summand of Z^rows.
bool is_saturated(const ExactMatrix& columns);

/** Echelon basis of a span, one row per pivot; rows start at their pivot column. */
struct RowEchelon {
  std::vector<SparseVec> rows;
  /// Over Z: whether every pivot is 1. Always true over fields.
  bool unit_pivots = true;
};

/**
 * Echelon basis of the span of the vectors (of the lattice they span over Z).
 * Pivots are monic over fields and positive over Z. With reduce set, pivot
 * columns are cleared from all other rows whenever the pivots are units.
 */
RowEchelon row_echelon(const CoefficientRing& ring, const std::vector<SparseVec>& vectors, bool reduce);

/**
 * Expresses vectors in the span of a fixed family of generators.
 * Over Z, membership is tested in the lattice spanned by the generators.
 */
class SpanSolver {
 public:
  explicit SpanSolver(const ExactMatrix& generators);
  ~SpanSolver();
  SpanSolver(SpanSolver&&) noexcept;
  SpanSolver& operator=(SpanSolver&&) noexcept;

  int rank() const;
  /// Coefficients c with sum_j c_j g_j = v, or nothing if v is outside the span.
  std::optional<SparseVec> solve(const SparseVec& v) const;
  /// Solves every column of m; throws std::domain_error if one is outside the span.
  ExactMatrix solve_columns(const ExactMatrix& m) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace opk::linalg
