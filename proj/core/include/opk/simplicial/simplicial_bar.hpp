#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "opk/bar/bar_complex.hpp"

namespace opk::simplicial {

using bar::OperadPtr;
using linalg::ChainComplexData;
using linalg::CoefficientRing;
using linalg::ExactMatrix;
using linalg::Scalar;
using linalg::SparseVec;
using operad::Mask;
using operad::Monomial;
using operad::Operad;
using operad::Permutation;

/**
 * Tree with levels and unit vertices removed: a labeled reduced tree (as a
 * Monomial in canonical vertex order) plus a level per vertex, strictly
 * increasing from the root towards the leaves. Arity 1 is the empty tree.
 */
struct LevelCell {
  Monomial tree;
  std::vector<int> levels;

  bool operator==(const LevelCell& o) const { return tree == o.tree && levels == o.levels; }
  bool operator<(const LevelCell& o) const { return tree < o.tree || (tree == o.tree && levels < o.levels); }
};

struct LevelCellHash {
  std::size_t operator()(const LevelCell& c) const;
};

using LevelCombination = std::vector<std::pair<LevelCell, Scalar>>;

/// Whether every level 1..last holds a vertex.
bool levels_nonempty(const LevelCell& c, int last);

/// All cells of arity n with levels in 1..top, in a fixed order.
std::vector<LevelCell> enumerate_level_cells(const Operad& p, int n, int top);

/// Composes level i+1 into level i: children at level i+1 are contracted into parents at level i.
LevelCombination merge_levels(const Operad& p, const LevelCell& c, int i);
/// Removes level i if it is empty, otherwise nothing (the augmentation kills non-unit vertices).
std::optional<LevelCell> drop_empty_level(const LevelCell& c, int i);
/// Inserts an empty level at position j+1.
LevelCell insert_empty_level(const LevelCell& c, int j);

/// A based space of cells with an index.
class CellSpace {
 public:
  CellSpace() = default;
  explicit CellSpace(std::vector<LevelCell> cells);
  int size() const { return static_cast<int>(cells_.size()); }
  const std::vector<LevelCell>& cells() const { return cells_; }
  const LevelCell& at(int j) const { return cells_[static_cast<std::size_t>(j)]; }
  int index(const LevelCell& c) const;

 private:
  std::vector<LevelCell> cells_;
  std::unordered_map<LevelCell, int, LevelCellHash> index_;
};

/**
 * Normalized simplicial bar construction N̄(P)(n) with trivial coefficients:
 * nondegenerate cells have levels 1..d all nonempty. Faces d_i for 0 < i < d
 * merge adjacent levels; d_0 and d_d vanish on nondegenerate cells.
 */
class SimplicialBarComplex {
 public:
  /// max_dim defaults to n-1, the top dimension of nondegenerate cells.
  SimplicialBarComplex(OperadPtr p, int n, int max_dim = -1);

  const Operad& operad() const { return *p_; }
  int arity() const { return n_; }
  int max_dim() const { return max_dim_; }
  int dim(int d) const;
  const CellSpace& basis(int d) const { return spaces_.at(static_cast<std::size_t>(d)); }
  /// Face d_i on normalized chains, 0 < i < d.
  ExactMatrix face(int d, int i) const;
  /// Sum of (-1)^i d_i over 0 < i < d.
  const ExactMatrix& boundary(int d) const { return boundary_.at(static_cast<std::size_t>(d)); }
  /// Degrees 1..max_dim (degree 0 is empty for n >= 2).
  ChainComplexData complex() const;
  /// Action of w: leaves are permuted and labels acted on, without signs.
  ExactMatrix action(int d, const Permutation& w) const;

 private:
  OperadPtr p_;
  int n_;
  int max_dim_;
  std::vector<CellSpace> spaces_;
  std::vector<ExactMatrix> boundary_;
};

/// Coefficient shapes of the un-normalized model.
enum class Coefficients {
  Trivial,  ///< C(I,P,I): levels 1..d
  Right,    ///< C(I,P,P): bar levels 1..d and the coefficient level d+1
};

/**
 * Un-normalized simplicial model C_d(I,P,I) or C_d(I,P,P) on all cells,
 * degenerate ones included, with faces d_0..d_d and degeneracies s_0..s_d.
 */
class UnnormalizedModel {
 public:
  UnnormalizedModel(OperadPtr p, int n, Coefficients kind, int max_dim);

  int top_level(int d) const { return kind_ == Coefficients::Trivial ? d : d + 1; }
  int dim(int d) const { return spaces_.at(static_cast<std::size_t>(d)).size(); }
  const CellSpace& basis(int d) const { return spaces_.at(static_cast<std::size_t>(d)); }
  /// d_i: C_d -> C_{d-1}, 0 <= i <= d.
  ExactMatrix face(int d, int i) const;
  /// s_j: C_d -> C_{d+1}, 0 <= j <= d.
  ExactMatrix degeneracy(int d, int j) const;
  /// The extra degeneracy s_{d+1}: C_d -> C_{d+1} of the right model.
  ExactMatrix extra_degeneracy(int d) const;
  int max_dim() const { return max_dim_; }
  const CoefficientRing& ring() const { return p_->ring(); }

 private:
  OperadPtr p_;
  int n_;
  Coefficients kind_;
  int max_dim_;
  std::vector<CellSpace> spaces_;
};

/// Result of an identity check; `failure` describes the first violated identity.
struct IdentityReport {
  bool ok = true;
  int checked = 0;
  std::string failure;
};

/// All simplicial identities between faces and degeneracies up to max_dim.
IdentityReport check_simplicial_identities(const UnnormalizedModel& m);

/**
 * Contracting homotopy of N(C(I,P,P))(n): with h = (-1)^(d+1) s_{d+1}
 * verifies ∂h + h∂ = id - ηε on normalized chains in degrees 0..max_dim,
 * where ηε is the identity in arity 1 and zero otherwise.
 */
IdentityReport extra_degeneracy_check(OperadPtr p, int n, int max_dim = -1);

/// Display form of a cell, e.g. "{1,2,3} m @1 | {2,3} m @2".
std::string describe(const Operad& p, const LevelCell& c);

}  // namespace opk::simplicial
