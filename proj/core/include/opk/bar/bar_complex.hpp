#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "opk/linalg/chain_complex.hpp"
#include "opk/operad/monomial.hpp"
#include "opk/operad/operad.hpp"

namespace opk::bar {

using linalg::ChainComplexData;
using linalg::ExactMatrix;
using linalg::SparseVec;
using operad::Mask;
using operad::Monomial;
using operad::Operad;
using operad::Permutation;

/// Shared handle on an operad; complexes keep their operad alive.
using OperadPtr = std::shared_ptr<const Operad>;

/**
 * Reduced bar complex B̄(P)(n). A basis element of degree d is a reduced
 * tree with d vertices in canonical order, each vertex labeled by a basis
 * element of positive weight of P(inputs). The tree and labels are stored
 * as a Monomial whose labels index P bases. Every vertex carries one odd
 * suspension, so reorderings of vertices produce Koszul signs.
 */
class BarComplex {
 public:
  BarComplex(OperadPtr p, int n);

  const Operad& operad() const { return *p_; }
  OperadPtr operad_ptr() const { return p_; }
  int arity() const { return n_; }
  int max_degree() const { return n_ - 1; }
  int dim(int d) const;
  const std::vector<Monomial>& basis(int d) const;
  /// Index of a basis element in its degree, -1 if absent.
  int index(const Monomial& t) const;
  int weight(int d, int j) const { return weights_[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)]; }
  /// Weights occurring in the complex, increasing.
  std::vector<int> weight_values() const;
  /// beta: degree d -> degree d-1, for 2 <= d <= max_degree.
  const ExactMatrix& boundary(int d) const;
  /// Whole complex on degrees 1..n-1 with weight labels.
  ChainComplexData complex() const;
  /// The summand of weight s.
  ChainComplexData weight_column(int s) const;
  /// Basis indices of degree d with weight s.
  std::vector<int> weight_indices(int d, int s) const;
  /// Action of w on degree d, including the Koszul sign of the vertex reordering.
  ExactMatrix action(int d, const Permutation& w) const;

 private:
  SparseVec beta(const Monomial& t) const;

  OperadPtr p_;
  int n_;
  std::vector<std::vector<Monomial>> basis_;
  std::vector<std::vector<int>> weights_;
  std::unordered_map<Monomial, int, operad::MonomialHash> index_;
  std::vector<ExactMatrix> boundary_;
};

/// Leaf masks of the inputs of the vertex with mask `me` among the vertex masks, ordered by minimum.
std::vector<Mask> inputs_of(const std::vector<Mask>& masks, Mask me);
/// Index of the parent of vertex v (smallest strictly larger mask), -1 for the root.
int parent_of(const std::vector<Mask>& masks, int v);

/// New positions of `order` (old vertex masks) inside the canonical order of `target`.
std::vector<int> positions_in(const std::vector<Mask>& order, const std::vector<Mask>& target);

/**
 * Koszul construction K̄(P)(n)_(s): kernel of beta on the degree-s,
 * weight-s part of the bar complex.
 */
struct KoszulComponent {
  int arity = 0;
  int weight = 0;
  /// Columns are kernel vectors in the degree-`weight` bar basis.
  ExactMatrix inclusion;
};

class KoszulModule {
 public:
  KoszulModule() = default;
  KoszulModule(OperadPtr p, int max_arity);

  int max_arity() const { return max_arity_; }
  const BarComplex& bar(int n) const { return *bars_.at(static_cast<std::size_t>(n)); }
  /// Components of arity n (one per weight with nonzero kernel).
  const std::vector<KoszulComponent>& components(int n) const { return comps_.at(static_cast<std::size_t>(n)); }
  int rank(int n) const;
  /// Whether every inclusion spans a direct summand over Z (always true over fields).
  bool saturated() const { return saturated_; }
  /// Action of w on the component, in the kernel basis.
  ExactMatrix action(const KoszulComponent& c, const Permutation& w) const;

 private:
  OperadPtr p_;
  int max_arity_ = 0;
  std::vector<std::shared_ptr<BarComplex>> bars_;
  std::vector<std::vector<KoszulComponent>> comps_;
  bool saturated_ = true;
};

KoszulModule koszul_construction(OperadPtr p, int max_arity);

/// Homology of one weight column of B̄(P)(n).
struct KoszulWeightReport {
  int arity = 0;
  int weight = 0;
  linalg::HomologySummary homology;
  bool concentrated = false;
};

struct KoszulReport {
  bool koszul = true;
  std::vector<KoszulWeightReport> columns;
};

/// Bar homology criterion up to max_arity: H_d(B̄(P)_(s)) = 0 for d != s.
KoszulReport is_koszul(OperadPtr p, int max_arity);

}  // namespace opk::bar
