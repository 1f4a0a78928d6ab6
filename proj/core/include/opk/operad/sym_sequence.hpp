#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "opk/comb/partition.hpp"
#include "opk/comb/permutation.hpp"
#include "opk/linalg/matrix.hpp"

namespace opk::operad {

using comb::Mask;
using comb::Permutation;
using linalg::CoefficientRing;
using linalg::ExactMatrix;
using linalg::Scalar;
using linalg::SparseVec;

/**
 * Arity-indexed family of based modules M(0..max_arity) with a symmetric
 * group action. The action of Sigma_r is given by the matrices of the
 * adjacent transpositions s_k = (k k+1), k = 0..r-2. A permutation w acts on
 * a basis element of arity r by sending input j to input w(j).
 */
class SymSequence {
 public:
  SymSequence() = default;
  SymSequence(const CoefficientRing& ring, int max_arity);

  const CoefficientRing& ring() const { return ring_; }
  int max_arity() const { return max_arity_; }
  int rank(int r) const;
  int degree(int r, int i) const { return comps_[static_cast<std::size_t>(r)].degrees[static_cast<std::size_t>(i)]; }
  int weight(int r, int i) const { return comps_[static_cast<std::size_t>(r)].weights[static_cast<std::size_t>(i)]; }
  const std::vector<int>& degrees(int r) const { return comps_[static_cast<std::size_t>(r)].degrees; }
  const std::vector<int>& weights(int r) const { return comps_[static_cast<std::size_t>(r)].weights; }
  /// Matrix of the adjacent transposition s_k on M(r).
  const ExactMatrix& generator(int r, int k) const;

  /// Installs the component of arity r; generators hold the s_k matrices.
  void set_component(int r, std::vector<ExactMatrix> generators, std::vector<int> degrees, std::vector<int> weights);

  /// Matrix of w on M(r), memoized.
  ExactMatrix action(int r, const Permutation& w) const;
  SparseVec act(int r, const Permutation& w, const SparseVec& v) const;
  /// Checks s_k^2 = 1, (s_k s_{k+1})^3 = 1 and (s_j s_k)^2 = 1 for |j-k| > 1.
  bool check_coxeter(int r) const;

  /// Trivial, sign and regular representations of Sigma_r in a single arity.
  static SymSequence trivial(const CoefficientRing& ring, int r, int max_arity, int weight = 1);
  static SymSequence sign(const CoefficientRing& ring, int r, int max_arity, int weight = 1);
  static SymSequence regular(const CoefficientRing& ring, int r, int max_arity, int weight = 1);
  /// The composition unit I: rank one in arity 1, weight 0.
  static SymSequence unit(const CoefficientRing& ring, int max_arity);
  /// The tensor unit: rank one in arity 0.
  static SymSequence tensor_unit(const CoefficientRing& ring, int max_arity);
  /// Componentwise direct sum (same ring); max arity is the smaller one.
  static SymSequence direct_sum(const SymSequence& a, const SymSequence& b);

 private:
  struct Component {
    int rank = 0;
    std::vector<ExactMatrix> gens;
    std::vector<int> degrees;
    std::vector<int> weights;
  };
  struct Cache {
    std::mutex mu;
    std::map<std::pair<int, long>, ExactMatrix> actions;
  };

  CoefficientRing ring_;
  int max_arity_ = 0;
  std::vector<Component> comps_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Trace of the action of w on M(r).
Scalar character(const SymSequence& m, int r, const Permutation& w);

/// Linear dual: inverse-transposed action, degrees negated.
SymSequence dual_module(const SymSequence& m);

/// Tensor product with the sign representation.
SymSequence sign_twist(const SymSequence& m);

/// Basis element of (M ⊗ N)(n): a subset I of {1..n} and basis elements a in M(|I|), b in N(n-|I|).
struct TensorBasisElement {
  Mask first = 0;
  int a = 0;
  int b = 0;
  bool operator==(const TensorBasisElement& o) const { return first == o.first && a == o.a && b == o.b; }
};
std::vector<TensorBasisElement> tensor_basis(const SymSequence& m, const SymSequence& n, int arity);
SymSequence tensor_modules(const SymSequence& m, const SymSequence& n);
/// Symmetry isomorphism (M ⊗ N)(arity) -> (N ⊗ M)(arity) with Koszul signs.
ExactMatrix tensor_symmetry(const SymSequence& m, const SymSequence& n, int arity);

/**
 * Basis element of (M ∘ N)(n): blocks J_1..J_r ordered by their minima,
 * a basis element of M(r) and one of N(|J_k|) per block.
 */
struct CompositeBasisElement {
  comb::SetPartition blocks;
  int a = 0;
  std::vector<int> b;
};
/// Requires N(0) = 0.
std::vector<CompositeBasisElement> composite_basis(const SymSequence& m, const SymSequence& n, int arity);
SymSequence compose_modules(const SymSequence& m, const SymSequence& n);

/// Position map of an order-preserving relabeling: the rank of w(i_j) within w(I) for the j-th element i_j of I.
Permutation induced_permutation(const Permutation& w, Mask subset);

/// Sign of reordering graded items: perm[j] is the new position of item j.
int koszul_sign(const std::vector<int>& degrees, const std::vector<int>& new_position);

}  // namespace opk::operad
