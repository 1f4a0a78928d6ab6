#pragma once

#include <string>
#include <vector>

#include "opk/operad/sym_sequence.hpp"

namespace opk::operad {

/**
 * Operad truncated at max_arity, given on a basis. Arity 1 holds the unit
 * (basis index 0, weight 0); arity 0 is zero. Partial composites are stored
 * as matrices from basis(m) ⊗ basis(k) (column a * rank(k) + b) to
 * basis(m + k - 1).
 */
class Operad {
 public:
  Operad() = default;
  /// composites[m][k][i-1] for m, k >= 2 and m + k - 1 <= max_arity.
  Operad(std::string name, SymSequence module, std::vector<std::vector<std::vector<ExactMatrix>>> composites,
         std::vector<std::vector<std::string>> labels);

  const std::string& name() const { return name_; }
  const SymSequence& module() const { return module_; }
  const CoefficientRing& ring() const { return module_.ring(); }
  int max_arity() const { return module_.max_arity(); }
  int rank(int n) const { return module_.rank(n); }
  int weight(int n, int i) const { return module_.weight(n, i); }
  const std::string& label(int n, int i) const { return labels_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]; }
  /// Basis indices of arity n with positive weight (the augmentation ideal).
  std::vector<int> positive_basis(int n) const;

  /// x ∘_i y on basis elements (i is 1-based).
  SparseVec compose_basis(int m, int a, int i, int k, int b) const;
  SparseVec compose(int m, const SparseVec& x, int i, int k, const SparseVec& y) const;
  const ExactMatrix& composite_matrix(int m, int i, int k) const;
  SparseVec act(int n, const Permutation& w, const SparseVec& v) const { return module_.act(n, w, v); }

  /**
   * Substitution in the set-valued picture. The outer element p has inputs
   * outer (leaf masks ordered by minimum), the inner element q has inputs
   * inner whose union is outer[j]. Returns the composite on the merged
   * inputs, again ordered by minimum.
   */
  SparseVec substitute(const SparseVec& p, const std::vector<Mask>& outer, int j, const SparseVec& q,
                       const std::vector<Mask>& inner) const;
  /// Inputs of the composite produced by substitute().
  static std::vector<Mask> merged_inputs(const std::vector<Mask>& outer, int j, const std::vector<Mask>& inner);

 private:
  std::string name_;
  SymSequence module_;
  std::vector<std::vector<std::vector<ExactMatrix>>> comp_;
  std::vector<std::vector<std::string>> labels_;
};

/// Result of checking operad axioms; failures hold human-readable descriptions.
struct AxiomReport {
  bool unit = true;
  bool associativity = true;
  bool equivariance = true;
  bool weights = true;
  std::vector<std::string> failures;
  bool ok() const { return unit && associativity && equivariance && weights; }
};

/**
 * Verifies unit laws, sequential and parallel associativity of partial
 * composites on all basis triples within max_arity, equivariance for
 * `samples` random permutation pairs per composite, and weight additivity.
 */
AxiomReport check_operad_axioms(const Operad& p, int samples = 8, unsigned seed = 1);

/// Block permutation w ∘_i u in Sigma_{m+k-1} for w in Sigma_m and u in Sigma_k.
Permutation block_permutation(const Permutation& w, int i, const Permutation& u);

}  // namespace opk::operad
