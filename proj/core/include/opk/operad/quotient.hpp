#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "opk/linalg/ring.hpp"
#include "opk/operad/operad.hpp"
#include "opk/operad/presentation.hpp"

namespace opk::operad {

/**
 * Raised when a quotient over Z has no basis of normal monomials: either
 * the quotient has torsion, or it is free but every echelon form of the
 * ideal has a non-unit pivot.
 */
class QuotientObstruction : public std::runtime_error {
 public:
  enum class Kind { Torsion, NoMonomialBasis };
  QuotientObstruction(Kind kind, int arity, int weight, std::vector<linalg::Integer> factors);
  Kind kind() const { return kind_; }
  int arity() const { return arity_; }
  int weight() const { return weight_; }
  /// Invariant factors greater than one (empty for NoMonomialBasis).
  const std::vector<linalg::Integer>& factors() const { return factors_; }

 private:
  Kind kind_;
  int arity_;
  int weight_;
  std::vector<linalg::Integer> factors_;
};

/// Dimension data of one arity of a quotient, per weight.
struct QuotientStats {
  int arity = 0;
  int weight = 0;
  int free_rank = 0;
  int ideal_rank = 0;
};

/**
 * The operad F(M)/(R) truncated at max_arity. Bases are normal monomials
 * (non-pivot columns of the echelon form of the ideal); composites and
 * actions are computed on representatives and reduced.
 */
Operad quadratic_quotient(const QuadraticPresentation& pres, int max_arity, std::vector<QuotientStats>* stats = nullptr);

/// Free operad on M; M(0) and M(1) must vanish.
Operad free_operad(const SymSequence& generators, int max_arity, const std::string& name = "Free");

}  // namespace opk::operad
