#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "opk/operad/sym_sequence.hpp"

namespace opk::operad {

/**
 * Basis element of a free operad: a reduced tree on {1..arity}, given by
 * the leaf masks of its vertices in canonical order, and one generator basis
 * index per vertex. A vertex label lives in M(k) with its k inputs ordered by
 * their minimal leaves, so grafting never relabels generators.
 */
struct Monomial {
  int arity = 0;
  std::vector<Mask> masks;
  std::vector<int> labels;

  int weight() const { return static_cast<int>(masks.size()); }
  bool operator==(const Monomial& o) const { return arity == o.arity && masks == o.masks && labels == o.labels; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }
  bool operator<(const Monomial& o) const;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const;
};

using MonomialCombination = std::vector<std::pair<Monomial, Scalar>>;

/// Builds a monomial from vertices in any order; validates the laminar family.
Monomial make_monomial(int arity, std::vector<std::pair<Mask, int>> vertices);

/// Depth of each vertex (number of strictly larger masks).
std::vector<int> monomial_depths(const Monomial& m);
/// Inputs of vertex v as leaf masks ordered by minimal leaf.
std::vector<Mask> monomial_inputs(const Monomial& m, int v);

/// Partial composite x ∘_i y (i is 1-based) by grafting.
Monomial graft(const Monomial& x, int i, const Monomial& y);

/// Action of w on a monomial; generator labels are permuted through their own actions.
MonomialCombination act_monomial(const SymSequence& gens, const Monomial& m, const Permutation& w);

/// All monomials of arity n with the given number of vertices, in a fixed order.
std::vector<Monomial> enumerate_monomials(const SymSequence& gens, int n, int weight);

/// Expression such as m(m(x1,x2),x3); names(k, label) renders a generator basis element of arity k.
std::string to_expression(const Monomial& m, const std::function<std::string(int, int)>& names);

}  // namespace opk::operad
