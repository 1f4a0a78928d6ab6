#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "opk/comb/partition.hpp"
#include "opk/simplicial/simplicial_bar.hpp"

namespace opk::simplicial {

using comb::PartitionChain;

/**
 * Normalized chains of the partition poset K̄(r): strict chains from the
 * one-block partition to the singletons, boundary Σ_{0<i<d} (-1)^i omit_i.
 * Degrees run 1..r-1.
 */
class PartitionComplex {
 public:
  explicit PartitionComplex(int r, const CoefficientRing& ring = CoefficientRing::rationals());

  int r() const { return r_; }
  const CoefficientRing& ring() const { return ring_; }
  int dim(int d) const;
  const std::vector<PartitionChain>& basis(int d) const { return basis_.at(static_cast<std::size_t>(d)); }
  /// Index of a chain of length d, -1 if absent.
  int index(int d, const PartitionChain& c) const;
  const ExactMatrix& boundary(int d) const { return boundary_.at(static_cast<std::size_t>(d)); }
  ChainComplexData complex() const;
  /// Simultaneous block permutation of every partition in each chain.
  ExactMatrix action(int d, const Permutation& w) const;

 private:
  int r_;
  CoefficientRing ring_;
  std::vector<std::vector<PartitionChain>> basis_;
  std::vector<std::map<PartitionChain, int>> index_;
  std::vector<ExactMatrix> boundary_;
};

/**
 * Partition sequence of a cell of N̄(Com)(r): μ_k collects the inputs of the
 * vertices at levels ≤ k that are leaves or vertices above level k, and
 * μ_0 is the one-block partition.
 */
PartitionChain partition_chain(const LevelCell& c);

/// Outcome of comparing N̄(Com)(r) with the partition complex.
struct PartitionIsoReport {
  bool bijective = true;
  bool chain_map = true;
  bool equivariant = true;
  std::string failure;
  bool ok() const { return bijective && chain_map && equivariant; }
};

/// Checks that partition_chain induces an equivariant isomorphism of complexes.
PartitionIsoReport check_partition_isomorphism(OperadPtr com, int r);

/// Character of Σ_r on H_{r-1}(K̄(r)) over Q, one value per conjugacy class representative.
std::vector<std::pair<Permutation, Scalar>> top_homology_character(int r);

}  // namespace opk::simplicial
