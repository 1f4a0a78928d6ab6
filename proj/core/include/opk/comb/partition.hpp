#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "opk/comb/permutation.hpp"

namespace opk::comb {

/// Subset of {1..n} as a bit mask; bit i stands for element i+1.
using Mask = std::uint32_t;

inline int popcount(Mask m) { return __builtin_popcount(m); }
inline int lowest(Mask m) { return __builtin_ctz(m); }
inline Mask full_mask(int n) { return n >= 32 ? ~Mask(0) : ((Mask(1) << n) - 1); }
/// Elements of a mask (0-based) in increasing order.
std::vector<int> elements(Mask m);
/// Lexicographic comparison of the sorted element lists.
bool lex_less(Mask a, Mask b);
/// Image of a subset under a permutation.
Mask permute_mask(const Permutation& w, Mask m);

/**
 * Set partition of {1..r} in canonical form: blocks sorted by their minima.
 * Order convention: a <= b when b refines a, so the one-block partition is
 * the smallest element and the all-singletons partition the largest.
 */
class SetPartition {
 public:
  SetPartition() = default;
  /// Blocks in any order; validated and canonicalized.
  SetPartition(int ground, std::vector<Mask> blocks);
  static SetPartition one_block(int r);
  static SetPartition singletons(int r);
  /// From 1-based element lists.
  static SetPartition from_lists(int ground, const std::vector<std::vector<int>>& blocks);

  int ground() const { return ground_; }
  const std::vector<Mask>& blocks() const { return blocks_; }
  int size() const { return static_cast<int>(blocks_.size()); }
  /// Index of the block containing element i (0-based).
  int block_of(int i) const;

  bool operator==(const SetPartition& o) const { return ground_ == o.ground_ && blocks_ == o.blocks_; }
  bool operator!=(const SetPartition& o) const { return !(*this == o); }
  bool operator<(const SetPartition& o) const { return blocks_ < o.blocks_; }
  std::string to_string() const;

 private:
  int ground_ = 0;
  std::vector<Mask> blocks_;
};

/// True iff every block of b lies in a block of a (a <= b). Throws on ground mismatch.
bool refines(const SetPartition& a, const SetPartition& b);

/// All partitions of {1..r}, by restricted growth strings in lexicographic order.
std::vector<SetPartition> enumerate_partitions(int r);

SetPartition permute_partition(const Permutation& w, const SetPartition& p);

/// Chain of partitions, each refining the previous one; endpoints stored explicitly.
using PartitionChain = std::vector<SetPartition>;

/// Strict chains from the one-block partition to the singletons with `length` steps.
std::vector<PartitionChain> enumerate_strict_chains(int r, int length);

/// Möbius function between the one-block partition and the singletons, by recursion.
long mobius_bottom_top(int r);

/// Bell numbers by the triangle recurrence.
long bell_number(int r);

}  // namespace opk::comb
