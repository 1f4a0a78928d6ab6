#pragma once

#include <string>
#include <vector>

namespace opk::comb {

/**
 * Permutation of {1..n}, stored 0-based: image(i) is the image of i.
 * Products compose right to left: (v * w)(i) = v(w(i)).
 */
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images0);
  static Permutation identity(int n);
  /// From 1-based images, as written in one-line notation.
  static Permutation from_one_line(const std::vector<int>& images1);
  /// From 1-based cycles, e.g. {{1,2,3}} for (1 2 3).
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles);
  /// The adjacent transposition exchanging k and k+1 (0-based k).
  static Permutation adjacent(int n, int k);

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return img_; }

  Permutation operator*(const Permutation& w) const;
  Permutation inverse() const;
  int sign() const;
  bool is_identity() const;
  /// Cycle type as a partition of n in non-increasing order.
  std::vector<int> cycle_type() const;
  /**
   * Word k_1..k_m in adjacent transpositions (0-based) with
   * w = s_{k_1} * s_{k_2} * ... * s_{k_m} and m = number of inversions.
   */
  std::vector<int> adjacent_word() const;
  /// Rank in lexicographic order of one-line notation, in [0, n!).
  long lex_rank() const;

  bool operator==(const Permutation& o) const { return img_ == o.img_; }
  bool operator!=(const Permutation& o) const { return img_ != o.img_; }
  bool operator<(const Permutation& o) const { return img_ < o.img_; }

  std::string to_string() const;

 private:
  std::vector<int> img_;
};

/// All permutations of {1..n} in lexicographic order.
std::vector<Permutation> all_permutations(int n);

/// One permutation per cycle type (per conjugacy class), cycles on consecutive points.
std::vector<Permutation> conjugacy_class_representatives(int n);

/// Sign of the permutation sorting `seq` into increasing order (entries distinct).
int sorting_sign(const std::vector<int>& seq);

/// Permutation sending position j to the rank of keys[j] among the keys (keys distinct).
Permutation rank_permutation(const std::vector<long>& keys);

long factorial(int n);

}  // namespace opk::comb
