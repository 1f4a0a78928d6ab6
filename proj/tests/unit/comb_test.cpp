#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "opk/comb/partition.hpp"
#include "opk/comb/permutation.hpp"

namespace {

using namespace opk::comb;

/// Stirling numbers of the second kind by the standard recurrence.
long stirling2(int n, int k) {
  if (n == 0 && k == 0) return 1;
  if (n == 0 || k == 0) return 0;
  return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1);
}

/// Block label of every element, used as an independent refinement oracle.
std::vector<int> labels(const SetPartition& p) {
  std::vector<int> out(static_cast<std::size_t>(p.ground()), -1);
  for (int b = 0; b < p.size(); ++b)
    for (int i = 0; i < p.ground(); ++i)
      if (p.blocks()[static_cast<std::size_t>(b)] >> i & 1) out[static_cast<std::size_t>(i)] = b;
  return out;
}

/// Whether `fine` strictly refines `coarse`.
bool strictly_finer(const SetPartition& fine, const SetPartition& coarse) {
  const auto f = labels(fine);
  const auto c = labels(coarse);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < f.size(); ++j)
      if (f[i] == f[j] && c[i] != c[j]) return false;
  return fine.size() > coarse.size();
}

/// Chains from `from` down to the singletons with exactly `steps` strict refinements.
long count_chains(const std::vector<SetPartition>& all, const SetPartition& from, int steps) {
  if (steps == 0) return from.size() == from.ground() ? 1 : 0;
  long total = 0;
  for (const auto& p : all)
    if (strictly_finer(p, from)) total += count_chains(all, p, steps - 1);
  return total;
}

TEST(Partitions, BellNumbersMatchStirlingSums) {
  for (int r = 1; r <= 8; ++r) {
    long sum = 0;
    for (int k = 0; k <= r; ++k) sum += stirling2(r, k);
    EXPECT_EQ(bell_number(r), sum);
    if (r <= 7) {
      const auto ps = enumerate_partitions(r);
      EXPECT_EQ(static_cast<long>(ps.size()), sum);
      EXPECT_EQ(std::set<SetPartition>(ps.begin(), ps.end()).size(), ps.size());
    }
  }
}

TEST(Partitions, BlocksAreOrderedByMinimum) {
  for (const auto& p : enumerate_partitions(5)) {
    Mask seen = 0;
    for (std::size_t b = 0; b < p.blocks().size(); ++b) {
      EXPECT_EQ(p.blocks()[b] & seen, 0u);
      seen |= p.blocks()[b];
      if (b > 0) {
        EXPECT_LT(lowest(p.blocks()[b - 1]), lowest(p.blocks()[b]));
      }
    }
    EXPECT_EQ(seen, full_mask(5));
  }
}

TEST(Partitions, RefinementAgreesWithLabelOracle) {
  const auto ps = enumerate_partitions(4);
  for (const auto& a : ps)
    for (const auto& b : ps) EXPECT_EQ(refines(a, b) && a != b, strictly_finer(b, a));
}

TEST(Partitions, StrictChainsMatchBruteForce) {
  for (int r = 2; r <= 5; ++r) {
    const auto all = enumerate_partitions(r);
    for (int d = 1; d < r; ++d) {
      const auto chains = enumerate_strict_chains(r, d);
      EXPECT_EQ(static_cast<long>(chains.size()), count_chains(all, SetPartition::one_block(r), d)) << r << " " << d;
      for (const auto& c : chains) {
        ASSERT_EQ(static_cast<int>(c.size()), d + 1);
        for (std::size_t i = 0; i + 1 < c.size(); ++i) EXPECT_TRUE(strictly_finer(c[i + 1], c[i]));
      }
    }
  }
}

TEST(Partitions, MobiusOfPartitionLattice) {
  long f = 1;
  for (int r = 2; r <= 7; ++r) {
    f *= r - 1;
    EXPECT_EQ(mobius_bottom_top(r), (r % 2 ? 1 : -1) * f) << r;
  }
  EXPECT_THROW(mobius_bottom_top(1), std::invalid_argument);
}

TEST(Partitions, PermutingPreservesShape) {
  std::mt19937 rng(3);
  std::vector<int> img = {0, 1, 2, 3, 4};
  for (const auto& p : enumerate_partitions(5)) {
    std::shuffle(img.begin(), img.end(), rng);
    const Permutation w(img);
    const auto q = permute_partition(w, p);
    std::multiset<int> a, b;
    for (Mask m : p.blocks()) a.insert(popcount(m));
    for (Mask m : q.blocks()) b.insert(popcount(m));
    EXPECT_EQ(a, b);
    EXPECT_EQ(permute_partition(w.inverse(), q), p);
  }
}

int inversions(const std::vector<int>& v) {
  int n = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) n += v[i] > v[j];
  return n;
}

TEST(Permutations, SignIsMultiplicativeAndMatchesInversions) {
  for (int n = 1; n <= 5; ++n) {
    const auto all = all_permutations(n);
    EXPECT_EQ(static_cast<long>(all.size()), factorial(n));
    for (const auto& a : all) {
      EXPECT_EQ(a.sign(), inversions(a.images()) % 2 ? -1 : 1);
      EXPECT_EQ(sorting_sign(a.images()), a.sign());
      EXPECT_TRUE((a * a.inverse()).is_identity());
    }
    for (std::size_t i = 0; i < all.size(); i += 7)
      for (std::size_t j = 0; j < all.size(); j += 5) EXPECT_EQ((all[i] * all[j]).sign(), all[i].sign() * all[j].sign());
  }
}

TEST(Permutations, AdjacentWordsRebuildThePermutation) {
  for (const auto& w : all_permutations(5)) {
    Permutation acc = Permutation::identity(5);
    for (int k : w.adjacent_word()) acc = acc * Permutation::adjacent(5, k);
    EXPECT_EQ(acc, w);
  }
}

TEST(Permutations, ConjugacyClassesAreIntegerPartitions) {
  const std::vector<int> partitions = {1, 1, 2, 3, 5, 7, 11};
  for (int n = 1; n <= 6; ++n) {
    const auto reps = conjugacy_class_representatives(n);
    EXPECT_EQ(static_cast<int>(reps.size()), partitions[static_cast<std::size_t>(n)]);
    std::set<std::vector<int>> types;
    for (const auto& w : reps) types.insert(w.cycle_type());
    EXPECT_EQ(types.size(), reps.size());
  }
}

TEST(Permutations, CyclesAndOneLine) {
  const auto w = Permutation::from_cycles(4, {{1, 2, 3}});
  EXPECT_EQ(w, Permutation::from_one_line({2, 3, 1, 4}));
  EXPECT_EQ(w.cycle_type(), (std::vector<int>{3, 1}));
  EXPECT_EQ(w.sign(), 1);
}

}  // namespace
