#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "opk/trees/level_tree.hpp"
#include "opk/trees/tree.hpp"

namespace {

using namespace opk::trees;
using opk::comb::Mask;

bool laminar(Mask a, Mask b) { return (a & b) == 0 || (a & b) == a || (a & b) == b; }

/// Reduced trees with k vertices are laminar families of k-1 proper subsets of size >= 2.
long laminar_families(int n, int k) {
  std::vector<Mask> sets;
  for (Mask m = 1; m < (Mask(1) << n) - 1; ++m)
    if (__builtin_popcount(m) >= 2) sets.push_back(m);
  long count = 0;
  std::vector<Mask> chosen;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (static_cast<int>(chosen.size()) == k - 1) {
      ++count;
      return;
    }
    for (std::size_t i = from; i < sets.size(); ++i) {
      bool ok = true;
      for (Mask c : chosen) ok = ok && laminar(c, sets[i]);
      if (!ok) continue;
      chosen.push_back(sets[i]);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  return count;
}

long double_factorial(int m) { return m <= 1 ? 1 : m * double_factorial(m - 2); }

TEST(ReducedTrees, CountsMatchLaminarFamilies) {
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k < n; ++k) EXPECT_EQ(static_cast<long>(enumerate_reduced_trees(n, k).size()), laminar_families(n, k)) << n << " " << k;
}

TEST(ReducedTrees, BinaryTreesAreDoubleFactorials) {
  for (int n = 2; n <= 7; ++n) EXPECT_EQ(static_cast<long>(enumerate_reduced_trees(n, n - 1).size()), double_factorial(2 * n - 3)) << n;
}

TEST(ReducedTrees, TotalsAreSchroederNumbers) {
  // Total number of reduced trees on n labeled leaves.
  const std::vector<long> totals = {0, 1, 1, 4, 26, 236, 2752};
  for (int n = 2; n <= 6; ++n) {
    long sum = 0;
    for (int k = 1; k < n; ++k) sum += static_cast<long>(enumerate_reduced_trees(n, k).size());
    EXPECT_EQ(sum, totals[static_cast<std::size_t>(n)]);
  }
}

TEST(ReducedTrees, EnumerationIsSortedReducedAndDistinct) {
  for (int k = 1; k < 5; ++k) {
    const auto ts = enumerate_reduced_trees(5, k);
    EXPECT_TRUE(std::is_sorted(ts.begin(), ts.end()));
    EXPECT_EQ(std::set<CanonicalForm>(ts.begin(), ts.end()).size(), ts.size());
    for (const auto& t : ts) {
      EXPECT_TRUE(t.is_reduced());
      EXPECT_EQ(t.size(), k);
      EXPECT_EQ(t.parent(0), -1);
    }
  }
}

TEST(LinearExtensions, MatchBruteForceOverPermutations) {
  for (int k = 1; k <= 4; ++k) {
    for (const auto& t : enumerate_reduced_trees(5, k)) {
      std::vector<int> lv(static_cast<std::size_t>(k));
      std::iota(lv.begin(), lv.end(), 1);
      std::set<std::vector<int>> expected;
      do {
        bool ok = true;
        for (int v = 0; v < k; ++v)
          if (t.parent(v) >= 0) ok = ok && lv[static_cast<std::size_t>(t.parent(v))] < lv[static_cast<std::size_t>(v)];
        if (ok) expected.insert(lv);
      } while (std::next_permutation(lv.begin(), lv.end()));
      const auto got = linear_extensions(t);
      EXPECT_EQ(std::set<std::vector<int>>(got.begin(), got.end()), expected);
      EXPECT_EQ(got.size(), expected.size());
      EXPECT_EQ(enumerate_levelizations(AbstractTree::from_canonical(t)).size(), expected.size());
    }
  }
}

TEST(AbstractTrees, GraftAndContractAreInverse) {
  const auto s = AbstractTree::corolla({1, 4}, 0);
  const auto t = AbstractTree::corolla({2, 3}, 1);
  const auto g = graft(s, 4, t);
  EXPECT_EQ(g.arity(), 3);
  EXPECT_EQ(g.vertex_count(), 2);
  EXPECT_EQ(g.internal_edge_count(), 1);
  EXPECT_TRUE(g.canonical().is_reduced());
  EXPECT_EQ(g.vertex_ids(), (std::vector<int>{0, 2}));
  const auto c = contract_edge(g, 2);
  EXPECT_EQ(c.vertex_count(), 1);
  EXPECT_EQ(c.canonical(), AbstractTree::corolla({1, 2, 3}).canonical());
}

TEST(AbstractTrees, CanonicalFormIgnoresVertexNames) {
  for (const auto& t : enumerate_reduced_trees(5, 3)) {
    const auto a = AbstractTree::from_canonical(t);
    EXPECT_EQ(a.canonical(), t);
    EXPECT_EQ(a.rename_vertices({7, 3, 9}).canonical(), t);
  }
}

TEST(LevelTrees, ContractingLevelsShrinksTheRange) {
  for (const auto& t : enumerate_reduced_trees(4, 3)) {
    for (const auto& l : enumerate_levelizations(AbstractTree::from_canonical(t))) {
      EXPECT_EQ(l.level_count(), 3);
      const auto c = contract_level(l, l.lo());
      EXPECT_EQ(c.level_count(), 2);
      EXPECT_TRUE(l.isomorphic(l));
    }
  }
}

}  // namespace
