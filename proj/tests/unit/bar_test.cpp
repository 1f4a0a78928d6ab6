#include <gtest/gtest.h>

#include <map>

#include "opk/bar/bar_complex.hpp"
#include "opk/bar/twisted.hpp"
#include "opk/operad/quotient.hpp"

namespace {

using namespace opk;
using bar::BarComplex;
using bar::TwistKind;
using comb::factorial;
using linalg::CoefficientRing;

const CoefficientRing Q = CoefficientRing::rationals();
const CoefficientRing Z = CoefficientRing::integers();
const CoefficientRing F2 = CoefficientRing::prime_field(2);

bar::OperadPtr preset(const std::string& name, int max, const CoefficientRing& ring = Q) {
  return std::make_shared<const operad::Operad>(operad::quadratic_quotient(operad::load_preset(name, ring), max));
}

/// Planar reduced trees by leaves and vertices: a root with at least two ordered children.
long planar_trees(int n, int d) {
  static std::map<std::pair<int, int>, long> trees;
  static std::map<std::tuple<int, int, int>, long> forests;
  // forest(n, d, m): ordered sequences of m subtrees (leaves allowed) with n leaves and d vertices.
  auto forest = [&](auto&& self, int fn, int fd, int m) -> long {
    if (m == 0) return fn == 0 && fd == 0 ? 1 : 0;
    if (fn < m || fd < 0) return 0;
    const auto key = std::make_tuple(fn, fd, m);
    if (auto it = forests.find(key); it != forests.end()) return it->second;
    long total = self(self, fn - 1, fd, m - 1);
    for (int a = 2; a <= fn; ++a)
      for (int b = 1; b <= fd; ++b) total += planar_trees(a, b) * self(self, fn - a, fd - b, m - 1);
    forests[key] = total;
    return total;
  };
  if (n < 2 || d < 1) return 0;
  const auto key = std::make_pair(n, d);
  if (auto it = trees.find(key); it != trees.end()) return it->second;
  long total = 0;
  for (int m = 2; m <= n; ++m) total += forest(forest, n, d - 1, m);
  trees[key] = total;
  return total;
}

TEST(BarComplex, AssocDimensionsCountPlanarTrees) {
  const auto assoc = preset("assoc", 6);
  for (int n = 2; n <= 5; ++n) {
    const BarComplex b(assoc, n);
    for (int d = 1; d < n; ++d) EXPECT_EQ(b.dim(d), factorial(n) * planar_trees(n, d)) << n << " " << d;
  }
  EXPECT_EQ(planar_trees(4, 2), 5);
  EXPECT_EQ(planar_trees(5, 3), 21);
}

TEST(BarComplex, BoundarySquaresToZeroAndCommutesWithActions) {
  for (const std::string name : {"com", "lie", "assoc"}) {
    for (const auto& ring : {Q, Z, F2}) {
      const auto p = preset(name, 5, ring);
      for (int n = 3; n <= (name == "assoc" ? 4 : 5); ++n) {
        const BarComplex b(p, n);
        for (int d = 3; d < n; ++d) EXPECT_TRUE((b.boundary(d - 1) * b.boundary(d)).is_zero()) << name << " " << n << " " << d;
        for (int k = 0; k + 1 < n; ++k) {
          const auto w = comb::Permutation::adjacent(n, k);
          for (int d = 2; d < n; ++d) EXPECT_EQ(b.action(d - 1, w) * b.boundary(d), b.boundary(d) * b.action(d, w));
        }
      }
    }
  }
}

TEST(BarComplex, ComHomologyIsTopAndFactorial) {
  const auto com = preset("com", 6, Z);
  const std::vector<std::vector<int>> dims = {{}, {}, {1}, {1, 3}, {1, 10, 15}, {1, 25, 105, 105}, {1, 56, 490, 1260, 945}};
  for (int n = 2; n <= 6; ++n) {
    const BarComplex b(com, n);
    for (int d = 1; d < n; ++d) EXPECT_EQ(b.dim(d), dims[n][d - 1]);
    const auto h = linalg::homology(b.complex());
    EXPECT_EQ(h.support(), std::vector<int>{n - 1});
    EXPECT_EQ(h.betti.at(n - 1), factorial(n - 1));
    EXPECT_EQ(std::abs(linalg::euler_characteristic(b.complex())), factorial(n - 1));
  }
}

TEST(Koszul, ClassicalOperadsAreKoszul) {
  for (const std::string name : {"com", "lie", "assoc"})
    for (const auto& ring : {Q, F2}) {
      const auto rep = bar::is_koszul(preset(name, 5, ring), 5);
      EXPECT_TRUE(rep.koszul) << name << " over " << ring.name();
      EXPECT_FALSE(rep.columns.empty());
    }
}

TEST(Koszul, AntiAssociativeOperadIsNotKoszul) {
  // The anti-associative operad vanishes from arity 4 on but its bar homology is not concentrated there.
  const auto pres = operad::parse_presentation("operad AntiAs\ngen m arity 2 regular\nrel m(m(x1,x2),x3) + m(x1,m(x2,x3))\n");
  const auto p = std::make_shared<const operad::Operad>(operad::quadratic_quotient(pres, 5));
  EXPECT_EQ(p->rank(3), 6);
  EXPECT_EQ(p->rank(4), 0);
  EXPECT_FALSE(bar::is_koszul(p, 5).koszul);
}

TEST(Koszul, DualComponentRanks) {
  const auto com = bar::koszul_construction(preset("com", 5), 5);
  const auto lie = bar::koszul_construction(preset("lie", 5), 5);
  const auto assoc = bar::koszul_construction(preset("assoc", 5), 5);
  for (int n = 1; n <= 5; ++n) {
    EXPECT_EQ(com.rank(n), factorial(n - 1));
    EXPECT_EQ(lie.rank(n), 1);
    EXPECT_EQ(assoc.rank(n), factorial(n));
  }
}

TEST(Twisted, AllKindsAreAcyclic) {
  for (const std::string name : {"com", "lie", "assoc"}) {
    const auto p = preset(name, 4, Z);
    for (const auto kind : {TwistKind::BarRight, TwistKind::BarLeft, TwistKind::KoszulRight, TwistKind::KoszulLeft}) {
      const auto one = linalg::homology(bar::twisted_complex(p, kind, 1));
      EXPECT_EQ(one.betti.at(0), 1);
      for (int n = 2; n <= 4; ++n)
        EXPECT_TRUE(linalg::homology(bar::twisted_complex(p, kind, n)).acyclic()) << name << " " << bar::to_string(kind) << " " << n;
    }
  }
}

TEST(Twisted, KindNamesRoundTrip) {
  for (const auto kind : {TwistKind::BarRight, TwistKind::BarLeft, TwistKind::KoszulRight, TwistKind::KoszulLeft})
    EXPECT_EQ(bar::parse_twist_kind(bar::to_string(kind)), kind);
  EXPECT_THROW(bar::parse_twist_kind("bar-up"), std::invalid_argument);
}

TEST(Twisted, KoszulResolutionOfComHasExpectedDimensions) {
  const auto c = bar::twisted_complex(preset("com", 5), TwistKind::KoszulRight, 5);
  std::vector<int> dims;
  for (int d = c.min_degree(); d <= c.max_degree(); ++d) dims.push_back(c.dim(d));
  EXPECT_EQ(dims, (std::vector<int>{1, 15, 50, 60, 24}));
}

}  // namespace
