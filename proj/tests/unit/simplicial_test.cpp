#include <gtest/gtest.h>

#include "opk/operad/quotient.hpp"
#include "opk/simplicial/levelization.hpp"
#include "opk/simplicial/partition_complex.hpp"
#include "opk/simplicial/simplicial_bar.hpp"

namespace {

using namespace opk;
using namespace opk::simplicial;
using comb::factorial;
using linalg::CoefficientRing;

const CoefficientRing Q = CoefficientRing::rationals();
const CoefficientRing Z = CoefficientRing::integers();

OperadPtr preset(const std::string& name, int max, const CoefficientRing& ring = Q) {
  return std::make_shared<const operad::Operad>(operad::quadratic_quotient(operad::load_preset(name, ring), max));
}

std::vector<int> dims(const SimplicialBarComplex& s) {
  std::vector<int> out;
  for (int d = 1; d < s.arity(); ++d) out.push_back(s.dim(d));
  return out;
}

TEST(SimplicialBar, NormalizedDimensions) {
  EXPECT_EQ(dims(SimplicialBarComplex(preset("assoc", 4), 4)), (std::vector<int>{24, 144, 144}));
  EXPECT_EQ(dims(SimplicialBarComplex(preset("assoc", 5), 5)), (std::vector<int>{120, 1680, 4320, 2880}));
  EXPECT_EQ(dims(SimplicialBarComplex(preset("com", 4), 4)), (std::vector<int>{1, 13, 18}));
}

TEST(SimplicialBar, BoundarySquaresToZero) {
  for (const std::string name : {"com", "lie", "assoc"}) {
    const auto p = preset(name, 5, Z);
    for (int n = 3; n <= 5; ++n) {
      const SimplicialBarComplex s(p, n);
      for (int d = 3; d < n; ++d) EXPECT_TRUE((s.boundary(d - 1) * s.boundary(d)).is_zero()) << name << " " << n << " " << d;
    }
  }
}

TEST(SimplicialBar, SimplicialIdentitiesHoldOnGeneratedCells) {
  for (const std::string name : {"com", "lie", "assoc"}) {
    const auto p = preset(name, 4);
    for (const auto kind : {Coefficients::Trivial, Coefficients::Right}) {
      const UnnormalizedModel m(p, 4, kind, 2);
      const auto rep = check_simplicial_identities(m);
      EXPECT_TRUE(rep.ok) << name << ": " << rep.failure;
      EXPECT_GT(rep.checked, 0);
    }
  }
}

TEST(SimplicialBar, ExtraDegeneracyContractsRightCoefficients) {
  for (const std::string name : {"com", "lie", "assoc"}) {
    const auto p = preset(name, 4);
    for (int n = 1; n <= 4; ++n) {
      const auto rep = extra_degeneracy_check(p, n);
      EXPECT_TRUE(rep.ok) << name << " " << n << ": " << rep.failure;
    }
  }
}

TEST(SimplicialBar, LevelHelpersRoundTrip) {
  const auto p = preset("com", 4);
  for (const auto& c : enumerate_level_cells(*p, 4, 3)) {
    const auto up = insert_empty_level(c, 1);
    const auto back = drop_empty_level(up, 2);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, c);
  }
}

TEST(Levelization, IsQuasiIsomorphicEmbedding) {
  for (const std::string name : {"com", "lie", "assoc"}) {
    const auto p = preset(name, 4);
    for (int n = 2; n <= 4; ++n) {
      const auto rep = check_levelization(Levelization(p, n));
      EXPECT_TRUE(rep.ok()) << name << " " << n << ": " << rep.failure;
    }
  }
}

TEST(Partition, HomologyIsConcentratedInTopDegree) {
  for (const auto& ring : {Q, Z, CoefficientRing::prime_field(2), CoefficientRing::prime_field(3)}) {
    for (int r = 2; r <= 5; ++r) {
      const auto h = linalg::homology(PartitionComplex(r, ring).complex());
      EXPECT_EQ(h.support(), std::vector<int>{r - 1});
      EXPECT_EQ(h.betti.at(r - 1), factorial(r - 1));
    }
  }
}

TEST(Partition, MobiusFunctionIsEulerCharacteristic) {
  for (int r = 2; r <= 6; ++r) {
    const auto c = PartitionComplex(r).complex();
    EXPECT_EQ(comb::mobius_bottom_top(r), linalg::euler_characteristic(c)) << r;
    EXPECT_EQ(comb::mobius_bottom_top(r), (r % 2 ? 1 : -1) * factorial(r - 1));
  }
}

TEST(Partition, IsomorphicToNormalizedComBar) {
  const auto com = preset("com", 5);
  for (int r = 2; r <= 5; ++r) {
    const auto rep = check_partition_isomorphism(com, r);
    EXPECT_TRUE(rep.ok()) << r << ": " << rep.failure;
  }
}

TEST(Partition, TopHomologyCharacterIsLieTimesSign) {
  const auto lie = preset("lie", 5);
  for (int r = 2; r <= 5; ++r)
    for (const auto& [w, value] : top_homology_character(r))
      EXPECT_EQ(value, operad::character(lie->module(), r, w) * w.sign()) << r << " " << w.to_string();
}

TEST(Partition, ChainsOfLevelCellsRefine) {
  const auto com = preset("com", 4);
  const SimplicialBarComplex s(com, 4);
  for (int d = 1; d < 4; ++d)
    for (const auto& c : s.basis(d).cells()) {
      const auto chain = partition_chain(c);
      ASSERT_EQ(static_cast<int>(chain.size()), d + 1);
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) EXPECT_TRUE(comb::refines(chain[i], chain[i + 1]));
    }
}

}  // namespace
