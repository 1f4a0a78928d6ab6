#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "opk/linalg/elimination.hpp"
#include "opk/operad/presentation.hpp"
#include "opk/operad/quotient.hpp"

namespace {

using namespace opk::operad;
using opk::comb::factorial;
using opk::linalg::rank;

const CoefficientRing Q = CoefficientRing::rationals();
const CoefficientRing Z = CoefficientRing::integers();

using Word = std::vector<int>;
using Poly = std::map<Word, Scalar>;

Poly bracket(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [u, x] : a)
    for (const auto& [v, y] : b) {
      Word uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      Word vu = v;
      vu.insert(vu.end(), u.begin(), u.end());
      out[uv] += x * y;
      out[vu] -= x * y;
    }
  return out;
}

/// dim Lie(n) as the span of left-normed brackets of x_1..x_n expanded in the free associative algebra.
int lie_dimension_by_brackets(int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::map<Word, int> index;
  std::vector<Poly> polys;
  do {
    Poly p = {{{perm[0]}, Scalar(1)}};
    for (int i = 1; i < n; ++i) p = bracket(p, {{{perm[static_cast<std::size_t>(i)]}, Scalar(1)}});
    polys.push_back(p);
    index.emplace(perm, static_cast<int>(index.size()));
  } while (std::next_permutation(perm.begin(), perm.end()));
  ExactMatrix m(Q, static_cast<int>(index.size()), static_cast<int>(polys.size()));
  for (std::size_t c = 0; c < polys.size(); ++c)
    for (const auto& [w, x] : polys[c])
      if (x != 0) m.set(index.at(w), static_cast<int>(c), x);
  return rank(m);
}

Operad quotient(const std::string& preset, int max, const CoefficientRing& ring = Q) {
  return quadratic_quotient(load_preset(preset, ring), max);
}

TEST(Presets, ClassicalDimensions) {
  const auto com = quotient("com", 6);
  const auto assoc = quotient("assoc", 6);
  const auto lie = quotient("lie", 6);
  for (int r = 1; r <= 6; ++r) {
    EXPECT_EQ(com.rank(r), 1);
    EXPECT_EQ(assoc.rank(r), factorial(r));
    EXPECT_EQ(lie.rank(r), factorial(r - 1));
  }
}

TEST(Presets, LieMatchesBracketWordOracle) {
  const auto lie = quotient("lie", 6);
  for (int r = 2; r <= 6; ++r) EXPECT_EQ(lie.rank(r), lie_dimension_by_brackets(r)) << r;
}

TEST(Presets, LieOverIntegersIsTorsionFree) {
  const auto lie = quotient("lie", 5, Z);
  for (int r = 1; r <= 5; ++r) EXPECT_EQ(lie.rank(r), factorial(r - 1));
}

TEST(Presets, AxiomsHoldAsMatrixIdentities) {
  for (const auto& name : preset_names()) {
    for (const auto& ring : {Q, Z, CoefficientRing::prime_field(2)}) {
      const auto p = quotient(name, 5, ring);
      const auto rep = check_operad_axioms(p, 4);
      EXPECT_TRUE(rep.ok()) << name << " over " << ring.name() << ": " << (rep.failures.empty() ? "" : rep.failures.front());
    }
  }
}

TEST(Presets, SymmetricGroupActionsSatisfyCoxeterRelations) {
  for (const auto& name : preset_names()) {
    const auto p = quotient(name, 5);
    for (int r = 2; r <= 5; ++r) EXPECT_TRUE(p.module().check_coxeter(r)) << name << " " << r;
  }
}

TEST(FreeOperad, BinaryTreesCountFreeOperadOnOneProduct) {
  const auto gens = SymSequence::trivial(Q, 2, 2);
  const auto f = free_operad(gens, 5);
  const std::vector<long> expected = {0, 1, 1, 3, 15, 105};
  for (int r = 1; r <= 5; ++r) EXPECT_EQ(f.rank(r), expected[static_cast<std::size_t>(r)]);
  const auto reg = free_operad(SymSequence::regular(Q, 2, 2), 4);
  EXPECT_EQ(reg.rank(3), 12);
  EXPECT_EQ(reg.rank(4), 120);
}

TEST(Duality, ClassicalDualsHaveExpectedDimensions) {
  const auto com_dual = quadratic_quotient(quadratic_dual(load_preset("com")), 5);
  const auto lie_dual = quadratic_quotient(quadratic_dual(load_preset("lie")), 5);
  const auto assoc_dual = quadratic_quotient(quadratic_dual(load_preset("assoc")), 5);
  for (int r = 1; r <= 5; ++r) {
    EXPECT_EQ(com_dual.rank(r), factorial(r - 1));
    EXPECT_EQ(lie_dual.rank(r), 1);
    EXPECT_EQ(assoc_dual.rank(r), factorial(r));
  }
}

TEST(Duality, DoubleDualKeepsRelationDimensions) {
  for (const auto& name : preset_names()) {
    const auto p = load_preset(name);
    const auto dd = quadratic_dual(quadratic_dual(p));
    EXPECT_EQ(dd.generators.rank(2), p.generators.rank(2));
    EXPECT_EQ(closed_relations(dd, 3).size(), closed_relations(p, 3).size()) << name;
  }
}

TEST(Dsl, ExplicitRepresentationsAgreeWithNamedOnes) {
  const auto trivial = parse_presentation("operad C\ngen m arity 2 explicit 1 [[1]]\nrel m(m(x1,x2),x3) - m(x1,m(x2,x3))\n");
  const auto regular = parse_presentation("operad A\ngen m arity 2 explicit 2 [[0,1],[1,0]]\nrel m(m(x1,x2),x3) - m(x1,m(x2,x3))\n");
  const auto c = quadratic_quotient(trivial, 4);
  const auto a = quadratic_quotient(regular, 4);
  for (int r = 1; r <= 4; ++r) {
    EXPECT_EQ(c.rank(r), 1);
    EXPECT_EQ(a.rank(r), factorial(r));
  }
}

TEST(Dsl, BasisSuffixesAddressRegularGenerators) {
  // m.1 is the transposed product, so this relation identifies both orders of the product.
  const auto p = parse_presentation("operad X\ngen m arity 2\nrel m.0(m(x1,x2),x3) - m.1(m(x1,x2),x3)\n");
  EXPECT_EQ(p.generators.rank(2), 2);
  EXPECT_EQ(p.basis_name(2, 1), "m.1");
  EXPECT_THROW(parse_presentation("operad X\ngen m arity 2 trivial\nrel m.1(m(x1,x2),x3)\n"), ParseError);
}

TEST(Dsl, HigherArityGeneratorsAllowAnySymmetry) {
  for (const std::string sym : {"trivial", "sign", "regular"}) {
    const auto p = parse_presentation("operad T\ngen t arity 3 " + sym + "\n");
    EXPECT_EQ(p.generators.rank(3), sym == "regular" ? 6 : 1);
  }
}

TEST(Dsl, ErrorsCarryLineAndColumn) {
  try {
    parse_presentation("operad X\ngen m arity 2 trivial\nrel m(m(x1,x2),x3) - m(x1,x2)\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 22);
  }
  try {
    parse_presentation("operad X\ngen m arty 2\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 7);
  }
  EXPECT_THROW(parse_presentation("operad X\ngen m arity 2 explicit 2 [[1,0],[1,1]]\n"), ParseError);
}

TEST(Dsl, RenderedPresentationsParseBack) {
  for (const auto& name : preset_names()) {
    const auto p = load_preset(name);
    const auto again = parse_presentation(to_dsl(p));
    EXPECT_EQ(to_dsl(again), to_dsl(p));
    const auto d = quadratic_dual(p);
    EXPECT_EQ(to_dsl(parse_presentation(to_dsl(d))), to_dsl(d)) << name;
  }
}

TEST(Quotient, TorsionIsReportedOverIntegers) {
  const std::string text =
      "operad T\ngen m arity 2 trivial\nrel 2*m(m(x1,x2),x3) - 2*m(m(x1,x3),x2)\nrel 2*m(m(x1,x2),x3) - 2*m(x1,m(x2,x3))\n";
  try {
    quadratic_quotient(parse_presentation(text, Z), 3);
    FAIL() << "expected an obstruction";
  } catch (const QuotientObstruction& e) {
    EXPECT_EQ(e.kind(), QuotientObstruction::Kind::Torsion);
    EXPECT_EQ(e.arity(), 3);
  }
  EXPECT_EQ(quadratic_quotient(parse_presentation(text, Q), 3).rank(3), 1);
}

TEST(Characters, LieCharacterVanishesOffSomeClasses) {
  const auto lie = quotient("lie", 4);
  // Character of Lie(4): 6 on the identity, -2 on (12)(34), 0 elsewhere.
  for (const auto& w : opk::comb::conjugacy_class_representatives(4)) {
    const auto ct = w.cycle_type();
    const Scalar expected = ct == std::vector<int>{1, 1, 1, 1} ? 6 : ct == std::vector<int>{2, 2} ? -2 : 0;
    EXPECT_EQ(character(lie.module(), 4, w), expected);
  }
}

}  // namespace
