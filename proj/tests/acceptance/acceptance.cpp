/**
 * Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic only.
 * Exit status is nonzero when a criterion fails that is not listed as a
 * known failure below.
 */
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "opk/bar/bar_complex.hpp"
#include "opk/bar/twisted.hpp"
#include "opk/linalg/smith.hpp"
#include "opk/operad/quotient.hpp"
#include "opk/simplicial/levelization.hpp"
#include "opk/simplicial/partition_complex.hpp"
#include "opk/simplicial/simplicial_bar.hpp"

namespace {

using namespace opk;
using bar::TwistKind;
using comb::factorial;
using linalg::CoefficientRing;
using linalg::ExactMatrix;
using OperadPtr = bar::OperadPtr;

const CoefficientRing Z = CoefficientRing::integers();
const CoefficientRing Q = CoefficientRing::rationals();
const CoefficientRing F2 = CoefficientRing::prime_field(2);
const CoefficientRing F3 = CoefficientRing::prime_field(3);

/// Criteria whose stated value cannot be reproduced; see the reason printed with the FAIL line.
const std::set<int> kKnownFailures = {6};

/// Collects the first failure message of a criterion.
struct Check {
  std::string failure;
  void expect(bool ok, const std::string& what) {
    if (!ok && failure.empty()) failure = what;
  }
  bool ok() const { return failure.empty(); }
};

OperadPtr preset(const std::string& name, int max, const CoefficientRing& ring) {
  return std::make_shared<const operad::Operad>(operad::quadratic_quotient(operad::load_preset(name, ring), max));
}

std::string tuple(const std::vector<long>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

std::string where(const std::string& what, const CoefficientRing& ring, int n) {
  return what + " over " + ring.name() + " in arity " + std::to_string(n);
}

bool concentrated_in(const linalg::HomologySummary& h, int degree, long rank) {
  return h.support() == std::vector<int>{degree} && h.betti.count(degree) && h.betti.at(degree) == rank;
}

void criterion1(Check& c) {
  const auto lie = preset("lie", 6, Q);
  for (const auto& ring : {Z, Q, F2, F3})
    for (int r = 2; r <= 6; ++r) {
      const auto h = linalg::homology(simplicial::PartitionComplex(r, ring).complex());
      c.expect(concentrated_in(h, r - 1, lie->rank(r)), where("partition homology", ring, r));
      c.expect(lie->rank(r) == factorial(r - 1), "dim Lie(" + std::to_string(r) + ") != (r-1)!");
      for (const auto& [d, t] : h.torsion) c.expect(t.empty(), where("torsion in partition homology", ring, r));
    }
}

void criterion2(Check& c) {
  const auto lie = preset("lie", 5, Q);
  for (int r = 2; r <= 5; ++r)
    for (const auto& [w, value] : simplicial::top_homology_character(r))
      c.expect(value == operad::character(lie->module(), r, w) * w.sign(), "character mismatch at " + w.to_string());
}

void criterion3(Check& c) {
  const std::map<std::string, int> bounds = {{"com", 6}, {"assoc", 5}, {"lie", 5}};
  for (const auto& [name, max] : bounds)
    for (const auto& ring : {Q, F2}) {
      const auto rep = bar::is_koszul(preset(name, max, ring), max);
      for (const auto& col : rep.columns)
        c.expect(col.concentrated, where(name + " bar weight " + std::to_string(col.weight) + " not concentrated", ring, col.arity));
      c.expect(rep.koszul && !rep.columns.empty(), name + " not Koszul over " + ring.name());
    }
}

void criterion4(Check& c) {
  struct Case {
    std::string name;
    TwistKind kind;
    int max;
  };
  const std::vector<Case> cases = {{"com", TwistKind::KoszulRight, 6}, {"lie", TwistKind::KoszulRight, 5}, {"com", TwistKind::BarRight, 5}};
  for (const auto& ring : {Z, F2})
    for (const auto& k : cases) {
      const auto p = preset(k.name, k.max, ring);
      const auto label = bar::to_string(k.kind) + " " + k.name;
      c.expect(concentrated_in(linalg::homology(bar::twisted_complex(p, k.kind, 1)), 0, 1), where(label + " unit", ring, 1));
      for (int n = 2; n <= k.max; ++n)
        c.expect(linalg::homology(bar::twisted_complex(p, k.kind, n)).acyclic(), where(label + " not acyclic", ring, n));
    }
}

void criterion5(Check& c) {
  for (const std::string name : {"com", "assoc", "lie"}) {
    const auto p = preset(name, 5, Q);
    for (int n = 2; n <= 5; ++n) {
      const auto rep = simplicial::check_levelization(simplicial::Levelization(p, n));
      c.expect(rep.ok(), name + " arity " + std::to_string(n) + ": " + rep.failure);
    }
  }
}

/// Planar reduced trees with n leaves and d vertices, as an independent count.
long planar_trees(int n, int d);

long planar_forests(int n, int d, int m) {
  if (m == 0) return n == 0 && d == 0 ? 1 : 0;
  if (n < m || d < 0) return 0;
  long total = planar_forests(n - 1, d, m - 1);
  for (int a = 2; a <= n; ++a)
    for (int b = 1; b <= d; ++b) total += planar_trees(a, b) * planar_forests(n - a, d - b, m - 1);
  return total;
}

long planar_trees(int n, int d) {
  if (n < 2 || d < 1) return 0;
  long total = 0;
  for (int m = 2; m <= n; ++m) total += planar_forests(n, d - 1, m);
  return total;
}

void criterion6(Check& c) {
  const auto assoc = preset("assoc", 5, Q);
  std::vector<long> b4, n4, b5, oracle5;
  const bar::BarComplex bar4(assoc, 4);
  const simplicial::SimplicialBarComplex nbar4(assoc, 4);
  for (int d = 1; d <= 3; ++d) {
    b4.push_back(bar4.dim(d) / factorial(4));
    n4.push_back(nbar4.dim(d) / factorial(4));
    c.expect(bar4.dim(d) % factorial(4) == 0 && nbar4.dim(d) % factorial(4) == 0, "dimensions not divisible by 4!");
  }
  c.expect(b4 == std::vector<long>{1, 5, 5}, "B(Assoc)(4)/4! = " + tuple(b4) + ", expected (1,5,5)");
  c.expect(n4 == std::vector<long>{1, 6, 6}, "N(Assoc)(4)/4! = " + tuple(n4) + ", expected (1,6,6)");
  const bar::BarComplex bar5(assoc, 5);
  for (int d = 1; d <= 4; ++d) {
    b5.push_back(bar5.dim(d) / factorial(5));
    oracle5.push_back(planar_trees(5, d));
  }
  c.expect(b5 == oracle5, "B(Assoc)(5)/5! = " + tuple(b5) + " disagrees with planar trees " + tuple(oracle5));
  c.expect(b5 == std::vector<long>{1, 7, 14},
           "K5 f-vector stated as (1,7,14), computed B(Assoc)(5)/5! = " + tuple(b5) + " matching planar trees " + tuple(oracle5) +
               " (14 vertices, 21 edges, 9 faces of the 3-dimensional associahedron)");
}

void criterion7(Check& c) {
  const auto com = preset("com", 6, Q);
  const auto assoc = preset("assoc", 6, Q);
  const auto lie = preset("lie", 6, Q);
  for (int r = 1; r <= 6; ++r) {
    c.expect(com->rank(r) == 1, "dim Com(" + std::to_string(r) + ")");
    c.expect(assoc->rank(r) == factorial(r), "dim Assoc(" + std::to_string(r) + ")");
    c.expect(lie->rank(r) == factorial(r - 1), "dim Lie(" + std::to_string(r) + ")");
  }
  try {
    const auto lie_z = preset("lie", 5, Z);
    for (int r = 1; r <= 5; ++r) c.expect(lie_z->rank(r) == factorial(r - 1), "dim Lie(" + std::to_string(r) + ") over Z");
  } catch (const operad::QuotientObstruction& e) {
    c.expect(false, std::string("Lie over Z: ") + e.what());
  }
}

void criterion8(Check& c) {
  for (const std::string name : {"com", "lie"}) {
    const auto p = operad::load_preset(name, Q);
    const auto dual = operad::quadratic_dual(p);
    const auto twice = operad::quadratic_dual(dual);
    c.expect(twice.generators.rank(2) == p.generators.rank(2), name + ": generator dimension changed");
    c.expect(operad::closed_relations(twice, 3).size() == operad::closed_relations(p, 3).size(), name + ": relation dimension changed");
    // K̄(P) is the Koszul dual cooperad, so the double construction is K̄ of the dual operad.
    const auto original = operad::quadratic_quotient(p, 5);
    const auto dual_operad = std::make_shared<const operad::Operad>(operad::quadratic_quotient(dual, 5));
    const auto k = bar::koszul_construction(dual_operad, 5);
    for (int n = 2; n <= 5; ++n) {
      std::map<int, int> by_weight;
      for (const auto& comp : k.components(n)) by_weight[comp.weight] += comp.inclusion.cols();
      std::map<int, int> expected;
      for (int i = 0; i < original.rank(n); ++i) ++expected[original.weight(n, i)];
      c.expect(by_weight == expected, name + ": weight-graded dimensions differ in arity " + std::to_string(n));
    }
  }
}

/// Fraction-free determinant of a square integer matrix.
linalg::Integer bareiss_det(const ExactMatrix& m) {
  const auto dense = m.to_dense();
  const std::size_t n = dense.size();
  std::vector<std::vector<linalg::Integer>> a(n, std::vector<linalg::Integer>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = dense[i][j].get_num();
  linalg::Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return n == 0 ? linalg::Integer(1) : sign * a[n - 1][n - 1];
}

void criterion9(Check& c) {
  // Squares of differentials.
  for (const std::string name : {"com", "lie", "assoc"})
    for (const auto& ring : {Z, F2}) {
      const auto p = preset(name, 5, ring);
      for (int n = 2; n <= 5; ++n) {
        const bar::BarComplex b(p, n);
        const simplicial::SimplicialBarComplex s(p, n);
        for (int d = 3; d < n; ++d) {
          c.expect((b.boundary(d - 1) * b.boundary(d)).is_zero(), where(name + " beta^2", ring, n));
          c.expect((s.boundary(d - 1) * s.boundary(d)).is_zero(), where(name + " simplicial d^2", ring, n));
        }
        for (const auto kind : {TwistKind::BarRight, TwistKind::BarLeft, TwistKind::KoszulRight, TwistKind::KoszulLeft}) {
          if (n > 4) continue;
          const auto t = bar::twisted_complex(p, kind, n);
          for (int d = t.min_degree() + 2; d <= t.max_degree(); ++d)
            c.expect((t.boundary(d - 1) * t.boundary(d)).is_zero(), where(name + " " + bar::to_string(kind) + " d^2", ring, n));
        }
      }
    }
  for (int r = 3; r <= 6; ++r) {
    const simplicial::PartitionComplex pc(r, Z);
    for (int d = 3; d < r; ++d) c.expect((pc.boundary(d - 1) * pc.boundary(d)).is_zero(), "partition d^2 for r = " + std::to_string(r));
  }

  // Smith normal form on random integer matrices.
  std::mt19937 rng(20240601);
  std::uniform_int_distribution<int> size(1, 30);
  std::uniform_int_distribution<int> entry(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    const int rows = size(rng);
    const int cols = size(rng);
    ExactMatrix a(Z, rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) a.set(i, j, Z.from_int(entry(rng)));
    const auto s = linalg::smith_normal_form(a);
    c.expect(s.U * a * s.V == s.D, "U A V != D in trial " + std::to_string(trial));
    c.expect(abs(bareiss_det(s.U)) == 1, "U not unimodular in trial " + std::to_string(trial));
    c.expect(abs(bareiss_det(s.V)) == 1, "V not unimodular in trial " + std::to_string(trial));
  }

  // Simplicial identities and operad axioms.
  for (const std::string name : {"com", "lie", "assoc"}) {
    const auto p = preset(name, 5, Q);
    for (const auto kind : {simplicial::Coefficients::Trivial, simplicial::Coefficients::Right}) {
      const auto rep = simplicial::check_simplicial_identities(simplicial::UnnormalizedModel(p, 4, kind, 2));
      c.expect(rep.ok, name + " simplicial identities: " + rep.failure);
    }
    for (const auto& ring : {Q, Z, F2}) {
      const auto axioms = operad::check_operad_axioms(*preset(name, 5, ring), 8);
      c.expect(axioms.ok(), name + " axioms over " + ring.name() + (axioms.failures.empty() ? "" : ": " + axioms.failures.front()));
    }
  }

  // Möbius function against the Euler characteristic of the partition complex.
  for (int r = 2; r <= 6; ++r) {
    const long chi = linalg::euler_characteristic(simplicial::PartitionComplex(r, Q).complex());
    c.expect(comb::mobius_bottom_top(r) == chi, "Moebius vs Euler characteristic for r = " + std::to_string(r));
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"partition complex homology is (r-1)! in top degree, r <= 6, over Z, Q, F2, F3", criterion1},
      {"top homology character equals Lie times sign, r <= 5", criterion2},
      {"bar homology concentrated on the diagonal for Com, Assoc, Lie over Q and F2", criterion3},
      {"twisted Koszul and bar complexes are acyclic over Z and F2", criterion4},
      {"levelization is an injective quasi-isomorphism, arity <= 5", criterion5},
      {"associahedron and permutohedron face counts", criterion6},
      {"dimensions of Com, Assoc and Lie", criterion7},
      {"quadratic duality round trips", criterion8},
      {"property suites", criterion9},
  };
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << id << ": " << (c.ok() ? "PASS" : "FAIL") << " " << criteria[i].first;
    if (!c.ok()) std::cout << " [" << c.failure << "]" << (kKnownFailures.count(id) ? " (known)" : "");
    std::cout << " (" << static_cast<long>(secs * 1000) << " ms)" << std::endl;
    if (!c.ok() && !kKnownFailures.count(id)) ++unexpected;
    if (c.ok() && kKnownFailures.count(id)) std::cout << "note: criterion " << id << " is listed as a known failure but passed" << std::endl;
  }
  return unexpected == 0 ? 0 : 1;
}
