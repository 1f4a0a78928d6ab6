#include "opk/operad/quotient.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "opk/linalg/elimination.hpp"

namespace opk::operad {

QuotientObstruction::QuotientObstruction(Kind kind, int arity, int weight, std::vector<linalg::Integer> factors)
    : std::runtime_error(kind == Kind::Torsion
                             ? "quotient has torsion in arity " + std::to_string(arity) + ", weight " + std::to_string(weight)
                             : "quotient in arity " + std::to_string(arity) + ", weight " + std::to_string(weight) +
                                   " is free but has no monomial basis over Z"),
      kind_(kind),
      arity_(arity),
      weight_(weight),
      factors_(std::move(factors)) {}

namespace {

/// One weight component F(n)_(w) together with its reduction data.
struct Component {
  std::vector<Monomial> monos;
  std::unordered_map<Monomial, int, MonomialHash> index;
  /// Quotient basis index per column, -1 for pivot columns.
  std::vector<int> basis_of;
  /// Normal form of each pivot column, over quotient basis indices.
  std::unordered_map<int, SparseVec> pivot_nf;
};

class Builder {
 public:
  Builder(const QuadraticPresentation& pres, int max_arity) : pres_(pres), ring_(pres.ring()), max_(max_arity) {}

  Operad build(std::vector<QuotientStats>* stats) {
    if (max_ < 1) throw std::invalid_argument("max arity must be at least 1");
    if (pres_.generators.rank(0) || pres_.generators.rank(1)) throw std::invalid_argument("generators must vanish in arities 0 and 1");
    for (const auto& r : pres_.relations)
      for (const auto& [m, c] : r.terms)
        if (m.weight() != 2 || m.arity != r.arity) throw std::invalid_argument("relations must be quadratic and arity-homogeneous");
    comps_.resize(static_cast<std::size_t>(max_) + 1);
    basis_.resize(static_cast<std::size_t>(max_) + 1);
    for (int n = 2; n <= max_; ++n)
      for (int w = 1; w < n; ++w) {
        build_component(n, w);
        if (stats) {
          const auto& c = comps_[static_cast<std::size_t>(n)].at(w);
          int q = 0;
          for (int b : c.basis_of) q += b >= 0;
          stats->push_back({n, w, static_cast<int>(c.monos.size()), static_cast<int>(c.monos.size()) - q});
        }
      }
    return assemble();
  }

 private:
  void build_component(int n, int w) {
    Component c;
    c.monos = enumerate_monomials(pres_.generators, n, w);
    for (std::size_t j = 0; j < c.monos.size(); ++j) c.index.emplace(c.monos[j], static_cast<int>(j));
    std::vector<SparseVec> ideal = w >= 2 ? ideal_generators(c) : std::vector<SparseVec>{};
    const auto ech = linalg::row_echelon(ring_, ideal, true);
    if (!ech.unit_pivots) obstruction(n, w, c, ideal);
    std::vector<bool> pivot(c.monos.size(), false);
    for (const auto& r : ech.rows) pivot[static_cast<std::size_t>(r.front().first)] = true;
    auto& basis = basis_[static_cast<std::size_t>(n)];
    c.basis_of.assign(c.monos.size(), -1);
    for (std::size_t j = 0; j < c.monos.size(); ++j)
      if (!pivot[j]) {
        c.basis_of[j] = static_cast<int>(basis.size());
        basis.push_back(c.monos[j]);
      }
    for (const auto& r : ech.rows) {
      SparseVec nf;
      for (std::size_t t = 1; t < r.size(); ++t) nf.emplace_back(c.basis_of[static_cast<std::size_t>(r[t].first)], ring_.neg(r[t].second));
      std::sort(nf.begin(), nf.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      c.pivot_nf.emplace(r.front().first, std::move(nf));
    }
    comps_[static_cast<std::size_t>(n)].emplace(w, std::move(c));
  }

  [[noreturn]] void obstruction(int n, int w, const Component& c, const std::vector<SparseVec>& ideal) {
    ExactMatrix gens(ring_, static_cast<int>(c.monos.size()), static_cast<int>(ideal.size()));
    for (std::size_t j = 0; j < ideal.size(); ++j) gens.set_column(static_cast<int>(j), ideal[j]);
    std::vector<linalg::Integer> big;
    for (const auto& f : linalg::invariant_factors(gens))
      if (f != 1) big.push_back(f);
    throw QuotientObstruction(big.empty() ? QuotientObstruction::Kind::NoMonomialBasis : QuotientObstruction::Kind::Torsion, n, w,
                              big);
  }

  const std::vector<MonomialCombination>& relations(int k) {
    auto it = closed_.find(k);
    if (it == closed_.end()) it = closed_.emplace(k, closed_relations(pres_, k)).first;
    return it->second;
  }

  /// Every way to blow up one vertex of a slot tree into a relation.
  std::vector<SparseVec> ideal_generators(const Component& c) {
    std::set<std::pair<std::vector<std::pair<Mask, int>>, Mask>> slots;
    for (const auto& m : c.monos) {
      for (int v = 1; v < m.weight(); ++v) {
        const Mask child = m.masks[static_cast<std::size_t>(v)];
        // The parent is the smallest strictly larger mask.
        int u = -1;
        for (int q = 0; q < m.weight(); ++q) {
          const Mask x = m.masks[static_cast<std::size_t>(q)];
          if (x != child && (x & child) == child && (u < 0 || comb::popcount(x) < comb::popcount(m.masks[static_cast<std::size_t>(u)])))
            u = q;
        }
        std::vector<std::pair<Mask, int>> rest;
        for (int q = 0; q < m.weight(); ++q)
          if (q != v && q != u) rest.emplace_back(m.masks[static_cast<std::size_t>(q)], m.labels[static_cast<std::size_t>(q)]);
        std::sort(rest.begin(), rest.end());
        slots.emplace(std::move(rest), m.masks[static_cast<std::size_t>(u)]);
      }
    }
    std::vector<SparseVec> out;
    for (const auto& [rest, slot] : slots) {
      std::vector<std::pair<Mask, int>> vs = rest;
      vs.emplace_back(slot, 0);
      const Monomial shape = make_monomial(c.monos.front().arity, vs);
      int sv = 0;
      while (shape.masks[static_cast<std::size_t>(sv)] != slot) ++sv;
      const auto in = monomial_inputs(shape, sv);
      for (const auto& rel : relations(static_cast<int>(in.size()))) {
        linalg::VecBuilder acc(ring_);
        for (const auto& [rm, coeff] : rel) {
          Mask upper = 0;
          for (int j : comb::elements(rm.masks[1])) upper |= in[static_cast<std::size_t>(j)];
          std::vector<std::pair<Mask, int>> nv = rest;
          nv.emplace_back(slot, rm.labels[0]);
          nv.emplace_back(upper, rm.labels[1]);
          acc.add(c.index.at(make_monomial(shape.arity, std::move(nv))), coeff);
        }
        if (!acc.empty()) out.push_back(acc.take());
      }
    }
    return out;
  }

  SparseVec normal_form(const Monomial& m) const {
    const auto& c = comps_[static_cast<std::size_t>(m.arity)].at(m.weight());
    const int col = c.index.at(m);
    const int b = c.basis_of[static_cast<std::size_t>(col)];
    if (b >= 0) return {{b, Scalar(1)}};
    return c.pivot_nf.at(col);
  }

  SparseVec normal_form(const MonomialCombination& v) const {
    linalg::VecBuilder acc(ring_);
    for (const auto& [m, x] : v) acc.add(normal_form(m), x);
    return acc.take();
  }

  Operad assemble() {
    SymSequence module(ring_, max_);
    module.set_component(1, {}, {0}, {0});
    std::vector<std::vector<std::string>> labels(static_cast<std::size_t>(max_) + 1);
    labels[1] = {"1"};
    const auto names = [&](int k, int l) { return pres_.basis_name(k, l); };
    for (int n = 2; n <= max_; ++n) {
      const auto& basis = basis_[static_cast<std::size_t>(n)];
      const int rk = static_cast<int>(basis.size());
      std::vector<ExactMatrix> gens;
      for (int k = 0; k + 1 < n; ++k) {
        const Permutation s = Permutation::adjacent(n, k);
        ExactMatrix g(ring_, rk, rk);
        for (int j = 0; j < rk; ++j) g.set_column(j, normal_form(act_monomial(pres_.generators, basis[static_cast<std::size_t>(j)], s)));
        gens.push_back(std::move(g));
      }
      std::vector<int> weights;
      for (const auto& m : basis) {
        weights.push_back(m.weight());
        labels[static_cast<std::size_t>(n)].push_back(to_expression(m, names));
      }
      module.set_component(n, std::move(gens), std::vector<int>(static_cast<std::size_t>(rk), 0), std::move(weights));
    }
    std::vector<std::vector<std::vector<ExactMatrix>>> comp(static_cast<std::size_t>(max_) + 1);
    for (int m = 2; m <= max_; ++m) {
      comp[static_cast<std::size_t>(m)].resize(static_cast<std::size_t>(max_) + 1);
      for (int k = 2; m + k - 1 <= max_; ++k) {
        const auto& bm = basis_[static_cast<std::size_t>(m)];
        const auto& bk = basis_[static_cast<std::size_t>(k)];
        for (int i = 1; i <= m; ++i) {
          ExactMatrix t(ring_, static_cast<int>(basis_[static_cast<std::size_t>(m + k - 1)].size()),
                        static_cast<int>(bm.size() * bk.size()));
          for (std::size_t a = 0; a < bm.size(); ++a)
            for (std::size_t b = 0; b < bk.size(); ++b)
              t.set_column(static_cast<int>(a * bk.size() + b), normal_form(graft(bm[a], i, bk[b])));
          comp[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)].push_back(std::move(t));
        }
      }
    }
    return Operad(pres_.name, std::move(module), std::move(comp), std::move(labels));
  }

  const QuadraticPresentation& pres_;
  CoefficientRing ring_;
  int max_;
  std::vector<std::map<int, Component>> comps_;
  std::vector<std::vector<Monomial>> basis_;
  std::map<int, std::vector<MonomialCombination>> closed_;
};

}  // namespace

Operad quadratic_quotient(const QuadraticPresentation& pres, int max_arity, std::vector<QuotientStats>* stats) {
  return Builder(pres, max_arity).build(stats);
}

Operad free_operad(const SymSequence& generators, int max_arity, const std::string& name) {
  if (generators.rank(1) != 0) throw std::invalid_argument("free operads here need M(1) = 0");
  if (generators.rank(0) != 0) throw std::invalid_argument("free operads here need M(0) = 0");
  QuadraticPresentation pres;
  pres.name = name;
  pres.generators = generators;
  for (int k = 2; k <= generators.max_arity(); ++k)
    if (generators.rank(k) > 0) pres.decls.push_back({"g" + std::to_string(k), k, 0, generators.rank(k), "explicit"});
  return quadratic_quotient(pres, max_arity);
}

}  // namespace opk::operad
