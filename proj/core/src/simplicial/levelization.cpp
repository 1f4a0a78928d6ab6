#include "opk/simplicial/levelization.hpp"

#include <algorithm>
#include <numeric>

#include "opk/linalg/elimination.hpp"

namespace opk::simplicial {

using linalg::VecBuilder;

Levelization::Levelization(OperadPtr p, int n) : bar_(p, n), simplicial_(p, n) {
  const auto& ring = p->ring();
  maps_.resize(static_cast<std::size_t>(std::max(n, 1)));
  for (int d = 1; d < n; ++d) {
    ExactMatrix m(ring, simplicial_.dim(d), bar_.dim(d));
    const auto& bs = bar_.basis(d);
    for (std::size_t j = 0; j < bs.size(); ++j) {
      const Monomial& t = bs[j];
      std::vector<int> parent(static_cast<std::size_t>(d));
      for (int v = 0; v < d; ++v) parent[static_cast<std::size_t>(v)] = bar::parent_of(t.masks, v);
      VecBuilder acc(ring);
      std::vector<int> lv(static_cast<std::size_t>(d));
      std::iota(lv.begin(), lv.end(), 1);
      do {
        bool ok = true;
        for (int v = 1; v < d && ok; ++v) ok = lv[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])] < lv[static_cast<std::size_t>(v)];
        if (!ok) continue;
        acc.add(simplicial_.basis(d).index({t, lv}), ring.from_int(comb::sorting_sign(lv)));
      } while (std::next_permutation(lv.begin(), lv.end()));
      m.set_column(static_cast<int>(j), acc.take());
    }
    maps_[static_cast<std::size_t>(d)] = std::move(m);
  }
}

namespace {

ExactMatrix concat(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix out(a.ring(), a.rows(), a.cols() + b.cols());
  for (int c = 0; c < a.cols(); ++c) out.set_column(c, a.column(c));
  for (int c = 0; c < b.cols(); ++c) out.set_column(a.cols() + c, b.column(c));
  return out;
}

}  // namespace

LevelizationReport check_levelization(const Levelization& l) {
  LevelizationReport rep;
  const auto& b = l.bar();
  const auto& s = l.simplicial();
  const int n = b.arity();
  if (n < 2) return rep;
  const auto& ring = b.operad().ring();
  for (int d = 2; d < n; ++d)
    if (s.boundary(d) * l.matrix(d) != l.matrix(d - 1) * b.boundary(d)) {
      rep.chain_map = false;
      if (rep.failure.empty()) rep.failure = "levelization is not a chain map in degree " + std::to_string(d);
    }
  for (int d = 1; d < n; ++d)
    if (linalg::rank(l.matrix(d)) != b.dim(d)) {
      rep.injective = false;
      if (rep.failure.empty()) rep.failure = "levelization is not injective in degree " + std::to_string(d);
    }
  const auto hb = linalg::homology(b.complex());
  const auto hs = linalg::homology(s.complex());
  for (int d = 1; d < n; ++d) {
    rep.bar_betti[d] = hb.betti.count(d) ? hb.betti.at(d) : 0;
    rep.simplicial_betti[d] = hs.betti.count(d) ? hs.betti.at(d) : 0;
    const ExactMatrix cycles = d >= 2 ? linalg::kernel_basis(b.boundary(d)) : ExactMatrix::identity(ring, b.dim(d));
    const ExactMatrix bounds = d + 1 < n ? s.boundary(d + 1) : ExactMatrix(ring, s.dim(d), 0);
    const int induced = linalg::rank(concat(l.matrix(d) * cycles, bounds)) - linalg::rank(bounds);
    rep.induced_rank[d] = induced;
    if (induced != rep.bar_betti[d] || induced != rep.simplicial_betti[d]) {
      rep.homology_iso = false;
      if (rep.failure.empty()) rep.failure = "induced map on homology is not an isomorphism in degree " + std::to_string(d);
    }
  }
  return rep;
}

}  // namespace opk::simplicial
