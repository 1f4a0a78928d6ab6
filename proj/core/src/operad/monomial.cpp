#include "opk/operad/monomial.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "opk/trees/tree.hpp"

namespace opk::operad {

bool Monomial::operator<(const Monomial& o) const {
  if (arity != o.arity) return arity < o.arity;
  if (masks != o.masks) return masks < o.masks;
  return labels < o.labels;
}

std::size_t MonomialHash::operator()(const Monomial& m) const {
  std::size_t h = static_cast<std::size_t>(m.arity) * 0x9e3779b97f4a7c15ULL;
  for (std::size_t k = 0; k < m.masks.size(); ++k) {
    h ^= (static_cast<std::size_t>(m.masks[k]) << 8 | static_cast<std::size_t>(m.labels[k])) + 0x9e3779b97f4a7c15ULL + (h << 6) +
         (h >> 2);
  }
  return h;
}

namespace {

int depth_in(const std::vector<std::pair<Mask, int>>& vs, Mask m) {
  int d = 0;
  for (const auto& [o, l] : vs)
    if (o != m && (o & m) == m) ++d;
  return d;
}

}  // namespace

Monomial make_monomial(int arity, std::vector<std::pair<Mask, int>> vertices) {
  const Mask all = comb::full_mask(arity);
  bool root = false;
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    const Mask x = vertices[a].first;
    if (x == 0 || (x & ~all)) throw std::invalid_argument("monomial vertex outside the leaf set");
    if (x == all) root = true;
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      const Mask y = vertices[b].first;
      if (x == y || ((x & y) && (x & y) != x && (x & y) != y)) throw std::invalid_argument("monomial vertices are not nested");
    }
  }
  if (!vertices.empty() && !root) throw std::invalid_argument("monomial has no root vertex");
  std::vector<int> depth;
  for (const auto& v : vertices) depth.push_back(depth_in(vertices, v.first));
  std::vector<std::size_t> order(vertices.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return trees::canonical_less({depth[a], vertices[a].first}, {depth[b], vertices[b].first});
  });
  Monomial m;
  m.arity = arity;
  for (std::size_t k : order) {
    m.masks.push_back(vertices[k].first);
    m.labels.push_back(vertices[k].second);
  }
  return m;
}

std::vector<int> monomial_depths(const Monomial& m) {
  std::vector<int> d;
  for (Mask x : m.masks) {
    int c = 0;
    for (Mask o : m.masks)
      if (o != x && (o & x) == x) ++c;
    d.push_back(c);
  }
  return d;
}

std::vector<Mask> monomial_inputs(const Monomial& m, int v) {
  const Mask me = m.masks[static_cast<std::size_t>(v)];
  std::vector<Mask> in;
  Mask covered = 0;
  // Children are the maximal proper sub-masks.
  for (Mask x : m.masks) {
    if (x == me || (x & me) != x) continue;
    bool maximal = true;
    for (Mask y : m.masks)
      if (y != me && y != x && (y & me) == y && (x & y) == x) maximal = false;
    if (maximal) {
      in.push_back(x);
      covered |= x;
    }
  }
  for (int i : comb::elements(me & ~covered)) in.push_back(Mask(1) << i);
  std::sort(in.begin(), in.end(), [](Mask a, Mask b) { return comb::lowest(a) < comb::lowest(b); });
  return in;
}

namespace {

/// Replaces leaf position p (0-based) by a block of width w.
Mask expand(Mask x, int p, int w) {
  const Mask low = x & comb::full_mask(p);
  const Mask high = (x >> (p + 1)) << (p + w);
  const Mask mid = (x >> p) & 1 ? (comb::full_mask(w) << p) : 0;
  return low | mid | high;
}

}  // namespace

Monomial graft(const Monomial& x, int i, const Monomial& y) {
  if (i < 1 || i > x.arity) throw std::out_of_range("graft position out of range");
  const int p = i - 1;
  std::vector<std::pair<Mask, int>> vs;
  for (std::size_t k = 0; k < x.masks.size(); ++k) vs.emplace_back(expand(x.masks[k], p, y.arity), x.labels[k]);
  for (std::size_t k = 0; k < y.masks.size(); ++k) vs.emplace_back(y.masks[k] << p, y.labels[k]);
  return make_monomial(x.arity + y.arity - 1, std::move(vs));
}

MonomialCombination act_monomial(const SymSequence& gens, const Monomial& m, const Permutation& w) {
  if (w.size() != m.arity) throw std::invalid_argument("permutation size differs from the arity");
  const CoefficientRing& ring = gens.ring();
  std::vector<Mask> moved;
  std::vector<SparseVec> labels;
  for (std::size_t v = 0; v < m.masks.size(); ++v) {
    moved.push_back(comb::permute_mask(w, m.masks[v]));
    const auto in = monomial_inputs(m, static_cast<int>(v));
    std::vector<long> keys;
    for (Mask x : in) keys.push_back(comb::lowest(comb::permute_mask(w, x)));
    labels.push_back(gens.act(static_cast<int>(in.size()), comb::rank_permutation(keys), {{m.labels[v], Scalar(1)}}));
  }
  std::map<Monomial, Scalar> acc;
  std::vector<std::size_t> choice(labels.size(), 0);
  for (const auto& l : labels)
    if (l.empty()) return {};
  for (;;) {
    std::vector<std::pair<Mask, int>> vs;
    Scalar c(1);
    for (std::size_t v = 0; v < labels.size(); ++v) {
      const auto& [idx, x] = labels[v][choice[v]];
      vs.emplace_back(moved[v], idx);
      c *= x;
    }
    Monomial out = make_monomial(m.arity, std::move(vs));
    auto it = acc.find(out);
    if (it == acc.end()) acc.emplace(std::move(out), c);
    else it->second += c;
    std::size_t k = 0;
    while (k < labels.size() && ++choice[k] == labels[k].size()) choice[k++] = 0;
    if (k == labels.size()) break;
  }
  MonomialCombination res;
  for (auto& [mono, c] : acc) {
    Scalar y = ring.normalize(c);
    if (y != 0) res.emplace_back(mono, y);
  }
  return res;
}

std::vector<Monomial> enumerate_monomials(const SymSequence& gens, int n, int weight) {
  std::vector<Monomial> out;
  if (weight < 1 || n < 2) return out;
  for (const auto& t : trees::enumerate_reduced_trees(n, weight)) {
    std::vector<Mask> masks;
    std::vector<int> ranks;
    bool ok = true;
    for (int k = 0; k < t.size(); ++k) {
      masks.push_back(t.leaves(k));
      ranks.push_back(gens.rank(static_cast<int>(t.inputs(k).size())));
      if (ranks.back() == 0) ok = false;
    }
    if (!ok) continue;
    std::vector<int> labels(masks.size(), 0);
    for (;;) {
      // Canonical tree order and monomial vertex order agree.
      out.push_back(Monomial{n, masks, labels});
      std::size_t k = labels.size();
      while (k > 0) {
        --k;
        if (++labels[k] < ranks[k]) break;
        labels[k] = 0;
        if (k == 0) {
          k = labels.size() + 1;
          break;
        }
      }
      if (k == labels.size() + 1) break;
    }
  }
  return out;
}

std::string to_expression(const Monomial& m, const std::function<std::string(int, int)>& names) {
  if (m.masks.empty()) return "x1";
  std::function<std::string(int)> render = [&](int v) {
    const auto in = monomial_inputs(m, v);
    std::string s = names(static_cast<int>(in.size()), m.labels[static_cast<std::size_t>(v)]) + "(";
    for (std::size_t j = 0; j < in.size(); ++j) {
      if (j) s += ",";
      if (comb::popcount(in[j]) == 1) {
        s += "x" + std::to_string(comb::lowest(in[j]) + 1);
      } else {
        int child = -1;
        for (std::size_t k = 0; k < m.masks.size(); ++k)
          if (m.masks[k] == in[j]) child = static_cast<int>(k);
        s += render(child);
      }
    }
    return s + ")";
  };
  return render(0);
}

}  // namespace opk::operad
