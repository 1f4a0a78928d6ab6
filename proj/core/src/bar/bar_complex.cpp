#include "opk/bar/bar_complex.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "opk/linalg/elimination.hpp"
#include "opk/trees/tree.hpp"

namespace opk::bar {

using comb::lowest;
using linalg::Scalar;
using linalg::VecBuilder;
using operad::make_monomial;

std::vector<Mask> inputs_of(const std::vector<Mask>& masks, Mask me) {
  std::vector<Mask> kids;
  for (Mask x : masks) {
    if (x == me || (x & me) != x) continue;
    bool maximal = true;
    for (Mask y : masks)
      if (y != me && y != x && (y & me) == y && (x & y) == x) {
        maximal = false;
        break;
      }
    if (maximal) kids.push_back(x);
  }
  Mask covered = 0;
  for (Mask k : kids) covered |= k;
  for (int i : comb::elements(me & ~covered)) kids.push_back(Mask(1) << i);
  std::sort(kids.begin(), kids.end(), [](Mask a, Mask b) { return lowest(a) < lowest(b); });
  return kids;
}

int parent_of(const std::vector<Mask>& masks, int v) {
  const Mask me = masks[static_cast<std::size_t>(v)];
  int best = -1;
  for (std::size_t q = 0; q < masks.size(); ++q) {
    const Mask x = masks[q];
    if (x != me && (x & me) == me && (best < 0 || comb::popcount(x) < comb::popcount(masks[static_cast<std::size_t>(best)])))
      best = static_cast<int>(q);
  }
  return best;
}

std::vector<int> positions_in(const std::vector<Mask>& order, const std::vector<Mask>& target) {
  std::vector<int> pos;
  pos.reserve(order.size());
  for (Mask m : order) pos.push_back(static_cast<int>(std::find(target.begin(), target.end(), m) - target.begin()));
  return pos;
}

BarComplex::BarComplex(OperadPtr p, int n) : p_(std::move(p)), n_(n) {
  if (!p_) throw std::invalid_argument("bar complex needs an operad");
  if (n < 1 || n > p_->max_arity()) throw std::invalid_argument("arity outside the truncation of the operad");
  if (p_->rank(1) != 1 || p_->weight(1, 0) != 0) throw std::invalid_argument("operad is not connected");
  for (int k = 2; k <= n; ++k)
    for (int j = 0; j < p_->rank(k); ++j)
      if (p_->weight(k, j) <= 0) throw std::invalid_argument("operad is not connected: weight-0 operation in arity " + std::to_string(k));
  basis_.resize(static_cast<std::size_t>(n_));
  weights_.resize(static_cast<std::size_t>(n_));
  for (int d = 1; d < n_; ++d) {
    for (const auto& shape : trees::enumerate_reduced_trees(n_, d)) {
      std::vector<std::pair<Mask, int>> vs;
      for (int k = 0; k < shape.size(); ++k) vs.emplace_back(shape.leaves(k), 0);
      Monomial t = make_monomial(n_, vs);
      std::vector<std::vector<int>> choices;
      std::vector<int> arities;
      for (int v = 0; v < d; ++v) {
        arities.push_back(static_cast<int>(inputs_of(t.masks, t.masks[static_cast<std::size_t>(v)]).size()));
        choices.push_back(p_->positive_basis(arities.back()));
      }
      // Odometer over label choices.
      std::vector<std::size_t> at(static_cast<std::size_t>(d), 0);
      bool empty = false;
      for (const auto& c : choices) empty = empty || c.empty();
      while (!empty) {
        int w = 0;
        for (int v = 0; v < d; ++v) {
          t.labels[static_cast<std::size_t>(v)] = choices[static_cast<std::size_t>(v)][at[static_cast<std::size_t>(v)]];
          w += p_->weight(arities[static_cast<std::size_t>(v)], t.labels[static_cast<std::size_t>(v)]);
        }
        index_.emplace(t, static_cast<int>(basis_[static_cast<std::size_t>(d)].size()));
        basis_[static_cast<std::size_t>(d)].push_back(t);
        weights_[static_cast<std::size_t>(d)].push_back(w);
        int v = d - 1;
        while (v >= 0 && ++at[static_cast<std::size_t>(v)] == choices[static_cast<std::size_t>(v)].size()) at[static_cast<std::size_t>(v--)] = 0;
        if (v < 0) break;
      }
    }
  }
  boundary_.resize(static_cast<std::size_t>(n_));
  for (int d = 2; d < n_; ++d) {
    ExactMatrix b(p_->ring(), dim(d - 1), dim(d));
    const auto& bs = basis_[static_cast<std::size_t>(d)];
    for (std::size_t j = 0; j < bs.size(); ++j) b.set_column(static_cast<int>(j), beta(bs[j]));
    boundary_[static_cast<std::size_t>(d)] = std::move(b);
  }
}

int BarComplex::dim(int d) const {
  if (d < 1 || d >= n_) return 0;
  return static_cast<int>(basis_[static_cast<std::size_t>(d)].size());
}

const std::vector<Monomial>& BarComplex::basis(int d) const {
  static const std::vector<Monomial> none;
  if (d < 1 || d >= n_) return none;
  return basis_[static_cast<std::size_t>(d)];
}

int BarComplex::index(const Monomial& t) const {
  auto it = index_.find(t);
  return it == index_.end() ? -1 : it->second;
}

std::vector<int> BarComplex::weight_values() const {
  std::set<int> s;
  for (const auto& ws : weights_) s.insert(ws.begin(), ws.end());
  return {s.begin(), s.end()};
}

const ExactMatrix& BarComplex::boundary(int d) const {
  if (d < 2 || d >= n_) throw std::out_of_range("bar boundary degree out of range");
  return boundary_[static_cast<std::size_t>(d)];
}

SparseVec BarComplex::beta(const Monomial& t) const {
  const auto& ring = p_->ring();
  VecBuilder acc(ring);
  const int d = t.weight();
  for (int b = 1; b < d; ++b) {
    const int a = parent_of(t.masks, b);
    const Mask mu = t.masks[static_cast<std::size_t>(a)];
    const Mask mv = t.masks[static_cast<std::size_t>(b)];
    const auto in_u = inputs_of(t.masks, mu);
    const auto in_v = inputs_of(t.masks, mv);
    const int j = static_cast<int>(std::find(in_u.begin(), in_u.end(), mv) - in_u.begin());
    const SparseVec merged = p_->substitute({{t.labels[static_cast<std::size_t>(a)], Scalar(1)}}, in_u, j,
                                            {{t.labels[static_cast<std::size_t>(b)], Scalar(1)}}, in_v);
    if (merged.empty()) continue;
    // The contracted pair is moved to the front, then the rest is re-sorted.
    std::vector<Mask> order{mu};
    std::vector<std::pair<Mask, int>> vs{{mu, 0}};
    for (int q = 0; q < d; ++q)
      if (q != a && q != b) {
        order.push_back(t.masks[static_cast<std::size_t>(q)]);
        vs.emplace_back(t.masks[static_cast<std::size_t>(q)], t.labels[static_cast<std::size_t>(q)]);
      }
    Monomial target = make_monomial(n_, vs);
    const auto pos = positions_in(order, target.masks);
    const int sign = ((a + b - 1) % 2 ? -1 : 1) * comb::sorting_sign(pos) * -1;
    for (const auto& [c, x] : merged) {
      target.labels[static_cast<std::size_t>(pos[0])] = c;
      acc.add(index(target), ring.mul(x, ring.from_int(sign)));
    }
  }
  return acc.take();
}

ChainComplexData BarComplex::complex() const {
  if (n_ < 2) return ChainComplexData(p_->ring(), 0, {0}, {});
  std::vector<int> dims;
  std::map<int, ExactMatrix> bd;
  for (int d = 1; d < n_; ++d) dims.push_back(dim(d));
  for (int d = 2; d < n_; ++d) bd.emplace(d, boundary_[static_cast<std::size_t>(d)]);
  ChainComplexData c(p_->ring(), 1, std::move(dims), std::move(bd));
  for (int d = 1; d < n_; ++d) c.set_weights(d, weights_[static_cast<std::size_t>(d)]);
  return c;
}

std::vector<int> BarComplex::weight_indices(int d, int s) const {
  std::vector<int> out;
  if (d < 1 || d >= n_) return out;
  const auto& ws = weights_[static_cast<std::size_t>(d)];
  for (std::size_t j = 0; j < ws.size(); ++j)
    if (ws[j] == s) out.push_back(static_cast<int>(j));
  return out;
}

ChainComplexData BarComplex::weight_column(int s) const {
  if (n_ < 2) return ChainComplexData(p_->ring(), 0, {0}, {});
  std::vector<int> dims;
  std::map<int, ExactMatrix> bd;
  for (int d = 1; d < n_; ++d) dims.push_back(static_cast<int>(weight_indices(d, s).size()));
  for (int d = 2; d < n_; ++d) bd.emplace(d, boundary_[static_cast<std::size_t>(d)].submatrix(weight_indices(d - 1, s), weight_indices(d, s)));
  return ChainComplexData(p_->ring(), 1, std::move(dims), std::move(bd));
}

ExactMatrix BarComplex::action(int d, const Permutation& w) const {
  const auto& ring = p_->ring();
  ExactMatrix out(ring, dim(d), dim(d));
  const auto& bs = basis(d);
  for (std::size_t col = 0; col < bs.size(); ++col) {
    const Monomial& t = bs[col];
    std::vector<Mask> order;
    std::vector<std::pair<Mask, int>> vs;
    std::vector<SparseVec> labels;
    for (int v = 0; v < d; ++v) {
      const Mask m = t.masks[static_cast<std::size_t>(v)];
      const Mask nm = comb::permute_mask(w, m);
      const auto in = inputs_of(t.masks, m);
      std::vector<long> keys;
      for (Mask x : in) keys.push_back(lowest(comb::permute_mask(w, x)));
      const Permutation sigma = comb::rank_permutation(keys);
      labels.push_back(p_->act(static_cast<int>(in.size()), sigma, {{t.labels[static_cast<std::size_t>(v)], Scalar(1)}}));
      order.push_back(nm);
      vs.emplace_back(nm, 0);
    }
    Monomial target = make_monomial(n_, vs);
    const auto pos = positions_in(order, target.masks);
    const int sign = comb::sorting_sign(pos);
    // Expand the tensor product of the acted labels.
    VecBuilder acc(ring);
    std::vector<std::size_t> at(static_cast<std::size_t>(d), 0);
    bool empty = false;
    for (const auto& l : labels) empty = empty || l.empty();
    while (!empty) {
      Scalar c = ring.from_int(sign);
      for (int v = 0; v < d; ++v) {
        const auto& [lab, x] = labels[static_cast<std::size_t>(v)][at[static_cast<std::size_t>(v)]];
        target.labels[static_cast<std::size_t>(pos[static_cast<std::size_t>(v)])] = lab;
        c = ring.mul(c, x);
      }
      acc.add(index(target), c);
      int v = d - 1;
      while (v >= 0 && ++at[static_cast<std::size_t>(v)] == labels[static_cast<std::size_t>(v)].size()) at[static_cast<std::size_t>(v--)] = 0;
      if (v < 0) break;
    }
    out.set_column(static_cast<int>(col), acc.take());
  }
  return out;
}

KoszulModule::KoszulModule(OperadPtr p, int max_arity) : p_(std::move(p)), max_arity_(max_arity) {
  bars_.resize(static_cast<std::size_t>(max_arity) + 1);
  comps_.resize(static_cast<std::size_t>(max_arity) + 1);
  for (int n = 2; n <= max_arity; ++n) {
    auto bar = std::make_shared<BarComplex>(p_, n);
    for (int s : bar->weight_values()) {
      if (s < 1 || s >= n) continue;
      const auto cols = bar->weight_indices(s, s);
      if (cols.empty()) continue;
      ExactMatrix ker;
      if (s == 1) {
        ker = ExactMatrix::identity(p_->ring(), static_cast<int>(cols.size()));
      } else {
        std::vector<int> rows(static_cast<std::size_t>(bar->dim(s - 1)));
        for (std::size_t r = 0; r < rows.size(); ++r) rows[r] = static_cast<int>(r);
        ker = linalg::kernel_basis(bar->boundary(s).submatrix(rows, cols));
      }
      if (ker.cols() == 0) continue;
      ExactMatrix inc(p_->ring(), bar->dim(s), ker.cols());
      for (int c = 0; c < ker.cols(); ++c) {
        SparseVec v;
        for (const auto& [r, x] : ker.column(c)) v.emplace_back(cols[static_cast<std::size_t>(r)], x);
        inc.set_column(c, std::move(v));
      }
      if (!p_->ring().is_field() && !linalg::is_saturated(inc)) saturated_ = false;
      comps_[static_cast<std::size_t>(n)].push_back({n, s, std::move(inc)});
    }
    bars_[static_cast<std::size_t>(n)] = std::move(bar);
  }
}

int KoszulModule::rank(int n) const {
  if (n == 1) return 1;
  int r = 0;
  for (const auto& c : components(n)) r += c.inclusion.cols();
  return r;
}

ExactMatrix KoszulModule::action(const KoszulComponent& c, const Permutation& w) const {
  const ExactMatrix moved = bar(c.arity).action(c.weight, w) * c.inclusion;
  return linalg::SpanSolver(c.inclusion).solve_columns(moved);
}

KoszulModule koszul_construction(OperadPtr p, int max_arity) {
  KoszulModule k(std::move(p), max_arity);
  if (!k.saturated()) throw std::domain_error("Koszul construction is not a direct summand over Z");
  return k;
}

KoszulReport is_koszul(OperadPtr p, int max_arity) {
  KoszulReport rep;
  for (int n = 2; n <= max_arity; ++n) {
    const BarComplex bar(p, n);
    for (int s : bar.weight_values()) {
      KoszulWeightReport col{n, s, linalg::homology(bar.weight_column(s)), true};
      for (int d : col.homology.support()) col.concentrated = col.concentrated && d == s;
      rep.koszul = rep.koszul && col.concentrated;
      rep.columns.push_back(std::move(col));
    }
  }
  return rep;
}

}  // namespace opk::bar
