#include "opk/bar/twisted.hpp"

#include <map>
#include <stdexcept>

#include "opk/comb/partition.hpp"
#include "opk/linalg/elimination.hpp"

namespace opk::bar {

using comb::SetPartition;
using linalg::CoefficientRing;
using linalg::Scalar;
using linalg::VecBuilder;
using operad::make_monomial;

TwistKind parse_twist_kind(const std::string& s) {
  if (s == "bar-right") return TwistKind::BarRight;
  if (s == "bar-left") return TwistKind::BarLeft;
  if (s == "koszul-right") return TwistKind::KoszulRight;
  if (s == "koszul-left") return TwistKind::KoszulLeft;
  throw std::invalid_argument("unknown complex kind '" + s + "'");
}

std::string to_string(TwistKind k) {
  switch (k) {
    case TwistKind::BarRight: return "bar-right";
    case TwistKind::BarLeft: return "bar-left";
    case TwistKind::KoszulRight: return "koszul-right";
    case TwistKind::KoszulLeft: return "koszul-left";
  }
  return "";
}

namespace {

/// Sends bit i of a local mask to the i-th element of block.
Mask globalize(Mask local, Mask block) {
  Mask out = 0;
  int i = 0;
  for (int e : comb::elements(block)) {
    if (local >> i & 1) out |= Mask(1) << e;
    ++i;
  }
  return out;
}

Mask localize(Mask global, Mask block) {
  Mask out = 0;
  int i = 0;
  for (int e : comb::elements(block)) {
    if (global >> e & 1) out |= Mask(1) << i;
    ++i;
  }
  return out;
}

std::vector<Mask> singletons(Mask m) {
  std::vector<Mask> out;
  for (int e : comb::elements(m)) out.push_back(Mask(1) << e);
  return out;
}

int sign_of(int parity) { return parity % 2 ? -1 : 1; }

/// Basis cells per degree, keyed by integer vectors.
struct Cells {
  std::vector<std::vector<std::vector<int>>> keys;
  std::vector<std::map<std::vector<int>, int>> index;

  explicit Cells(int degrees) : keys(static_cast<std::size_t>(degrees)), index(static_cast<std::size_t>(degrees)) {}
  void add(int d, std::vector<int> key) {
    index[static_cast<std::size_t>(d)].emplace(key, static_cast<int>(keys[static_cast<std::size_t>(d)].size()));
    keys[static_cast<std::size_t>(d)].push_back(std::move(key));
  }
  int find(int d, const std::vector<int>& key) const {
    const auto& m = index.at(static_cast<std::size_t>(d));
    auto it = m.find(key);
    if (it == m.end()) throw std::logic_error("twisted differential left the basis");
    return it->second;
  }
  int dim(int d) const { return static_cast<int>(keys[static_cast<std::size_t>(d)].size()); }
};

// The constants fixing the relative sign of the twist against the bar
// differential; both are forced by d∘d = 0.
constexpr int kRightTwist = -1;
constexpr int kLeftTwist = 1;

class Builder {
 public:
  Builder(OperadPtr p, int n) : p_(std::move(p)), n_(n), ring_(p_->ring()) {
    if (n < 1) throw std::invalid_argument("arity must be positive");
    if (n > p_->max_arity()) throw std::invalid_argument("arity outside the truncation of the operad");
    bars_.resize(static_cast<std::size_t>(n) + 1);
    for (int r = 2; r <= n; ++r) bars_[static_cast<std::size_t>(r)] = std::make_shared<BarComplex>(p_, r);
  }

  ChainComplexData build(TwistKind kind) {
    const bool right = kind == TwistKind::BarRight || kind == TwistKind::KoszulRight;
    Cells cells(n_);
    std::vector<ExactMatrix> diff(static_cast<std::size_t>(n_));
    if (right) {
      enumerate_right(cells);
      for (int d = 1; d < n_; ++d) diff[static_cast<std::size_t>(d)] = assemble(cells, d, [&](const std::vector<int>& k) { return right_column(cells, k); });
    } else {
      enumerate_left(cells);
      for (int d = 1; d < n_; ++d) diff[static_cast<std::size_t>(d)] = assemble(cells, d, [&](const std::vector<int>& k) { return left_column(cells, k); });
    }
    if (kind == TwistKind::BarRight || kind == TwistKind::BarLeft) return finish(cells, diff);
    KoszulModule kos(p_, n_);
    std::vector<ExactMatrix> inc(static_cast<std::size_t>(n_));
    if (right)
      koszul_right(kos, cells, inc);
    else
      koszul_left(kos, cells, inc);
    std::vector<int> dims;
    std::map<int, ExactMatrix> bd;
    for (int d = 0; d < n_; ++d) dims.push_back(inc[static_cast<std::size_t>(d)].cols());
    for (int d = 1; d < n_; ++d) {
      const ExactMatrix image = diff[static_cast<std::size_t>(d)] * inc[static_cast<std::size_t>(d)];
      const auto& lower = inc[static_cast<std::size_t>(d - 1)];
      bd.emplace(d, lower.cols() == 0 ? ExactMatrix(ring_, 0, image.cols()) : linalg::SpanSolver(lower).solve_columns(image));
    }
    return ChainComplexData(ring_, 0, std::move(dims), std::move(bd));
  }

 private:
  const BarComplex& bar(int r) const { return *bars_[static_cast<std::size_t>(r)]; }

  std::vector<int> all_labels(int k) const {
    std::vector<int> out(static_cast<std::size_t>(p_->rank(k)));
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = static_cast<int>(j);
    return out;
  }

  template <class F>
  ExactMatrix assemble(const Cells& cells, int d, F column) {
    ExactMatrix m(ring_, cells.dim(d - 1), cells.dim(d));
    for (int j = 0; j < cells.dim(d); ++j) m.set_column(j, column(cells.keys[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)]));
    return m;
  }

  ChainComplexData finish(const Cells& cells, std::vector<ExactMatrix>& diff) {
    std::vector<int> dims;
    std::map<int, ExactMatrix> bd;
    for (int d = 0; d < n_; ++d) dims.push_back(cells.dim(d));
    for (int d = 1; d < n_; ++d) bd.emplace(d, std::move(diff[static_cast<std::size_t>(d)]));
    return ChainComplexData(ring_, 0, std::move(dims), std::move(bd));
  }

  // Right kinds. Key: [r, blocks..., degree, bar index, P label per block].

  static std::vector<int> right_key(const std::vector<Mask>& blocks, int deg, int idx, const std::vector<int>& labels) {
    std::vector<int> k{static_cast<int>(blocks.size())};
    for (Mask b : blocks) k.push_back(static_cast<int>(b));
    k.push_back(deg);
    k.push_back(idx);
    k.insert(k.end(), labels.begin(), labels.end());
    return k;
  }

  void enumerate_right(Cells& cells) const {
    for (const auto& part : comb::enumerate_partitions(n_)) {
      const auto& blocks = part.blocks();
      const int r = part.size();
      std::vector<std::vector<int>> choices;
      for (Mask b : blocks) choices.push_back(all_labels(comb::popcount(b)));
      for_each_choice(choices, [&](const std::vector<int>& labels) {
        if (r == 1) {
          cells.add(0, right_key(blocks, 0, 0, labels));
          return;
        }
        for (int d = 1; d < r; ++d)
          for (int j = 0; j < bar(r).dim(d); ++j) cells.add(d, right_key(blocks, d, j, labels));
      });
    }
  }

  SparseVec right_column(const Cells& cells, const std::vector<int>& key) const {
    const int r = key[0];
    const std::vector<Mask> blocks(key.begin() + 1, key.begin() + 1 + r);
    const int deg = key[static_cast<std::size_t>(r) + 1];
    const int idx = key[static_cast<std::size_t>(r) + 2];
    const std::vector<int> labels(key.begin() + r + 3, key.end());
    VecBuilder acc(ring_);
    if (deg >= 2)
      for (const auto& [j, x] : bar(r).boundary(deg).column(idx)) acc.add(cells.find(deg - 1, right_key(blocks, deg - 1, j, labels)), x);
    const Monomial& t = bar(r).basis(deg)[static_cast<std::size_t>(idx)];
    for (int u = 0; u < deg; ++u) {
      const Mask mu = t.masks[static_cast<std::size_t>(u)];
      bool top = true;
      for (Mask x : t.masks)
        if (x != mu && (x & mu) == x) top = false;
      if (!top) continue;
      // z = p_u(p_{k_1}, ..., p_{k_m}) on the union of the blocks below u.
      const std::vector<int> ks = comb::elements(mu);
      std::vector<Mask> cur_in;
      Mask joined = 0;
      for (int k : ks) {
        cur_in.push_back(blocks[static_cast<std::size_t>(k)]);
        joined |= blocks[static_cast<std::size_t>(k)];
      }
      SparseVec z{{t.labels[static_cast<std::size_t>(u)], Scalar(1)}};
      for (int k : ks) {
        const Mask b = blocks[static_cast<std::size_t>(k)];
        if (comb::popcount(b) == 1) continue;
        const int j = static_cast<int>(std::find(cur_in.begin(), cur_in.end(), b) - cur_in.begin());
        const auto inner = singletons(b);
        z = p_->substitute(z, cur_in, j, {{labels[static_cast<std::size_t>(k)], Scalar(1)}}, inner);
        cur_in = Operad::merged_inputs(cur_in, j, inner);
      }
      if (z.empty()) continue;
      // New blocks and the image of each old D-leaf.
      std::vector<Mask> nb;
      for (int k = 0; k < r; ++k)
        if (!(mu >> k & 1)) nb.push_back(blocks[static_cast<std::size_t>(k)]);
      nb.push_back(joined);
      const SetPartition np(n_, nb);
      const auto& nblocks = np.blocks();
      const int nr = np.size();
      std::vector<int> leaf_to(static_cast<std::size_t>(r));
      for (int k = 0; k < r; ++k)
        leaf_to[static_cast<std::size_t>(k)] = np.block_of(comb::lowest(blocks[static_cast<std::size_t>(k)]));
      const int jpos = np.block_of(comb::lowest(joined));
      std::vector<int> nlabels(static_cast<std::size_t>(nr), 0);
      for (int k = 0; k < r; ++k)
        if (!(mu >> k & 1)) nlabels[static_cast<std::size_t>(leaf_to[static_cast<std::size_t>(k)])] = labels[static_cast<std::size_t>(k)];
      int sign = kRightTwist * sign_of(u);
      int ndeg = 0, nidx = 0;
      if (deg > 1) {
        std::vector<Mask> order;
        std::vector<std::pair<Mask, int>> vs;
        for (int q = 0; q < deg; ++q) {
          if (q == u) continue;
          Mask m = 0;
          for (int k : comb::elements(t.masks[static_cast<std::size_t>(q)])) m |= Mask(1) << leaf_to[static_cast<std::size_t>(k)];
          order.push_back(m);
          vs.emplace_back(m, t.labels[static_cast<std::size_t>(q)]);
        }
        const Monomial nt = make_monomial(nr, vs);
        sign *= comb::sorting_sign(positions_in(order, nt.masks));
        ndeg = deg - 1;
        nidx = bar(nr).index(nt);
      }
      for (const auto& [c, x] : z) {
        nlabels[static_cast<std::size_t>(jpos)] = c;
        acc.add(cells.find(ndeg, right_key(nblocks, ndeg, nidx, nlabels)), ring_.mul(x, ring_.from_int(sign)));
      }
    }
    return acc.take();
  }

  // Left kinds. Key: [r, blocks..., x, (degree, bar index) per block].

  static std::vector<int> left_key(const std::vector<Mask>& blocks, int x, const std::vector<std::pair<int, int>>& ys) {
    std::vector<int> k{static_cast<int>(blocks.size())};
    for (Mask b : blocks) k.push_back(static_cast<int>(b));
    k.push_back(x);
    for (const auto& [d, j] : ys) {
      k.push_back(d);
      k.push_back(j);
    }
    return k;
  }

  void enumerate_left(Cells& cells) const {
    for (const auto& part : comb::enumerate_partitions(n_)) {
      const auto& blocks = part.blocks();
      const int r = part.size();
      std::vector<std::vector<std::pair<int, int>>> choices;
      for (Mask b : blocks) {
        const int k = comb::popcount(b);
        std::vector<std::pair<int, int>> c;
        if (k == 1) c.emplace_back(0, 0);
        for (int d = 1; d < k; ++d)
          for (int j = 0; j < bar(k).dim(d); ++j) c.emplace_back(d, j);
        choices.push_back(std::move(c));
      }
      for (int x : all_labels(r))
        for_each_choice(choices, [&](const std::vector<std::pair<int, int>>& ys) {
          int deg = 0;
          for (const auto& y : ys) deg += y.first;
          cells.add(deg, left_key(blocks, x, ys));
        });
    }
  }

  SparseVec left_column(const Cells& cells, const std::vector<int>& key) const {
    const int r = key[0];
    const std::vector<Mask> blocks(key.begin() + 1, key.begin() + 1 + r);
    const int x = key[static_cast<std::size_t>(r) + 1];
    std::vector<std::pair<int, int>> ys;
    int deg = 0;
    for (int k = 0; k < r; ++k) {
      ys.emplace_back(key[static_cast<std::size_t>(r + 2 + 2 * k)], key[static_cast<std::size_t>(r + 3 + 2 * k)]);
      deg += ys.back().first;
    }
    VecBuilder acc(ring_);
    int before = 0;
    for (int k = 0; k < r; ++k) {
      const auto [dk, jk] = ys[static_cast<std::size_t>(k)];
      const Mask bk = blocks[static_cast<std::size_t>(k)];
      const int size = comb::popcount(bk);
      if (dk >= 2) {
        for (const auto& [j, c] : bar(size).boundary(dk).column(jk)) {
          auto nys = ys;
          nys[static_cast<std::size_t>(k)] = {dk - 1, j};
          acc.add(cells.find(deg - 1, left_key(blocks, x, nys)), ring_.mul(c, ring_.from_int(sign_of(before))));
        }
      }
      if (dk >= 1) add_left_twist(cells, acc, blocks, x, ys, k, before, deg);
      before += dk;
    }
    return acc.take();
  }

  void add_left_twist(const Cells& cells, VecBuilder& acc, const std::vector<Mask>& blocks, int x,
                      const std::vector<std::pair<int, int>>& ys, int k, int before, int deg) const {
    const int r = static_cast<int>(blocks.size());
    const Mask bk = blocks[static_cast<std::size_t>(k)];
    const int size = comb::popcount(bk);
    const Monomial& t = bar(size).basis(ys[static_cast<std::size_t>(k)].first)[static_cast<std::size_t>(ys[static_cast<std::size_t>(k)].second)];
    // Global suspension order before the twist, without the stripped root.
    std::vector<Mask> order;
    for (int l = 0; l < r; ++l) {
      if (ys[static_cast<std::size_t>(l)].first == 0) continue;
      const auto& tl = bar(comb::popcount(blocks[static_cast<std::size_t>(l)])).basis(ys[static_cast<std::size_t>(l)].first)[static_cast<std::size_t>(ys[static_cast<std::size_t>(l)].second)];
      for (int q = 0; q < tl.weight(); ++q)
        if (l != k || q != 0) order.push_back(globalize(tl.masks[static_cast<std::size_t>(q)], blocks[static_cast<std::size_t>(l)]));
    }
    std::vector<Mask> inner;
    for (Mask m : inputs_of(t.masks, t.masks[0])) inner.push_back(globalize(m, bk));
    const SparseVec z = p_->substitute({{x, Scalar(1)}}, blocks, k, {{t.labels[0], Scalar(1)}}, inner);
    if (z.empty()) return;
    const auto nblocks = Operad::merged_inputs(blocks, k, inner);
    // New tree factors: untouched blocks keep theirs, each input of the root gets its subtree.
    std::vector<std::pair<int, int>> nys;
    std::vector<Mask> target;
    for (Mask nb : nblocks) {
      const int l = static_cast<int>(std::find(blocks.begin(), blocks.end(), nb) - blocks.begin());
      if (l < r && l != k) {
        nys.push_back(ys[static_cast<std::size_t>(l)]);
        if (nys.back().first) {
          const auto& tl = bar(comb::popcount(nb)).basis(nys.back().first)[static_cast<std::size_t>(nys.back().second)];
          for (Mask m : tl.masks) target.push_back(globalize(m, nb));
        }
        continue;
      }
      if (comb::popcount(nb) == 1) {
        nys.emplace_back(0, 0);
        continue;
      }
      std::vector<std::pair<Mask, int>> vs;
      for (int q = 1; q < t.weight(); ++q) {
        const Mask g = globalize(t.masks[static_cast<std::size_t>(q)], bk);
        if ((g & nb) == g) vs.emplace_back(localize(g, nb), t.labels[static_cast<std::size_t>(q)]);
      }
      const Monomial sub = make_monomial(comb::popcount(nb), vs);
      nys.emplace_back(sub.weight(), bar(comb::popcount(nb)).index(sub));
      for (Mask m : sub.masks) target.push_back(globalize(m, nb));
    }
    const int sign = kLeftTwist * sign_of(before) * comb::sorting_sign(positions_in(order, target));
    for (const auto& [c, v] : z) acc.add(cells.find(deg - 1, left_key(nblocks, c, nys)), ring_.mul(v, ring_.from_int(sign)));
  }

  // Koszul kinds: inclusions of the K̄ factors into the bar kinds.

  void koszul_right(const KoszulModule& kos, const Cells& cells, std::vector<ExactMatrix>& inc) const {
    std::vector<std::vector<SparseVec>> cols(static_cast<std::size_t>(n_));
    for (const auto& part : comb::enumerate_partitions(n_)) {
      const auto& blocks = part.blocks();
      const int r = part.size();
      std::vector<std::vector<int>> choices;
      for (Mask b : blocks) choices.push_back(all_labels(comb::popcount(b)));
      for_each_choice(choices, [&](const std::vector<int>& labels) {
        if (r == 1) {
          cols[0].push_back({{cells.find(0, right_key(blocks, 0, 0, labels)), Scalar(1)}});
          return;
        }
        for (const auto& comp : kos.components(r))
          for (int q = 0; q < comp.inclusion.cols(); ++q) {
            VecBuilder v(ring_);
            for (const auto& [j, c] : comp.inclusion.column(q)) v.add(cells.find(comp.weight, right_key(blocks, comp.weight, j, labels)), c);
            cols[static_cast<std::size_t>(comp.weight)].push_back(v.take());
          }
      });
    }
    to_matrices(cells, cols, inc);
  }

  void koszul_left(const KoszulModule& kos, const Cells& cells, std::vector<ExactMatrix>& inc) const {
    std::vector<std::vector<SparseVec>> cols(static_cast<std::size_t>(n_));
    for (const auto& part : comb::enumerate_partitions(n_)) {
      const auto& blocks = part.blocks();
      const int r = part.size();
      // Per block: the K̄ basis vectors as (degree, bar vector).
      std::vector<std::vector<std::pair<int, SparseVec>>> choices;
      for (Mask b : blocks) {
        const int k = comb::popcount(b);
        std::vector<std::pair<int, SparseVec>> c;
        if (k == 1) c.emplace_back(0, SparseVec{{0, Scalar(1)}});
        for (const auto& comp : kos.components(k))
          for (int q = 0; q < comp.inclusion.cols(); ++q) c.emplace_back(comp.weight, comp.inclusion.column(q));
        choices.push_back(std::move(c));
      }
      for (int x : all_labels(r))
        for_each_choice(choices, [&](const std::vector<std::pair<int, SparseVec>>& ks) {
          int deg = 0;
          for (const auto& kk : ks) deg += kk.first;
          VecBuilder v(ring_);
          std::vector<std::pair<int, int>> ys(static_cast<std::size_t>(r));
          expand(ks, 0, ring_.from_int(1), ys, [&](const Scalar& c) { v.add(cells.find(deg, left_key(blocks, x, ys)), c); });
          cols[static_cast<std::size_t>(deg)].push_back(v.take());
        });
    }
    to_matrices(cells, cols, inc);
  }

  template <class F>
  void expand(const std::vector<std::pair<int, SparseVec>>& ks, std::size_t i, const Scalar& c, std::vector<std::pair<int, int>>& ys,
              F emit) const {
    if (i == ks.size()) {
      emit(c);
      return;
    }
    for (const auto& [j, x] : ks[i].second) {
      ys[i] = {ks[i].first, j};
      expand(ks, i + 1, ring_.mul(c, x), ys, emit);
    }
  }

  void to_matrices(const Cells& cells, std::vector<std::vector<SparseVec>>& cols, std::vector<ExactMatrix>& inc) const {
    for (int d = 0; d < n_; ++d) {
      auto& cs = cols[static_cast<std::size_t>(d)];
      ExactMatrix m(ring_, cells.dim(d), static_cast<int>(cs.size()));
      for (std::size_t j = 0; j < cs.size(); ++j) m.set_column(static_cast<int>(j), std::move(cs[j]));
      inc[static_cast<std::size_t>(d)] = std::move(m);
    }
  }

  template <class T, class F>
  static void for_each_choice(const std::vector<std::vector<T>>& choices, F f) {
    for (const auto& c : choices)
      if (c.empty()) return;
    std::vector<std::size_t> at(choices.size(), 0);
    std::vector<T> cur(choices.size());
    while (true) {
      for (std::size_t i = 0; i < choices.size(); ++i) cur[i] = choices[i][at[i]];
      f(cur);
      int i = static_cast<int>(choices.size()) - 1;
      while (i >= 0 && ++at[static_cast<std::size_t>(i)] == choices[static_cast<std::size_t>(i)].size()) at[static_cast<std::size_t>(i--)] = 0;
      if (i < 0) return;
    }
  }

  OperadPtr p_;
  int n_;
  CoefficientRing ring_;
  std::vector<std::shared_ptr<BarComplex>> bars_;
};

}  // namespace

ChainComplexData twisted_complex(OperadPtr p, TwistKind kind, int n) {
  if (!p) throw std::invalid_argument("twisted complex needs an operad");
  return Builder(std::move(p), n).build(kind);
}

}  // namespace opk::bar
