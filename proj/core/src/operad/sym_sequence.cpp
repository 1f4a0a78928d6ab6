#include "opk/operad/sym_sequence.hpp"

#include <algorithm>
#include <stdexcept>

namespace opk::operad {

using comb::SetPartition;

SymSequence::SymSequence(const CoefficientRing& ring, int max_arity) : ring_(ring), max_arity_(max_arity) {
  if (max_arity < 0) throw std::invalid_argument("negative max arity");
  comps_.resize(static_cast<std::size_t>(max_arity) + 1);
}

int SymSequence::rank(int r) const {
  if (r < 0 || r > max_arity_) return 0;
  return comps_[static_cast<std::size_t>(r)].rank;
}

const ExactMatrix& SymSequence::generator(int r, int k) const {
  if (r < 0 || r > max_arity_ || k < 0 || k + 1 >= r) throw std::out_of_range("no such generator");
  return comps_[static_cast<std::size_t>(r)].gens[static_cast<std::size_t>(k)];
}

void SymSequence::set_component(int r, std::vector<ExactMatrix> generators, std::vector<int> degrees, std::vector<int> weights) {
  if (r < 0 || r > max_arity_) throw std::out_of_range("arity beyond the truncation bound");
  const int rk = static_cast<int>(degrees.size());
  if (static_cast<int>(weights.size()) != rk) throw std::invalid_argument("one weight per basis element required");
  if (static_cast<int>(generators.size()) != std::max(r - 1, 0)) throw std::invalid_argument("need r-1 transposition matrices");
  for (auto& g : generators) {
    if (g.rows() != rk || g.cols() != rk) throw std::invalid_argument("action matrix has the wrong shape");
    if (g.ring() != ring_) g = g.change_ring(ring_);
  }
  comps_[static_cast<std::size_t>(r)] = Component{rk, std::move(generators), std::move(degrees), std::move(weights)};
  cache_ = std::make_shared<Cache>();
}

ExactMatrix SymSequence::action(int r, const Permutation& w) const {
  if (w.size() != r) throw std::invalid_argument("permutation size differs from the arity");
  const int rk = rank(r);
  const auto key = std::make_pair(r, w.lex_rank());
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->actions.find(key);
    if (it != cache_->actions.end()) return it->second;
  }
  ExactMatrix a = ExactMatrix::identity(ring_, rk);
  for (int k : w.adjacent_word()) a = a * generator(r, k);
  std::lock_guard<std::mutex> lock(cache_->mu);
  cache_->actions.emplace(key, a);
  return a;
}

SparseVec SymSequence::act(int r, const Permutation& w, const SparseVec& v) const {
  if (w.is_identity()) return v;
  return action(r, w).apply(v);
}

bool SymSequence::check_coxeter(int r) const {
  const int rk = rank(r);
  const ExactMatrix id = ExactMatrix::identity(ring_, rk);
  for (int j = 0; j + 1 < r; ++j) {
    const ExactMatrix& a = generator(r, j);
    if (a * a != id) return false;
    for (int k = j + 1; k + 1 < r; ++k) {
      const ExactMatrix ab = a * generator(r, k);
      if (k == j + 1) {
        if (ab * ab * ab != id) return false;
      } else if (ab * ab != id) {
        return false;
      }
    }
  }
  return true;
}

namespace {

std::vector<ExactMatrix> scalar_generators(const CoefficientRing& ring, int r, long s) {
  std::vector<ExactMatrix> g;
  for (int k = 0; k + 1 < r; ++k) {
    ExactMatrix m(ring, 1, 1);
    m.set(0, 0, ring.from_int(s));
    g.push_back(std::move(m));
  }
  return g;
}

}  // namespace

SymSequence SymSequence::trivial(const CoefficientRing& ring, int r, int max_arity, int weight) {
  SymSequence m(ring, max_arity);
  m.set_component(r, scalar_generators(ring, r, 1), {0}, {weight});
  return m;
}

SymSequence SymSequence::sign(const CoefficientRing& ring, int r, int max_arity, int weight) {
  SymSequence m(ring, max_arity);
  m.set_component(r, scalar_generators(ring, r, -1), {0}, {weight});
  return m;
}

SymSequence SymSequence::regular(const CoefficientRing& ring, int r, int max_arity, int weight) {
  const auto perms = comb::all_permutations(r);
  const int rk = static_cast<int>(perms.size());
  std::vector<ExactMatrix> gens;
  for (int k = 0; k + 1 < r; ++k) {
    const Permutation s = Permutation::adjacent(r, k);
    ExactMatrix g(ring, rk, rk);
    // Basis element e_v is sent to e_{s v}.
    for (int j = 0; j < rk; ++j) g.set(static_cast<int>((s * perms[static_cast<std::size_t>(j)]).lex_rank()), j, Scalar(1));
    gens.push_back(std::move(g));
  }
  SymSequence m(ring, max_arity);
  m.set_component(r, std::move(gens), std::vector<int>(static_cast<std::size_t>(rk), 0),
                  std::vector<int>(static_cast<std::size_t>(rk), weight));
  return m;
}

SymSequence SymSequence::unit(const CoefficientRing& ring, int max_arity) {
  SymSequence m(ring, std::max(max_arity, 1));
  m.set_component(1, {}, {0}, {0});
  return m;
}

SymSequence SymSequence::tensor_unit(const CoefficientRing& ring, int max_arity) {
  SymSequence m(ring, max_arity);
  m.set_component(0, {}, {0}, {0});
  return m;
}

SymSequence SymSequence::direct_sum(const SymSequence& a, const SymSequence& b) {
  if (a.ring() != b.ring()) throw std::invalid_argument("direct sum over different rings");
  const int mx = std::min(a.max_arity(), b.max_arity());
  SymSequence s(a.ring(), mx);
  for (int r = 0; r <= mx; ++r) {
    const int ra = a.rank(r), rb = b.rank(r);
    if (ra + rb == 0) continue;
    std::vector<ExactMatrix> gens;
    for (int k = 0; k + 1 < r; ++k) {
      ExactMatrix g(a.ring(), ra + rb, ra + rb);
      if (ra)
        for (int c = 0; c < ra; ++c)
          for (const auto& [i, x] : a.generator(r, k).column(c)) g.set(i, c, x);
      if (rb)
        for (int c = 0; c < rb; ++c)
          for (const auto& [i, x] : b.generator(r, k).column(c)) g.set(ra + i, ra + c, x);
      gens.push_back(std::move(g));
    }
    std::vector<int> deg, wt;
    for (int i = 0; i < ra; ++i) {
      deg.push_back(a.degree(r, i));
      wt.push_back(a.weight(r, i));
    }
    for (int i = 0; i < rb; ++i) {
      deg.push_back(b.degree(r, i));
      wt.push_back(b.weight(r, i));
    }
    s.set_component(r, std::move(gens), std::move(deg), std::move(wt));
  }
  return s;
}

Scalar character(const SymSequence& m, int r, const Permutation& w) {
  if (m.rank(r) == 0) return Scalar(0);
  return m.action(r, w).trace();
}

SymSequence dual_module(const SymSequence& m) {
  SymSequence d(m.ring(), m.max_arity());
  for (int r = 0; r <= m.max_arity(); ++r) {
    if (m.rank(r) == 0) continue;
    std::vector<ExactMatrix> gens;
    // Transpositions are involutions, so the inverse transpose is the transpose.
    for (int k = 0; k + 1 < r; ++k) gens.push_back(m.generator(r, k).transpose());
    std::vector<int> deg = m.degrees(r);
    for (int& x : deg) x = -x;
    d.set_component(r, std::move(gens), std::move(deg), m.weights(r));
  }
  return d;
}

SymSequence sign_twist(const SymSequence& m) {
  SymSequence d(m.ring(), m.max_arity());
  for (int r = 0; r <= m.max_arity(); ++r) {
    if (m.rank(r) == 0) continue;
    std::vector<ExactMatrix> gens;
    for (int k = 0; k + 1 < r; ++k) {
      const ExactMatrix& g = m.generator(r, k);
      gens.push_back(ExactMatrix(m.ring(), g.rows(), g.cols()) - g);
    }
    d.set_component(r, std::move(gens), m.degrees(r), m.weights(r));
  }
  return d;
}

Permutation induced_permutation(const Permutation& w, Mask subset) {
  const auto elems = comb::elements(subset);
  std::vector<long> keys;
  for (int i : elems) keys.push_back(w(i));
  return comb::rank_permutation(keys);
}

int koszul_sign(const std::vector<int>& degrees, const std::vector<int>& new_position) {
  int s = 1;
  for (std::size_t i = 0; i < degrees.size(); ++i)
    for (std::size_t j = i + 1; j < degrees.size(); ++j)
      if (new_position[i] > new_position[j] && (degrees[i] & 1) && (degrees[j] & 1)) s = -s;
  return s;
}

namespace {

Mask complement(Mask m, int n) { return comb::full_mask(n) & ~m; }

/// Adds the expanded tensor product of sparse factors, scaled by c, into acc under the index function.
template <class Index>
void expand_tensor(const std::vector<SparseVec>& factors, const Scalar& c, linalg::VecBuilder& acc, Index&& index) {
  std::vector<int> choice(factors.size(), 0);
  for (const auto& f : factors)
    if (f.empty()) return;
  for (;;) {
    Scalar coeff = c;
    std::vector<int> idx(factors.size());
    for (std::size_t k = 0; k < factors.size(); ++k) {
      const auto& [i, x] = factors[k][static_cast<std::size_t>(choice[k])];
      coeff *= x;
      idx[k] = i;
    }
    acc.add(index(idx), coeff);
    std::size_t k = 0;
    while (k < factors.size() && ++choice[k] == static_cast<int>(factors[k].size())) choice[k++] = 0;
    if (k == factors.size()) return;
  }
}

SparseVec unit_vec(int i) { return SparseVec{{i, Scalar(1)}}; }

}  // namespace

std::vector<TensorBasisElement> tensor_basis(const SymSequence& m, const SymSequence& n, int arity) {
  std::vector<TensorBasisElement> out;
  for (Mask first = 0; first <= comb::full_mask(arity); ++first) {
    const int p = comb::popcount(first);
    for (int a = 0; a < m.rank(p); ++a)
      for (int b = 0; b < n.rank(arity - p); ++b) out.push_back({first, a, b});
    if (first == comb::full_mask(arity)) break;
  }
  return out;
}

SymSequence tensor_modules(const SymSequence& m, const SymSequence& n) {
  if (m.ring() != n.ring()) throw std::invalid_argument("tensor product over different rings");
  const CoefficientRing& ring = m.ring();
  const int mx = std::min(m.max_arity(), n.max_arity());
  SymSequence t(ring, mx);
  for (int r = 0; r <= mx; ++r) {
    const auto basis = tensor_basis(m, n, r);
    if (basis.empty()) continue;
    std::map<std::tuple<Mask, int, int>, int> index;
    for (std::size_t j = 0; j < basis.size(); ++j) index[{basis[j].first, basis[j].a, basis[j].b}] = static_cast<int>(j);
    std::vector<ExactMatrix> gens;
    for (int k = 0; k + 1 < r; ++k) {
      const Permutation w = Permutation::adjacent(r, k);
      ExactMatrix g(ring, static_cast<int>(basis.size()), static_cast<int>(basis.size()));
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const auto& e = basis[j];
        const Mask f2 = comb::permute_mask(w, e.first);
        const int p = comb::popcount(e.first);
        const SparseVec va = m.act(p, induced_permutation(w, e.first), unit_vec(e.a));
        const SparseVec vb = n.act(r - p, induced_permutation(w, complement(e.first, r)), unit_vec(e.b));
        linalg::VecBuilder acc(ring);
        expand_tensor({va, vb}, Scalar(1), acc, [&](const std::vector<int>& ix) { return index.at({f2, ix[0], ix[1]}); });
        g.set_column(static_cast<int>(j), acc.take());
      }
      gens.push_back(std::move(g));
    }
    std::vector<int> deg, wt;
    for (const auto& e : basis) {
      const int p = comb::popcount(e.first);
      deg.push_back(m.degree(p, e.a) + n.degree(r - p, e.b));
      wt.push_back(m.weight(p, e.a) + n.weight(r - p, e.b));
    }
    t.set_component(r, std::move(gens), std::move(deg), std::move(wt));
  }
  return t;
}

ExactMatrix tensor_symmetry(const SymSequence& m, const SymSequence& n, int arity) {
  const auto src = tensor_basis(m, n, arity);
  const auto dst = tensor_basis(n, m, arity);
  std::map<std::tuple<Mask, int, int>, int> index;
  for (std::size_t j = 0; j < dst.size(); ++j) index[{dst[j].first, dst[j].a, dst[j].b}] = static_cast<int>(j);
  ExactMatrix s(m.ring(), static_cast<int>(dst.size()), static_cast<int>(src.size()));
  for (std::size_t j = 0; j < src.size(); ++j) {
    const auto& e = src[j];
    const int p = comb::popcount(e.first);
    const bool odd = (m.degree(p, e.a) & 1) && (n.degree(arity - p, e.b) & 1);
    s.set(index.at({complement(e.first, arity), e.b, e.a}), static_cast<int>(j), m.ring().from_int(odd ? -1 : 1));
  }
  return s;
}

std::vector<CompositeBasisElement> composite_basis(const SymSequence& m, const SymSequence& n, int arity) {
  if (n.rank(0) != 0) throw std::invalid_argument("composition needs a connected right factor");
  std::vector<CompositeBasisElement> out;
  if (arity == 0) {
    for (int a = 0; a < m.rank(0); ++a) out.push_back({SetPartition(0, {}), a, {}});
    return out;
  }
  for (const auto& part : comb::enumerate_partitions(arity)) {
    const int r = part.size();
    if (m.rank(r) == 0) continue;
    std::vector<int> sizes;
    bool empty = false;
    for (Mask b : part.blocks()) {
      sizes.push_back(comb::popcount(b));
      if (n.rank(sizes.back()) == 0) empty = true;
    }
    if (empty) continue;
    for (int a = 0; a < m.rank(r); ++a) {
      std::vector<int> b(static_cast<std::size_t>(r), 0);
      for (;;) {
        out.push_back({part, a, b});
        std::size_t k = 0;
        while (k < b.size() && ++b[k] == n.rank(sizes[k])) b[k++] = 0;
        if (k == b.size()) break;
      }
    }
  }
  return out;
}

SymSequence compose_modules(const SymSequence& m, const SymSequence& n) {
  if (m.ring() != n.ring()) throw std::invalid_argument("composition over different rings");
  if (n.rank(0) != 0) throw std::invalid_argument("composition needs a connected right factor");
  const CoefficientRing& ring = m.ring();
  const int mx = std::min(m.max_arity(), n.max_arity());
  SymSequence out(ring, mx);
  for (int r = 0; r <= mx; ++r) {
    const auto basis = composite_basis(m, n, r);
    if (basis.empty()) continue;
    using Key = std::tuple<std::vector<Mask>, int, std::vector<int>>;
    std::map<Key, int> index;
    for (std::size_t j = 0; j < basis.size(); ++j) index[{basis[j].blocks.blocks(), basis[j].a, basis[j].b}] = static_cast<int>(j);
    std::vector<ExactMatrix> gens;
    for (int k = 0; k + 1 < r; ++k) {
      const Permutation w = Permutation::adjacent(r, k);
      ExactMatrix g(ring, static_cast<int>(basis.size()), static_cast<int>(basis.size()));
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const auto& e = basis[j];
        const int nb = e.blocks.size();
        std::vector<Mask> moved;
        std::vector<long> mins;
        for (Mask b : e.blocks.blocks()) {
          moved.push_back(comb::permute_mask(w, b));
          mins.push_back(comb::lowest(moved.back()));
        }
        const Permutation rho = comb::rank_permutation(mins);
        std::vector<Mask> new_blocks(static_cast<std::size_t>(nb));
        std::vector<SparseVec> factors(static_cast<std::size_t>(nb) + 1);
        std::vector<int> degs, pos;
        factors[0] = m.act(nb, rho, unit_vec(e.a));
        for (int q = 0; q < nb; ++q) {
          const Mask b = e.blocks.blocks()[static_cast<std::size_t>(q)];
          new_blocks[static_cast<std::size_t>(rho(q))] = moved[static_cast<std::size_t>(q)];
          factors[static_cast<std::size_t>(rho(q)) + 1] =
              n.act(comb::popcount(b), induced_permutation(w, b), unit_vec(e.b[static_cast<std::size_t>(q)]));
          degs.push_back(n.degree(comb::popcount(b), e.b[static_cast<std::size_t>(q)]));
          pos.push_back(rho(q));
        }
        const int sgn = koszul_sign(degs, pos);
        linalg::VecBuilder acc(ring);
        expand_tensor(factors, Scalar(sgn), acc, [&](const std::vector<int>& ix) {
          return index.at({new_blocks, ix[0], std::vector<int>(ix.begin() + 1, ix.end())});
        });
        g.set_column(static_cast<int>(j), acc.take());
      }
      gens.push_back(std::move(g));
    }
    std::vector<int> deg, wt;
    for (const auto& e : basis) {
      int d = m.degree(e.blocks.size(), e.a), s = m.weight(e.blocks.size(), e.a);
      for (int q = 0; q < e.blocks.size(); ++q) {
        const int sz = comb::popcount(e.blocks.blocks()[static_cast<std::size_t>(q)]);
        d += n.degree(sz, e.b[static_cast<std::size_t>(q)]);
        s += n.weight(sz, e.b[static_cast<std::size_t>(q)]);
      }
      deg.push_back(d);
      wt.push_back(s);
    }
    out.set_component(r, std::move(gens), std::move(deg), std::move(wt));
  }
  return out;
}

}  // namespace opk::operad
