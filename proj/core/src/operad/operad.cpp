#include "opk/operad/operad.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace opk::operad {

Operad::Operad(std::string name, SymSequence module, std::vector<std::vector<std::vector<ExactMatrix>>> composites,
               std::vector<std::vector<std::string>> labels)
    : name_(std::move(name)), module_(std::move(module)), comp_(std::move(composites)), labels_(std::move(labels)) {
  if (module_.rank(1) != 1 || module_.weight(1, 0) != 0) throw std::invalid_argument("arity 1 must hold exactly the unit");
  if (module_.rank(0) != 0) throw std::invalid_argument("operads here have no arity 0 part");
  labels_.resize(static_cast<std::size_t>(max_arity()) + 1);
  for (int n = 0; n <= max_arity(); ++n) labels_[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(rank(n)));
  if (labels_[1][0].empty()) labels_[1][0] = "1";
}

std::vector<int> Operad::positive_basis(int n) const {
  std::vector<int> out;
  for (int i = 0; i < rank(n); ++i)
    if (weight(n, i) > 0) out.push_back(i);
  return out;
}

const ExactMatrix& Operad::composite_matrix(int m, int i, int k) const {
  if (m < 2 || k < 2 || m + k - 1 > max_arity() || i < 1 || i > m) throw std::out_of_range("composite outside the truncation");
  return comp_[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)][static_cast<std::size_t>(i - 1)];
}

SparseVec Operad::compose_basis(int m, int a, int i, int k, int b) const {
  if (m == 1) return {{b, Scalar(1)}};
  if (k == 1) return {{a, Scalar(1)}};
  return composite_matrix(m, i, k).column(a * rank(k) + b);
}

SparseVec Operad::compose(int m, const SparseVec& x, int i, int k, const SparseVec& y) const {
  linalg::VecBuilder acc(ring());
  for (const auto& [a, s] : x)
    for (const auto& [b, t] : y) acc.add(compose_basis(m, a, i, k, b), s * t);
  return acc.take();
}

std::vector<Mask> Operad::merged_inputs(const std::vector<Mask>& outer, int j, const std::vector<Mask>& inner) {
  std::vector<Mask> out;
  for (int q = 0; q < static_cast<int>(outer.size()); ++q)
    if (q != j) out.push_back(outer[static_cast<std::size_t>(q)]);
  out.insert(out.end(), inner.begin(), inner.end());
  std::sort(out.begin(), out.end(), [](Mask a, Mask b) { return comb::lowest(a) < comb::lowest(b); });
  return out;
}

SparseVec Operad::substitute(const SparseVec& p, const std::vector<Mask>& outer, int j, const SparseVec& q,
                             const std::vector<Mask>& inner) const {
  const int m = static_cast<int>(outer.size()), k = static_cast<int>(inner.size());
  // Inputs of p ∘_{j+1} q in composite order, then relabeled to the order of minima.
  std::vector<long> keys;
  for (int t = 0; t < j; ++t) keys.push_back(comb::lowest(outer[static_cast<std::size_t>(t)]));
  for (Mask x : inner) keys.push_back(comb::lowest(x));
  for (int t = j + 1; t < m; ++t) keys.push_back(comb::lowest(outer[static_cast<std::size_t>(t)]));
  const SparseVec c = compose(m, p, j + 1, k, q);
  return act(m + k - 1, comb::rank_permutation(keys), c);
}

Permutation block_permutation(const Permutation& w, int i, const Permutation& u) {
  const int m = w.size(), k = u.size();
  const int p = i - 1;
  std::vector<int> img(static_cast<std::size_t>(m + k - 1));
  const int wp = w(p);
  for (int j = 0; j < m; ++j) {
    if (j == p) continue;
    const int src = j < p ? j : j + k - 1;
    const int dst = w(j) < wp ? w(j) : w(j) + k - 1;
    img[static_cast<std::size_t>(src)] = dst;
  }
  for (int t = 0; t < k; ++t) img[static_cast<std::size_t>(p + t)] = wp + u(t);
  return Permutation(std::move(img));
}

namespace {

Permutation random_permutation(int n, std::mt19937& rng) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation(std::move(v));
}

std::string where(int m, int a, int i, int k, int b) {
  return "arity " + std::to_string(m) + " element " + std::to_string(a) + " o_" + std::to_string(i) + " arity " +
         std::to_string(k) + " element " + std::to_string(b);
}

}  // namespace

AxiomReport check_operad_axioms(const Operad& p, int samples, unsigned seed) {
  AxiomReport rep;
  const int mx = p.max_arity();
  auto fail = [&](bool& flag, std::string msg) {
    flag = false;
    if (rep.failures.size() < 20) rep.failures.push_back(std::move(msg));
  };
  auto e = [](int i) { return SparseVec{{i, Scalar(1)}}; };

  for (int n = 2; n <= mx; ++n)
    for (int a = 0; a < p.rank(n); ++a) {
      if (p.compose(1, e(0), 1, n, e(a)) != e(a)) fail(rep.unit, "left unit at " + where(1, 0, 1, n, a));
      for (int i = 1; i <= n; ++i)
        if (p.compose(n, e(a), i, 1, e(0)) != e(a)) fail(rep.unit, "right unit at " + where(n, a, i, 1, 0));
    }

  for (int m = 2; m <= mx; ++m)
    for (int k = 2; m + k - 1 <= mx; ++k)
      for (int a = 0; a < p.rank(m); ++a)
        for (int b = 0; b < p.rank(k); ++b)
          for (int i = 1; i <= m; ++i)
            for (const auto& [c, x] : p.compose_basis(m, a, i, k, b)) {
              (void)x;
              if (p.weight(m + k - 1, c) != p.weight(m, a) + p.weight(k, b)) fail(rep.weights, "weight at " + where(m, a, i, k, b));
            }

  for (int m = 2; m <= mx; ++m)
    for (int k = 2; m + k - 1 <= mx; ++k)
      for (int l = 2; m + k + l - 2 <= mx; ++l)
        for (int a = 0; a < p.rank(m); ++a)
          for (int b = 0; b < p.rank(k); ++b)
            for (int c = 0; c < p.rank(l); ++c)
              for (int i = 1; i <= m; ++i) {
                const SparseVec xy = p.compose_basis(m, a, i, k, b);
                for (int j = 1; j <= m + k - 1; ++j) {
                  const SparseVec lhs = p.compose(m + k - 1, xy, j, l, e(c));
                  SparseVec rhs;
                  if (j < i) rhs = p.compose(m + l - 1, p.compose_basis(m, a, j, l, c), i + l - 1, k, e(b));
                  else if (j < i + k) rhs = p.compose(m, e(a), i, k + l - 1, p.compose_basis(k, b, j - i + 1, l, c));
                  else rhs = p.compose(m + l - 1, p.compose_basis(m, a, j - k + 1, l, c), i, k, e(b));
                  if (lhs != rhs) fail(rep.associativity, "associativity at " + where(m, a, i, k, b) + " then o_" + std::to_string(j));
                }
              }

  std::mt19937 rng(seed);
  for (int m = 2; m <= mx; ++m)
    for (int k = 2; m + k - 1 <= mx; ++k)
      for (int s = 0; s < samples; ++s) {
        const Permutation w = random_permutation(m, rng), u = random_permutation(k, rng);
        for (int i = 1; i <= m; ++i) {
          const Permutation big = block_permutation(w, i, u);
          for (int a = 0; a < p.rank(m); ++a)
            for (int b = 0; b < p.rank(k); ++b) {
              const SparseVec lhs = p.compose(m, p.act(m, w, e(a)), w(i - 1) + 1, k, p.act(k, u, e(b)));
              const SparseVec rhs = p.act(m + k - 1, big, p.compose_basis(m, a, i, k, b));
              if (lhs != rhs) fail(rep.equivariance, "equivariance at " + where(m, a, i, k, b) + " for " + w.to_string() + ", " + u.to_string());
            }
        }
      }
  return rep;
}

}  // namespace opk::operad
