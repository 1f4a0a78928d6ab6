#include "opk/simplicial/partition_complex.hpp"

#include <stdexcept>

#include "opk/linalg/elimination.hpp"

namespace opk::simplicial {

using bar::inputs_of;
using comb::SetPartition;
using linalg::VecBuilder;

PartitionComplex::PartitionComplex(int r, const CoefficientRing& ring) : r_(r), ring_(ring) {
  if (r < 2) throw std::invalid_argument("partition complexes need r >= 2");
  basis_.resize(static_cast<std::size_t>(r));
  index_.resize(static_cast<std::size_t>(r));
  for (int d = 1; d < r; ++d) {
    basis_[static_cast<std::size_t>(d)] = comb::enumerate_strict_chains(r, d);
    const auto& b = basis_[static_cast<std::size_t>(d)];
    for (std::size_t j = 0; j < b.size(); ++j) index_[static_cast<std::size_t>(d)].emplace(b[j], static_cast<int>(j));
  }
  boundary_.resize(static_cast<std::size_t>(r));
  for (int d = 2; d < r; ++d) {
    ExactMatrix m(ring_, dim(d - 1), dim(d));
    const auto& b = basis(d);
    for (std::size_t j = 0; j < b.size(); ++j) {
      VecBuilder acc(ring_);
      for (int i = 1; i < d; ++i) {
        PartitionChain c = b[j];
        c.erase(c.begin() + i);
        acc.add(index(d - 1, c), ring_.from_int(i % 2 ? -1 : 1));
      }
      m.set_column(static_cast<int>(j), acc.take());
    }
    boundary_[static_cast<std::size_t>(d)] = std::move(m);
  }
}

int PartitionComplex::dim(int d) const {
  if (d < 1 || d >= r_) return 0;
  return static_cast<int>(basis_[static_cast<std::size_t>(d)].size());
}

int PartitionComplex::index(int d, const PartitionChain& c) const {
  if (d < 1 || d >= r_) return -1;
  const auto& m = index_[static_cast<std::size_t>(d)];
  auto it = m.find(c);
  return it == m.end() ? -1 : it->second;
}

ChainComplexData PartitionComplex::complex() const {
  std::vector<int> dims;
  std::map<int, ExactMatrix> bd;
  for (int d = 1; d < r_; ++d) dims.push_back(dim(d));
  for (int d = 2; d < r_; ++d) bd.emplace(d, boundary(d));
  return ChainComplexData(ring_, 1, std::move(dims), std::move(bd));
}

ExactMatrix PartitionComplex::action(int d, const Permutation& w) const {
  ExactMatrix m(ring_, dim(d), dim(d));
  const auto& b = basis(d);
  for (std::size_t j = 0; j < b.size(); ++j) {
    PartitionChain c;
    for (const auto& p : b[j]) c.push_back(comb::permute_partition(w, p));
    m.set(index(d, c), static_cast<int>(j), ring_.from_int(1));
  }
  return m;
}

PartitionChain partition_chain(const LevelCell& c) {
  const int n = c.tree.arity;
  int d = 0;
  for (int l : c.levels) d = std::max(d, l);
  PartitionChain out{SetPartition::one_block(n)};
  for (int k = 1; k <= d; ++k) {
    std::vector<Mask> blocks;
    for (int v = 0; v < c.tree.weight(); ++v) {
      if (c.levels[static_cast<std::size_t>(v)] > k) continue;
      for (Mask x : inputs_of(c.tree.masks, c.tree.masks[static_cast<std::size_t>(v)])) {
        bool low_vertex = false;
        for (int q = 0; q < c.tree.weight(); ++q)
          if (c.tree.masks[static_cast<std::size_t>(q)] == x && c.levels[static_cast<std::size_t>(q)] <= k) low_vertex = true;
        if (!low_vertex) blocks.push_back(x);
      }
    }
    out.emplace_back(n, std::move(blocks));
  }
  return out;
}

PartitionIsoReport check_partition_isomorphism(OperadPtr com, int r) {
  PartitionIsoReport rep;
  const SimplicialBarComplex nbar(com, r);
  const PartitionComplex pc(r, com->ring());
  const auto& ring = com->ring();
  std::vector<ExactMatrix> iso(static_cast<std::size_t>(r));
  for (int d = 1; d < r; ++d) {
    ExactMatrix m(ring, pc.dim(d), nbar.dim(d));
    std::vector<bool> hit(static_cast<std::size_t>(pc.dim(d)), false);
    for (int j = 0; j < nbar.dim(d); ++j) {
      const int i = pc.index(d, partition_chain(nbar.basis(d).at(j)));
      if (i < 0 || hit[static_cast<std::size_t>(i)]) {
        rep.bijective = false;
        if (rep.failure.empty()) rep.failure = "cell without a distinct chain: " + describe(*com, nbar.basis(d).at(j));
        continue;
      }
      hit[static_cast<std::size_t>(i)] = true;
      m.set(i, j, ring.from_int(1));
    }
    if (pc.dim(d) != nbar.dim(d)) {
      rep.bijective = false;
      if (rep.failure.empty()) rep.failure = "dimension mismatch in degree " + std::to_string(d);
    }
    iso[static_cast<std::size_t>(d)] = std::move(m);
  }
  if (!rep.bijective) return rep;
  for (int d = 2; d < r; ++d)
    if (pc.boundary(d) * iso[static_cast<std::size_t>(d)] != iso[static_cast<std::size_t>(d - 1)] * nbar.boundary(d)) {
      rep.chain_map = false;
      if (rep.failure.empty()) rep.failure = "boundaries disagree in degree " + std::to_string(d);
    }
  for (int k = 0; k + 1 < r; ++k) {
    const Permutation w = Permutation::adjacent(r, k);
    for (int d = 1; d < r; ++d)
      if (pc.action(d, w) * iso[static_cast<std::size_t>(d)] != iso[static_cast<std::size_t>(d)] * nbar.action(d, w)) {
        rep.equivariant = false;
        if (rep.failure.empty()) rep.failure = "actions disagree in degree " + std::to_string(d);
      }
  }
  return rep;
}

std::vector<std::pair<Permutation, Scalar>> top_homology_character(int r) {
  const PartitionComplex pc(r);
  const int top = r - 1;
  const ExactMatrix cycles = top >= 2 ? linalg::kernel_basis(pc.boundary(top)) : ExactMatrix::identity(pc.ring(), pc.dim(top));
  const linalg::SpanSolver solver(cycles);
  std::vector<std::pair<Permutation, Scalar>> out;
  for (const auto& w : comb::conjugacy_class_representatives(r))
    out.emplace_back(w, solver.solve_columns(pc.action(top, w) * cycles).trace());
  return out;
}

}  // namespace opk::simplicial
