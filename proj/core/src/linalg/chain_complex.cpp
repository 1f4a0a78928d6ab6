#include "opk/linalg/chain_complex.hpp"

#include <stdexcept>
#include <string>

#include "opk/linalg/elimination.hpp"

namespace opk::linalg {

ChainComplexData::ChainComplexData(const CoefficientRing& ring, int min_degree, std::vector<int> dims,
                                   std::map<int, ExactMatrix> boundaries, bool validate_now)
    : ring_(ring), min_degree_(min_degree), dims_(std::move(dims)), boundaries_(std::move(boundaries)) {
  if (validate_now) validate();
}

int ChainComplexData::dim(int d) const {
  if (d < min_degree_ || d > max_degree()) return 0;
  return dims_[static_cast<std::size_t>(d - min_degree_)];
}

ExactMatrix ChainComplexData::boundary(int d) const {
  auto it = boundaries_.find(d);
  if (it != boundaries_.end()) return it->second;
  return ExactMatrix(ring_, dim(d - 1), dim(d));
}

void ChainComplexData::validate() {
  for (const auto& [d, m] : boundaries_) {
    if (d <= min_degree_ || d > max_degree())
      throw std::invalid_argument("boundary outside the degree range at degree " + std::to_string(d));
    if (m.rows() != dim(d - 1) || m.cols() != dim(d))
      throw std::invalid_argument("boundary shape mismatch at degree " + std::to_string(d));
    if (m.ring() != ring_) throw std::invalid_argument("boundary ring mismatch at degree " + std::to_string(d));
  }
  for (int d = min_degree_ + 2; d <= max_degree(); ++d) {
    auto hi = boundaries_.find(d);
    auto lo = boundaries_.find(d - 1);
    if (hi == boundaries_.end() || lo == boundaries_.end()) continue;
    if (!(lo->second * hi->second).is_zero())
      throw std::invalid_argument("boundary does not square to zero at degree " + std::to_string(d));
  }
  validated_ = true;
}

void ChainComplexData::set_weights(int d, std::vector<int> w) {
  if (static_cast<int>(w.size()) != dim(d)) throw std::invalid_argument("weight labels do not match the dimension");
  weights_[d] = std::move(w);
}

const std::vector<int>* ChainComplexData::weights(int d) const {
  auto it = weights_.find(d);
  return it == weights_.end() ? nullptr : &it->second;
}

ChainComplexData ChainComplexData::change_ring(const CoefficientRing& ring) const {
  std::map<int, ExactMatrix> b;
  for (const auto& [d, m] : boundaries_) b.emplace(d, m.change_ring(ring));
  ChainComplexData c(ring, min_degree_, dims_, std::move(b), validated_);
  c.weights_ = weights_;
  return c;
}

std::vector<int> HomologySummary::support() const {
  std::vector<int> s;
  std::map<int, bool> seen;
  for (const auto& [d, b] : betti)
    if (b != 0) seen[d] = true;
  for (const auto& [d, t] : torsion)
    if (!t.empty()) seen[d] = true;
  for (const auto& [d, _] : seen) s.push_back(d);
  return s;
}

HomologySummary homology(const ChainComplexData& c) {
  if (!c.validated()) throw std::logic_error("homology of an unvalidated complex");
  HomologySummary h;
  const int lo = c.min_degree(), hi = c.max_degree();
  // rank_of[d] = rank of boundary(d); torsion from the invariant factors of boundary(d+1).
  std::map<int, int> rank_of;
  std::map<int, std::vector<Integer>> factors_of;
  for (int d = lo + 1; d <= hi; ++d) {
    const ExactMatrix b = c.boundary(d);
    if (c.ring().kind() == RingKind::Integers) {
      auto f = invariant_factors(b);
      rank_of[d] = static_cast<int>(f.size());
      std::vector<Integer> tors;
      for (auto& x : f)
        if (x != 1) tors.push_back(x);
      factors_of[d] = std::move(tors);
    } else {
      rank_of[d] = rank(b);
    }
  }
  for (int d = lo; d <= hi; ++d) {
    const int rd = rank_of.count(d) ? rank_of[d] : 0;
    const int rn = rank_of.count(d + 1) ? rank_of[d + 1] : 0;
    h.betti[d] = c.dim(d) - rd - rn;
    h.torsion[d] = factors_of.count(d + 1) ? factors_of[d + 1] : std::vector<Integer>{};
  }
  return h;
}

ChainComplexData dualize_complex(const ChainComplexData& c) {
  const int lo = -c.max_degree();
  std::vector<int> dims;
  for (int k = lo; k <= -c.min_degree(); ++k) dims.push_back(c.dim(-k));
  std::map<int, ExactMatrix> b;
  // The dual boundary in degree k is the transpose of boundary(1 - k).
  for (int k = lo + 1; k <= -c.min_degree(); ++k) b.emplace(k, c.boundary(1 - k).transpose());
  ChainComplexData out(c.ring(), lo, std::move(dims), std::move(b), c.validated());
  for (int k = lo; k <= -c.min_degree(); ++k)
    if (const auto* w = c.weights(-k)) out.set_weights(k, *w);
  return out;
}

long euler_characteristic(const ChainComplexData& c) {
  long e = 0;
  for (int d = c.min_degree(); d <= c.max_degree(); ++d) e += ((d % 2 == 0) ? 1 : -1) * static_cast<long>(c.dim(d));
  return e;
}

}  // namespace opk::linalg
