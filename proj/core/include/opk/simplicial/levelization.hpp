#pragma once

#include <map>
#include <string>
#include <vector>

#include "opk/bar/bar_complex.hpp"
#include "opk/simplicial/simplicial_bar.hpp"

namespace opk::simplicial {

/**
 * Levelization B̄(P)(n) -> N̄(P)(n): a tree goes to the sum of its
 * levelizations with one vertex per level, each signed by the permutation
 * taking canonical vertex order to level order.
 */
class Levelization {
 public:
  Levelization(OperadPtr p, int n);

  const bar::BarComplex& bar() const { return bar_; }
  const SimplicialBarComplex& simplicial() const { return simplicial_; }
  /// Matrix from B̄_d to N̄_d, 1 <= d <= n-1.
  const ExactMatrix& matrix(int d) const { return maps_.at(static_cast<std::size_t>(d)); }

 private:
  bar::BarComplex bar_;
  SimplicialBarComplex simplicial_;
  std::vector<ExactMatrix> maps_;
};

struct LevelizationReport {
  bool chain_map = true;
  bool injective = true;
  bool homology_iso = true;
  std::map<int, int> bar_betti;
  std::map<int, int> simplicial_betti;
  /// Rank of the induced map on homology per degree.
  std::map<int, int> induced_rank;
  std::string failure;
  bool ok() const { return chain_map && injective && homology_iso; }
};

/**
 * Verifies ∂φ = φβ, full column rank of φ, and that φ maps cycles onto
 * homology: rank[φZ | B] - rank B equals both Betti numbers, where Z spans
 * the bar cycles and B the simplicial boundaries. Ranks are over the
 * fraction field.
 */
LevelizationReport check_levelization(const Levelization& l);

}  // namespace opk::simplicial
