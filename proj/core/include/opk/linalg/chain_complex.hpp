#pragma once

#include <map>
#include <optional>
#include <vector>

#include "opk/linalg/matrix.hpp"

namespace opk::linalg {

/**
 * Finite chain complex of based free modules in a contiguous degree range.
 * boundary(d) maps degree d to degree d-1 (homological convention).
 * The constructor validates d∘d = 0.
 */
class ChainComplexData {
 public:
  ChainComplexData() = default;
  /// dims[k] is the rank in degree min_degree + k; boundaries[d] for min_degree < d <= max_degree.
  ChainComplexData(const CoefficientRing& ring, int min_degree, std::vector<int> dims, std::map<int, ExactMatrix> boundaries,
                   bool validate = true);

  const CoefficientRing& ring() const { return ring_; }
  int min_degree() const { return min_degree_; }
  int max_degree() const { return min_degree_ + static_cast<int>(dims_.size()) - 1; }
  int dim(int d) const;
  /// Zero matrix when no data is stored for degree d.
  ExactMatrix boundary(int d) const;
  bool validated() const { return validated_; }
  /// Checks d∘d = 0 and matrix shapes; marks the complex validated on success.
  void validate();

  /// Optional weight label per basis element in each degree.
  void set_weights(int d, std::vector<int> w);
  const std::vector<int>* weights(int d) const;

  /// Same complex with coefficients reduced or extended to another ring.
  ChainComplexData change_ring(const CoefficientRing& ring) const;

 private:
  CoefficientRing ring_;
  int min_degree_ = 0;
  std::vector<int> dims_;
  std::map<int, ExactMatrix> boundaries_;
  std::map<int, std::vector<int>> weights_;
  bool validated_ = false;
};

/** Betti numbers and torsion invariants by degree. */
struct HomologySummary {
  std::map<int, int> betti;
  std::map<int, std::vector<Integer>> torsion;

  /// Degrees with nonzero Betti number or torsion.
  std::vector<int> support() const;
  bool acyclic() const { return support().empty(); }
};

/// Homology of a validated complex; throws std::logic_error otherwise.
HomologySummary homology(const ChainComplexData& c);

/// Linear dual: degrees negated and boundaries transposed.
ChainComplexData dualize_complex(const ChainComplexData& c);

/// Alternating sum of dimensions.
long euler_characteristic(const ChainComplexData& c);

}  // namespace opk::linalg
