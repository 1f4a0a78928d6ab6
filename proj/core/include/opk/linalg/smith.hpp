#pragma once

#include <vector>

#include "opk/linalg/matrix.hpp"

namespace opk::linalg {

/** U * A * V = D with U, V unimodular and D in Smith normal form. */
struct SmithForm {
  ExactMatrix U;
  ExactMatrix D;
  ExactMatrix V;

  /// Nonzero diagonal entries of D in order.
  std::vector<Integer> diagonal() const;
};

/**
 * Dense Smith normal form over Z. Pivots are chosen by minimal absolute
 * value; all transformations are tracked. Throws for non-integer rings.
 */
SmithForm smith_normal_form(const ExactMatrix& a);

}  // namespace opk::linalg
