#pragma once

#include <string>

#include "opk/bar/bar_complex.hpp"

namespace opk::bar {

/// The four twisted complexes with trivial-unit coefficients.
enum class TwistKind {
  BarRight,     ///< B(I,P,P) = B̄(P) ∘ P
  BarLeft,      ///< B(P,P,I) = P ∘ B̄(P)
  KoszulRight,  ///< K(I,P,P) = K̄(P) ∘ P
  KoszulLeft,   ///< K(P,P,I) = P ∘ K̄(P)
};

/// Parses "bar-right", "bar-left", "koszul-right" or "koszul-left".
TwistKind parse_twist_kind(const std::string& s);
std::string to_string(TwistKind k);

/**
 * Twisted complex in arity n over the ring of P. The B-kinds carry the
 * bar differential on the B̄ factors plus the twist that strips one extremal
 * vertex and composes it into the adjacent P factor: a top vertex for the
 * right kinds, a root for the left kinds. The K-kinds are the subcomplexes
 * spanned by the K̄ factors. The result is validated (d∘d = 0). Arity 1 is
 * the unit in degree 0.
 */
ChainComplexData twisted_complex(OperadPtr p, TwistKind kind, int n);

}  // namespace opk::bar
