#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "opk/operad/monomial.hpp"

namespace opk::operad {

/// Declared generator: its basis occupies indices offset..offset+rank-1 of M(arity).
struct GeneratorDecl {
  std::string name;
  int arity = 0;
  int offset = 0;
  int rank = 0;
  std::string symmetry;
};

/// Relation: a combination of two-vertex monomials on a common leaf set {1..arity}.
struct Relation {
  int arity = 0;
  MonomialCombination terms;
};

/**
 * Quadratic presentation: generators M with M(0) = M(1) = 0 in weight 1 and
 * relations in F_(2)(M). Relations are stored as written; the quotient
 * takes their Sigma-closure.
 */
struct QuadraticPresentation {
  std::string name;
  SymSequence generators;
  std::vector<GeneratorDecl> decls;
  std::vector<Relation> relations;

  const CoefficientRing& ring() const { return generators.ring(); }
  int max_generator_arity() const { return generators.max_arity(); }
  /// Display name of basis element `label` of M(arity), e.g. "m" or "m.1".
  std::string basis_name(int arity, int label) const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& msg);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  int line_;
  int column_;
  std::string detail_;
};

/**
 * Parses the presentation language:
 *   operad <Name>
 *   gen <name> arity <k> [trivial|sign|regular|explicit <rank> <matrices>]
 *   rel <expr> (+|-) <expr> ...
 * Coefficients are integers or rationals and are reduced into `ring`.
 */
QuadraticPresentation parse_presentation(const std::string& text, const CoefficientRing& ring = CoefficientRing::rationals());

/// Built-in presets: "com", "assoc", "lie".
std::string preset_source(const std::string& name);
std::vector<std::string> preset_names();
QuadraticPresentation load_preset(const std::string& name, const CoefficientRing& ring = CoefficientRing::rationals());

/// Renders a presentation back into the language (explicit matrices where needed).
std::string to_dsl(const QuadraticPresentation& p);

/// Sigma-closed span of the relations of the given arity, as rows over the monomials of F_(2)(M)(arity).
std::vector<MonomialCombination> closed_relations(const QuadraticPresentation& p, int arity);

/**
 * Quadratic dual of a presentation with binary generators: generators
 * M^∨ ⊗ sgn and relations the annihilator of R(3) under the signed pairing
 * of F_(2)(M^∨)(3) with F_(2)(M)(3).
 */
QuadraticPresentation quadratic_dual(const QuadraticPresentation& p);

/// Sign of the pairing on the two-vertex tree whose upper vertex carries the given leaf mask in arity 3.
int dual_pairing_sign(Mask upper);

}  // namespace opk::operad
