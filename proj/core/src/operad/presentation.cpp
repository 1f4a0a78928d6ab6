#include "opk/operad/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "opk/linalg/elimination.hpp"

namespace opk::operad {

namespace {

const std::map<std::string, std::string>& presets() {
  static const std::map<std::string, std::string> table = {
#include "opk_presets.inc"
  };
  return table;
}

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int column = 0;
};

/// Splits one line into tokens; columns count code points from 1.
std::vector<Token> lex(const std::string& line, int lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  int col = 1;
  auto advance = [&](std::size_t bytes) {
    i += bytes;
    ++col;
  };
  while (i < line.size()) {
    const unsigned char c = static_cast<unsigned char>(line[i]);
    if (c == '#') break;
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    Token t;
    t.column = col;
    if (std::isalpha(c) || c == '_') {
      while (i < line.size() && (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_' || line[i] == '.')) {
        t.text += line[i];
        advance(1);
      }
      t.kind = Tok::Ident;
    } else if (std::isdigit(c)) {
      while (i < line.size() && (std::isdigit(static_cast<unsigned char>(line[i])) || line[i] == '/')) {
        t.text += line[i];
        advance(1);
      }
      t.kind = Tok::Number;
    } else if (line.compare(i, 3, "\xE2\x88\x92") == 0) {
      t.kind = Tok::Punct;
      t.text = "-";
      advance(3);
    } else if (std::string("(),*+-[]").find(static_cast<char>(c)) != std::string::npos) {
      t.kind = Tok::Punct;
      t.text = std::string(1, static_cast<char>(c));
      advance(1);
    } else {
      // Skip the remaining bytes of a multi-byte character so the column stays meaningful.
      throw ParseError(lineno, col, std::string("unexpected character '") + line.substr(i, c >= 0x80 ? 2 : 1) + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.column = col;
  out.push_back(end);
  return out;
}

Scalar parse_number(const Token& t, int line) {
  try {
    Scalar q(t.text);
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
    return q;
  } catch (const std::invalid_argument&) {
    throw ParseError(line, t.column, "malformed number '" + t.text + "'");
  }
}

bool is_leaf_name(const std::string& s) {
  if (s.size() < 2 || s[0] != 'x') return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

struct Node {
  int decl = -1;
  int basis = 0;
  int leaf = -1;
  int column = 0;
  std::vector<Node> args;
};

class LineParser {
 public:
  LineParser(std::vector<Token> toks, int line) : toks_(std::move(toks)), line_(line) {}

  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
  bool at_end() const { return peek().kind == Tok::End; }
  bool accept(const std::string& punct) {
    if (peek().kind == Tok::Punct && peek().text == punct) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(const std::string& punct) {
    if (!accept(punct)) fail("expected '" + punct + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(line_, t.column, msg + (t.kind == Tok::End ? " at end of line" : " near '" + t.text + "'"));
  }
  Token expect_ident() {
    if (peek().kind != Tok::Ident) fail("expected an identifier");
    return next();
  }
  int expect_int() {
    if (peek().kind != Tok::Number || peek().text.find('/') != std::string::npos) fail("expected an integer");
    const Token t = next();
    try {
      return std::stoi(t.text);
    } catch (const std::exception&) {
      throw ParseError(line_, t.column, "integer out of range");
    }
  }
  Scalar signed_number() {
    bool neg = false;
    while (peek().kind == Tok::Punct && (peek().text == "-" || peek().text == "+")) neg ^= next().text == "-";
    if (peek().kind != Tok::Number) fail("expected a number");
    Scalar q = parse_number(next(), line_);
    return neg ? Scalar(-q) : q;
  }
  int line() const { return line_; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_;
};

Scalar to_ring(const CoefficientRing& ring, const Scalar& q, int line, int column) {
  try {
    return ring.normalize(q);
  } catch (const std::exception&) {
    throw ParseError(line, column, "coefficient " + linalg::to_string(q) + " is not an element of " + ring.name());
  }
}

/// Dense matrix literal [[a,b],[c,d]] of the given size.
ExactMatrix parse_matrix(LineParser& p, const CoefficientRing& ring, int rank) {
  std::vector<std::vector<Scalar>> rows;
  const int col = p.peek().column;
  p.expect("[");
  do {
    p.expect("[");
    std::vector<Scalar> row;
    do {
      const int c = p.peek().column;
      row.push_back(to_ring(ring, p.signed_number(), p.line(), c));
    } while (p.accept(","));
    p.expect("]");
    rows.push_back(std::move(row));
  } while (p.accept(","));
  p.expect("]");
  if (static_cast<int>(rows.size()) != rank)
    throw ParseError(p.line(), col, "matrix needs " + std::to_string(rank) + " rows");
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != rank) throw ParseError(p.line(), col, "matrix needs " + std::to_string(rank) + " columns");
  return ExactMatrix::from_dense(ring, rows);
}

}  // namespace

ParseError::ParseError(int line, int column, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column),
      detail_(msg) {}

std::string QuadraticPresentation::basis_name(int arity, int label) const {
  for (const auto& d : decls)
    if (d.arity == arity && label >= d.offset && label < d.offset + d.rank)
      return d.rank == 1 ? d.name : d.name + "." + std::to_string(label - d.offset);
  return "g" + std::to_string(arity) + "." + std::to_string(label);
}

namespace {

struct PendingRelation {
  int line;
  std::vector<std::pair<Scalar, Node>> terms;
  std::vector<int> columns;
};

Node parse_application(LineParser& p, const std::map<std::string, int>& names, const std::vector<GeneratorDecl>& decls) {
  const Token id = p.expect_ident();
  Node n;
  n.column = id.column;
  if (is_leaf_name(id.text)) throw ParseError(p.line(), id.column, "expected a generator application, found variable " + id.text);
  std::string base = id.text;
  int basis = 0;
  const auto dot = id.text.find('.');
  if (dot != std::string::npos) {
    base = id.text.substr(0, dot);
    const std::string idx = id.text.substr(dot + 1);
    if (idx.empty() || !std::all_of(idx.begin(), idx.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw ParseError(p.line(), id.column, "malformed basis suffix in '" + id.text + "'");
    basis = std::stoi(idx);
  }
  auto it = names.find(base);
  if (it == names.end()) throw ParseError(p.line(), id.column, "unknown generator '" + base + "'");
  n.decl = it->second;
  n.basis = basis;
  if (basis >= decls[static_cast<std::size_t>(n.decl)].rank)
    throw ParseError(p.line(), id.column, "generator '" + base + "' has no basis element " + std::to_string(basis));
  p.expect("(");
  do {
    if (p.peek().kind == Tok::Ident && is_leaf_name(p.peek().text)) {
      const Token leaf = p.next();
      Node l;
      l.column = leaf.column;
      l.leaf = std::stoi(leaf.text.substr(1));
      if (l.leaf < 1 || l.leaf > 31) throw ParseError(p.line(), leaf.column, "variable index out of range");
      n.args.push_back(l);
    } else {
      n.args.push_back(parse_application(p, names, decls));
    }
  } while (p.accept(","));
  p.expect(")");
  const int want = decls[static_cast<std::size_t>(n.decl)].arity;
  if (static_cast<int>(n.args.size()) != want)
    throw ParseError(p.line(), n.column,
                     "generator '" + base + "' has arity " + std::to_string(want) + " but is applied to " + std::to_string(n.args.size()) +
                         " arguments");
  return n;
}

int count_applications(const Node& n) {
  if (n.decl < 0) return 0;
  int c = 1;
  for (const auto& a : n.args) c += count_applications(a);
  return c;
}

Mask collect_leaves(const Node& n, int line, Mask& seen) {
  if (n.decl < 0) {
    const Mask b = Mask(1) << (n.leaf - 1);
    if (seen & b) throw ParseError(line, n.column, "variable x" + std::to_string(n.leaf) + " occurs twice");
    seen |= b;
    return b;
  }
  Mask m = 0;
  for (const auto& a : n.args) m |= collect_leaves(a, line, seen);
  return m;
}

/// Expands an application tree into a combination of monomials.
MonomialCombination elaborate(const Node& root, const Scalar& coeff, const QuadraticPresentation& pres, int arity) {
  struct Vertex {
    Mask mask;
    SparseVec label;
  };
  std::vector<Vertex> verts;
  std::function<Mask(const Node&)> walk = [&](const Node& n) -> Mask {
    if (n.decl < 0) return Mask(1) << (n.leaf - 1);
    std::vector<long> mins;
    Mask all = 0;
    for (const auto& a : n.args) {
      const Mask m = walk(a);
      mins.push_back(comb::lowest(m));
      all |= m;
    }
    const auto& d = pres.decls[static_cast<std::size_t>(n.decl)];
    verts.push_back({all, pres.generators.act(d.arity, comb::rank_permutation(mins), {{d.offset + n.basis, Scalar(1)}})});
    return all;
  };
  walk(root);
  MonomialCombination out;
  for (const auto& [a, x] : verts[0].label)
    for (const auto& [b, y] : verts[1].label) {
      const Scalar c = pres.ring().normalize(coeff * x * y);
      if (c != 0) out.emplace_back(make_monomial(arity, {{verts[0].mask, a}, {verts[1].mask, b}}), c);
    }
  return out;
}

MonomialCombination normalize_terms(const MonomialCombination& terms, const CoefficientRing& ring) {
  std::map<Monomial, Scalar> acc;
  for (const auto& [m, c] : terms) acc[m] += c;
  MonomialCombination out;
  for (auto& [m, c] : acc) {
    Scalar y = ring.normalize(c);
    if (y != 0) out.emplace_back(m, y);
  }
  return out;
}

}  // namespace

QuadraticPresentation parse_presentation(const std::string& text, const CoefficientRing& ring) {
  QuadraticPresentation pres;
  pres.name = "unnamed";
  std::map<std::string, int> names;
  std::vector<SymSequence> reps;
  std::vector<PendingRelation> pending;
  bool named = false;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    LineParser p(lex(raw, lineno), lineno);
    if (p.at_end()) continue;
    const Token kw = p.expect_ident();
    if (kw.text == "operad") {
      if (named) throw ParseError(lineno, kw.column, "duplicate operad declaration");
      pres.name = p.expect_ident().text;
      named = true;
    } else if (kw.text == "gen") {
      const Token name = p.expect_ident();
      if (name.text.find('.') != std::string::npos || is_leaf_name(name.text))
        throw ParseError(lineno, name.column, "invalid generator name '" + name.text + "'");
      if (names.count(name.text)) throw ParseError(lineno, name.column, "duplicate generator '" + name.text + "'");
      const Token ak = p.expect_ident();
      if (ak.text != "arity") throw ParseError(lineno, ak.column, "expected 'arity'");
      const int acol = p.peek().column;
      const int k = p.expect_int();
      if (k < 2) throw ParseError(lineno, acol, "generators need arity at least 2");
      if (k > 12) throw ParseError(lineno, acol, "generator arity too large");
      std::string sym = "regular";
      SymSequence rep;
      if (!p.at_end()) sym = p.expect_ident().text;
      if (sym == "trivial") rep = SymSequence::trivial(ring, k, k);
      else if (sym == "sign") rep = SymSequence::sign(ring, k, k);
      else if (sym == "regular") rep = SymSequence::regular(ring, k, k);
      else if (sym == "explicit") {
        const int rcol = p.peek().column;
        const int rank = p.expect_int();
        if (rank < 1) throw ParseError(lineno, rcol, "explicit representations need rank at least 1");
        std::vector<ExactMatrix> mats;
        for (int j = 0; j + 1 < k; ++j) mats.push_back(parse_matrix(p, ring, rank));
        rep = SymSequence(ring, k);
        rep.set_component(k, std::move(mats), std::vector<int>(static_cast<std::size_t>(rank), 0),
                          std::vector<int>(static_cast<std::size_t>(rank), 1));
        if (!rep.check_coxeter(k)) throw ParseError(lineno, rcol, "explicit matrices violate the Coxeter relations");
      } else {
        throw ParseError(lineno, p.peek().column - 1, "unknown symmetry '" + sym + "'");
      }
      if (!p.at_end()) p.fail("unexpected trailing input");
      names[name.text] = static_cast<int>(pres.decls.size());
      pres.decls.push_back({name.text, k, 0, rep.rank(k), sym});
      reps.push_back(std::move(rep));
    } else if (kw.text == "rel") {
      PendingRelation rel;
      rel.line = lineno;
      bool first = true;
      while (!p.at_end()) {
        Scalar sign(1);
        if (p.accept("-")) sign = -1;
        else if (!p.accept("+") && !first) p.fail("expected '+' or '-'");
        first = false;
        Scalar coeff(1);
        const int tcol = p.peek().column;
        if (p.peek().kind == Tok::Number) {
          coeff = parse_number(p.next(), lineno);
          p.expect("*");
        }
        rel.terms.emplace_back(sign * coeff, parse_application(p, names, pres.decls));
        rel.columns.push_back(tcol);
      }
      if (rel.terms.empty()) throw ParseError(lineno, kw.column, "empty relation");
      pending.push_back(std::move(rel));
    } else {
      throw ParseError(lineno, kw.column, "unknown declaration '" + kw.text + "'");
    }
  }

  // Generators of equal arity are stacked in declaration order.
  int max_arity = 2;
  for (const auto& d : pres.decls) max_arity = std::max(max_arity, d.arity);
  pres.generators = SymSequence(ring, max_arity);
  for (std::size_t j = 0; j < reps.size(); ++j) {
    const int k = pres.decls[j].arity;
    int offset = 0;
    for (std::size_t i = 0; i < j; ++i)
      if (pres.decls[i].arity == k) offset += pres.decls[i].rank;
    pres.decls[j].offset = offset;
    SymSequence widened(ring, max_arity);
    std::vector<ExactMatrix> g;
    for (int s = 0; s + 1 < k; ++s) g.push_back(reps[j].generator(k, s));
    widened.set_component(k, std::move(g), reps[j].degrees(k), reps[j].weights(k));
    pres.generators = SymSequence::direct_sum(pres.generators, widened);
  }

  for (const auto& rel : pending) {
    Relation r;
    r.arity = -1;
    MonomialCombination terms;
    for (std::size_t t = 0; t < rel.terms.size(); ++t) {
      const auto& [c, node] = rel.terms[t];
      const int col = rel.columns[t];
      if (count_applications(node) != 2)
        throw ParseError(rel.line, col, "each monomial needs exactly two generator applications");
      Mask seen = 0;
      const Mask leaves = collect_leaves(node, rel.line, seen);
      const int n = comb::popcount(leaves);
      if (leaves != comb::full_mask(n)) throw ParseError(rel.line, col, "variables must be x1..x" + std::to_string(n) + ", each once");
      if (r.arity >= 0 && r.arity != n) throw ParseError(rel.line, col, "relation is not arity-homogeneous");
      r.arity = n;
      const Scalar cr = to_ring(ring, c, rel.line, col);
      for (auto& term : elaborate(node, cr, pres, n)) terms.push_back(std::move(term));
    }
    r.terms = normalize_terms(terms, ring);
    pres.relations.push_back(std::move(r));
  }
  return pres;
}

std::string preset_source(const std::string& name) {
  auto it = presets().find(name);
  if (it == presets().end()) throw std::invalid_argument("unknown preset '" + name + "'");
  return it->second;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : presets()) out.push_back(k);
  return out;
}

QuadraticPresentation load_preset(const std::string& name, const CoefficientRing& ring) {
  return parse_presentation(preset_source(name), ring);
}

std::string to_dsl(const QuadraticPresentation& p) {
  std::ostringstream os;
  os << "operad " << p.name << "\n";
  for (const auto& d : p.decls) {
    os << "gen " << d.name << " arity " << d.arity << " ";
    if (d.symmetry == "trivial" || d.symmetry == "sign" || d.symmetry == "regular") {
      os << d.symmetry;
    } else {
      os << "explicit " << d.rank;
      for (int s = 0; s + 1 < d.arity; ++s) {
        const ExactMatrix& g = p.generators.generator(d.arity, s);
        os << " [";
        for (int i = 0; i < d.rank; ++i) {
          os << (i ? ",[" : "[");
          for (int j = 0; j < d.rank; ++j) os << (j ? "," : "") << linalg::to_string(g.at(d.offset + i, d.offset + j));
          os << "]";
        }
        os << "]";
      }
    }
    os << "\n";
  }
  const auto names = [&](int k, int l) { return p.basis_name(k, l); };
  for (const auto& r : p.relations) {
    if (r.terms.empty()) continue;
    os << "rel";
    bool first = true;
    for (const auto& [m, c] : r.terms) {
      Scalar a = c;
      bool neg = a < 0;
      if (p.ring().kind() == linalg::RingKind::PrimeField) neg = false;
      if (neg) a = -a;
      os << (first ? (neg ? " -" : "") : (neg ? " - " : " + "));
      if (first && !neg) os << " ";
      if (a != 1) os << linalg::to_string(a) << "*";
      os << to_expression(m, names);
      first = false;
    }
    os << "\n";
  }
  return os.str();
}

std::vector<MonomialCombination> closed_relations(const QuadraticPresentation& p, int arity) {
  const auto monos = enumerate_monomials(p.generators, arity, 2);
  std::map<Monomial, int> index;
  for (std::size_t j = 0; j < monos.size(); ++j) index[monos[j]] = static_cast<int>(j);
  const auto perms = comb::all_permutations(arity);
  std::vector<SparseVec> vecs;
  for (const auto& r : p.relations) {
    if (r.arity != arity) continue;
    for (const auto& w : perms) {
      linalg::VecBuilder acc(p.ring());
      for (const auto& [m, c] : r.terms)
        for (const auto& [m2, c2] : act_monomial(p.generators, m, w)) acc.add(index.at(m2), c * c2);
      vecs.push_back(acc.take());
    }
  }
  const auto ech = linalg::row_echelon(p.ring(), vecs, false);
  std::vector<MonomialCombination> out;
  for (const auto& row : ech.rows) {
    MonomialCombination terms;
    for (const auto& [j, c] : row) terms.emplace_back(monos[static_cast<std::size_t>(j)], c);
    out.push_back(std::move(terms));
  }
  return out;
}

int dual_pairing_sign(Mask upper) {
  // The upper vertex on {1,2} carries -1, on {1,3} and {2,3} carries +1.
  if (upper == 0b011) return -1;
  if (upper == 0b101 || upper == 0b110) return 1;
  throw std::invalid_argument("not a two-vertex tree of arity 3");
}

QuadraticPresentation quadratic_dual(const QuadraticPresentation& p) {
  for (const auto& d : p.decls)
    if (d.arity != 2) throw std::invalid_argument("quadratic duality needs binary generators");
  for (const auto& r : p.relations)
    if (r.arity != 3) throw std::invalid_argument("quadratic duality needs relations of arity 3");
  const CoefficientRing& ring = p.ring();
  QuadraticPresentation d;
  d.name = p.name + "_dual";
  d.generators = sign_twist(dual_module(p.generators));
  for (auto decl : p.decls) {
    decl.name += "_dual";
    if (decl.symmetry == "trivial") decl.symmetry = "sign";
    else if (decl.symmetry == "sign") decl.symmetry = "trivial";
    else decl.symmetry = "explicit";
    d.decls.push_back(decl);
  }
  // Both free operads share the monomial index set: the dual basis is indexed like the original one.
  const auto monos = enumerate_monomials(p.generators, 3, 2);
  std::map<Monomial, int> index;
  for (std::size_t j = 0; j < monos.size(); ++j) index[monos[j]] = static_cast<int>(j);
  const auto rels = closed_relations(p, 3);
  ExactMatrix pairing(ring, static_cast<int>(rels.size()), static_cast<int>(monos.size()));
  for (std::size_t i = 0; i < rels.size(); ++i)
    for (const auto& [m, c] : rels[i]) pairing.set(static_cast<int>(i), index.at(m), ring.mul(c, ring.from_int(dual_pairing_sign(m.masks[1]))));
  const ExactMatrix ann = linalg::kernel_basis(pairing);
  for (int j = 0; j < ann.cols(); ++j) {
    Relation r;
    r.arity = 3;
    for (const auto& [i, c] : ann.column(j)) r.terms.emplace_back(monos[static_cast<std::size_t>(i)], c);
    d.relations.push_back(std::move(r));
  }
  return d;
}

}  // namespace opk::operad
