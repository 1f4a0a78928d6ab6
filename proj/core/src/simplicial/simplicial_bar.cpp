#include "opk/simplicial/simplicial_bar.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

#include "opk/trees/tree.hpp"

namespace opk::simplicial {

using bar::inputs_of;
using bar::parent_of;
using bar::positions_in;
using linalg::VecBuilder;
using operad::make_monomial;
using operad::MonomialHash;

std::size_t LevelCellHash::operator()(const LevelCell& c) const {
  std::size_t h = MonomialHash{}(c.tree);
  for (int l : c.levels) h = h * 1000003u ^ static_cast<std::size_t>(l);
  return h;
}

bool levels_nonempty(const LevelCell& c, int last) {
  std::vector<bool> seen(static_cast<std::size_t>(last) + 1, false);
  for (int l : c.levels)
    if (l >= 1 && l <= last) seen[static_cast<std::size_t>(l)] = true;
  for (int l = 1; l <= last; ++l)
    if (!seen[static_cast<std::size_t>(l)]) return false;
  return true;
}

namespace {

/// Calls f on every assignment of choices[k][*] to slot k.
void odometer(const std::vector<std::vector<int>>& choices, const std::function<void(const std::vector<int>&)>& f) {
  for (const auto& c : choices)
    if (c.empty()) return;
  std::vector<std::size_t> at(choices.size(), 0);
  std::vector<int> cur(choices.size());
  while (true) {
    for (std::size_t i = 0; i < choices.size(); ++i) cur[i] = choices[i][at[i]];
    f(cur);
    int i = static_cast<int>(choices.size()) - 1;
    while (i >= 0 && ++at[static_cast<std::size_t>(i)] == choices[static_cast<std::size_t>(i)].size()) at[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return;
  }
}

/// Vertex with a label vector, used while composing levels.
struct WorkVertex {
  Mask mask;
  int level;
  SparseVec label;
};

/// Re-sorts working vertices into canonical order and expands the tensor product of labels.
LevelCombination expand(const CoefficientRing& ring, int n, const std::vector<WorkVertex>& vs, const Scalar& coeff) {
  std::vector<std::pair<Mask, int>> shape;
  std::vector<Mask> order;
  for (const auto& v : vs) {
    shape.emplace_back(v.mask, 0);
    order.push_back(v.mask);
  }
  LevelCell cell{make_monomial(n, shape), std::vector<int>(vs.size())};
  const auto pos = positions_in(order, cell.tree.masks);
  for (std::size_t v = 0; v < vs.size(); ++v) cell.levels[static_cast<std::size_t>(pos[v])] = vs[v].level;
  LevelCombination out;
  std::vector<std::vector<int>> slots;
  for (const auto& v : vs) {
    std::vector<int> s(v.label.size());
    for (std::size_t t = 0; t < s.size(); ++t) s[t] = static_cast<int>(t);
    slots.push_back(std::move(s));
  }
  odometer(slots, [&](const std::vector<int>& at) {
    Scalar c = coeff;
    for (std::size_t v = 0; v < vs.size(); ++v) {
      const auto& [lab, x] = vs[v].label[static_cast<std::size_t>(at[v])];
      cell.tree.labels[static_cast<std::size_t>(pos[v])] = lab;
      c = ring.mul(c, x);
    }
    out.emplace_back(cell, c);
  });
  return out;
}

std::vector<WorkVertex> work_vertices(const LevelCell& c) {
  std::vector<WorkVertex> vs;
  for (int v = 0; v < c.tree.weight(); ++v)
    vs.push_back({c.tree.masks[static_cast<std::size_t>(v)], c.levels[static_cast<std::size_t>(v)],
                  {{c.tree.labels[static_cast<std::size_t>(v)], Scalar(1)}}});
  return vs;
}

/// Matrix of a cell operator between two based spaces; cells outside the target are dropped.
ExactMatrix cell_matrix(const CoefficientRing& ring, const CellSpace& from, const CellSpace& to,
                        const std::function<LevelCombination(const LevelCell&)>& op) {
  ExactMatrix m(ring, to.size(), from.size());
  for (int j = 0; j < from.size(); ++j) {
    VecBuilder acc(ring);
    for (const auto& [cell, x] : op(from.at(j))) {
      const int r = to.index(cell);
      if (r >= 0) acc.add(r, x);
    }
    m.set_column(j, acc.take());
  }
  return m;
}

LevelCombination single(std::optional<LevelCell> c) {
  if (!c) return {};
  return {{std::move(*c), Scalar(1)}};
}

}  // namespace

std::vector<LevelCell> enumerate_level_cells(const Operad& p, int n, int top) {
  std::vector<LevelCell> out;
  if (n == 1) {
    out.push_back({Monomial{1, {}, {}}, {}});
    return out;
  }
  for (int k = 1; k < n; ++k) {
    for (const auto& shape : trees::enumerate_reduced_trees(n, k)) {
      std::vector<std::pair<Mask, int>> vs;
      for (int q = 0; q < shape.size(); ++q) vs.emplace_back(shape.leaves(q), 0);
      Monomial t = make_monomial(n, vs);
      std::vector<int> parent(static_cast<std::size_t>(k));
      std::vector<std::vector<int>> labels;
      for (int v = 0; v < k; ++v) {
        parent[static_cast<std::size_t>(v)] = parent_of(t.masks, v);
        labels.push_back(p.positive_basis(static_cast<int>(inputs_of(t.masks, t.masks[static_cast<std::size_t>(v)]).size())));
      }
      // Parents precede children in canonical order, so levels can be assigned left to right.
      std::vector<int> lv(static_cast<std::size_t>(k));
      std::function<void(int)> assign = [&](int v) {
        if (v == k) {
          odometer(labels, [&](const std::vector<int>& ls) {
            t.labels = ls;
            out.push_back({t, lv});
          });
          return;
        }
        const int pa = parent[static_cast<std::size_t>(v)];
        for (int l = pa < 0 ? 1 : lv[static_cast<std::size_t>(pa)] + 1; l <= top; ++l) {
          lv[static_cast<std::size_t>(v)] = l;
          assign(v + 1);
        }
      };
      assign(0);
    }
  }
  return out;
}

LevelCombination merge_levels(const Operad& p, const LevelCell& c, int i) {
  auto vs = work_vertices(c);
  std::vector<bool> gone(vs.size(), false);
  for (std::size_t v = 0; v < vs.size(); ++v) {
    if (vs[v].level != i + 1) continue;
    const int u = parent_of(c.tree.masks, static_cast<int>(v));
    if (u < 0 || vs[static_cast<std::size_t>(u)].level != i) continue;
    // Inputs are read off the vertices still present.
    std::vector<Mask> live;
    for (std::size_t q = 0; q < vs.size(); ++q)
      if (!gone[q]) live.push_back(vs[q].mask);
    const auto in_u = inputs_of(live, vs[static_cast<std::size_t>(u)].mask);
    const auto in_v = inputs_of(live, vs[v].mask);
    const int j = static_cast<int>(std::find(in_u.begin(), in_u.end(), vs[v].mask) - in_u.begin());
    vs[static_cast<std::size_t>(u)].label = p.substitute(vs[static_cast<std::size_t>(u)].label, in_u, j, vs[v].label, in_v);
    gone[v] = true;
  }
  std::vector<WorkVertex> kept;
  for (std::size_t v = 0; v < vs.size(); ++v) {
    if (gone[v]) continue;
    if (vs[v].level > i) --vs[v].level;
    if (vs[v].label.empty()) return {};
    kept.push_back(std::move(vs[v]));
  }
  return expand(p.ring(), c.tree.arity, kept, p.ring().from_int(1));
}

std::optional<LevelCell> drop_empty_level(const LevelCell& c, int i) {
  for (int l : c.levels)
    if (l == i) return std::nullopt;
  LevelCell out = c;
  for (int& l : out.levels)
    if (l > i) --l;
  return out;
}

LevelCell insert_empty_level(const LevelCell& c, int j) {
  LevelCell out = c;
  for (int& l : out.levels)
    if (l > j) ++l;
  return out;
}

CellSpace::CellSpace(std::vector<LevelCell> cells) : cells_(std::move(cells)) {
  for (std::size_t j = 0; j < cells_.size(); ++j) index_.emplace(cells_[j], static_cast<int>(j));
}

int CellSpace::index(const LevelCell& c) const {
  auto it = index_.find(c);
  return it == index_.end() ? -1 : it->second;
}

SimplicialBarComplex::SimplicialBarComplex(OperadPtr p, int n, int max_dim) : p_(std::move(p)), n_(n) {
  if (!p_) throw std::invalid_argument("simplicial bar needs an operad");
  if (n < 1 || n > p_->max_arity()) throw std::invalid_argument("arity outside the truncation of the operad");
  max_dim_ = max_dim < 0 ? std::max(1, n - 1) : max_dim;
  if (max_dim_ < 1) throw std::invalid_argument("max_dim must be at least 1");
  for (int d = 0; d <= max_dim_; ++d) {
    std::vector<LevelCell> cells;
    for (auto& c : enumerate_level_cells(*p_, n, d))
      if (levels_nonempty(c, d)) cells.push_back(std::move(c));
    spaces_.emplace_back(std::move(cells));
  }
  boundary_.resize(static_cast<std::size_t>(max_dim_) + 1);
  for (int d = 1; d <= max_dim_; ++d) {
    ExactMatrix b(p_->ring(), dim(d - 1), dim(d));
    for (int i = 1; i < d; ++i) {
      const ExactMatrix f = face(d, i);
      b = i % 2 ? b - f : b + f;
    }
    boundary_[static_cast<std::size_t>(d)] = std::move(b);
  }
}

int SimplicialBarComplex::dim(int d) const {
  if (d < 0 || d > max_dim_) return 0;
  return spaces_[static_cast<std::size_t>(d)].size();
}

ExactMatrix SimplicialBarComplex::face(int d, int i) const {
  if (d < 2 || d > max_dim_ || i <= 0 || i >= d) throw std::out_of_range("normalized face index out of range");
  return cell_matrix(p_->ring(), basis(d), basis(d - 1), [&](const LevelCell& c) { return merge_levels(*p_, c, i); });
}

ChainComplexData SimplicialBarComplex::complex() const {
  const int lo = n_ == 1 ? 0 : 1;
  std::vector<int> dims;
  std::map<int, ExactMatrix> bd;
  for (int d = lo; d <= max_dim_; ++d) dims.push_back(dim(d));
  for (int d = lo + 1; d <= max_dim_; ++d) bd.emplace(d, boundary_[static_cast<std::size_t>(d)]);
  return ChainComplexData(p_->ring(), lo, std::move(dims), std::move(bd));
}

ExactMatrix SimplicialBarComplex::action(int d, const Permutation& w) const {
  const auto& ring = p_->ring();
  return cell_matrix(ring, basis(d), basis(d), [&](const LevelCell& c) {
    std::vector<WorkVertex> vs;
    for (int v = 0; v < c.tree.weight(); ++v) {
      const Mask m = c.tree.masks[static_cast<std::size_t>(v)];
      const auto in = inputs_of(c.tree.masks, m);
      std::vector<long> keys;
      for (Mask x : in) keys.push_back(comb::lowest(comb::permute_mask(w, x)));
      vs.push_back({comb::permute_mask(w, m), c.levels[static_cast<std::size_t>(v)],
                    p_->act(static_cast<int>(in.size()), comb::rank_permutation(keys), {{c.tree.labels[static_cast<std::size_t>(v)], Scalar(1)}})});
    }
    return expand(ring, n_, vs, ring.from_int(1));
  });
}

UnnormalizedModel::UnnormalizedModel(OperadPtr p, int n, Coefficients kind, int max_dim)
    : p_(std::move(p)), n_(n), kind_(kind), max_dim_(max_dim) {
  if (!p_) throw std::invalid_argument("simplicial model needs an operad");
  if (n < 1 || n > p_->max_arity()) throw std::invalid_argument("arity outside the truncation of the operad");
  if (max_dim < 0) throw std::invalid_argument("max_dim must be nonnegative");
  // One extra dimension so that degeneracies out of max_dim have a target.
  for (int d = 0; d <= max_dim + 2; ++d) spaces_.emplace_back(enumerate_level_cells(*p_, n, top_level(d)));
}

ExactMatrix UnnormalizedModel::face(int d, int i) const {
  if (d < 1 || i < 0 || i > d) throw std::out_of_range("face index out of range");
  return cell_matrix(p_->ring(), basis(d), basis(d - 1), [&](const LevelCell& c) -> LevelCombination {
    if (i == 0) return single(drop_empty_level(c, 1));
    if (i == d && kind_ == Coefficients::Trivial) return single(drop_empty_level(c, d));
    return merge_levels(*p_, c, i);
  });
}

ExactMatrix UnnormalizedModel::degeneracy(int d, int j) const {
  if (j < 0 || j > d) throw std::out_of_range("degeneracy index out of range");
  return cell_matrix(p_->ring(), basis(d), basis(d + 1), [&](const LevelCell& c) { return single(insert_empty_level(c, j)); });
}

ExactMatrix UnnormalizedModel::extra_degeneracy(int d) const {
  if (kind_ != Coefficients::Right) throw std::logic_error("the extra degeneracy needs right coefficients");
  return cell_matrix(p_->ring(), basis(d), basis(d + 1), [](const LevelCell& c) { return single(c); });
}

namespace {

void expect(IdentityReport& rep, const ExactMatrix& a, const ExactMatrix& b, const std::string& what) {
  ++rep.checked;
  if (rep.ok && a != b) {
    rep.ok = false;
    rep.failure = what;
  }
}

std::string name(const std::string& op, int i, int d) { return op + "_" + std::to_string(i) + " on degree " + std::to_string(d); }

}  // namespace

IdentityReport check_simplicial_identities(const UnnormalizedModel& m) {
  IdentityReport rep;
  const auto& ring = m.ring();
  for (int d = 2; d <= m.max_dim(); ++d)
    for (int j = 1; j <= d; ++j)
      for (int i = 0; i < j; ++i)
        expect(rep, m.face(d - 1, i) * m.face(d, j), m.face(d - 1, j - 1) * m.face(d, i),
               "d_i d_j = d_{j-1} d_i with " + name("d", i, d) + ", j = " + std::to_string(j));
  for (int d = 0; d < m.max_dim(); ++d)
    for (int j = 0; j <= d; ++j)
      for (int i = 0; i <= j; ++i)
        expect(rep, m.degeneracy(d + 1, i) * m.degeneracy(d, j), m.degeneracy(d + 1, j + 1) * m.degeneracy(d, i),
               "s_i s_j = s_{j+1} s_i with " + name("s", i, d) + ", j = " + std::to_string(j));
  for (int d = 0; d <= m.max_dim(); ++d)
    for (int j = 0; j <= d; ++j)
      for (int i = 0; i <= d + 1; ++i) {
        const ExactMatrix lhs = m.face(d + 1, i) * m.degeneracy(d, j);
        ExactMatrix rhs;
        if (i == j || i == j + 1)
          rhs = ExactMatrix::identity(ring, m.dim(d));
        else if (i < j)
          rhs = m.degeneracy(d - 1, j - 1) * m.face(d, i);
        else
          rhs = m.degeneracy(d - 1, j) * m.face(d, i - 1);
        expect(rep, lhs, rhs, "d_i s_j with i = " + std::to_string(i) + ", " + name("s", j, d));
      }
  return rep;
}

IdentityReport extra_degeneracy_check(OperadPtr p, int n, int max_dim) {
  if (max_dim < 0) max_dim = std::max(1, n - 1);
  const auto& ring = p->ring();
  const UnnormalizedModel m(p, n, Coefficients::Right, max_dim + 1);
  // Normalized chains: bar levels 1..d nonempty.
  std::vector<CellSpace> norm;
  for (int d = 0; d <= max_dim + 1; ++d) {
    std::vector<LevelCell> cells;
    for (const auto& c : m.basis(d).cells())
      if (levels_nonempty(c, d)) cells.push_back(c);
    norm.emplace_back(std::move(cells));
  }
  const auto boundary = [&](int d) {
    ExactMatrix b(ring, norm[static_cast<std::size_t>(d - 1)].size(), norm[static_cast<std::size_t>(d)].size());
    for (int i = 0; i <= d; ++i) {
      const ExactMatrix f = cell_matrix(ring, norm[static_cast<std::size_t>(d)], norm[static_cast<std::size_t>(d - 1)], [&](const LevelCell& c) -> LevelCombination {
        if (i == 0) return single(drop_empty_level(c, 1));
        return merge_levels(*p, c, i);
      });
      b = i % 2 ? b - f : b + f;
    }
    return b;
  };
  const auto homotopy = [&](int d) {
    ExactMatrix h = cell_matrix(ring, norm[static_cast<std::size_t>(d)], norm[static_cast<std::size_t>(d + 1)], [](const LevelCell& c) { return single(c); });
    return d % 2 ? h : ExactMatrix(ring, h.rows(), h.cols()) - h;
  };
  IdentityReport rep;
  for (int d = 0; d <= max_dim; ++d) {
    const int dim = norm[static_cast<std::size_t>(d)].size();
    ExactMatrix lhs = boundary(d + 1) * homotopy(d);
    if (d > 0) lhs = lhs + homotopy(d - 1) * boundary(d);
    ExactMatrix rhs = ExactMatrix::identity(ring, dim);
    if (d == 0 && n == 1) rhs = ExactMatrix(ring, dim, dim);
    ++rep.checked;
    if (lhs != rhs) {
      rep.ok = false;
      for (int j = 0; j < dim; ++j)
        if (lhs.column(j) != rhs.column(j)) {
          rep.failure = "degree " + std::to_string(d) + ": " + describe(*p, norm[static_cast<std::size_t>(d)].at(j));
          break;
        }
      break;
    }
  }
  return rep;
}

std::string describe(const Operad& p, const LevelCell& c) {
  if (c.tree.weight() == 0) return "unit";
  std::ostringstream os;
  for (int v = 0; v < c.tree.weight(); ++v) {
    if (v) os << " | ";
    os << "{";
    bool first = true;
    for (int e : comb::elements(c.tree.masks[static_cast<std::size_t>(v)])) {
      os << (first ? "" : ",") << e + 1;
      first = false;
    }
    const auto k = static_cast<int>(inputs_of(c.tree.masks, c.tree.masks[static_cast<std::size_t>(v)]).size());
    os << "} " << p.label(k, c.tree.labels[static_cast<std::size_t>(v)]) << " @" << c.levels[static_cast<std::size_t>(v)];
  }
  return os.str();
}

}  // namespace opk::simplicial
