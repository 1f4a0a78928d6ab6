#include "opk/trees/tree.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace opk::trees {

using comb::elements;
using comb::lowest;

bool canonical_less(const CanonVertex& a, const CanonVertex& b) {
  if (a.depth != b.depth) return a.depth < b.depth;
  return comb::lex_less(a.leaves, b.leaves);
}

CanonicalForm::CanonicalForm(std::vector<int> entries, std::vector<CanonVertex> vertices)
    : entries_(std::move(entries)), vertices_(std::move(vertices)) {
  if (!std::is_sorted(entries_.begin(), entries_.end()) ||
      std::adjacent_find(entries_.begin(), entries_.end()) != entries_.end())
    throw std::invalid_argument("canonical entries must be sorted and distinct");
  if (vertices_.empty()) throw std::invalid_argument("a tree needs at least one vertex");
  std::sort(vertices_.begin(), vertices_.end(), canonical_less);
  const Mask all = comb::full_mask(arity());
  if (vertices_[0].depth != 0 || vertices_[0].leaves != all || (vertices_.size() > 1 && vertices_[1].depth == 0))
    throw std::invalid_argument("canonical form needs a unique root covering all entries");
  parent_.assign(vertices_.size(), -1);
  for (std::size_t k = 1; k < vertices_.size(); ++k) {
    const auto& v = vertices_[k];
    if (v.leaves == 0 || (v.leaves & ~all)) throw std::invalid_argument("vertex leaf set out of range");
    if (vertices_[k - 1] == v) throw std::invalid_argument("duplicate vertex");
    int p = -1;
    for (std::size_t j = 0; j < k; ++j)
      if (vertices_[j].depth == v.depth - 1 && (vertices_[j].leaves & v.leaves) == v.leaves) {
        if (p >= 0) throw std::invalid_argument("ambiguous parent");
        p = static_cast<int>(j);
      }
    if (p < 0) throw std::invalid_argument("vertex without parent");
    parent_[k] = p;
  }
  // Vertices at equal depth must be disjoint; children must not cover more than the parent.
  for (std::size_t a = 0; a < vertices_.size(); ++a)
    for (std::size_t b = a + 1; b < vertices_.size(); ++b)
      if (vertices_[a].depth == vertices_[b].depth && (vertices_[a].leaves & vertices_[b].leaves))
        throw std::invalid_argument("overlapping vertices at equal depth");
  for (std::size_t k = 0; k < vertices_.size(); ++k)
    if (inputs(static_cast<int>(k)).empty()) throw std::invalid_argument("vertex without inputs");
}

CanonicalForm CanonicalForm::reduced(int n, const std::vector<Mask>& masks) {
  std::vector<CanonVertex> vs;
  for (Mask m : masks) {
    int depth = 0;
    for (Mask o : masks)
      if (o != m && (o & m) == m) ++depth;
    vs.push_back({depth, m});
  }
  std::vector<int> entries;
  for (int i = 1; i <= n; ++i) entries.push_back(i);
  return CanonicalForm(std::move(entries), std::move(vs));
}

std::vector<int> CanonicalForm::children(int k) const {
  std::vector<int> c;
  for (std::size_t j = 0; j < parent_.size(); ++j)
    if (parent_[j] == k) c.push_back(static_cast<int>(j));
  return c;
}

std::vector<Mask> CanonicalForm::inputs(int k) const {
  std::vector<Mask> in;
  Mask covered = 0;
  for (int c : children(k)) {
    in.push_back(leaves(c));
    covered |= leaves(c);
  }
  for (int i : elements(leaves(k) & ~covered)) in.push_back(Mask(1) << i);
  std::sort(in.begin(), in.end(), [](Mask a, Mask b) { return lowest(a) < lowest(b); });
  return in;
}

int CanonicalForm::find(int depth, Mask lv) const {
  for (std::size_t k = 0; k < vertices_.size(); ++k)
    if (vertices_[k].depth == depth && vertices_[k].leaves == lv) return static_cast<int>(k);
  return -1;
}

bool CanonicalForm::is_reduced() const {
  for (int k = 0; k < size(); ++k)
    if (inputs(k).size() < 2) return false;
  return true;
}

bool CanonicalForm::is_top(int k) const { return children(k).empty(); }

bool CanonicalForm::operator<(const CanonicalForm& o) const {
  if (entries_ != o.entries_) return entries_ < o.entries_;
  if (vertices_.size() != o.vertices_.size()) return vertices_.size() < o.vertices_.size();
  for (std::size_t k = 0; k < vertices_.size(); ++k) {
    if (vertices_[k] == o.vertices_[k]) continue;
    return canonical_less(vertices_[k], o.vertices_[k]);
  }
  return false;
}

std::string CanonicalForm::to_string() const {
  std::string s;
  for (std::size_t k = 0; k < vertices_.size(); ++k) {
    if (k) s += " ";
    s += "d" + std::to_string(vertices_[k].depth) + "{";
    bool first = true;
    for (int i : elements(vertices_[k].leaves)) {
      if (!first) s += ",";
      s += std::to_string(entries_[static_cast<std::size_t>(i)]);
      first = false;
    }
    s += "}";
  }
  return s;
}

AbstractTree::AbstractTree(std::vector<int> entries, std::vector<int> vertex_ids, std::vector<int> vertex_target,
                           std::vector<int> entry_target)
    : entries_(std::move(entries)), ids_(std::move(vertex_ids)), vtarget_(std::move(vertex_target)), etarget_(std::move(entry_target)) {
  const int nv = vertex_count();
  if (nv == 0) throw std::invalid_argument("a tree needs at least one vertex");
  if (static_cast<int>(vtarget_.size()) != nv || etarget_.size() != entries_.size())
    throw std::invalid_argument("tree target lists have wrong sizes");
  if (std::set<int>(ids_.begin(), ids_.end()).size() != ids_.size()) throw std::invalid_argument("duplicate vertex identity");
  if (std::set<int>(entries_.begin(), entries_.end()).size() != entries_.size()) throw std::invalid_argument("duplicate entry");
  int roots = 0;
  for (int t : vtarget_) {
    if (t == -1) ++roots;
    else if (t < 0 || t >= nv) throw std::invalid_argument("vertex target out of range");
  }
  if (roots != 1) throw std::invalid_argument("a tree has exactly one root vertex");
  for (int t : etarget_)
    if (t < 0 || t >= nv) throw std::invalid_argument("entry target out of range");
  // Every vertex reaches the root without cycles.
  for (int v = 0; v < nv; ++v) {
    int cur = v, steps = 0;
    while (vtarget_[static_cast<std::size_t>(cur)] != -1) {
      cur = vtarget_[static_cast<std::size_t>(cur)];
      if (++steps > nv) throw std::invalid_argument("cycle in tree");
    }
  }
  for (int v = 0; v < nv; ++v)
    if (vertex_inputs(v).empty() && entry_inputs(v).empty()) throw std::invalid_argument("vertex without inputs");
}

AbstractTree AbstractTree::corolla(std::vector<int> entries, int vertex_id) {
  std::vector<int> et(entries.size(), 0);
  return AbstractTree(std::move(entries), {vertex_id}, {-1}, std::move(et));
}

AbstractTree AbstractTree::from_canonical(const CanonicalForm& c) {
  std::vector<int> ids, vt, et(static_cast<std::size_t>(c.arity()), -1);
  for (int k = 0; k < c.size(); ++k) {
    ids.push_back(k);
    vt.push_back(c.parent(k));
  }
  // Each entry targets the deepest vertex containing it.
  for (int i = 0; i < c.arity(); ++i) {
    int best = -1;
    for (int k = 0; k < c.size(); ++k)
      if ((c.leaves(k) >> i) & 1u)
        if (best < 0 || c.depth(k) > c.depth(best)) best = k;
    et[static_cast<std::size_t>(i)] = best;
  }
  return AbstractTree(c.entries(), std::move(ids), std::move(vt), std::move(et));
}

int AbstractTree::root() const {
  for (int v = 0; v < vertex_count(); ++v)
    if (vtarget_[static_cast<std::size_t>(v)] == -1) return v;
  return -1;
}

int AbstractTree::index_of(int id) const {
  for (std::size_t v = 0; v < ids_.size(); ++v)
    if (ids_[v] == id) return static_cast<int>(v);
  return -1;
}

int AbstractTree::entry_position(int label) const {
  for (std::size_t e = 0; e < entries_.size(); ++e)
    if (entries_[e] == label) return static_cast<int>(e);
  return -1;
}

std::vector<int> AbstractTree::vertex_inputs(int v) const {
  std::vector<int> in;
  for (int u = 0; u < vertex_count(); ++u)
    if (vtarget_[static_cast<std::size_t>(u)] == v) in.push_back(u);
  return in;
}

std::vector<int> AbstractTree::entry_inputs(int v) const {
  std::vector<int> in;
  for (int e = 0; e < arity(); ++e)
    if (etarget_[static_cast<std::size_t>(e)] == v) in.push_back(e);
  return in;
}

int AbstractTree::depth(int v) const {
  int d = 0;
  while (vtarget_[static_cast<std::size_t>(v)] != -1) {
    v = vtarget_[static_cast<std::size_t>(v)];
    ++d;
  }
  return d;
}

CanonicalForm AbstractTree::canonical() const {
  // Leaf masks refer to positions of entries in increasing label order.
  std::vector<int> sorted = entries_;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> pos(entries_.size());
  for (std::size_t e = 0; e < entries_.size(); ++e)
    pos[e] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), entries_[e]) - sorted.begin());
  std::vector<Mask> m(static_cast<std::size_t>(vertex_count()), 0);
  for (int e = 0; e < arity(); ++e) {
    int v = etarget_[static_cast<std::size_t>(e)];
    while (v != -1) {
      m[static_cast<std::size_t>(v)] |= Mask(1) << pos[static_cast<std::size_t>(e)];
      v = vtarget_[static_cast<std::size_t>(v)];
    }
  }
  std::vector<CanonVertex> vs;
  for (int v = 0; v < vertex_count(); ++v) vs.push_back({depth(v), m[static_cast<std::size_t>(v)]});
  return CanonicalForm(std::move(sorted), std::move(vs));
}

Mask AbstractTree::leaves(int v) const {
  Mask m = 0;
  for (int e = 0; e < arity(); ++e) {
    int u = etarget_[static_cast<std::size_t>(e)];
    while (u != -1) {
      if (u == v) {
        m |= Mask(1) << e;
        break;
      }
      u = vtarget_[static_cast<std::size_t>(u)];
    }
  }
  return m;
}

AbstractTree AbstractTree::rename_vertices(const std::vector<int>& new_ids) const {
  return AbstractTree(entries_, new_ids, vtarget_, etarget_);
}

AbstractTree graft(const AbstractTree& s, int i, const AbstractTree& t) {
  const int pos = s.entry_position(i);
  if (pos < 0) throw std::invalid_argument("graft: not an entry of the outer tree");
  std::vector<int> entries, eta;
  for (int e = 0; e < s.arity(); ++e)
    if (e != pos) {
      entries.push_back(s.entries()[static_cast<std::size_t>(e)]);
      eta.push_back(s.entry_target(e));
    }
  const int off = s.vertex_count();
  const int attach = s.entry_target(pos);
  for (int e = 0; e < t.arity(); ++e) {
    entries.push_back(t.entries()[static_cast<std::size_t>(e)]);
    eta.push_back(t.entry_target(e) + off);
  }
  // Vertex identities of the inner tree are shifted past those of the outer tree.
  int shift = 0;
  for (int id : s.vertex_ids()) shift = std::max(shift, id + 1);
  int tmin = 0;
  for (int id : t.vertex_ids()) tmin = std::min(tmin, id);
  std::vector<int> ids = s.vertex_ids(), vt;
  for (int v = 0; v < s.vertex_count(); ++v) vt.push_back(s.vertex_target(v));
  for (int v = 0; v < t.vertex_count(); ++v) {
    ids.push_back(t.vertex_ids()[static_cast<std::size_t>(v)] - tmin + shift);
    const int tt = t.vertex_target(v);
    vt.push_back(tt == -1 ? attach : tt + off);
  }
  return AbstractTree(std::move(entries), std::move(ids), std::move(vt), std::move(eta));
}

AbstractTree contract_edge(const AbstractTree& t, int child_id) {
  const int v = t.index_of(child_id);
  if (v < 0) throw std::invalid_argument("contract_edge: unknown vertex");
  const int u = t.vertex_target(v);
  if (u < 0) throw std::invalid_argument("contract_edge: the root edge is not internal");
  std::vector<int> ids, vt, map(static_cast<std::size_t>(t.vertex_count()), -1);
  for (int w = 0, k = 0; w < t.vertex_count(); ++w)
    if (w != v) map[static_cast<std::size_t>(w)] = k++;
  map[static_cast<std::size_t>(v)] = map[static_cast<std::size_t>(u)];
  for (int w = 0; w < t.vertex_count(); ++w) {
    if (w == v) continue;
    ids.push_back(t.vertex_ids()[static_cast<std::size_t>(w)]);
    const int tw = t.vertex_target(w);
    vt.push_back(tw == -1 ? -1 : map[static_cast<std::size_t>(tw)]);
  }
  std::vector<int> et;
  for (int e = 0; e < t.arity(); ++e) et.push_back(map[static_cast<std::size_t>(t.entry_target(e))]);
  return AbstractTree(t.entries(), std::move(ids), std::move(vt), std::move(et));
}

namespace {

// Laminar families on `set`: the vertex `set` itself plus nested subtrees on blocks of a partition.
void subtrees(Mask set, std::vector<std::vector<Mask>>& out) {
  const std::vector<int> elems = elements(set);
  const int m = static_cast<int>(elems.size());
  std::vector<int> growth(static_cast<std::size_t>(m), 0);
  auto handle = [&](const std::vector<Mask>& blocks) {
    if (blocks.size() < 2) return;
    std::vector<std::vector<Mask>> acc{{set}};
    for (Mask b : blocks) {
      if (comb::popcount(b) < 2) continue;
      std::vector<std::vector<Mask>> sub;
      subtrees(b, sub);
      std::vector<std::vector<Mask>> next;
      for (const auto& a : acc)
        for (const auto& s : sub) {
          auto c = a;
          c.insert(c.end(), s.begin(), s.end());
          next.push_back(std::move(c));
        }
      acc = std::move(next);
    }
    out.insert(out.end(), acc.begin(), acc.end());
  };
  std::function<void(int, int)> rec = [&](int i, int mx) {
    if (i == m) {
      std::vector<Mask> blocks(static_cast<std::size_t>(mx + 1), 0);
      for (int j = 0; j < m; ++j) blocks[static_cast<std::size_t>(growth[j])] |= Mask(1) << elems[j];
      handle(blocks);
      return;
    }
    for (int g = 0; g <= mx + 1; ++g) {
      growth[static_cast<std::size_t>(i)] = g;
      rec(i + 1, std::max(mx, g));
    }
  };
  if (m == 0) return;
  rec(1, 0);
}

}  // namespace

std::vector<CanonicalForm> enumerate_reduced_trees(int n, int k) {
  std::vector<CanonicalForm> out;
  if (n < 2 || k < 1 || k >= n) return out;
  std::vector<std::vector<Mask>> fams;
  subtrees(comb::full_mask(n), fams);
  for (const auto& f : fams)
    if (static_cast<int>(f.size()) == k) out.push_back(CanonicalForm::reduced(n, f));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace opk::trees
