#include "opk/trees/level_tree.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace opk::trees {

LevelTree::LevelTree(AbstractTree tree, std::vector<int> levels, int lo, int hi, bool explicit_units)
    : tree_(std::move(tree)), levels_(std::move(levels)), lo_(lo), hi_(hi), explicit_(explicit_units) {
  const int nv = tree_.vertex_count();
  if (static_cast<int>(levels_.size()) != nv) throw std::invalid_argument("one level per vertex required");
  if (lo_ > hi_) throw std::invalid_argument("empty level range");
  for (int v = 0; v < nv; ++v) {
    const int l = level(v);
    if (l < lo_ || l > hi_) throw std::invalid_argument("level out of range");
    const int p = tree_.vertex_target(v);
    if (explicit_) {
      if (p == -1 && l != lo_) throw std::invalid_argument("root vertex must sit on the lowest level");
      if (p != -1 && l != level(p) + 1) throw std::invalid_argument("internal edges must drop exactly one level");
    } else if (p != -1 && l <= level(p)) {
      throw std::invalid_argument("levels must increase away from the root");
    }
  }
  if (explicit_)
    for (int e = 0; e < tree_.arity(); ++e)
      if (level(tree_.entry_target(e)) != hi_) throw std::invalid_argument("entries must target the top level");
}

std::vector<int> LevelTree::vertices_at(int l) const {
  std::vector<int> out;
  for (int v = 0; v < tree_.vertex_count(); ++v)
    if (level(v) == l) out.push_back(v);
  return out;
}

std::pair<CanonicalForm, std::vector<int>> LevelTree::canonical_key() const {
  CanonicalForm c = tree_.canonical();
  std::vector<int> lv(static_cast<std::size_t>(c.size()), 0);
  // Match vertices through (depth, leaf mask) computed on the same entry positions.
  std::vector<int> sorted = tree_.entries();
  std::sort(sorted.begin(), sorted.end());
  for (int v = 0; v < tree_.vertex_count(); ++v) {
    Mask m = 0;
    for (int e : comb::elements(tree_.leaves(v))) {
      const int label = tree_.entries()[static_cast<std::size_t>(e)];
      m |= Mask(1) << static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), label) - sorted.begin());
    }
    const int k = c.find(tree_.depth(v), m);
    lv[static_cast<std::size_t>(k)] = level(v);
  }
  return {c, lv};
}

LevelTree contract_level(const LevelTree& t, int i) {
  if (i < t.lo() || i >= t.hi()) throw std::out_of_range("contract_level: level index out of range");
  std::map<int, int> level_of;
  for (int v = 0; v < t.tree().vertex_count(); ++v) level_of[t.tree().vertex_ids()[static_cast<std::size_t>(v)]] = t.level(v);
  AbstractTree cur = t.tree();
  for (int v = 0; v < t.tree().vertex_count(); ++v) {
    if (t.level(v) != i + 1) continue;
    const int p = t.tree().vertex_target(v);
    const int id = t.tree().vertex_ids()[static_cast<std::size_t>(v)];
    if (p != -1 && t.level(p) == i) {
      cur = contract_edge(cur, id);
      level_of.erase(id);
    }
  }
  std::vector<int> lv;
  for (int v = 0; v < cur.vertex_count(); ++v) {
    const int l = level_of.at(cur.vertex_ids()[static_cast<std::size_t>(v)]);
    lv.push_back(l > i ? l - 1 : l);
  }
  return LevelTree(std::move(cur), std::move(lv), t.lo(), t.hi() - 1, t.explicit_units());
}

CompositeTree::CompositeTree(AbstractTree tree, std::vector<VertexTag> tags) : tree_(std::move(tree)), tags_(std::move(tags)) {
  const int nv = tree_.vertex_count();
  if (static_cast<int>(tags_.size()) != nv) throw std::invalid_argument("one tag per vertex required");
  for (int v = 0; v < nv; ++v) {
    const bool has_entries = !tree_.entry_inputs(v).empty();
    const bool is_root = tree_.vertex_target(v) == -1;
    if ((tag(v) == VertexTag::Upper) != has_entries) throw std::invalid_argument("upper vertices are exactly those with entries");
    if (tag(v) == VertexTag::Upper && !tree_.vertex_inputs(v).empty()) throw std::invalid_argument("upper vertices only have entries");
    if ((tag(v) == VertexTag::Lower) != is_root) throw std::invalid_argument("the lower vertex is the root vertex");
  }
}

int CompositeTree::main_count() const {
  return static_cast<int>(std::count(tags_.begin(), tags_.end(), VertexTag::Main));
}

namespace {

/// Level maps l: vertices -> 1..d, l(parent) < l(child), over the given subset of vertices.
void extensions(const std::vector<int>& verts, const std::vector<int>& parent, std::vector<int>& level, int next,
                std::vector<std::vector<int>>& out) {
  if (next > static_cast<int>(verts.size())) {
    out.push_back(level);
    return;
  }
  for (int v : verts) {
    if (level[static_cast<std::size_t>(v)] != 0) continue;
    const int p = parent[static_cast<std::size_t>(v)];
    if (p >= 0 && level[static_cast<std::size_t>(p)] == 0) continue;
    level[static_cast<std::size_t>(v)] = next;
    extensions(verts, parent, level, next + 1, out);
    level[static_cast<std::size_t>(v)] = 0;
  }
}

}  // namespace

std::vector<std::vector<int>> linear_extensions(const CanonicalForm& t) {
  std::vector<int> verts, parent;
  for (int k = 0; k < t.size(); ++k) {
    verts.push_back(k);
    parent.push_back(t.parent(k));
  }
  std::vector<int> level(verts.size(), 0);
  std::vector<std::vector<int>> out;
  extensions(verts, parent, level, 1, out);
  return out;
}

std::vector<LevelTree> enumerate_levelizations(const AbstractTree& t) {
  const int nv = t.vertex_count();
  std::vector<int> verts, parent;
  for (int v = 0; v < nv; ++v) {
    verts.push_back(v);
    parent.push_back(t.vertex_target(v));
  }
  std::vector<int> level(static_cast<std::size_t>(nv), 0);
  std::vector<std::vector<int>> maps;
  extensions(verts, parent, level, 1, maps);
  std::vector<LevelTree> out;
  for (auto& m : maps) out.emplace_back(t, m, 1, nv, false);
  return out;
}

std::vector<LevelTree> enumerate_levelizations(const CompositeTree& c) {
  const AbstractTree& t = c.tree();
  const int nv = t.vertex_count();
  std::vector<int> mains;
  for (int v = 0; v < nv; ++v)
    if (c.tag(v) == VertexTag::Main) mains.push_back(v);
  const int d = static_cast<int>(mains.size());
  // Only edges between main vertices constrain the order.
  std::vector<int> parent(static_cast<std::size_t>(nv), -1);
  for (int v : mains) {
    const int p = t.vertex_target(v);
    if (p >= 0 && c.tag(p) == VertexTag::Main) parent[static_cast<std::size_t>(v)] = p;
  }
  std::vector<int> level(static_cast<std::size_t>(nv), 0);
  std::vector<std::vector<int>> maps;
  extensions(mains, parent, level, 1, maps);

  int fresh = 0;
  for (int id : t.vertex_ids()) fresh = std::max(fresh, id + 1);
  std::vector<LevelTree> out;
  for (auto m : maps) {
    for (int v = 0; v < nv; ++v) {
      if (c.tag(v) == VertexTag::Lower) m[static_cast<std::size_t>(v)] = 0;
      if (c.tag(v) == VertexTag::Upper) m[static_cast<std::size_t>(v)] = d + 1;
    }
    // Subdivide edges that skip levels with unit vertices.
    std::vector<int> ids = t.vertex_ids(), vt, lv = m;
    for (int v = 0; v < nv; ++v) vt.push_back(t.vertex_target(v));
    int next_id = fresh;
    for (int v = 0; v < nv; ++v) {
      int p = vt[static_cast<std::size_t>(v)];
      if (p < 0) continue;
      int child = v;
      for (int l = lv[static_cast<std::size_t>(v)] - 1; l > m[static_cast<std::size_t>(p)]; --l) {
        const int u = static_cast<int>(ids.size());
        ids.push_back(next_id++);
        vt.push_back(p);
        lv.push_back(l);
        vt[static_cast<std::size_t>(child)] = u;
        child = u;
      }
    }
    std::vector<int> et;
    for (int e = 0; e < t.arity(); ++e) et.push_back(t.entry_target(e));
    out.emplace_back(AbstractTree(t.entries(), std::move(ids), std::move(vt), std::move(et)), std::move(lv), 0, d + 1, true);
  }
  return out;
}

}  // namespace opk::trees
