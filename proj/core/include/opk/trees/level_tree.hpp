#pragma once

#include <utility>
#include <vector>

#include "opk/trees/tree.hpp"

namespace opk::trees {

/**
 * Tree with levels. In the explicit convention every internal edge drops
 * exactly one level, the root vertex sits on level lo and entries target
 * level hi; unit vertices appear as unary vertices. In the trivial
 * coefficient convention unit vertices are omitted: levels lie in [lo, hi]
 * and only increase strictly along edges away from the root.
 */
class LevelTree {
 public:
  LevelTree() = default;
  LevelTree(AbstractTree tree, std::vector<int> levels, int lo, int hi, bool explicit_units);

  const AbstractTree& tree() const { return tree_; }
  int level(int v) const { return levels_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& levels() const { return levels_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  bool explicit_units() const { return explicit_; }
  int level_count() const { return hi_ - lo_ + 1; }
  std::vector<int> vertices_at(int l) const;

  /// Canonical tree plus the level of each canonical vertex: equal iff isomorphic as level trees.
  std::pair<CanonicalForm, std::vector<int>> canonical_key() const;
  bool isomorphic(const LevelTree& o) const { return canonical_key() == o.canonical_key(); }

 private:
  AbstractTree tree_;
  std::vector<int> levels_;
  int lo_ = 0;
  int hi_ = 0;
  bool explicit_ = false;
};

/// Merges levels i and i+1 (lo <= i < hi); the level range shrinks by one.
LevelTree contract_level(const LevelTree& t, int i);

enum class VertexTag { Lower, Main, Upper };

/**
 * Tree whose vertices are tagged l (lower), p (main) or r (upper): upper
 * vertices carry exactly the tree entries, the lower vertex is the root.
 */
class CompositeTree {
 public:
  CompositeTree(AbstractTree tree, std::vector<VertexTag> tags);
  const AbstractTree& tree() const { return tree_; }
  VertexTag tag(int v) const { return tags_[static_cast<std::size_t>(v)]; }
  int main_count() const;

 private:
  AbstractTree tree_;
  std::vector<VertexTag> tags_;
};

/// Linear extensions of the main vertices as explicit level trees on levels 0..d+1.
std::vector<LevelTree> enumerate_levelizations(const CompositeTree& t);
/// Levelizations of a tree in the trivial coefficient convention on levels 1..d.
std::vector<LevelTree> enumerate_levelizations(const AbstractTree& t);
/// Level assignments (vertex -> level in 1..d) of the vertices of a canonical tree.
std::vector<std::vector<int>> linear_extensions(const CanonicalForm& t);

}  // namespace opk::trees
