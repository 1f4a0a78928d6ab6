#pragma once

#include <string>
#include <vector>

#include "opk/comb/partition.hpp"

namespace opk::trees {

using comb::Mask;

/// Vertex of a canonical form: distance to the root and the entry positions above it.
struct CanonVertex {
  int depth = 0;
  Mask leaves = 0;
  bool operator==(const CanonVertex& o) const { return depth == o.depth && leaves == o.leaves; }
};

/**
 * Canonical representative of an isomorphism class of trees over an ordered
 * entry set. Leaf masks refer to positions in entries(). Vertices are sorted
 * by (depth, lexicographic order of the sorted leaf positions); this order is
 * the reference order for Koszul signs.
 */
class CanonicalForm {
 public:
  CanonicalForm() = default;
  /// Vertices in any order; validated and sorted.
  CanonicalForm(std::vector<int> entries, std::vector<CanonVertex> vertices);
  /// Reduced tree on entries 1..n from a laminar family of leaf masks.
  static CanonicalForm reduced(int n, const std::vector<Mask>& masks);

  const std::vector<int>& entries() const { return entries_; }
  int arity() const { return static_cast<int>(entries_.size()); }
  int size() const { return static_cast<int>(vertices_.size()); }
  const std::vector<CanonVertex>& vertices() const { return vertices_; }
  Mask leaves(int k) const { return vertices_[static_cast<std::size_t>(k)].leaves; }
  int depth(int k) const { return vertices_[static_cast<std::size_t>(k)].depth; }
  /// Parent vertex index, -1 for the root vertex.
  int parent(int k) const { return parent_[static_cast<std::size_t>(k)]; }
  std::vector<int> children(int k) const;
  /// Inputs of vertex k as leaf masks, ordered by their minimal entry position.
  std::vector<Mask> inputs(int k) const;
  /// Vertex index with the given depth and leaf mask, or -1.
  int find(int depth, Mask leaves) const;
  /// True if every vertex has at least two inputs.
  bool is_reduced() const;
  /// Vertices with no vertex above them.
  bool is_top(int k) const;

  bool operator==(const CanonicalForm& o) const { return entries_ == o.entries_ && vertices_ == o.vertices_; }
  bool operator!=(const CanonicalForm& o) const { return !(*this == o); }
  bool operator<(const CanonicalForm& o) const;
  std::string to_string() const;

 private:
  std::vector<int> entries_;
  std::vector<CanonVertex> vertices_;
  std::vector<int> parent_;
};

/// Strict order on vertices used by canonical forms.
bool canonical_less(const CanonVertex& a, const CanonVertex& b);

/**
 * Explicit oriented tree: vertices carry identities, each vertex and each
 * entry points to its target vertex; the root vertex targets the root slot (-1).
 */
class AbstractTree {
 public:
  AbstractTree() = default;
  AbstractTree(std::vector<int> entries, std::vector<int> vertex_ids, std::vector<int> vertex_target,
               std::vector<int> entry_target);
  static AbstractTree corolla(std::vector<int> entries, int vertex_id = 0);
  /// Vertex ids are the canonical indices.
  static AbstractTree from_canonical(const CanonicalForm& c);

  const std::vector<int>& entries() const { return entries_; }
  int arity() const { return static_cast<int>(entries_.size()); }
  int vertex_count() const { return static_cast<int>(ids_.size()); }
  const std::vector<int>& vertex_ids() const { return ids_; }
  int vertex_target(int v) const { return vtarget_[static_cast<std::size_t>(v)]; }
  int entry_target(int e) const { return etarget_[static_cast<std::size_t>(e)]; }
  int root() const;
  /// Vertex index for an identity, -1 if absent.
  int index_of(int id) const;
  /// Entry position for an entry label, -1 if absent.
  int entry_position(int label) const;
  /// Edges: one per vertex (its outgoing edge) and one per entry.
  int edge_count() const { return vertex_count() + arity(); }
  int internal_edge_count() const { return vertex_count() - 1; }
  /// Vertex inputs of v (vertex indices) and entry inputs (entry positions).
  std::vector<int> vertex_inputs(int v) const;
  std::vector<int> entry_inputs(int v) const;
  /// Entry positions above v.
  Mask leaves(int v) const;
  int depth(int v) const;

  CanonicalForm canonical() const;
  /// Same tree with vertex identities renamed through the given list.
  AbstractTree rename_vertices(const std::vector<int>& new_ids) const;

 private:
  std::vector<int> entries_;
  std::vector<int> ids_;
  std::vector<int> vtarget_;
  std::vector<int> etarget_;
};

/// Plugs the root of t into the entry labeled i of s; entry labels must stay distinct.
AbstractTree graft(const AbstractTree& s, int i, const AbstractTree& t);

/// Collapses the internal edge whose source vertex has identity child_id.
AbstractTree contract_edge(const AbstractTree& t, int child_id);

/// Isomorphism classes of reduced n-trees with exactly k vertices, sorted.
std::vector<CanonicalForm> enumerate_reduced_trees(int n, int k);

}  // namespace opk::trees
