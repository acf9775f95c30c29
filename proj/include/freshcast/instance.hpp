#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "freshcast/types.hpp"

namespace freshcast {

/// Undirected graph with a designated root. Vertices are 0..n-1; generators
/// label canonically (root = 0, then BFS order).
struct RootedInstance {
  int n = 0;
  Vertex root = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;
  bool is_tree = false;
};

/// Checks connectivity, id ranges, self-loops/duplicates and the tree edge
/// count. Throws Error{Disconnected|DuplicateEdge|BadRoot|NotATree}.
void validate(const RootedInstance& instance);

/// Rooted view of a tree instance: parent pointers, child lists in id order,
/// subtree sizes and hop depths. Throws Error{NotATree} on non-trees.
struct TreeView {
  Vertex root = 0;
  std::vector<Vertex> parent;  // parent[root] == -1
  std::vector<std::vector<Vertex>> children;
  std::vector<int> subtree_size;
  std::vector<int> depth;
  std::vector<Vertex> bfs_order;
};

TreeView tree_view(const RootedInstance& instance);

RootedInstance star(int leaves);
RootedInstance path(int vertices);
RootedInstance complete_binary_tree(int depth);
RootedInstance random_tree(int vertices, std::uint64_t seed);

/// Child subtree sizes of gap_tree(n): ceil(n / (2 i^2)) for i = 1, 2, ...
/// while capacity remains, the last one clamped so the sizes sum to n.
std::vector<int> gap_subtree_sizes(int n);

/// Root with children heading breadth-first prefixes of complete binary
/// trees, sized by gap_subtree_sizes(n). n + 1 vertices total.
RootedInstance gap_tree(int n);

}  // namespace freshcast
