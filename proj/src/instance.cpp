#include "freshcast/instance.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <set>
#include <string>

namespace freshcast {

void validate(const RootedInstance& instance) {
  if (instance.n <= 0) throw Error(ErrorKind::BadRoot, "empty instance");
  if (instance.root < 0 || instance.root >= instance.n) {
    throw Error(ErrorKind::BadRoot, "root " + std::to_string(instance.root) + " out of range");
  }
  std::set<std::pair<Vertex, Vertex>> seen;
  std::vector<std::vector<Vertex>> adj(instance.n);
  for (const auto& [a, b] : instance.edges) {
    if (a < 0 || a >= instance.n || b < 0 || b >= instance.n) {
      throw Error(ErrorKind::UnknownEdge,
                  "edge (" + std::to_string(a) + "," + std::to_string(b) + ") out of range");
    }
    if (a == b) {
      throw Error(ErrorKind::DuplicateEdge, "self-loop at " + std::to_string(a));
    }
    auto key = std::minmax(a, b);
    if (!seen.insert(key).second) {
      throw Error(ErrorKind::DuplicateEdge,
                  "edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                      ") listed twice");
    }
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> visited(instance.n, 0);
  std::queue<Vertex> queue;
  queue.push(instance.root);
  visited[instance.root] = 1;
  int reached = 0;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop();
    ++reached;
    for (Vertex w : adj[v]) {
      if (!visited[w]) {
        visited[w] = 1;
        queue.push(w);
      }
    }
  }
  if (reached != instance.n) {
    throw Error(ErrorKind::Disconnected,
                std::to_string(instance.n - reached) + " vertices unreachable from root");
  }
  if (instance.is_tree && static_cast<int>(instance.edges.size()) != instance.n - 1) {
    throw Error(ErrorKind::NotATree, "tree flag set but edge count != n-1");
  }
}

TreeView tree_view(const RootedInstance& instance) {
  validate(instance);
  if (!instance.is_tree || static_cast<int>(instance.edges.size()) != instance.n - 1) {
    throw Error(ErrorKind::NotATree, "instance is not a tree");
  }
  TreeView view;
  view.root = instance.root;
  view.parent.assign(instance.n, -1);
  view.children.assign(instance.n, {});
  view.subtree_size.assign(instance.n, 1);
  view.depth.assign(instance.n, 0);

  std::vector<std::vector<Vertex>> adj(instance.n);
  for (const auto& [a, b] : instance.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());

  std::queue<Vertex> queue;
  queue.push(instance.root);
  std::vector<char> visited(instance.n, 0);
  visited[instance.root] = 1;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop();
    view.bfs_order.push_back(v);
    for (Vertex w : adj[v]) {
      if (visited[w]) continue;
      visited[w] = 1;
      view.parent[w] = v;
      view.depth[w] = view.depth[v] + 1;
      view.children[v].push_back(w);
      queue.push(w);
    }
  }
  for (auto it = view.bfs_order.rbegin(); it != view.bfs_order.rend(); ++it) {
    if (view.parent[*it] >= 0) view.subtree_size[view.parent[*it]] += view.subtree_size[*it];
  }
  return view;
}

namespace {

RootedInstance make_tree(int n, std::vector<std::pair<Vertex, Vertex>> edges) {
  RootedInstance instance;
  instance.n = n;
  instance.root = 0;
  instance.edges = std::move(edges);
  instance.is_tree = true;
  validate(instance);
  return instance;
}

/// Relabel so that root = 0 and ids follow BFS order (neighbors in old-id
/// order). Keeps generator output reproducible across construction styles.
RootedInstance bfs_relabel(const RootedInstance& instance) {
  std::vector<std::vector<Vertex>> adj(instance.n);
  for (const auto& [a, b] : instance.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
  std::vector<Vertex> label(instance.n, -1);
  std::queue<Vertex> queue;
  queue.push(instance.root);
  label[instance.root] = 0;
  int next = 1;
  std::vector<std::pair<Vertex, Vertex>> edges;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop();
    for (Vertex w : adj[v]) {
      if (label[w] >= 0) continue;
      label[w] = next++;
      edges.emplace_back(label[v], label[w]);
      queue.push(w);
    }
  }
  return make_tree(instance.n, std::move(edges));
}

}  // namespace

RootedInstance star(int leaves) {
  if (leaves < 1) throw Error(ErrorKind::TooSmall, "star needs at least one leaf");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return make_tree(leaves + 1, std::move(edges));
}

RootedInstance path(int vertices) {
  if (vertices < 1) throw Error(ErrorKind::TooSmall, "path needs at least one vertex");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 1; i < vertices; ++i) edges.emplace_back(i - 1, i);
  return make_tree(vertices, std::move(edges));
}

RootedInstance complete_binary_tree(int depth) {
  if (depth < 0) throw Error(ErrorKind::TooSmall, "depth must be non-negative");
  int n = (1 << (depth + 1)) - 1;
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back((i - 1) / 2, i);
  return make_tree(n, std::move(edges));
}

RootedInstance random_tree(int vertices, std::uint64_t seed) {
  if (vertices < 1) throw Error(ErrorKind::TooSmall, "tree needs at least one vertex");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 1; i < vertices; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    edges.emplace_back(pick(rng), i);
  }
  RootedInstance raw = make_tree(vertices, std::move(edges));
  return bfs_relabel(raw);
}

std::vector<int> gap_subtree_sizes(int n) {
  if (n < 4) throw Error(ErrorKind::TooSmall, "gap tree needs n >= 4");
  std::vector<int> sizes;
  std::int64_t total = 0;
  for (std::int64_t i = 1; total < n; ++i) {
    std::int64_t value = (n + 2 * i * i - 1) / (2 * i * i);
    value = std::min<std::int64_t>(value, n - total);  // truncate the last tree
    sizes.push_back(static_cast<int>(value));
    total += value;
  }
  return sizes;
}

RootedInstance gap_tree(int n) {
  std::vector<int> sizes = gap_subtree_sizes(n);
  std::vector<std::pair<Vertex, Vertex>> edges;
  int next = 1;
  for (int size : sizes) {
    int base = next;
    edges.emplace_back(0, base);
    // breadth-first prefix of the complete binary tree
    for (int j = 1; j < size; ++j) edges.emplace_back(base + (j - 1) / 2, base + j);
    next += size;
  }
  RootedInstance raw = make_tree(n + 1, std::move(edges));
  return bfs_relabel(raw);
}

}  // namespace freshcast
