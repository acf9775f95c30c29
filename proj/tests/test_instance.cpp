#include <doctest.h>

#include <numeric>
#include <set>

#include "freshcast/instance.hpp"

using namespace freshcast;

TEST_CASE("validate accepts a path and rejects broken graphs") {
  RootedInstance p3 = path(3);
  CHECK_NOTHROW(validate(p3));

  RootedInstance isolated{2, 0, {}, false};
  CHECK_THROWS_WITH_AS(validate(isolated), doctest::Contains("unreachable"), Error);

  RootedInstance loop{2, 0, {{0, 0}, {0, 1}}, false};
  try {
    validate(loop);
    FAIL("self-loop accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DuplicateEdge);
  }

  RootedInstance dup{2, 0, {{0, 1}, {1, 0}}, false};
  CHECK_THROWS_AS(validate(dup), Error);

  RootedInstance bad_root{2, 5, {{0, 1}}, false};
  try {
    validate(bad_root);
    FAIL("bad root accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadRoot);
  }
}

TEST_CASE("generators are canonical and deterministic") {
  RootedInstance s3 = star(3);
  CHECK(s3.n == 4);
  CHECK(s3.root == 0);
  CHECK(s3.edges == std::vector<std::pair<Vertex, Vertex>>{{0, 1}, {0, 2}, {0, 3}});

  RootedInstance p3 = path(3);
  CHECK(p3.edges == std::vector<std::pair<Vertex, Vertex>>{{0, 1}, {1, 2}});

  CHECK(complete_binary_tree(2).n == 7);

  RootedInstance a = random_tree(6, 42);
  RootedInstance b = random_tree(6, 42);
  CHECK(a.edges == b.edges);
  CHECK(random_tree(6, 43).edges != a.edges);
}

TEST_CASE("tree view is consistent") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    RootedInstance t = random_tree(9, seed);
    TreeView view = tree_view(t);
    CHECK(view.subtree_size[t.root] == t.n);
    for (Vertex u = 0; u < t.n; ++u) {
      int total = 1;
      for (Vertex c : view.children[u]) total += view.subtree_size[c];
      CHECK(view.subtree_size[u] == total);
      if (u != t.root) CHECK(view.depth[u] == view.depth[view.parent[u]] + 1);
    }
  }
  CHECK_THROWS_AS(tree_view(RootedInstance{3, 0, {{0, 1}, {1, 2}, {0, 2}}, false}), Error);
}

TEST_CASE("gap tree sizes follow the ceiling profile and fill exactly") {
  CHECK(gap_subtree_sizes(8) == std::vector<int>{4, 1, 1, 1, 1});
  CHECK(gap_subtree_sizes(4) == std::vector<int>{2, 1, 1});
  for (int n : {4, 5, 7, 16, 100, 256, 999, 2048}) {
    auto sizes = gap_subtree_sizes(n);
    CHECK(std::accumulate(sizes.begin(), sizes.end(), 0) == n);
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i) CHECK(sizes[i] >= sizes[i + 1]);
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      std::int64_t ii = static_cast<std::int64_t>(i) + 1;
      CHECK(sizes[i] <= (n + 2 * ii * ii - 1) / (2 * ii * ii));
    }
  }
  CHECK_THROWS_AS(gap_subtree_sizes(3), Error);
}

TEST_CASE("gap tree structure") {
  RootedInstance g = gap_tree(8);
  CHECK(g.n == 9);
  TreeView view = tree_view(g);
  auto sizes = gap_subtree_sizes(8);
  std::multiset<int> expected(sizes.begin(), sizes.end());
  std::multiset<int> actual;
  for (Vertex c : view.children[g.root]) actual.insert(view.subtree_size[c]);
  CHECK(actual == expected);

  // removing the root separates every vertex from >= n/2 other non-root
  // vertices (even n)
  for (int n : {8, 64}) {
    RootedInstance t = gap_tree(n);
    TreeView tv = tree_view(t);
    for (Vertex c : tv.children[t.root]) CHECK(n - tv.subtree_size[c] >= n / 2);
  }
}
