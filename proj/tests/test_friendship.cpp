#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "lotprop/friendship.hpp"
#include "lotprop/network.hpp"

using namespace lotprop;

namespace {

// Independent BFS distances, kept separate from the module under test.
std::vector<int> bfs_dist(const Network& net) {
  std::vector<int> dist(net.node_count(), -1);
  std::queue<NodeId> q;
  dist[net.sender()] = 0;
  q.push(net.sender());
  while (!q.empty()) {
    NodeId v = q.front();
    q.pop();
    for (NodeId u : net.neighbors(v))
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        q.push(u);
      }
  }
  return dist;
}

// Every shortest sender-to-v path, enumerated explicitly by walking
// predecessors backward.
void enum_paths(const Network& net, const std::vector<int>& dist, NodeId v,
                std::vector<NodeId>& cur, std::vector<std::vector<NodeId>>& all) {
  cur.push_back(v);
  if (dist[v] == 0) {
    all.push_back(cur);
  } else {
    for (NodeId u : net.neighbors(v))
      if (dist[u] == dist[v] - 1) enum_paths(net, dist, u, cur, all);
  }
  cur.pop_back();
}

struct OracleAnswer {
  long path_count;
  std::optional<NodeId> best_friend;
};

OracleAnswer oracle(const Network& net, const std::vector<int>& dist, NodeId j) {
  std::vector<std::vector<NodeId>> paths;
  std::vector<NodeId> cur;
  enum_paths(net, dist, j, cur, paths);
  std::set<NodeId> common(paths[0].begin(), paths[0].end());
  for (const auto& p : paths) {
    std::set<NodeId> s(p.begin(), p.end());
    std::set<NodeId> inter;
    std::set_intersection(common.begin(), common.end(), s.begin(), s.end(),
                          std::inserter(inter, inter.begin()));
    common = inter;
  }
  OracleAnswer ans{static_cast<long>(paths.size()), std::nullopt};
  for (NodeId i : net.neighbors(j))
    if (i != j && common.count(i)) {
      REQUIRE(!ans.best_friend.has_value());  // uniqueness
      ans.best_friend = i;
    }
  return ans;
}

std::set<std::pair<NodeId, NodeId>> canonical(const std::vector<std::pair<NodeId, NodeId>>& es) {
  std::set<std::pair<NodeId, NodeId>> out;
  for (auto [a, b] : es) out.insert({std::min(a, b), std::max(a, b)});
  return out;
}

}  // namespace

TEST_CASE("path graph forces best friends along the line") {
  Network net = Network::general(3, 0, {{0, 1}, {1, 2}}, Rational(1, 2), Rational(1));
  auto spd = shortest_paths(net);
  CHECK(spd.dist == std::vector<int>{0, 1, 2});
  CHECK(spd.path_count[2] == 1);
  CHECK(*best_friend(net, spd, 1) == 0);
  CHECK(*best_friend(net, spd, 2) == 1);
  CHECK(good_friends(net, spd, 1) == std::vector<NodeId>{2});
}

TEST_CASE("diamond merge point has no best friend") {
  Network net = Network::general(4, 0, {{0, 1}, {0, 2}, {1, 3}, {2, 3}},
                                 Rational(1, 2), Rational(1));
  auto spd = shortest_paths(net);
  CHECK(spd.path_count[3] == 2);
  CHECK(!best_friend(net, spd, 3).has_value());
  CHECK(*best_friend(net, spd, 1) == 0);
  CHECK(good_friends(net, spd, 1).empty());
  CHECK(min_good_friend_degree(net) == 0);
  auto f = friendship_forest(net, spd);
  CHECK(f.roots == std::vector<NodeId>{0, 3});
  CHECK(canonical(f.edges) == canonical({{0, 1}, {0, 2}}));
  CHECK(f.parent[3] == -1);
}

TEST_CASE("diamond with a pendant tail keeps the tail edge") {
  Network net = Network::general(5, 0, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}},
                                 Rational(1, 2), Rational(1));
  auto spd = shortest_paths(net);
  CHECK(!best_friend(net, spd, 3).has_value());
  CHECK(*best_friend(net, spd, 4) == 3);
  CHECK(good_friends(net, spd, 3) == std::vector<NodeId>{4});
  auto f = friendship_forest(net, spd);
  CHECK(canonical(f.edges) == canonical({{0, 1}, {0, 2}, {3, 4}}));
  CHECK(f.roots == std::vector<NodeId>{0, 3});
  CHECK(f.edges.size() + f.roots.size() == 5);  // forest over reachable nodes
}

TEST_CASE("star: sender is everyone's best friend") {
  Network net = Network::general(5, 0, {{0, 1}, {0, 2}, {0, 3}, {0, 4}},
                                 Rational(1, 2), Rational(1));
  auto spd = shortest_paths(net);
  for (NodeId j = 1; j <= 4; ++j) {
    CHECK(*best_friend(net, spd, j) == 0);
    CHECK(good_friends(net, spd, j).empty());
  }
  CHECK(good_friends(net, spd, 0) == std::vector<NodeId>{1, 2, 3, 4});
  CHECK(min_good_friend_degree(net) == 0);
  auto f = friendship_forest(net, spd);
  CHECK(f.roots == std::vector<NodeId>{0});
  CHECK(f.edges.size() == 4);
}

TEST_CASE("dary forest friendship graph is the forest itself") {
  Network net = Network::dary_forest(3, 3, 2);
  auto spd = shortest_paths(net);
  for (int t = 0; t < 3; ++t) {
    NodeId r = net.subtree_root(t);
    CHECK(*best_friend(net, spd, r) == net.sender());
    CHECK(good_friends(net, spd, r).size() == 3);
    for (NodeId c : net.forest_children(r)) {
      CHECK(*best_friend(net, spd, c) == r);
      CHECK(good_friends(net, spd, c).size() == 3);
      for (NodeId g : net.forest_children(c)) CHECK(good_friends(net, spd, g).empty());
    }
  }
  CHECK(min_good_friend_degree(net) == 3);
  auto f = friendship_forest(net, spd);
  CHECK(f.roots == std::vector<NodeId>{0});
  CHECK(canonical(f.edges) == canonical(net.edge_list()));
}

TEST_CASE("unreachable nodes are excluded from the forest") {
  Network net = Network::general(6, 0, {{0, 1}, {1, 2}, {3, 4}, {4, 5}},
                                 Rational(1, 2), Rational(1));
  auto spd = shortest_paths(net);
  CHECK(spd.dist[4] == -1);
  CHECK_THROWS_AS(best_friend(net, spd, 4), std::invalid_argument);
  auto f = friendship_forest(net, spd);
  CHECK(f.roots == std::vector<NodeId>{0});
  CHECK(f.edges.size() == 2);
  CHECK(f.parent[4] == -1);
  CHECK(min_good_friend_degree(net) == 0);  // player 2 has no good friends
}

TEST_CASE("random graphs agree with the explicit all-paths oracle") {
  std::mt19937 rng(20240815u);
  const double probs[] = {0.15, 0.25, 0.4, 0.6};
  int graphs_with_forests = 0;
  for (int it = 0; it < 500; ++it) {
    int n = 5 + it % 10;
    double p = probs[it % 4];
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v)
        if (coin(rng) < p) edges.emplace_back(u, v);
    bool sender_connected = false;
    for (auto [a, b] : edges) sender_connected |= (a == 0 || b == 0);
    if (!sender_connected) edges.emplace_back(0, 1 + static_cast<NodeId>(it % (n - 1)));
    Network net = Network::general(n, 0, edges, Rational(1, 3), Rational(1));

    auto spd = shortest_paths(net);
    auto dist = bfs_dist(net);
    REQUIRE(spd.dist == dist);
    auto forest = friendship_forest(net, spd);
    std::int64_t reachable_nodes = 0;
    for (NodeId j = 0; j < n; ++j)
      if (dist[j] >= 0) ++reachable_nodes;

    for (NodeId j = 1; j < n; ++j) {
      if (dist[j] < 0) {
        CHECK(forest.parent[j] == -1);
        continue;
      }
      auto ans = oracle(net, dist, j);
      REQUIRE(spd.path_count[j] == ans.path_count);
      auto bf = best_friend(net, spd, j);
      REQUIRE(bf == ans.best_friend);
      // Count invariant: paths to j split over its predecessors.
      mpz_class acc(0);
      for (NodeId u : net.neighbors(j))
        if (dist[u] == dist[j] - 1) acc += spd.path_count[u];
      REQUIRE(acc == spd.path_count[j]);
      if (bf) {
        CHECK(net.adjacent(*bf, j));
        CHECK(dist[*bf] < dist[j]);
        CHECK(forest.parent[j] == *bf);
      }
    }
    // Forest property: edges = reachable nodes minus root count.
    REQUIRE(static_cast<std::int64_t>(forest.edges.size() + forest.roots.size()) ==
            reachable_nodes);
    ++graphs_with_forests;
  }
  CHECK(graphs_with_forests == 500);
}
