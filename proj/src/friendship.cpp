#include "lotprop/friendship.hpp"

#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace lotprop {

ShortestPathData shortest_paths(const Network& net) {
  ShortestPathData spd;
  spd.dist.assign(net.node_count(), -1);
  spd.path_count.assign(net.node_count(), mpz_class(0));
  std::queue<NodeId> q;
  spd.dist[net.sender()] = 0;
  spd.path_count[net.sender()] = 1;
  q.push(net.sender());
  // All nodes at distance t leave the queue before any node at t+1, so a
  // node's count is complete before it feeds its successors.
  while (!q.empty()) {
    NodeId u = q.front();
    q.pop();
    for (NodeId v : net.neighbors(u)) {
      if (spd.dist[v] < 0) {
        spd.dist[v] = spd.dist[u] + 1;
        q.push(v);
      }
      if (spd.dist[v] == spd.dist[u] + 1) spd.path_count[v] += spd.path_count[u];
    }
  }
  return spd;
}

std::optional<NodeId> best_friend(const Network& net, const ShortestPathData& spd, NodeId j) {
  if (j == net.sender()) throw std::invalid_argument("best_friend: j is the sender");
  if (spd.dist[j] < 0) throw std::invalid_argument("best_friend: player " + std::to_string(j) + " unreachable");
  // A neighbor on any shortest path to j must sit at dist(j)-1 (adjacency
  // bounds its distance below, lying on a shortest path bounds it above) and
  // is then the last hop of every path through it. It covers all paths
  // exactly when its own path count equals j's.
  for (NodeId i : net.neighbors(j)) {
    if (spd.dist[i] == spd.dist[j] - 1 && spd.path_count[i] == spd.path_count[j]) return i;
  }
  return std::nullopt;
}

std::vector<NodeId> good_friends(const Network& net, const ShortestPathData& spd, NodeId i) {
  std::vector<NodeId> out;
  for (NodeId j : net.neighbors(i)) {
    if (!net.is_player(j) || spd.dist[j] < 0) continue;
    auto bf = best_friend(net, spd, j);
    if (bf && *bf == i) out.push_back(j);
  }
  return out;
}

FriendshipForest friendship_forest(const Network& net, const ShortestPathData& spd) {
  FriendshipForest f;
  f.parent.assign(net.node_count(), -1);
  f.roots.push_back(net.sender());
  for (NodeId j = 0; j < net.node_count(); ++j) {
    if (!net.is_player(j) || spd.dist[j] < 0) continue;
    auto bf = best_friend(net, spd, j);
    if (bf) {
      f.parent[j] = *bf;
      f.edges.emplace_back(*bf, j);
    } else {
      f.roots.push_back(j);
    }
  }
  return f;
}

int min_good_friend_degree(const Network& net) {
  ShortestPathData spd = shortest_paths(net);
  int horizon = net.max_bucket();
  int best = std::numeric_limits<int>::max();
  bool any = false;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (!net.is_player(v) || spd.dist[v] < 0 || spd.dist[v] > horizon) continue;
    any = true;
    int deg = static_cast<int>(good_friends(net, spd, v).size());
    if (deg < best) best = deg;
  }
  return any ? best : 0;
}

}  // namespace lotprop
