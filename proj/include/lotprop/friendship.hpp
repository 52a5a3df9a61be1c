#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "lotprop/network.hpp"

namespace lotprop {

// Hop distances from the sender and exact shortest-path counts. Counts grow
// exponentially with the graph, hence big integers. Unreachable nodes carry
// dist -1 and count 0.
struct ShortestPathData {
  std::vector<int> dist;
  std::vector<mpz_class> path_count;
};

ShortestPathData shortest_paths(const Network& net);

// The unique neighbor of j lying on every shortest sender-to-j path, if one
// exists. May be the sender itself. Such a neighbor necessarily sits one hop
// closer to the sender and carries the full shortest-path count of j.
// Throws if j is the sender or unreachable.
std::optional<NodeId> best_friend(const Network& net, const ShortestPathData& spd, NodeId j);

// Players whose best friend is i, in ascending id order. i may be the sender.
std::vector<NodeId> good_friends(const Network& net, const ShortestPathData& spd, NodeId i);

// Best-friend edges over the reachable part of the network. Always a forest:
// every reachable player has at most one best friend, and best friends sit
// strictly closer to the sender. Roots are the sender plus every reachable
// player without a best friend.
struct FriendshipForest {
  std::vector<std::pair<NodeId, NodeId>> edges;  // (best friend, player)
  std::vector<NodeId> roots;
  std::vector<NodeId> parent;  // by node; -1 for roots and unreachable nodes
};

FriendshipForest friendship_forest(const Network& net, const ShortestPathData& spd);

// Minimum number of good friends over strategic players: reachable players
// within hop distance max_bucket() of the sender (anyone farther can never
// hold a reward of x_min). Returns 0 if there are no strategic players.
int min_good_friend_degree(const Network& net);

}  // namespace lotprop
