#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lotprop/rational.hpp"

namespace lotprop {

using NodeId = std::int32_t;

// Sum of the first k powers of d starting at d^0: 1 + d + ... + d^(k-1).
// Counts the nodes of a complete d-ary tree with k levels. d must be >= 2;
// use a plain loop for degenerate shapes.
std::int64_t geometric_count(int d, int k);

struct DaryShape {
  int d = 0;      // children per internal node
  int f = 0;      // number of subtrees hanging off the sender
  int depth = 0;  // reward horizon: levels 0..depth are materialized
};

// Undirected simple graph with one distinguished sender node. Every other
// node is a player. The pair (x_min, initial_reward) travels with the
// network: offers below x_min cannot be made, the sender hands
// initial_reward to each neighbor.
class Network {
 public:
  // Sender plus f complete d-ary subtrees. Levels 0..depth below the subtree
  // roots are materialized; the deepest level exists so that full propagation
  // has somewhere to leave its final zero-reward offers (those players can
  // never pass anything on: each hop costs at least x_min). Player count is
  // f * geometric_count(d, depth+1). Default x_min of 1/depth makes the
  // initial reward exactly 1.
  static Network dary_forest(int d, int f, int depth);
  static Network dary_forest(int d, int f, int depth, const Rational& x_min);

  static Network general(NodeId node_count, NodeId sender,
                         const std::vector<std::pair<NodeId, NodeId>>& edges,
                         const Rational& x_min, const Rational& initial_reward);

  NodeId node_count() const { return static_cast<NodeId>(adj_.size()); }
  NodeId player_count() const { return node_count() - 1; }
  NodeId sender() const { return sender_; }
  bool is_player(NodeId v) const { return v != sender_ && v >= 0 && v < node_count(); }

  const std::vector<NodeId>& neighbors(NodeId v) const { return adj_[v]; }
  int degree(NodeId v) const { return static_cast<int>(adj_[v].size()); }
  bool adjacent(NodeId u, NodeId v) const;
  // Position of neighbor u in the sorted adjacency list of v, or -1.
  int slot_of(NodeId v, NodeId u) const;

  const std::optional<DaryShape>& dary() const { return dary_; }
  const Rational& x_min() const { return x_min_; }
  const Rational& initial_reward() const { return initial_reward_; }
  // Highest reward bucket any player can realize: floor(initial / x_min).
  int max_bucket() const { return static_cast<int>(initial_reward_.floor_div(x_min_)); }

  std::vector<std::pair<NodeId, NodeId>> edge_list() const;

  // Forest-shape helpers (valid only when dary() is set).
  NodeId subtree_root(int tree_index) const;
  int forest_depth_of(NodeId v) const;  // 0 for subtree roots
  std::vector<NodeId> forest_children(NodeId v) const;

 private:
  Network() = default;
  NodeId sender_ = 0;
  std::vector<std::vector<NodeId>> adj_;
  std::optional<DaryShape> dary_;
  Rational x_min_;
  Rational initial_reward_;
};

}  // namespace lotprop
