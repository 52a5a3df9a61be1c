#include "lotprop/network.hpp"

#include <algorithm>
#include <stdexcept>

namespace lotprop {

std::int64_t geometric_count(int d, int k) {
  if (d < 2) throw std::invalid_argument("geometric_count: d must be >= 2");
  if (k < 0) throw std::invalid_argument("geometric_count: k must be >= 0");
  std::int64_t total = 0, pw = 1;
  for (int j = 0; j < k; ++j) {
    total += pw;
    if (pw > (std::int64_t{1} << 56)) throw std::overflow_error("geometric_count: overflow");
    pw *= d;
  }
  return total;
}

namespace {

// Like geometric_count but tolerates d == 1 (a path has one node per level).
std::int64_t level_total(int d, int k) {
  if (d == 1) return k;
  return geometric_count(d, k);
}

}  // namespace

Network Network::dary_forest(int d, int f, int depth) {
  if (depth < 1) throw std::invalid_argument("dary_forest: depth must be >= 1");
  return dary_forest(d, f, depth, Rational(1, depth));
}

Network Network::dary_forest(int d, int f, int depth, const Rational& x_min) {
  if (d < 1) throw std::invalid_argument("dary_forest: d must be >= 1");
  if (f < d) throw std::invalid_argument("dary_forest: need f >= d");
  if (depth < 1) throw std::invalid_argument("dary_forest: depth must be >= 1");
  if (x_min.sign() <= 0) throw std::invalid_argument("dary_forest: x_min must be positive");

  const std::int64_t per_tree = level_total(d, depth + 1);
  const std::int64_t nodes = 1 + static_cast<std::int64_t>(f) * per_tree;
  if (nodes > 2'000'000) throw std::invalid_argument("dary_forest: network too large");

  Network net;
  net.sender_ = 0;
  net.adj_.assign(static_cast<std::size_t>(nodes), {});
  net.dary_ = DaryShape{d, f, depth};
  net.x_min_ = x_min;
  net.initial_reward_ = x_min * Rational(depth);

  auto link = [&net](NodeId a, NodeId b) {
    net.adj_[a].push_back(b);
    net.adj_[b].push_back(a);
  };

  for (int t = 0; t < f; ++t) {
    const NodeId base = 1 + static_cast<NodeId>(t * per_tree);
    link(0, base);
    for (int level = 0; level < depth; ++level) {
      const NodeId lvl_start = base + static_cast<NodeId>(level_total(d, level));
      const NodeId next_start = base + static_cast<NodeId>(level_total(d, level + 1));
      const std::int64_t lvl_size = level == 0 ? 1 : (d == 1 ? 1 : level_total(d, level + 1) - level_total(d, level));
      for (std::int64_t i = 0; i < lvl_size; ++i)
        for (int c = 0; c < d; ++c)
          link(lvl_start + static_cast<NodeId>(i), next_start + static_cast<NodeId>(i * d + c));
    }
  }
  for (auto& lst : net.adj_) std::sort(lst.begin(), lst.end());
  return net;
}

Network Network::general(NodeId node_count, NodeId sender,
                         const std::vector<std::pair<NodeId, NodeId>>& edges,
                         const Rational& x_min, const Rational& initial_reward) {
  if (node_count < 2) throw std::invalid_argument("network: need at least one player");
  if (sender < 0 || sender >= node_count) throw std::invalid_argument("network: sender out of range");
  if (x_min.sign() <= 0) throw std::invalid_argument("network: x_min must be positive");
  if (initial_reward.sign() <= 0) throw std::invalid_argument("network: initial reward must be positive");

  Network net;
  net.sender_ = sender;
  net.adj_.assign(static_cast<std::size_t>(node_count), {});
  net.x_min_ = x_min;
  net.initial_reward_ = initial_reward;
  for (auto [u, v] : edges) {
    if (u < 0 || u >= node_count || v < 0 || v >= node_count)
      throw std::invalid_argument("network: edge endpoint out of range");
    if (u == v) throw std::invalid_argument("network: self loop");
    net.adj_[u].push_back(v);
    net.adj_[v].push_back(u);
  }
  for (auto& lst : net.adj_) {
    std::sort(lst.begin(), lst.end());
    lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
  }
  if (net.adj_[sender].empty()) throw std::invalid_argument("network: sender has no neighbors");
  return net;
}

bool Network::adjacent(NodeId u, NodeId v) const {
  return slot_of(u, v) >= 0;
}

int Network::slot_of(NodeId v, NodeId u) const {
  const auto& lst = adj_[v];
  auto it = std::lower_bound(lst.begin(), lst.end(), u);
  if (it == lst.end() || *it != u) return -1;
  return static_cast<int>(it - lst.begin());
}

std::vector<std::pair<NodeId, NodeId>> Network::edge_list() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (NodeId v = 0; v < node_count(); ++v)
    for (NodeId u : adj_[v])
      if (v < u) out.emplace_back(v, u);
  return out;
}

NodeId Network::subtree_root(int tree_index) const {
  if (!dary_) throw std::logic_error("network: not a d-ary forest");
  if (tree_index < 0 || tree_index >= dary_->f) throw std::invalid_argument("network: tree index out of range");
  const std::int64_t per_tree = level_total(dary_->d, dary_->depth + 1);
  return 1 + static_cast<NodeId>(tree_index * per_tree);
}

int Network::forest_depth_of(NodeId v) const {
  if (!dary_) throw std::logic_error("network: not a d-ary forest");
  if (v == sender_) return -1;
  const std::int64_t per_tree = level_total(dary_->d, dary_->depth + 1);
  std::int64_t offset = (v - 1) % per_tree;
  for (int level = 0; level <= dary_->depth; ++level)
    if (offset < level_total(dary_->d, level + 1)) return level;
  throw std::logic_error("network: bad forest layout");
}

std::vector<NodeId> Network::forest_children(NodeId v) const {
  const int level = forest_depth_of(v);
  std::vector<NodeId> out;
  if (level < 0) {  // sender: children are the subtree roots
    for (int t = 0; t < dary_->f; ++t) out.push_back(subtree_root(t));
    return out;
  }
  if (level >= dary_->depth) return out;
  for (NodeId u : adj_[v])
    if (u != sender_ && forest_depth_of(u) == level + 1) out.push_back(u);
  return out;
}

}  // namespace lotprop
