#include "lotprop/propagation.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace lotprop {

namespace {

struct PendingOffer {
  const Rational* amount = nullptr;
  NodeId from = -1;
};

}  // namespace

PropagationOutcome propagate(const Network& net, const StrategyProfile& profile,
                             std::span<const RowOverride> overrides) {
  const NodeId n = net.node_count();
  PropagationOutcome out;
  out.aware.assign(n, 0);
  out.reward.assign(n, Rational());
  out.parent.assign(n, -1);
  out.round.assign(n, -1);
  out.referred.assign(n, 0);

  // Per-bucket feasibility caps, shared across all offers.
  const int max_bucket = profile.max_bucket();
  std::vector<Rational> cap(max_bucket + 1);
  for (int k = 1; k <= max_bucket; ++k) cap[k] = profile.x_min() * Rational(k - 1);

  auto override_row = [&overrides](NodeId v, int bucket) -> const std::vector<Action>* {
    for (const auto& o : overrides)
      if (o.player == v && o.bucket == bucket) return &o.actions;
    return nullptr;
  };

  std::vector<PendingOffer> pending(n);
  std::vector<NodeId> touched;
  std::vector<NodeId> frontier;

  // Round 1: the sender hands the initial reward to every neighbor.
  for (NodeId u : net.neighbors(net.sender())) {
    out.aware[u] = 1;
    out.reward[u] = net.initial_reward();
    out.parent[u] = net.sender();
    out.round[u] = 1;
    frontier.push_back(u);
    ++out.aware_count;
  }

  int round = 1;
  while (!frontier.empty()) {
    touched.clear();
    for (NodeId v : frontier) {
      const int bucket = profile.bucket_of(out.reward[v]);
      if (bucket < 1) continue;
      const std::vector<Action>* row = override_row(v, bucket);
      if (!row) row = &profile.row(v, bucket);
      const auto& nbrs = net.neighbors(v);
      for (std::size_t s = 0; s < nbrs.size(); ++s) {
        const NodeId u = nbrs[s];
        if (u == net.sender() || out.aware[u]) continue;
        const Action& a = (*row)[s];
        if (!a) continue;
        if (a->sign() < 0 || *a > cap[bucket])
          throw std::invalid_argument("propagate: infeasible offer by player " + std::to_string(v) +
                                      " at bucket " + std::to_string(bucket));
        PendingOffer& p = pending[u];
        if (!p.amount) {
          touched.push_back(u);
          p = {&*a, v};
        } else if (*p.amount < *a || (*p.amount == *a && v < p.from)) {
          p = {&*a, v};
        }
      }
    }
    frontier.clear();
    std::sort(touched.begin(), touched.end());
    ++round;
    for (NodeId u : touched) {
      PendingOffer& p = pending[u];
      out.aware[u] = 1;
      out.reward[u] = *p.amount;
      out.parent[u] = p.from;
      out.round[u] = round;
      frontier.push_back(u);
      ++out.aware_count;
      p = PendingOffer{};
    }
  }

  // Claim-subtree sizes: walk players from the latest round back to the first.
  std::vector<NodeId> order;
  order.reserve(static_cast<std::size_t>(out.aware_count));
  for (NodeId v = 0; v < n; ++v)
    if (out.aware[v]) {
      out.referred[v] = 1;
      order.push_back(v);
    }
  std::sort(order.begin(), order.end(),
            [&out](NodeId a, NodeId b) { return out.round[a] > out.round[b]; });
  for (NodeId v : order)
    if (out.parent[v] != net.sender()) out.referred[out.parent[v]] += out.referred[v];

  return out;
}

Rational utility(const Network& net, const PropagationOutcome& out, NodeId player) {
  if (!net.is_player(player)) throw std::invalid_argument("utility: not a player");
  if (!out.aware[player]) return Rational(0);
  Rational num = out.reward[player];
  for (NodeId u : net.neighbors(player)) {
    if (u == net.sender() || out.parent[u] != player) continue;
    num += (out.reward[player] - out.reward[u]) * Rational(out.referred[u]);
  }
  return num / Rational(out.aware_count);
}

}  // namespace lotprop
