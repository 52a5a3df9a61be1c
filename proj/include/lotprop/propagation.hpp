#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lotprop/network.hpp"
#include "lotprop/strategy.hpp"

namespace lotprop {

// Replaces one bucket row of one player for a single propagation run,
// without copying the whole profile. Used heavily by deviation searches.
struct RowOverride {
  NodeId player = -1;
  int bucket = 0;
  std::vector<Action> actions;  // aligned with net.neighbors(player)
};

struct PropagationOutcome {
  std::int64_t aware_count = 0;
  std::vector<char> aware;            // by node; sender is never "aware"
  std::vector<Rational> reward;       // realized reward, valid where aware
  std::vector<NodeId> parent;         // accepted offerer (sender for first hop); -1 if none
  std::vector<int> round;             // awareness round, 1 = sender's neighbors; -1 if unaware
  std::vector<std::int64_t> referred; // players in the claim subtree of v, incl. v
};

// Runs the offer process to quiescence. Round r+1: every player who became
// aware in round r applies her action vector for the realized reward bucket
// to each neighbor that is neither the sender nor already aware. A player
// receiving offers accepts the largest (ties to the smallest offerer id),
// locks that offerer as parent and the offer as her reward, permanently.
PropagationOutcome propagate(const Network& net, const StrategyProfile& profile,
                             std::span<const RowOverride> overrides = {});

// Expected lottery payoff: the player's own winning chance plus her cut of
// every player she referred, all over the aware count. Zero if unaware.
Rational utility(const Network& net, const PropagationOutcome& out, NodeId player);

}  // namespace lotprop
