#pragma once

#include <optional>
#include <vector>

#include "lotprop/network.hpp"
#include "lotprop/rational.hpp"

namespace lotprop {

// One per-neighbor decision: either pass an offer carrying `z` (the amount
// left to the neighbor) or decline to inform them at all.
using Action = std::optional<Rational>;

inline Action decline() { return std::nullopt; }

// A pure strategy for every player. Rewards are grouped into buckets
// k = floor(x / x_min); one action vector per bucket covers every reward the
// player might realize in it. Bucket 0 (reward below x_min) is implicitly
// all-decline: such a player cannot afford any offer. Feasibility for
// bucket k is 0 <= z <= (k-1)*x_min, the largest amount affordable at every
// reward in the bucket.
class StrategyProfile {
 public:
  explicit StrategyProfile(const Network& net);

  // Everyone passes the maximum feasible grid amount: at bucket k each
  // neighbor is offered (k-1)*x_min.
  static StrategyProfile full_propagation(const Network& net);

  // Everyone declines everything.
  static StrategyProfile all_decline(const Network& net);

  // Like full_propagation, but `player` keeps k*x_min at every bucket
  // instead of x_min: at bucket m she leaves max(0, m-k)*x_min to each
  // neighbor. k = 1 is full propagation.
  static StrategyProfile uniform_withhold(const Network& net, NodeId player, int k);

  const Rational& x_min() const { return x_min_; }
  int max_bucket() const { return max_bucket_; }
  int bucket_of(const Rational& reward) const;

  // Slot indices align with net.neighbors(player).
  const Action& action(NodeId player, int bucket, int slot) const;
  const std::vector<Action>& row(NodeId player, int bucket) const;
  void set_action(NodeId player, int bucket, int slot, Action a);
  void set_row(NodeId player, int bucket, std::vector<Action> actions);
  // Sets every slot of every bucket row of `player` to the same action
  // produced by fn(bucket).
  void fill_player(NodeId player, const std::vector<Action>& per_bucket);

  // Throws std::invalid_argument naming player and bucket if any action
  // falls outside [0, (bucket-1)*x_min].
  void validate(const Network& net) const;

 private:
  Rational x_min_;
  int max_bucket_ = 0;
  // rows_[player][bucket-1] = actions per neighbor slot
  std::vector<std::vector<std::vector<Action>>> rows_;
};

// Feasible half-grid action set at a reward bucket: decline, then multiples
// of x_min/2 from 0 up to (bucket-1)*x_min.
std::vector<Action> bucket_action_set(int bucket, const Rational& x_min);

}  // namespace lotprop
