#include "lotprop/strategy.hpp"

#include <stdexcept>
#include <string>

namespace lotprop {

StrategyProfile::StrategyProfile(const Network& net)
    : x_min_(net.x_min()), max_bucket_(net.max_bucket()) {
  rows_.resize(net.node_count());
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (!net.is_player(v)) continue;
    rows_[v].assign(max_bucket_, std::vector<Action>(net.neighbors(v).size(), decline()));
  }
}

StrategyProfile StrategyProfile::full_propagation(const Network& net) {
  StrategyProfile p(net);
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (!net.is_player(v)) continue;
    for (int k = 1; k <= p.max_bucket_; ++k) {
      Rational give = p.x_min_ * Rational(k - 1);
      for (auto& a : p.rows_[v][k - 1]) a = give;
    }
  }
  return p;
}

StrategyProfile StrategyProfile::all_decline(const Network& net) {
  return StrategyProfile(net);
}

StrategyProfile StrategyProfile::uniform_withhold(const Network& net, NodeId player, int k) {
  if (k < 1) throw std::invalid_argument("uniform_withhold: k must be >= 1");
  if (!net.is_player(player)) throw std::invalid_argument("uniform_withhold: not a player");
  StrategyProfile p = full_propagation(net);
  for (int m = 1; m <= p.max_bucket_; ++m) {
    Rational give = p.x_min_ * Rational(m > k ? m - k : 0);
    for (auto& a : p.rows_[player][m - 1]) a = give;
  }
  return p;
}

int StrategyProfile::bucket_of(const Rational& reward) const {
  if (reward.sign() < 0) throw std::invalid_argument("bucket_of: negative reward");
  long b = reward.floor_div(x_min_);
  return b > max_bucket_ ? max_bucket_ : static_cast<int>(b);
}

const Action& StrategyProfile::action(NodeId player, int bucket, int slot) const {
  return rows_[player][bucket - 1][slot];
}

const std::vector<Action>& StrategyProfile::row(NodeId player, int bucket) const {
  return rows_[player][bucket - 1];
}

void StrategyProfile::set_action(NodeId player, int bucket, int slot, Action a) {
  rows_[player][bucket - 1][slot] = std::move(a);
}

void StrategyProfile::set_row(NodeId player, int bucket, std::vector<Action> actions) {
  if (actions.size() != rows_[player][bucket - 1].size())
    throw std::invalid_argument("set_row: slot count mismatch");
  rows_[player][bucket - 1] = std::move(actions);
}

void StrategyProfile::fill_player(NodeId player, const std::vector<Action>& per_bucket) {
  if (static_cast<int>(per_bucket.size()) != max_bucket_)
    throw std::invalid_argument("fill_player: need one action per bucket");
  for (int k = 1; k <= max_bucket_; ++k)
    for (auto& a : rows_[player][k - 1]) a = per_bucket[k - 1];
}

void StrategyProfile::validate(const Network& net) const {
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (!net.is_player(v)) continue;
    for (int k = 1; k <= max_bucket_; ++k) {
      Rational cap = x_min_ * Rational(k - 1);
      for (const auto& a : rows_[v][k - 1]) {
        if (!a) continue;
        if (a->sign() < 0 || *a > cap)
          throw std::invalid_argument("strategy: infeasible offer by player " + std::to_string(v) +
                                      " at bucket " + std::to_string(k));
      }
    }
  }
}

std::vector<Action> bucket_action_set(int bucket, const Rational& x_min) {
  std::vector<Action> out;
  out.push_back(decline());
  if (bucket < 1) return out;
  const Rational half = x_min / Rational(2);
  for (int g = 0; g <= 2 * (bucket - 1); ++g) out.push_back(half * Rational(g));
  return out;
}

}  // namespace lotprop
