#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lotprop/network.hpp"
#include "lotprop/rational.hpp"
#include "lotprop/strategy.hpp"

namespace lotprop {

// One per-neighbor action choice in a player's strategy table. `slot`
// indexes neighbors(player); only slots toward forest children carry any
// weight, so those are the only coordinates kept.
struct Coordinate {
  NodeId player = -1;
  int bucket = 0;
  int slot = 0;
  bool operator==(const Coordinate&) const = default;
};

// Product strategy space over realizable rows: the root of a subtree only
// ever holds the full initial reward, a depth-j player only ever lands in
// buckets 1..H-j. Each coordinate starts with the half-grid action set of
// its bucket and shrinks as eliminations apply.
class EliminationState {
 public:
  static EliminationState initial(const Network& net);

  const Network& net() const { return *net_; }
  const std::vector<int>& realizable_buckets(NodeId player) const;
  const std::vector<int>& child_slots(NodeId player) const;
  const std::vector<Action>& surviving(NodeId player, int bucket, int slot) const;
  std::vector<Coordinate> coordinates() const;

  // Removes one action; throws if it is absent or the last one standing.
  void eliminate(NodeId player, int bucket, int slot, const Action& victim);

  // True when every coordinate is the singleton full-propagation offer.
  bool collapsed_to_full_propagation() const;

 private:
  const Network* net_ = nullptr;
  std::vector<std::vector<int>> buckets_;             // per player
  std::vector<std::vector<int>> slots_;               // per player, child slots
  // sets_[player][bucket_index][slot_index] = surviving actions, ascending
  // with decline first.
  std::vector<std::vector<std::vector<std::vector<Action>>>> sets_;
  int bucket_index(NodeId player, int bucket) const;
  int slot_index(NodeId player, int slot) const;
};

struct VerifyOptions {
  std::int64_t exhaustive_budget = 1'000'000;  // full enumeration when the
                                               // joint space fits
  int samples = 120;                           // random opponent draws otherwise
  int own_completion_cap = 16;                 // sweep own other slots up to this
  std::uint64_t seed = 7;
};

struct DominanceOutcome {
  bool dominated = false;
  bool strict_seen = false;
  bool vacuous = false;            // no surviving profile realizes the bucket
  std::int64_t profiles_tested = 0;
  std::string label;               // "exhaustive" or "sampled(n=..., seed=...)"
  std::string counterexample;      // set when dominated is false
};

// Hunts for a profile of surviving strategies against which `victim` at the
// coordinate beats `dominator`. Ancestors are pinned to full propagation so
// the coordinate's bucket is actually realized; everything else is either
// enumerated exhaustively or sampled (always including the all-minimum and
// all-maximum profiles).
DominanceOutcome verify_dominance(const EliminationState& state, const Coordinate& coord,
                                  const Action& victim, const Rational& dominator,
                                  const VerifyOptions& opts);

struct EliminationEvent {
  int round = 0;
  Coordinate coord;
  Action victim;
  Rational dominator;
  std::string verification;
};

struct EliminationResult {
  std::vector<EliminationEvent> log;
  int rounds = 0;
  bool collapsed_to_fp = false;
  std::int64_t profiles_tested = 0;
};

// The fixed elimination order on a d-ary forest with f >= d+1 subtrees.
// Round 1 drops declines and the fraction below x_min in favor of leaving 0;
// round r >= 2 drops (r-2)x_min and the fraction between (r-1)x_min and
// r*x_min in favor of (r-1)x_min at every bucket >= r. Every event is
// verified against the pre-round state before the round applies; a refuted
// event throws std::runtime_error with the counterexample.
EliminationResult eliminate_appendix_order(const Network& net, const VerifyOptions& opts = {});

// Shuffled candidate order: repeatedly scans (coordinate, victim, dominator)
// pairs in random order, eliminating whichever verifies against the current
// state, until a full pass eliminates nothing. Rounds in the log are pass
// numbers.
EliminationResult eliminate_random_order(const Network& net, std::uint64_t order_seed,
                                         const VerifyOptions& opts = {});

// True when full propagation survives at every coordinate.
bool full_propagation_survives(const EliminationState& state);
EliminationState replay(const Network& net, const std::vector<EliminationEvent>& log);

// Order sanity check: writing each event as the strategy that fully
// propagates except for the victim at its coordinate, a later elimination
// must not sit more than x_min below an earlier one at the first bucket
// where their row minima differ (declines count as -x_min). Events of the
// same round are simultaneous and unconstrained.
bool order_is_almost_monotonic(const Network& net, const std::vector<EliminationEvent>& log);

}  // namespace lotprop
