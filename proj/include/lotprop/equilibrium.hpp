#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lotprop/network.hpp"
#include "lotprop/propagation.hpp"
#include "lotprop/rational.hpp"
#include "lotprop/strategy.hpp"

namespace lotprop {

// Reasonable strategy (d_0, d_1, ..., d_k): d_0 targets are declined, d_l
// targets receive (l-1)*x_min and so relay the information l-1 further
// levels. Entries sum to the number of targets.
using Composition = std::vector<int>;

// Every composition of `total` into `parts` nonnegative entries, in
// lexicographic order. The last one is (0, ..., 0, total), full propagation
// when parts = bucket+1.
std::vector<Composition> all_compositions(int total, int parts);

// Subgame on one complete d-ary subtree whose root holds reward
// x = (k + eps) * x_min, with pi0 aware players outside the subtree (the
// root not included in pi0).
struct SubgameContext {
  int d = 3;
  int k = 1;
  Rational eps;
  long pi0 = 0;
  Rational x_min = Rational(1);
};

// Exact root utility Q/W of a reasonable strategy when all descendants fully
// propagate: Q = x + sum_l d_l G(l) (x - (l-1) x_min),
// W = pi0 + 1 + sum_l d_l G(l).
Rational subgame_utility(const SubgameContext& ctx, const Composition& comp);

// True iff moving one unit from level l to l+1 strictly raises the root's
// utility. Guaranteed for d >= 3 under pi0 >= d G(k) + 2k - 1; callable
// outside that range to probe tightness.
bool lemma3_step_check(const SubgameContext& ctx, const Composition& comp, int l);

// Concrete network realizing a SubgameContext for oracle comparisons: the
// sender feeds pi0-1 dummy leaves directly plus one feeder player who leaves
// exactly (k+eps)*x_min to the subtree root. `base` plays full propagation
// everywhere except the feeder's single tuned offer.
struct EmbeddedSubgame {
  Network net;
  NodeId root = -1;
  NodeId feeder = -1;
  StrategyProfile base;
};
EmbeddedSubgame embed_subgame(const SubgameContext& ctx);

// Players a composition distributes over: forest children on d-ary forests,
// otherwise the player's good friends.
std::vector<NodeId> composition_targets(const Network& net, NodeId player);

// Realize a composition as a full action row for `player` at `bucket`:
// targets ascending by id, the first d_0 declined, the next d_1 left 0, and
// so on; slots outside `targets` keep the actions of `keep`.
std::vector<Action> composition_row(const Network& net, NodeId player, int bucket,
                                    const std::vector<NodeId>& targets,
                                    const Composition& comp, const std::vector<Action>& keep);

struct BestResponse {
  std::vector<Composition> argmax;  // maximizers over compositions
  Rational best;                    // their exact utility
  std::int64_t evaluated = 0;
  // Set when a half-grid action row strictly beats every composition.
  bool half_grid_beats = false;
  std::vector<Action> half_grid_witness;
};

// Exhaustive search of `player`'s responses at `bucket`, everyone else fixed
// to `profile`. Scans all compositions, and optionally the full half-grid
// action space over the same target slots.
BestResponse best_response(const Network& net, const StrategyProfile& profile, NodeId player,
                           int bucket, bool scan_half_grid = true);

struct NashReport {
  bool holds = true;
  std::int64_t deviations_checked = 0;
  // Witness on failure.
  NodeId player = -1;
  int bucket = 0;
  std::vector<Action> deviation;
  Rational base_utility;
  Rational deviated_utility;
};

// Exhaustive unilateral-deviation check over the half-grid action space at
// each player's realized bucket. Slots whose neighbor is locked before the
// player's own offers go out (aware no later than the player herself) are
// skipped; actions there cannot change any utility.
NashReport is_nash(const Network& net, const StrategyProfile& profile);

enum class CommGraph {
  players,         // the network itself restricted to players
  friendship,      // best-friend edges restricted to players
  roots_complete,  // complete graph over the sender's direct neighbors
};

struct CoalitionReport {
  bool holds = true;
  std::int64_t coalitions_checked = 0;
  std::int64_t deviations_checked = 0;
  bool truncated = false;  // some coalition's deviation space exceeded the cap
  std::string truncation_note;
  // Witness on failure.
  std::vector<NodeId> coalition;
  std::vector<Composition> deviation;  // per member, aligned with coalition
  std::vector<Rational> base_utilities;
  std::vector<Rational> deviated_utilities;
};

// Searches every connected coalition of up to max_coalition players on the
// chosen communication graph. Each member ranges over reasonable strategies
// at her realized bucket (full propagation at any other bucket); a witness
// needs every member weakly better off and one strictly.
CoalitionReport is_connected_coalition_proof(const Network& net, const StrategyProfile& profile,
                                             CommGraph comm, int max_coalition,
                                             std::int64_t deviation_cap = 2000000);

// The known non-FP equilibrium on d-ary forests with d >= 4: the first
// subtree's root leaves 0 to every child at every bucket, her children
// decline everything, everyone else fully propagates.
StrategyProfile counterexample_profile(const Network& net);

}  // namespace lotprop
