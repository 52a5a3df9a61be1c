#pragma once

#include <string>

#include "lotprop/checks.hpp"
#include "lotprop/elimination.hpp"
#include "lotprop/equilibrium.hpp"
#include "lotprop/experiments.hpp"
#include "lotprop/network.hpp"
#include "lotprop/propagation.hpp"

namespace lotprop {

// Network wire format:
// {"nodes": N, "sender": s, "x_min": "p/q", "initial_reward": "p/q",
//  "edges": [[a,b], ...]}
// Rationals travel as "p/q" strings (bare integers also accepted on input).
Network network_from_json(const std::string& text);
std::string network_to_json(const Network& net);

std::string propagation_to_json(const Network& net, const PropagationOutcome& out);
std::string utility_to_json(const Network& net, const PropagationOutcome& out,
                            NodeId player);
std::string nash_to_json(const NashReport& rep);
std::string coalition_to_json(const CoalitionReport& rep);

// One JSON object per elimination event, newline separated, then a final
// verdict object ({"rounds", "events", "collapsed_to_fp", ...}).
std::string elimination_to_jsonl(const EliminationResult& res);

// Per-player best friend (null when none) and good friends, plus the
// best-friend forest and the minimum good-friend degree.
std::string friends_to_json(const Network& net);

std::string sweep_to_json(const SweepReport& rep);

std::string experiment_to_json(const ExperimentResult& res);
// {"n", "d", "H", "K", "factor": "p/q", "grid": [k...], "seed"}; missing
// fields keep ExperimentSpec defaults, a missing grid means 1..H.
ExperimentSpec experiment_spec_from_json(const std::string& text);

}  // namespace lotprop
