#include "lotprop/json_io.hpp"

#include <json.hpp>

#include <stdexcept>

#include "lotprop/friendship.hpp"

namespace lotprop {

namespace {

using nlohmann::json;

Rational rational_field(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw std::invalid_argument(std::string("expected \"p/q\" or integer for ") + key);
}

json action_json(const Action& a) {
  if (!a) return nullptr;
  return a->str();
}

json composition_json(const Composition& comp) {
  json arr = json::array();
  for (int c : comp) arr.push_back(c);
  return arr;
}

}  // namespace

Network network_from_json(const std::string& text) {
  try {
    json j = json::parse(text);
    NodeId nodes = j.at("nodes").get<NodeId>();
    NodeId sender = j.at("sender").get<NodeId>();
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (const json& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("edges must be [a, b] pairs");
      edges.emplace_back(e[0].get<NodeId>(), e[1].get<NodeId>());
    }
    return Network::general(nodes, sender, edges, rational_field(j, "x_min"),
                            rational_field(j, "initial_reward"));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad network json: ") + e.what());
  }
}

std::string network_to_json(const Network& net) {
  json j;
  j["nodes"] = net.node_count();
  j["sender"] = net.sender();
  j["x_min"] = net.x_min().str();
  j["initial_reward"] = net.initial_reward().str();
  json edges = json::array();
  for (NodeId v = 0; v < net.node_count(); ++v)
    for (NodeId u : net.neighbors(v))
      if (v < u) edges.push_back(json::array({v, u}));
  j["edges"] = edges;
  return j.dump();
}

std::string propagation_to_json(const Network& net, const PropagationOutcome& out) {
  json j;
  j["aware_count"] = out.aware_count;
  json players = json::array();
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (!net.is_player(v)) continue;
    json p;
    p["id"] = v;
    p["aware"] = static_cast<bool>(out.aware[v]);
    if (out.aware[v]) {
      p["reward"] = out.reward[v].str();
      p["parent"] = out.parent[v];
      p["round"] = out.round[v];
      p["referred"] = out.referred[v];
    }
    players.push_back(std::move(p));
  }
  j["players"] = players;
  return j.dump();
}

std::string utility_to_json(const Network& net, const PropagationOutcome& out,
                            NodeId player) {
  Rational u = utility(net, out, player);
  json j;
  j["player"] = player;
  j["utility"] = u.str();
  j["decimal"] = u.decimal(12);
  return j.dump();
}

std::string nash_to_json(const NashReport& rep) {
  json j;
  j["holds"] = rep.holds;
  j["deviations_checked"] = rep.deviations_checked;
  if (!rep.holds) {
    json w;
    w["player"] = rep.player;
    w["bucket"] = rep.bucket;
    json row = json::array();
    for (const Action& a : rep.deviation) row.push_back(action_json(a));
    w["deviation"] = row;
    w["base_utility"] = rep.base_utility.str();
    w["deviated_utility"] = rep.deviated_utility.str();
    j["witness"] = w;
  }
  return j.dump();
}

std::string coalition_to_json(const CoalitionReport& rep) {
  json j;
  j["holds"] = rep.holds;
  j["coalitions_checked"] = rep.coalitions_checked;
  j["deviations_checked"] = rep.deviations_checked;
  j["truncated"] = rep.truncated;
  if (rep.truncated) j["truncation_note"] = rep.truncation_note;
  if (!rep.holds) {
    json w;
    w["coalition"] = rep.coalition;
    json devs = json::array();
    for (const Composition& comp : rep.deviation) devs.push_back(composition_json(comp));
    w["deviation"] = devs;
    json base = json::array(), dev = json::array();
    for (const Rational& r : rep.base_utilities) base.push_back(r.str());
    for (const Rational& r : rep.deviated_utilities) dev.push_back(r.str());
    w["base_utilities"] = base;
    w["deviated_utilities"] = dev;
    j["witness"] = w;
  }
  return j.dump();
}

std::string elimination_to_jsonl(const EliminationResult& res) {
  std::string out;
  for (const EliminationEvent& e : res.log) {
    json j;
    j["round"] = e.round;
    j["player"] = e.coord.player;
    j["bucket"] = e.coord.bucket;
    j["slot"] = e.coord.slot;
    j["victim"] = action_json(e.victim);
    j["dominator"] = e.dominator.str();
    j["verification"] = e.verification;
    out += j.dump();
    out += '\n';
  }
  json verdict;
  verdict["rounds"] = res.rounds;
  verdict["events"] = res.log.size();
  verdict["collapsed_to_fp"] = res.collapsed_to_fp;
  verdict["profiles_tested"] = res.profiles_tested;
  out += verdict.dump();
  out += '\n';
  return out;
}

std::string friends_to_json(const Network& net) {
  ShortestPathData spd = shortest_paths(net);
  json j;
  j["min_good_friend_degree"] = min_good_friend_degree(net);
  json players = json::array();
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (!net.is_player(v)) continue;
    json p;
    p["id"] = v;
    if (spd.dist[v] < 0) {
      p["reachable"] = false;
    } else {
      std::optional<NodeId> bf = best_friend(net, spd, v);
      p["best_friend"] = bf ? json(*bf) : json(nullptr);
      p["good_friends"] = good_friends(net, spd, v);
    }
    players.push_back(std::move(p));
  }
  j["players"] = players;
  FriendshipForest forest = friendship_forest(net, spd);
  json fj;
  json edges = json::array();
  for (const auto& [bf, v] : forest.edges) edges.push_back(json::array({bf, v}));
  fj["edges"] = edges;
  fj["roots"] = forest.roots;
  j["forest"] = fj;
  return j.dump();
}

std::string sweep_to_json(const SweepReport& rep) {
  json j;
  j["claim"] = rep.claim;
  j["grid"] = rep.grid;
  j["points"] = rep.points;
  j["margin"] = rep.margin.str();
  j["margin_decimal"] = rep.margin.decimal(12);
  j["violations"] = rep.violations;
  j["boundary"] = rep.boundary;
  return j.dump();
}

std::string experiment_to_json(const ExperimentResult& res) {
  json j;
  json spec;
  spec["n"] = res.spec.n;
  spec["d"] = res.spec.d;
  spec["H"] = res.spec.H;
  spec["K"] = res.spec.K;
  spec["factor"] = res.spec.focal_degree_factor.str();
  spec["grid"] = res.spec.withhold_grid;
  spec["seed"] = res.spec.master_seed;
  j["spec"] = spec;
  json rows = json::array();
  for (const WithholdSummary& s : res.per_k) {
    json r;
    r["k"] = s.k;
    r["mean"] = s.mean.str();
    r["mean_decimal"] = s.mean.decimal(12);
    r["std"] = s.stddev;
    r["samples"] = s.samples.size();
    rows.push_back(std::move(r));
  }
  j["rows"] = rows;
  j["seconds"] = res.seconds;
  return j.dump();
}

ExperimentSpec experiment_spec_from_json(const std::string& text) {
  try {
    json j = json::parse(text);
    ExperimentSpec spec;
    if (j.contains("n")) spec.n = j["n"].get<int>();
    if (j.contains("d")) spec.d = j["d"].get<int>();
    if (j.contains("H")) spec.H = j["H"].get<int>();
    if (j.contains("K")) spec.K = j["K"].get<int>();
    if (j.contains("factor")) spec.focal_degree_factor = rational_field(j, "factor");
    if (j.contains("seed")) spec.master_seed = j["seed"].get<std::uint64_t>();
    if (j.contains("grid"))
      spec.withhold_grid = j["grid"].get<std::vector<int>>();
    else
      for (int k = 1; k <= spec.H; ++k) spec.withhold_grid.push_back(k);
    return spec;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad experiment spec: ") + e.what());
  }
}

}  // namespace lotprop
