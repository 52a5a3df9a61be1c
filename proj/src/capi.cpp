#include "lotprop.h"

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <map>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "lotprop/checks.hpp"
#include "lotprop/elimination.hpp"
#include "lotprop/equilibrium.hpp"
#include "lotprop/experiments.hpp"
#include "lotprop/json_io.hpp"
#include "lotprop/network.hpp"
#include "lotprop/propagation.hpp"
#include "lotprop/rational.hpp"
#include "lotprop/strategy.hpp"

struct lp_network {
  lotprop::Network net;
};

namespace {

using lotprop::Network;
using lotprop::NodeId;
using lotprop::Rational;
using lotprop::StrategyProfile;

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put_string(char** slot, const std::string& s) {
  if (slot) *slot = dup_string(s);
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

template <typename Fn>
lp_status guarded(Fn&& fn) {
  try {
    fn();
    return LP_OK;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return LP_EINVAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LP_ERUNTIME;
  }
}

long parse_long(const std::string& s, const std::string& what) {
  errno = 0;
  char* end = nullptr;
  long v = std::strtol(s.c_str(), &end, 10);
  require(errno == 0 && end && *end == '\0' && end != s.c_str(),
          what + ": not an integer: \"" + s + "\"");
  return v;
}

StrategyProfile make_profile(const Network& net, const char* spec, NodeId player) {
  require(spec != nullptr, "profile must not be null");
  std::string s = spec;
  if (s == "fp") return StrategyProfile::full_propagation(net);
  if (s == "decline") return StrategyProfile::all_decline(net);
  if (s == "counterexample") return lotprop::counterexample_profile(net);
  if (s.rfind("withhold:", 0) == 0) {
    long k = parse_long(s.substr(9), "withhold level");
    require(k >= 1 && k <= net.max_bucket(),
            "withhold level must be in 1.." + std::to_string(net.max_bucket()));
    require(net.is_player(player),
            "withhold profile needs a player id, got " + std::to_string(player));
    return StrategyProfile::uniform_withhold(net, player, static_cast<int>(k));
  }
  throw std::invalid_argument(
      "unknown profile \"" + s + "\" (want fp, decline, withhold:K or counterexample)");
}

// "key=v1,v2;key=v3" with integer tokens allowing "lo..hi" ranges.
using GridMap = std::map<std::string, std::vector<std::string>>;

std::string trimmed(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

GridMap parse_grid(const char* grid) {
  GridMap out;
  if (!grid) return out;
  std::string text = grid;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t semi = text.find(';', pos);
    std::string part = trimmed(text.substr(pos, semi == std::string::npos
                                                    ? std::string::npos
                                                    : semi - pos));
    if (!part.empty()) {
      size_t eq = part.find('=');
      require(eq != std::string::npos, "grid entry needs key=values: \"" + part + "\"");
      std::string key = trimmed(part.substr(0, eq));
      require(!key.empty(), "grid entry has empty key: \"" + part + "\"");
      std::vector<std::string>& vals = out[key];
      vals.clear();
      std::string rest = part.substr(eq + 1);
      size_t vpos = 0;
      while (vpos <= rest.size()) {
        size_t comma = rest.find(',', vpos);
        std::string tok = trimmed(rest.substr(
            vpos, comma == std::string::npos ? std::string::npos : comma - vpos));
        if (!tok.empty()) vals.push_back(tok);
        if (comma == std::string::npos) break;
        vpos = comma + 1;
      }
      require(!vals.empty(), "grid key \"" + key + "\" has no values");
    }
    if (semi == std::string::npos) break;
    pos = semi + 1;
  }
  return out;
}

std::vector<int> int_values(const GridMap& grid, const std::string& key,
                            std::vector<int> fallback) {
  auto it = grid.find(key);
  if (it == grid.end()) return fallback;
  std::vector<int> out;
  for (const std::string& tok : it->second) {
    size_t dots = tok.find("..");
    if (dots != std::string::npos) {
      long lo = parse_long(tok.substr(0, dots), "grid " + key);
      long hi = parse_long(tok.substr(dots + 2), "grid " + key);
      require(lo <= hi, "grid " + key + ": empty range \"" + tok + "\"");
      for (long v = lo; v <= hi; ++v) out.push_back(static_cast<int>(v));
    } else {
      out.push_back(static_cast<int>(parse_long(tok, "grid " + key)));
    }
  }
  return out;
}

std::vector<Rational> rat_values(const GridMap& grid, const std::string& key,
                                 std::vector<Rational> fallback) {
  auto it = grid.find(key);
  if (it == grid.end()) return fallback;
  std::vector<Rational> out;
  for (const std::string& tok : it->second) out.push_back(Rational::parse(tok));
  return out;
}

long single_long(const GridMap& grid, const std::string& key, long fallback) {
  auto it = grid.find(key);
  if (it == grid.end()) return fallback;
  require(it->second.size() == 1, "grid " + key + " takes a single value");
  return parse_long(it->second.front(), "grid " + key);
}

lotprop::SweepReport run_check(const std::string& claim, const GridMap& grid) {
  const std::vector<Rational> default_eps = {Rational(0), Rational(1, 4),
                                             Rational(1, 2), Rational(3, 4)};
  if (claim == "1") {
    return lotprop::check_claim1(int_values(grid, "d", {3, 4, 5}),
                                 int_values(grid, "k", {1, 2, 3, 4, 5, 6, 7, 8}),
                                 static_cast<int>(single_long(grid, "den", 8)));
  }
  if (claim == "2") {
    return lotprop::check_claim2(int_values(grid, "d", {3, 4}),
                                 int_values(grid, "k", {2, 3, 4}),
                                 rat_values(grid, "eps", default_eps),
                                 single_long(grid, "offset", 0));
  }
  if (claim == "3") {
    return lotprop::check_claim3(int_values(grid, "d", {3, 4, 5}),
                                 int_values(grid, "k", {1, 2, 3, 4, 5, 6}));
  }
  if (claim == "eq2") {
    return lotprop::check_eq2(int_values(grid, "d", {3, 4, 5}),
                              int_values(grid, "f", {3, 4, 5, 6, 7, 8}),
                              int_values(grid, "k", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}));
  }
  if (claim == "intro") {
    return lotprop::check_intro_inequality(
        int_values(grid, "n", {5, 6, 7, 8, 9, 10, 11, 12}),
        int_values(grid, "fi", {1, 2}), int_values(grid, "phi", {2, 3, 4}),
        rat_values(grid, "c", {Rational(0), Rational(1, 100), Rational(1, 50)}));
  }
  if (claim == "lemma3") {
    return lotprop::check_lemma3(int_values(grid, "d", {3, 4, 5}),
                                 static_cast<int>(single_long(grid, "kmax", 5)),
                                 rat_values(grid, "eps", default_eps));
  }
  throw std::invalid_argument("unknown claim \"" + claim +
                              "\" (want 1, 2, 3, eq2, intro or lemma3)");
}

}  // namespace

extern "C" {

const char* lp_last_error(void) { return g_last_error.c_str(); }

void lp_free_string(char* s) { std::free(s); }

lp_status lp_network_dary(int d, int f, int depth, const char* x_min,
                          lp_network** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    Network net = x_min ? Network::dary_forest(d, f, depth, Rational::parse(x_min))
                        : Network::dary_forest(d, f, depth);
    *out = new lp_network{std::move(net)};
  });
}

lp_status lp_network_from_json(const char* json_text, lp_network** out) {
  return guarded([&] {
    require(json_text != nullptr, "json_text must not be null");
    require(out != nullptr, "out must not be null");
    *out = new lp_network{lotprop::network_from_json(json_text)};
  });
}

void lp_network_free(lp_network* net) { delete net; }

lp_status lp_network_to_json(const lp_network* net, char** out_json) {
  return guarded([&] {
    require(net != nullptr, "net must not be null");
    put_string(out_json, lotprop::network_to_json(net->net));
  });
}

lp_status lp_propagate(const lp_network* net, const char* profile,
                       int32_t player, char** out_json) {
  return guarded([&] {
    require(net != nullptr, "net must not be null");
    StrategyProfile prof = make_profile(net->net, profile, player);
    lotprop::PropagationOutcome out = lotprop::propagate(net->net, prof);
    put_string(out_json, lotprop::propagation_to_json(net->net, out));
  });
}

lp_status lp_utility(const lp_network* net, const char* profile, int32_t player,
                     char** out_json) {
  return guarded([&] {
    require(net != nullptr, "net must not be null");
    require(net->net.is_player(player),
            "player " + std::to_string(player) + " is not a player node");
    StrategyProfile prof = make_profile(net->net, profile, player);
    lotprop::PropagationOutcome out = lotprop::propagate(net->net, prof);
    put_string(out_json, lotprop::utility_to_json(net->net, out, player));
  });
}

lp_status lp_verify_nash(const lp_network* net, const char* profile,
                         int* out_holds, char** out_json) {
  return guarded([&] {
    require(net != nullptr, "net must not be null");
    StrategyProfile prof = make_profile(net->net, profile, 0);
    lotprop::NashReport rep = lotprop::is_nash(net->net, prof);
    if (out_holds) *out_holds = rep.holds ? 1 : 0;
    put_string(out_json, lotprop::nash_to_json(rep));
  });
}

lp_status lp_verify_ccp(const lp_network* net, const char* profile,
                        const char* comm, int max_coalition, int* out_holds,
                        char** out_json) {
  return guarded([&] {
    require(net != nullptr, "net must not be null");
    require(comm != nullptr, "comm must not be null");
    std::string c = comm;
    lotprop::CommGraph graph;
    if (c == "players") {
      graph = lotprop::CommGraph::players;
    } else if (c == "friendship") {
      graph = lotprop::CommGraph::friendship;
    } else if (c == "roots-complete" || c == "roots_complete") {
      graph = lotprop::CommGraph::roots_complete;
    } else {
      throw std::invalid_argument("unknown communication graph \"" + c +
                                  "\" (want players, friendship or roots-complete)");
    }
    StrategyProfile prof = make_profile(net->net, profile, 0);
    lotprop::CoalitionReport rep =
        lotprop::is_connected_coalition_proof(net->net, prof, graph, max_coalition);
    if (out_holds) *out_holds = rep.holds ? 1 : 0;
    put_string(out_json, lotprop::coalition_to_json(rep));
  });
}

lp_status lp_eliminate(const lp_network* net, const char* order, uint64_t seed,
                       int* out_collapsed, char** out_jsonl) {
  return guarded([&] {
    require(net != nullptr, "net must not be null");
    require(order != nullptr, "order must not be null");
    std::string o = order;
    lotprop::EliminationResult res;
    if (o == "appendix") {
      res = lotprop::eliminate_appendix_order(net->net);
    } else if (o == "random") {
      res = lotprop::eliminate_random_order(net->net, seed);
    } else {
      throw std::invalid_argument("unknown order \"" + o +
                                  "\" (want appendix or random)");
    }
    if (out_collapsed) *out_collapsed = res.collapsed_to_fp ? 1 : 0;
    put_string(out_jsonl, lotprop::elimination_to_jsonl(res));
  });
}

lp_status lp_friends(const lp_network* net, char** out_json) {
  return guarded([&] {
    require(net != nullptr, "net must not be null");
    put_string(out_json, lotprop::friends_to_json(net->net));
  });
}

lp_status lp_check(const char* claim, const char* grid, int64_t* out_violations,
                   char** out_json) {
  return guarded([&] {
    require(claim != nullptr, "claim must not be null");
    lotprop::SweepReport rep = run_check(claim, parse_grid(grid));
    if (out_violations)
      *out_violations = static_cast<int64_t>(rep.violations.size());
    put_string(out_json, lotprop::sweep_to_json(rep));
  });
}

lp_status lp_experiment(const char* spec_json, char** out_csv,
                        char** out_summary_json) {
  return guarded([&] {
    require(spec_json != nullptr, "spec_json must not be null");
    lotprop::ExperimentSpec spec = lotprop::experiment_spec_from_json(spec_json);
    lotprop::ExperimentResult res = lotprop::run_experiment(spec);
    put_string(out_csv, lotprop::to_csv(res));
    put_string(out_summary_json, lotprop::experiment_to_json(res));
  });
}

}  // extern "C"
