#include "lotprop/equilibrium.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "lotprop/friendship.hpp"

namespace lotprop {

namespace {

void build_compositions(int remaining, int part, Composition& cur, std::vector<Composition>& out) {
  if (part + 1 == static_cast<int>(cur.size())) {
    cur[part] = remaining;
    out.push_back(cur);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    cur[part] = v;
    build_compositions(remaining - v, part + 1, cur, out);
  }
}

void check_composition(const SubgameContext& ctx, const Composition& comp) {
  if (static_cast<int>(comp.size()) != ctx.k + 1)
    throw std::invalid_argument("subgame: composition needs k+1 entries");
  int sum = 0;
  for (int v : comp) {
    if (v < 0) throw std::invalid_argument("subgame: negative composition entry");
    sum += v;
  }
  if (sum != ctx.d) throw std::invalid_argument("subgame: composition entries must sum to d");
}

}  // namespace

std::vector<Composition> all_compositions(int total, int parts) {
  if (total < 0 || parts < 1) throw std::invalid_argument("compositions: bad arguments");
  std::vector<Composition> out;
  Composition cur(parts, 0);
  build_compositions(total, 0, cur, out);
  return out;
}

Rational subgame_utility(const SubgameContext& ctx, const Composition& comp) {
  if (ctx.k < 1) throw std::invalid_argument("subgame: k must be at least 1");
  check_composition(ctx, comp);
  Rational x = (Rational(ctx.k) + ctx.eps) * ctx.x_min;
  Rational q = x;
  Rational w = Rational(ctx.pi0 + 1);
  for (int l = 1; l <= ctx.k; ++l) {
    if (comp[l] == 0) continue;
    Rational weight = Rational(comp[l]) * Rational(geometric_count(ctx.d, l));
    q += weight * (x - Rational(l - 1) * ctx.x_min);
    w += weight;
  }
  return q / w;
}

bool lemma3_step_check(const SubgameContext& ctx, const Composition& comp, int l) {
  check_composition(ctx, comp);
  if (l < 0 || l >= ctx.k) throw std::invalid_argument("lemma3_step_check: need 0 <= l < k");
  if (comp[l] == 0) throw std::invalid_argument("lemma3_step_check: no unit at level l");
  Composition moved = comp;
  --moved[l];
  ++moved[l + 1];
  return subgame_utility(ctx, moved) > subgame_utility(ctx, comp);
}

EmbeddedSubgame embed_subgame(const SubgameContext& ctx) {
  if (ctx.k < 1 || ctx.d < 2 || ctx.pi0 < 1)
    throw std::invalid_argument("embed_subgame: need k >= 1, d >= 2, pi0 >= 1");
  if (ctx.eps.sign() < 0 || ctx.eps >= Rational(1))
    throw std::invalid_argument("embed_subgame: eps must lie in [0, 1)");

  // Sender 0; dummies 1..pi0-1; feeder pi0; root pi0+1; then the subtree
  // level by level down to depth k.
  NodeId feeder = static_cast<NodeId>(ctx.pi0);
  NodeId root = feeder + 1;
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId dummy = 1; dummy < feeder; ++dummy) edges.emplace_back(0, dummy);
  edges.emplace_back(0, feeder);
  edges.emplace_back(feeder, root);
  NodeId next = root + 1;
  std::vector<NodeId> level{root};
  for (int depth = 1; depth <= ctx.k; ++depth) {
    std::vector<NodeId> below;
    for (NodeId p : level)
      for (int c = 0; c < ctx.d; ++c) {
        edges.emplace_back(p, next);
        below.push_back(next++);
      }
    level = std::move(below);
  }

  Rational initial = Rational(ctx.k + 2) * ctx.x_min;
  Network net = Network::general(next, 0, edges, ctx.x_min, initial);
  StrategyProfile base = StrategyProfile::full_propagation(net);
  Rational handoff = (Rational(ctx.k) + ctx.eps) * ctx.x_min;
  base.set_action(feeder, net.max_bucket(), net.slot_of(feeder, root), Action(handoff));
  return EmbeddedSubgame{std::move(net), root, feeder, std::move(base)};
}

std::vector<NodeId> composition_targets(const Network& net, NodeId player) {
  if (net.dary()) return net.forest_children(player);
  return good_friends(net, shortest_paths(net), player);
}

std::vector<Action> composition_row(const Network& net, NodeId player, int bucket,
                                    const std::vector<NodeId>& targets,
                                    const Composition& comp, const std::vector<Action>& keep) {
  if (static_cast<int>(comp.size()) != bucket + 1)
    throw std::invalid_argument("composition_row: composition needs bucket+1 entries");
  int sum = 0;
  for (int v : comp) sum += v;
  if (sum != static_cast<int>(targets.size()))
    throw std::invalid_argument("composition_row: composition must sum to the target count");
  std::vector<Action> row = keep;
  if (row.size() != static_cast<std::size_t>(net.degree(player)))
    throw std::invalid_argument("composition_row: keep row has wrong arity");
  std::vector<NodeId> ordered = targets;
  std::sort(ordered.begin(), ordered.end());
  std::size_t idx = 0;
  for (int l = 0; l <= bucket; ++l)
    for (int c = 0; c < comp[l]; ++c) {
      int slot = net.slot_of(player, ordered[idx++]);
      if (slot < 0) throw std::invalid_argument("composition_row: target is not a neighbor");
      row[slot] = l == 0 ? decline() : Action(Rational(l - 1) * net.x_min());
    }
  return row;
}

BestResponse best_response(const Network& net, const StrategyProfile& profile, NodeId player,
                           int bucket, bool scan_half_grid) {
  if (bucket < 1) throw std::invalid_argument("best_response: bucket must be at least 1");
  std::vector<NodeId> targets = composition_targets(net, player);
  const std::vector<Action>& keep = profile.row(player, bucket);
  BestResponse res;
  for (const Composition& comp :
       all_compositions(static_cast<int>(targets.size()), bucket + 1)) {
    RowOverride ov{player, bucket, composition_row(net, player, bucket, targets, comp, keep)};
    auto out = propagate(net, profile, std::span<const RowOverride>(&ov, 1));
    Rational u = utility(net, out, player);
    ++res.evaluated;
    if (res.argmax.empty() || u > res.best) {
      res.best = u;
      res.argmax.assign(1, comp);
    } else if (u == res.best) {
      res.argmax.push_back(comp);
    }
  }
  if (scan_half_grid) {
    std::vector<Action> actions = bucket_action_set(bucket, net.x_min());
    std::vector<std::size_t> odo(targets.size(), 0);
    std::vector<int> slots;
    for (NodeId t : targets) slots.push_back(net.slot_of(player, t));
    while (true) {
      std::vector<Action> row = keep;
      for (std::size_t i = 0; i < slots.size(); ++i) row[slots[i]] = actions[odo[i]];
      RowOverride ov{player, bucket, row};
      auto out = propagate(net, profile, std::span<const RowOverride>(&ov, 1));
      Rational u = utility(net, out, player);
      ++res.evaluated;
      if (u > res.best) {
        res.half_grid_beats = true;
        res.half_grid_witness = row;
        res.best = u;
      }
      std::size_t i = 0;
      while (i < odo.size() && ++odo[i] == actions.size()) odo[i++] = 0;
      if (i == odo.size()) break;
    }
  }
  return res;
}

NashReport is_nash(const Network& net, const StrategyProfile& profile) {
  NashReport rep;
  PropagationOutcome base = propagate(net, profile);
  for (NodeId i = 0; i < net.node_count(); ++i) {
    if (!net.is_player(i) || !base.aware[i]) continue;
    int bucket = profile.bucket_of(base.reward[i]);
    if (bucket < 1) continue;
    Rational base_u = utility(net, base, i);
    // Neighbors locked no later than i's own awareness cannot be moved by
    // i's offers, which only go out one round after.
    std::vector<int> slots;
    const auto& nbs = net.neighbors(i);
    for (int s = 0; s < static_cast<int>(nbs.size()); ++s) {
      NodeId u = nbs[s];
      if (u == net.sender()) continue;
      if (base.aware[u] && base.round[u] <= base.round[i]) continue;
      slots.push_back(s);
    }
    if (slots.empty()) continue;
    std::vector<Action> actions = bucket_action_set(bucket, net.x_min());
    const std::vector<Action>& base_row = profile.row(i, bucket);
    std::vector<std::size_t> odo(slots.size(), 0);
    while (true) {
      std::vector<Action> row = base_row;
      bool same = true;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        row[slots[s]] = actions[odo[s]];
        same = same && actions[odo[s]] == base_row[slots[s]];
      }
      if (!same) {
        RowOverride ov{i, bucket, row};
        auto out = propagate(net, profile, std::span<const RowOverride>(&ov, 1));
        Rational u = utility(net, out, i);
        ++rep.deviations_checked;
        if (u > base_u) {
          rep.holds = false;
          rep.player = i;
          rep.bucket = bucket;
          rep.deviation = row;
          rep.base_utility = base_u;
          rep.deviated_utility = u;
          return rep;
        }
      }
      std::size_t s = 0;
      while (s < odo.size() && ++odo[s] == actions.size()) odo[s++] = 0;
      if (s == odo.size()) break;
    }
  }
  return rep;
}

namespace {

std::vector<std::vector<NodeId>> comm_adjacency(const Network& net, CommGraph comm) {
  std::vector<std::vector<NodeId>> adj(net.node_count());
  auto add = [&](NodeId a, NodeId b) {
    if (!net.is_player(a) || !net.is_player(b)) return;
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  switch (comm) {
    case CommGraph::players:
      for (auto [a, b] : net.edge_list()) add(a, b);
      break;
    case CommGraph::friendship: {
      auto forest = friendship_forest(net, shortest_paths(net));
      for (auto [a, b] : forest.edges) add(a, b);
      break;
    }
    case CommGraph::roots_complete: {
      const auto& roots = net.neighbors(net.sender());
      for (std::size_t a = 0; a < roots.size(); ++a)
        for (std::size_t b = a + 1; b < roots.size(); ++b) add(roots[a], roots[b]);
      break;
    }
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());
  return adj;
}

// Connected-subset enumeration: every connected set S with min element v is
// produced exactly once by growing from v over the not-yet-banned frontier.
void grow_coalitions(const std::vector<std::vector<NodeId>>& adj, NodeId v,
                     std::vector<NodeId>& cur, std::vector<NodeId> frontier,
                     std::vector<char>& banned, int max_size,
                     const std::function<void(const std::vector<NodeId>&)>& visit) {
  visit(cur);
  if (static_cast<int>(cur.size()) == max_size) return;
  // Invariant: every frontier member is banned. A popped u stays banned for
  // the rest of this level, so sibling branches cannot duplicate a subset
  // that contains it; nodes added for one branch are unbanned afterward.
  while (!frontier.empty()) {
    NodeId u = frontier.back();
    frontier.pop_back();
    std::vector<NodeId> next = frontier;
    std::vector<NodeId> newly;
    for (NodeId w : adj[u])
      if (w > v && !banned[w]) {
        next.push_back(w);
        newly.push_back(w);
        banned[w] = 1;
      }
    cur.push_back(u);
    grow_coalitions(adj, v, cur, std::move(next), banned, max_size, visit);
    cur.pop_back();
    for (NodeId w : newly) banned[w] = 0;
  }
}

}  // namespace

CoalitionReport is_connected_coalition_proof(const Network& net, const StrategyProfile& profile,
                                             CommGraph comm, int max_coalition,
                                             std::int64_t deviation_cap) {
  if (max_coalition < 1) throw std::invalid_argument("coalition check: max_coalition >= 1");
  CoalitionReport rep;
  PropagationOutcome base = propagate(net, profile);
  std::vector<Rational> base_u(net.node_count());
  for (NodeId v = 0; v < net.node_count(); ++v)
    if (net.is_player(v)) base_u[v] = utility(net, base, v);

  std::vector<std::vector<NodeId>> adj = comm_adjacency(net, comm);
  std::vector<std::vector<NodeId>> target_cache(net.node_count());
  std::vector<char> targets_known(net.node_count(), 0);
  ShortestPathData spd;
  bool have_spd = false;
  auto targets_of = [&](NodeId v) -> const std::vector<NodeId>& {
    if (!targets_known[v]) {
      if (net.dary()) {
        target_cache[v] = net.forest_children(v);
      } else {
        if (!have_spd) {
          spd = shortest_paths(net);
          have_spd = true;
        }
        target_cache[v] = good_friends(net, spd, v);
      }
      targets_known[v] = 1;
    }
    return target_cache[v];
  };

  auto check_coalition = [&](const std::vector<NodeId>& coalition) {
    if (!rep.holds) return;
    ++rep.coalitions_checked;
    int m = static_cast<int>(coalition.size());
    std::vector<int> buckets(m);
    std::vector<std::vector<Composition>> choices(m);
    std::int64_t space = 1;
    for (int idx = 0; idx < m; ++idx) {
      NodeId i = coalition[idx];
      buckets[idx] = base.aware[i] ? profile.bucket_of(base.reward[i]) : 0;
      if (buckets[idx] >= 1) {
        choices[idx] = all_compositions(static_cast<int>(targets_of(i).size()), buckets[idx] + 1);
      } else {
        choices[idx] = {Composition{}};  // full propagation only
      }
      auto sz = static_cast<std::int64_t>(choices[idx].size());
      if (space > deviation_cap / sz) {
        rep.truncated = true;
        rep.truncation_note = "coalition rooted at player " + std::to_string(coalition[0]) +
                              " exceeds the deviation cap; skipped";
        return;
      }
      space *= sz;
    }

    // Members play full propagation except at their realized bucket, where
    // the chosen composition row goes in.
    StrategyProfile dev = profile;
    std::vector<Action> per_bucket(net.max_bucket());
    for (int idx = 0; idx < m; ++idx) {
      NodeId i = coalition[idx];
      for (int b = 1; b <= net.max_bucket(); ++b)
        per_bucket[b - 1] = Action(Rational(b - 1) * net.x_min());
      dev.fill_player(i, per_bucket);
    }
    // A tuple replays the base profile only if every member's row matches it
    // bucket for bucket.
    bool outside_matches = true;
    for (int idx = 0; idx < m && outside_matches; ++idx) {
      NodeId i = coalition[idx];
      for (int b = 1; b <= net.max_bucket() && outside_matches; ++b)
        if (b != buckets[idx]) outside_matches = dev.row(i, b) == profile.row(i, b);
    }

    std::vector<std::size_t> odo(m, 0);
    while (true) {
      std::vector<RowOverride> ovs;
      bool identity = outside_matches;
      for (int idx = 0; idx < m; ++idx) {
        NodeId i = coalition[idx];
        if (buckets[idx] < 1) continue;
        std::vector<Action> row = composition_row(net, i, buckets[idx], targets_of(i),
                                                  choices[idx][odo[idx]], profile.row(i, buckets[idx]));
        identity = identity && row == profile.row(i, buckets[idx]);
        ovs.push_back(RowOverride{i, buckets[idx], std::move(row)});
      }
      if (!identity) {
        auto out = propagate(net, dev, ovs);
        ++rep.deviations_checked;
        bool all_weak = true, one_strict = false;
        for (NodeId i : coalition) {
          Rational u = utility(net, out, i);
          if (u < base_u[i]) {
            all_weak = false;
            break;
          }
          if (u > base_u[i]) one_strict = true;
        }
        if (all_weak && one_strict) {
          rep.holds = false;
          std::vector<int> order(m);
          for (int idx = 0; idx < m; ++idx) order[idx] = idx;
          std::sort(order.begin(), order.end(),
                    [&](int a, int b) { return coalition[a] < coalition[b]; });
          for (int idx : order) {
            NodeId i = coalition[idx];
            rep.coalition.push_back(i);
            rep.deviation.push_back(choices[idx][odo[idx]]);
            rep.base_utilities.push_back(base_u[i]);
            rep.deviated_utilities.push_back(utility(net, out, i));
          }
          return;
        }
      }
      int idx = 0;
      while (idx < m && ++odo[idx] == choices[idx].size()) odo[idx++] = 0;
      if (idx == m) break;
    }
  };

  for (NodeId v = 0; v < net.node_count() && rep.holds; ++v) {
    if (!net.is_player(v)) continue;
    std::vector<NodeId> cur{v};
    std::vector<NodeId> frontier;
    std::vector<char> banned(net.node_count(), 0);
    banned[v] = 1;
    for (NodeId w : adj[v])
      if (w > v) {
        frontier.push_back(w);
        banned[w] = 1;
      }
    grow_coalitions(adj, v, cur, std::move(frontier), banned, max_coalition, check_coalition);
  }
  return rep;
}

StrategyProfile counterexample_profile(const Network& net) {
  if (!net.dary() || net.dary()->d < 4)
    throw std::invalid_argument("counterexample_profile: needs a d-ary forest with d >= 4");
  StrategyProfile p = StrategyProfile::full_propagation(net);
  NodeId root = net.subtree_root(0);
  for (int b = 1; b <= net.max_bucket(); ++b)
    p.set_row(root, b, std::vector<Action>(net.degree(root), Action(Rational(0))));
  std::vector<Action> bots(net.max_bucket(), decline());
  for (NodeId c : net.forest_children(root)) p.fill_player(c, bots);
  return p;
}

}  // namespace lotprop
