#include "lotprop/elimination.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "lotprop/propagation.hpp"

namespace lotprop {

namespace {

NodeId forest_parent(const Network& net, NodeId v) {
  int depth = net.forest_depth_of(v);
  if (depth == 0) return net.sender();
  for (NodeId nb : net.neighbors(v))
    if (nb != net.sender() && net.forest_depth_of(nb) == depth - 1) return nb;
  throw std::logic_error("forest_parent: missing parent");
}

bool contains(const std::vector<Action>& set, const Action& a) {
  return std::find(set.begin(), set.end(), a) != set.end();
}

std::string action_str(const Action& a) { return a ? a->str() : "decline"; }

std::uint64_t event_seed(std::uint64_t base, const Coordinate& c, const Action& victim,
                         const Rational& x_min) {
  std::uint64_t h = base;
  auto mix = [&](std::uint64_t v) { h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
  mix(static_cast<std::uint64_t>(c.player));
  mix(static_cast<std::uint64_t>(c.bucket));
  mix(static_cast<std::uint64_t>(c.slot));
  mix(victim ? 2 + static_cast<std::uint64_t>((*victim * Rational(2) / x_min).floor_div(Rational(1)))
             : 1);
  return h;
}

}  // namespace

EliminationState EliminationState::initial(const Network& net) {
  if (!net.dary()) throw std::invalid_argument("elimination: needs a d-ary forest");
  EliminationState s;
  s.net_ = &net;
  int h = net.max_bucket();
  s.buckets_.resize(net.node_count());
  s.slots_.resize(net.node_count());
  s.sets_.resize(net.node_count());
  for (NodeId i = 0; i < net.node_count(); ++i) {
    if (!net.is_player(i)) continue;
    auto children = net.forest_children(i);
    if (children.empty()) continue;
    int depth = net.forest_depth_of(i);
    std::vector<int> bks;
    if (depth == 0) {
      bks.push_back(h);
    } else {
      for (int b = 1; b <= h - depth; ++b) bks.push_back(b);
    }
    if (bks.empty()) continue;
    for (NodeId c : children) s.slots_[i].push_back(net.slot_of(i, c));
    s.buckets_[i] = std::move(bks);
    for (int b : s.buckets_[i]) {
      std::vector<std::vector<Action>> per_slot(s.slots_[i].size(),
                                                bucket_action_set(b, net.x_min()));
      s.sets_[i].push_back(std::move(per_slot));
    }
  }
  return s;
}

int EliminationState::bucket_index(NodeId player, int bucket) const {
  const auto& bks = buckets_[player];
  auto it = std::find(bks.begin(), bks.end(), bucket);
  if (it == bks.end()) throw std::invalid_argument("elimination: bucket not realizable");
  return static_cast<int>(it - bks.begin());
}

int EliminationState::slot_index(NodeId player, int slot) const {
  const auto& sl = slots_[player];
  auto it = std::find(sl.begin(), sl.end(), slot);
  if (it == sl.end()) throw std::invalid_argument("elimination: slot is not a child slot");
  return static_cast<int>(it - sl.begin());
}

const std::vector<int>& EliminationState::realizable_buckets(NodeId player) const {
  return buckets_[player];
}

const std::vector<int>& EliminationState::child_slots(NodeId player) const {
  return slots_[player];
}

const std::vector<Action>& EliminationState::surviving(NodeId player, int bucket,
                                                       int slot) const {
  return sets_[player][bucket_index(player, bucket)][slot_index(player, slot)];
}

std::vector<Coordinate> EliminationState::coordinates() const {
  std::vector<Coordinate> out;
  for (NodeId p = 0; p < static_cast<NodeId>(sets_.size()); ++p)
    for (int b : buckets_[p])
      for (int s : slots_[p]) out.push_back(Coordinate{p, b, s});
  return out;
}

void EliminationState::eliminate(NodeId player, int bucket, int slot, const Action& victim) {
  auto& set = sets_[player][bucket_index(player, bucket)][slot_index(player, slot)];
  auto it = std::find(set.begin(), set.end(), victim);
  if (it == set.end()) throw std::invalid_argument("elimination: action already gone");
  if (set.size() == 1) throw std::invalid_argument("elimination: cannot empty a coordinate");
  set.erase(it);
}

bool EliminationState::collapsed_to_full_propagation() const {
  for (NodeId p = 0; p < static_cast<NodeId>(sets_.size()); ++p)
    for (std::size_t bi = 0; bi < buckets_[p].size(); ++bi) {
      Action fp(Rational(buckets_[p][bi] - 1) * net_->x_min());
      for (const auto& set : sets_[p][bi])
        if (set.size() != 1 || set[0] != fp) return false;
    }
  return true;
}

bool full_propagation_survives(const EliminationState& state) {
  const Network& net = state.net();
  for (const Coordinate& c : state.coordinates())
    if (!contains(state.surviving(c.player, c.bucket, c.slot),
                  Action(Rational(c.bucket - 1) * net.x_min())))
      return false;
  return true;
}

DominanceOutcome verify_dominance(const EliminationState& state, const Coordinate& coord,
                                  const Action& victim, const Rational& dominator,
                                  const VerifyOptions& opts) {
  const Network& net = state.net();
  NodeId i = coord.player;
  int k = coord.bucket;
  int g = coord.slot;
  Rational x_min = net.x_min();
  int h = net.max_bucket();

  const auto& surv = state.surviving(i, k, g);
  if (!contains(surv, victim)) throw std::invalid_argument("verify_dominance: victim not alive");
  if (!contains(surv, Action(dominator)))
    throw std::invalid_argument("verify_dominance: dominator not alive");
  if (victim == Action(dominator))
    throw std::invalid_argument("verify_dominance: victim equals dominator");

  DominanceOutcome out;

  // Chain from i up to its subtree root; ancestors stay at full propagation
  // so i's reward is what the parent chooses to leave.
  std::vector<NodeId> chain{i};
  while (net.forest_depth_of(chain.back()) > 0) chain.push_back(forest_parent(net, chain.back()));

  NodeId parent = -1;
  int parent_bucket = 0, parent_slot = -1;
  std::vector<Action> z_choices;
  if (chain.size() > 1) {
    parent = chain[1];
    parent_bucket = h - net.forest_depth_of(parent);
    parent_slot = net.slot_of(parent, i);
    for (const Action& a : state.surviving(parent, parent_bucket, parent_slot))
      if (a.has_value() && a->floor_div(x_min) == k) z_choices.push_back(a);
    if (z_choices.empty()) {
      out.dominated = true;
      out.vacuous = true;
      out.label = "vacuous";
      return out;
    }
  } else if (k != h) {
    throw std::logic_error("verify_dominance: root coordinate below the top bucket");
  }

  // Coordinates that cannot influence the comparison: the event coordinate
  // itself, the pinned chain offers, rows of chain members at buckets they
  // never realize under the pinned chain.
  auto excluded = [&](const Coordinate& c) {
    if (c.player == i) return c.bucket != k || c.slot == g;
    for (std::size_t t = 1; t < chain.size(); ++t) {
      if (c.player != chain[t]) continue;
      int realized = h - net.forest_depth_of(chain[t]);
      if (c.bucket != realized) return true;
      return c.slot == net.slot_of(chain[t], chain[t - 1]);
    }
    return false;
  };

  struct Dim {
    NodeId p;
    int b;
    int s;
    std::vector<Action> choices;
    bool own;
  };
  std::vector<Dim> dims;
  for (const Coordinate& c : state.coordinates()) {
    if (c == coord || excluded(c)) continue;
    dims.push_back(Dim{c.player, c.bucket, c.slot,
                       state.surviving(c.player, c.bucket, c.slot), c.player == i});
  }

  std::int64_t joint = parent >= 0 ? static_cast<std::int64_t>(z_choices.size()) : 1;
  for (const Dim& d : dims) {
    auto sz = static_cast<std::int64_t>(d.choices.size());
    joint = joint > opts.exhaustive_budget / sz ? opts.exhaustive_budget + 1 : joint * sz;
  }
  bool exhaustive = joint <= opts.exhaustive_budget;

  StrategyProfile work = StrategyProfile::full_propagation(net);
  auto describe = [&]() {
    std::ostringstream os;
    os << "player " << i << " bucket " << k << " slot " << g << ": victim "
       << action_str(victim) << " beats dominator " << dominator.str() << " against";
    if (parent >= 0)
      os << " [offer " << action_str(work.action(parent, parent_bucket, parent_slot)) << "]";
    for (const Dim& d : dims)
      os << " (" << d.p << "," << d.b << "," << d.s << ")="
         << action_str(work.action(d.p, d.b, d.s));
    return os.str();
  };
  auto eval_pair = [&]() -> bool {
    work.set_action(i, k, g, victim);
    auto o_v = propagate(net, work);
    Rational u_v = utility(net, o_v, i);
    work.set_action(i, k, g, Action(dominator));
    auto o_w = propagate(net, work);
    Rational u_w = utility(net, o_w, i);
    ++out.profiles_tested;
    if (u_v > u_w) {
      out.counterexample = describe() + " with " + u_v.str() + " > " + u_w.str();
      return false;
    }
    if (u_w > u_v) out.strict_seen = true;
    return true;
  };

  if (exhaustive) {
    out.label = "exhaustive";
    std::vector<Dim> all = dims;
    if (parent >= 0) all.push_back(Dim{parent, parent_bucket, parent_slot, z_choices, false});
    for (const Dim& d : all) work.set_action(d.p, d.b, d.s, d.choices[0]);
    std::vector<std::size_t> odo(all.size(), 0);
    while (true) {
      if (!eval_pair()) return out;
      std::size_t t = 0;
      while (t < all.size()) {
        if (++odo[t] == all[t].choices.size()) {
          odo[t] = 0;
          work.set_action(all[t].p, all[t].b, all[t].s, all[t].choices[0]);
          ++t;
        } else {
          work.set_action(all[t].p, all[t].b, all[t].s, all[t].choices[odo[t]]);
          break;
        }
      }
      if (t == all.size()) break;
    }
    out.dominated = true;
    return out;
  }

  std::vector<std::size_t> own;
  std::int64_t own_prod = 1;
  for (std::size_t t = 0; t < dims.size(); ++t)
    if (dims[t].own) {
      own.push_back(t);
      own_prod = own_prod > opts.own_completion_cap ? own_prod
                                                    : own_prod * static_cast<std::int64_t>(
                                                                     dims[t].choices.size());
    }
  bool own_enum = own_prod <= opts.own_completion_cap;
  out.label =
      "sampled(n=" + std::to_string(opts.samples) + ", seed=" + std::to_string(opts.seed) + ")";
  std::mt19937_64 rng(event_seed(opts.seed, coord, victim, x_min));
  if (z_choices.empty()) z_choices.push_back(Action());  // placeholder for roots

  for (int mode = -2; mode < opts.samples; ++mode) {
    for (const Dim& d : dims) {
      if (d.own && own_enum) continue;
      std::size_t pick = mode == -2 ? 0
                         : mode == -1
                             ? d.choices.size() - 1
                             : std::uniform_int_distribution<std::size_t>(
                                   0, d.choices.size() - 1)(rng);
      work.set_action(d.p, d.b, d.s, d.choices[pick]);
    }
    for (const Action& z : z_choices) {
      if (parent >= 0) work.set_action(parent, parent_bucket, parent_slot, z);
      if (own_enum && !own.empty()) {
        for (std::size_t t : own) work.set_action(dims[t].p, dims[t].b, dims[t].s,
                                                  dims[t].choices[0]);
        std::vector<std::size_t> odo(own.size(), 0);
        while (true) {
          if (!eval_pair()) return out;
          std::size_t t = 0;
          while (t < own.size()) {
            const Dim& d = dims[own[t]];
            if (++odo[t] == d.choices.size()) {
              odo[t] = 0;
              work.set_action(d.p, d.b, d.s, d.choices[0]);
              ++t;
            } else {
              work.set_action(d.p, d.b, d.s, d.choices[odo[t]]);
              break;
            }
          }
          if (t == own.size()) break;
        }
      } else {
        if (!eval_pair()) return out;
      }
    }
  }
  out.dominated = true;
  return out;
}

namespace {

void require_shape(const Network& net) {
  if (!net.dary() || net.dary()->d < 3 || net.dary()->f < net.dary()->d + 1)
    throw std::invalid_argument("elimination order: needs a d-ary forest with f >= d+1 >= 4");
}

}  // namespace

EliminationResult eliminate_appendix_order(const Network& net, const VerifyOptions& opts) {
  require_shape(net);
  EliminationState state = EliminationState::initial(net);
  Rational x_min = net.x_min();
  int h = net.max_bucket();
  EliminationResult res;
  for (int r = 1; r <= h; ++r) {
    EliminationState before = state;
    Rational dom = Rational(r - 1) * x_min;
    std::vector<std::pair<Coordinate, Action>> cands;
    for (const Coordinate& c : state.coordinates()) {
      if (c.bucket < r) continue;
      const auto& surv = state.surviving(c.player, c.bucket, c.slot);
      std::vector<Action> victims;
      if (r == 1) victims.push_back(decline());
      if (r >= 2) victims.push_back(Action(Rational(r - 2) * x_min));
      victims.push_back(Action(Rational(2 * r - 1) * x_min / Rational(2)));
      for (const Action& v : victims)
        if (contains(surv, v)) cands.emplace_back(c, v);
    }
    for (const auto& [c, v] : cands) {
      DominanceOutcome outc = verify_dominance(before, c, v, dom, opts);
      res.profiles_tested += outc.profiles_tested;
      if (outc.vacuous)
        throw std::runtime_error("elimination round " + std::to_string(r) +
                                 ": coordinate unexpectedly unrealizable");
      if (!outc.dominated)
        throw std::runtime_error("elimination round " + std::to_string(r) +
                                 " refuted: " + outc.counterexample);
      res.log.push_back(EliminationEvent{r, c, v, dom, outc.label});
    }
    for (const auto& [c, v] : cands) state.eliminate(c.player, c.bucket, c.slot, v);
    ++res.rounds;
  }
  res.collapsed_to_fp = state.collapsed_to_full_propagation();
  return res;
}

EliminationResult eliminate_random_order(const Network& net, std::uint64_t order_seed,
                                         const VerifyOptions& opts) {
  require_shape(net);
  EliminationState state = EliminationState::initial(net);
  EliminationResult res;
  int pass = 0;
  while (true) {
    ++pass;
    struct Cand {
      Coordinate c;
      Action v;
      Rational w;
    };
    std::vector<Cand> pool;
    for (const Coordinate& c : state.coordinates()) {
      const auto& surv = state.surviving(c.player, c.bucket, c.slot);
      if (surv.size() < 2) continue;
      for (const Action& v : surv)
        for (const Action& w : surv)
          if (w.has_value() && v != w) pool.push_back(Cand{c, v, *w});
    }
    std::mt19937_64 rng(order_seed * 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(pass));
    std::shuffle(pool.begin(), pool.end(), rng);
    bool any = false;
    for (const Cand& cand : pool) {
      const auto& surv = state.surviving(cand.c.player, cand.c.bucket, cand.c.slot);
      if (surv.size() < 2 || !contains(surv, cand.v) || !contains(surv, Action(cand.w)))
        continue;
      DominanceOutcome outc = verify_dominance(state, cand.c, cand.v, cand.w, opts);
      res.profiles_tested += outc.profiles_tested;
      if (outc.dominated && !outc.vacuous) {
        state.eliminate(cand.c.player, cand.c.bucket, cand.c.slot, cand.v);
        res.log.push_back(EliminationEvent{pass, cand.c, cand.v, cand.w, outc.label});
        any = true;
      }
    }
    if (!any) break;
  }
  res.rounds = pass;
  res.collapsed_to_fp = state.collapsed_to_full_propagation();
  return res;
}

EliminationState replay(const Network& net, const std::vector<EliminationEvent>& log) {
  EliminationState state = EliminationState::initial(net);
  for (const EliminationEvent& e : log)
    state.eliminate(e.coord.player, e.coord.bucket, e.coord.slot, e.victim);
  return state;
}

bool order_is_almost_monotonic(const Network& net, const std::vector<EliminationEvent>& log) {
  EliminationState base = EliminationState::initial(net);
  Rational x_min = net.x_min();
  auto value_of = [&](const Action& a) { return a ? *a : -x_min; };
  // Row minimum of the event's representative strategy (full propagation
  // except the victim at its coordinate) at bucket b.
  auto row_min = [&](const EliminationEvent& e, int b) {
    Rational fp = Rational(b - 1) * x_min;
    if (e.coord.bucket != b) return fp;
    return std::min(fp, value_of(e.victim));
  };
  for (std::size_t a = 0; a < log.size(); ++a)
    for (std::size_t b = 0; b < log.size(); ++b) {
      if (log[a].round >= log[b].round) continue;  // later vs earlier only
      if (log[a].coord.player != log[b].coord.player) continue;
      for (int bucket : base.realizable_buckets(log[a].coord.player)) {
        Rational m_early = row_min(log[a], bucket);
        Rational m_late = row_min(log[b], bucket);
        if (m_early == m_late) continue;
        if (m_late < m_early - x_min) return false;
        break;
      }
    }
  return true;
}

}  // namespace lotprop
