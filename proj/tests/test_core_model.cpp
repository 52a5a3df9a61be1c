#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <queue>
#include <utility>
#include <vector>

#include "lotprop/network.hpp"
#include "lotprop/propagation.hpp"
#include "lotprop/rational.hpp"
#include "lotprop/strategy.hpp"

using namespace lotprop;

namespace {

// Independent node count: BFS from the sender over the built adjacency.
std::int64_t bfs_reachable(const Network& net) {
  std::vector<char> seen(net.node_count(), 0);
  std::queue<NodeId> q;
  seen[net.sender()] = 1;
  q.push(net.sender());
  std::int64_t n = 0;
  while (!q.empty()) {
    NodeId v = q.front();
    q.pop();
    ++n;
    for (NodeId u : net.neighbors(v))
      if (!seen[u]) {
        seen[u] = 1;
        q.push(u);
      }
  }
  return n;
}

Rational total_utility(const Network& net, const PropagationOutcome& out) {
  Rational sum(0);
  for (NodeId v = 0; v < net.node_count(); ++v)
    if (net.is_player(v)) sum += utility(net, out, v);
  return sum;
}

}  // namespace

TEST_CASE("geometric_count matches the closed form") {
  CHECK(geometric_count(3, 0) == 0);
  CHECK(geometric_count(3, 1) == 1);
  CHECK(geometric_count(3, 2) == 4);
  CHECK(geometric_count(3, 3) == 13);
  CHECK(geometric_count(4, 3) == 21);
  CHECK(geometric_count(2, 10) == 1023);
  // Independent recurrence check.
  for (int d = 2; d <= 6; ++d) {
    std::int64_t acc = 0, pw = 1;
    for (int k = 0; k <= 8; ++k) {
      CHECK(geometric_count(d, k) == acc);
      acc += pw;
      pw *= d;
    }
  }
  CHECK_THROWS_AS(geometric_count(1, 3), std::invalid_argument);
}

TEST_CASE("dary forest has the advertised shape") {
  Network net = Network::dary_forest(3, 3, 2);
  CHECK(net.node_count() == 40);
  CHECK(net.player_count() == 39);
  CHECK(net.player_count() == 3 * geometric_count(3, 3));
  CHECK(bfs_reachable(net) == 40);
  CHECK(net.sender() == 0);
  CHECK(net.degree(net.sender()) == 3);
  CHECK(net.x_min() == Rational(1, 2));
  CHECK(net.initial_reward() == Rational(1));
  CHECK(net.max_bucket() == 2);
  REQUIRE(net.dary().has_value());
  CHECK(net.dary()->d == 3);
  CHECK(net.dary()->f == 3);
  CHECK(net.dary()->depth == 2);

  // Structure: roots adjacent to sender, internal degree d+1, leaves degree 1.
  for (int t = 0; t < 3; ++t) {
    NodeId r = net.subtree_root(t);
    CHECK(net.adjacent(net.sender(), r));
    CHECK(net.forest_depth_of(r) == 0);
    CHECK(net.degree(r) == 4);
    auto kids = net.forest_children(r);
    REQUIRE(kids.size() == 3);
    for (NodeId c : kids) {
      CHECK(net.forest_depth_of(c) == 1);
      CHECK(net.degree(c) == 4);
      auto gkids = net.forest_children(c);
      REQUIRE(gkids.size() == 3);
      for (NodeId g : gkids) {
        CHECK(net.forest_depth_of(g) == 2);
        CHECK(net.degree(g) == 1);
        CHECK(net.forest_children(g).empty());
      }
    }
  }

  CHECK(Network::dary_forest(3, 3, 1).player_count() == 12);
  CHECK(Network::dary_forest(4, 5, 2).player_count() == 105);
  CHECK(Network::dary_forest(3, 4, 1).player_count() == 16);
  CHECK_THROWS_AS(Network::dary_forest(3, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(Network::dary_forest(0, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(Network::dary_forest(3, 3, 0), std::invalid_argument);
}

TEST_CASE("adjacency is sorted and slot_of inverts neighbors") {
  Network net = Network::general(
      5, 2, {{2, 4}, {2, 1}, {4, 0}, {1, 0}, {0, 3}}, Rational(1, 2), Rational(1));
  for (NodeId v = 0; v < net.node_count(); ++v) {
    const auto& nb = net.neighbors(v);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    for (int s = 0; s < static_cast<int>(nb.size()); ++s)
      CHECK(net.slot_of(v, nb[s]) == s);
  }
  CHECK(net.slot_of(2, 3) == -1);
  CHECK(net.adjacent(2, 4));
  CHECK(!net.adjacent(2, 3));
  CHECK_THROWS_AS(Network::general(3, 0, {{1, 1}}, Rational(1, 2), Rational(1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(Network::general(3, 0, {{1, 2}}, Rational(1, 2), Rational(1)),
                  std::invalid_argument);  // sender isolated
  CHECK_THROWS_AS(Network::general(3, 5, {{0, 1}}, Rational(1, 2), Rational(1)),
                  std::invalid_argument);
}

TEST_CASE("strategy profiles validate feasibility per bucket") {
  Network net = Network::dary_forest(3, 3, 2);
  StrategyProfile fp = StrategyProfile::full_propagation(net);
  fp.validate(net);
  CHECK(fp.max_bucket() == 2);
  CHECK(fp.bucket_of(Rational(1)) == 2);
  CHECK(fp.bucket_of(Rational(3, 4)) == 1);
  CHECK(fp.bucket_of(Rational(1, 4)) == 0);

  NodeId r = net.subtree_root(0);
  for (int s = 0; s < net.degree(r); ++s) {
    REQUIRE(fp.action(r, 2, s).has_value());
    CHECK(*fp.action(r, 2, s) == Rational(1, 2));
    REQUIRE(fp.action(r, 1, s).has_value());
    CHECK(*fp.action(r, 1, s) == Rational(0));
  }

  StrategyProfile bad = fp;
  bad.set_action(r, 1, 0, Action(Rational(1, 4)));  // cap at bucket 1 is 0
  CHECK_THROWS_AS(bad.validate(net), std::invalid_argument);
  StrategyProfile neg = fp;
  neg.set_action(r, 2, 0, Action(Rational(-1, 2)));
  CHECK_THROWS_AS(neg.validate(net), std::invalid_argument);

  StrategyProfile wh1 = StrategyProfile::uniform_withhold(net, r, 1);
  for (int b = 1; b <= 2; ++b)
    for (int s = 0; s < net.degree(r); ++s) CHECK(wh1.action(r, b, s) == fp.action(r, b, s));
  StrategyProfile wh2 = StrategyProfile::uniform_withhold(net, r, 2);
  CHECK(*wh2.action(r, 2, 0) == Rational(0));
  CHECK(*wh2.action(r, 1, 0) == Rational(0));
  wh2.validate(net);
}

TEST_CASE("bucket_action_set is the half grid with decline") {
  auto set1 = bucket_action_set(1, Rational(1, 2));
  REQUIRE(set1.size() == 2);
  CHECK(!set1[0].has_value());
  CHECK(*set1[1] == Rational(0));
  auto set3 = bucket_action_set(3, Rational(1, 2));
  REQUIRE(set3.size() == 6);
  CHECK(!set3[0].has_value());
  for (int i = 0; i <= 4; ++i) CHECK(*set3[i + 1] == Rational(i, 4));
}

TEST_CASE("full propagation on a forest reaches f*G(depth+1) players") {
  for (auto [d, f, depth] : {std::tuple{3, 3, 2}, {3, 4, 1}, {4, 5, 2}, {3, 3, 3}}) {
    Network net = Network::dary_forest(d, f, depth);
    auto out = propagate(net, StrategyProfile::full_propagation(net));
    CHECK(out.aware_count == net.player_count());
    CHECK(out.aware_count == std::int64_t(f) * geometric_count(d, depth + 1));
    CHECK(total_utility(net, out) == net.initial_reward());
  }
}

TEST_CASE("forest utilities under full propagation match the closed forms") {
  Network net = Network::dary_forest(3, 3, 2);
  auto out = propagate(net, StrategyProfile::full_propagation(net));
  NodeId r = net.subtree_root(0);
  CHECK(out.reward[r] == Rational(1));
  CHECK(out.round[r] == 1);
  CHECK(out.referred[r] == 13);
  CHECK(utility(net, out, r) == Rational(7, 39));
  NodeId c = net.forest_children(r)[0];
  CHECK(out.reward[c] == Rational(1, 2));
  CHECK(out.parent[c] == r);
  CHECK(out.referred[c] == 4);
  CHECK(utility(net, out, c) == Rational(2, 39));
  NodeId g = net.forest_children(c)[0];
  CHECK(out.reward[g] == Rational(0));
  CHECK(out.round[g] == 3);
  CHECK(out.referred[g] == 1);
  CHECK(utility(net, out, g) == Rational(0));
}

TEST_CASE("all decline leaves only the sender's neighbors aware") {
  Network net = Network::dary_forest(3, 4, 2);
  auto out = propagate(net, StrategyProfile::all_decline(net));
  CHECK(out.aware_count == 4);
  for (int t = 0; t < 4; ++t) {
    NodeId r = net.subtree_root(t);
    CHECK(out.aware[r] == 1);
    CHECK(utility(net, out, r) == Rational(1, 4));
  }
  CHECK(total_utility(net, out) == Rational(1));
  NodeId c = net.forest_children(net.subtree_root(0))[0];
  CHECK(out.aware[c] == 0);
  CHECK(out.round[c] == -1);
  CHECK(out.parent[c] == -1);
  CHECK(utility(net, out, c) == Rational(0));
}

TEST_CASE("six node cycle propagation matches a hand enumeration") {
  // sender 0 on a 6-cycle, x_min 1/4: offers shrink by 1/4 per hop and the
  // two arms meet at node 3 with equal offers.
  Network net = Network::general(6, 0, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}},
                                 Rational(1, 4), Rational(1));
  auto out = propagate(net, StrategyProfile::full_propagation(net));
  CHECK(out.aware_count == 5);
  CHECK(out.reward[1] == Rational(1));
  CHECK(out.reward[5] == Rational(1));
  CHECK(out.reward[2] == Rational(3, 4));
  CHECK(out.reward[4] == Rational(3, 4));
  CHECK(out.reward[3] == Rational(1, 2));
  CHECK(out.parent[3] == 2);  // equal offers, lower id wins
  CHECK(out.round[3] == 3);
  CHECK(out.referred[1] == 3);
  CHECK(out.referred[5] == 2);
  CHECK(utility(net, out, 1) == Rational(3, 10));
  CHECK(utility(net, out, 2) == Rational(1, 5));
  CHECK(utility(net, out, 3) == Rational(1, 10));
  CHECK(utility(net, out, 4) == Rational(3, 20));
  CHECK(utility(net, out, 5) == Rational(1, 4));
  CHECK(total_utility(net, out) == Rational(1));
}

TEST_CASE("row overrides reroute propagation without touching the profile") {
  Network net = Network::general(6, 0, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}},
                                 Rational(1, 4), Rational(1));
  StrategyProfile fp = StrategyProfile::full_propagation(net);
  RowOverride ov{1, 4, {decline(), decline()}};
  auto out = propagate(net, fp, std::span<const RowOverride>(&ov, 1));
  // Node 2 now hears only from 3, after the long way around.
  CHECK(out.aware_count == 5);
  CHECK(out.parent[2] == 3);
  CHECK(out.reward[2] == Rational(1, 4));
  CHECK(out.round[2] == 4);
  CHECK(out.reward[3] == Rational(1, 2));
  CHECK(out.parent[3] == 4);
  CHECK(total_utility(net, out) == Rational(1));
  // The profile itself is untouched.
  auto base = propagate(net, fp);
  CHECK(base.parent[2] == 1);
}

TEST_CASE("propagate rejects infeasible offers at the realized bucket") {
  Network net = Network::dary_forest(3, 3, 2);
  StrategyProfile p = StrategyProfile::full_propagation(net);
  NodeId r = net.subtree_root(0);
  p.set_action(r, 2, 1, Action(Rational(2)));  // cap at bucket 2 is 1/2
  CHECK_THROWS_AS(propagate(net, p), std::invalid_argument);
  // Infeasible rows at buckets never realized do not trip the runtime check.
  StrategyProfile q = StrategyProfile::full_propagation(net);
  q.set_action(r, 1, 1, Action(Rational(1)));
  CHECK_NOTHROW(propagate(net, q));
}

TEST_CASE("conservation of the initial reward holds for arbitrary profiles") {
  Network net = Network::dary_forest(3, 3, 2);
  NodeId r0 = net.subtree_root(0), r1 = net.subtree_root(1);
  StrategyProfile p = StrategyProfile::full_propagation(net);
  p.set_row(r0, 2, {Action(Rational(1, 4)), decline(), Action(Rational(1, 2)), Action(Rational(0))});
  p.set_row(r1, 2, {decline(), decline(), decline(), decline()});
  for (NodeId c : net.forest_children(net.subtree_root(2)))
    p.set_row(c, 1, {Action(Rational(0)), decline(), Action(Rational(0)), decline()});
  p.validate(net);
  auto out = propagate(net, p);
  CHECK(out.aware_count < net.player_count());
  CHECK(out.aware_count > 3);
  CHECK(total_utility(net, out) == Rational(1));
}
