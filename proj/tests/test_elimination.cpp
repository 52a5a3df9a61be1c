#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "lotprop/elimination.hpp"
#include "lotprop/network.hpp"

using namespace lotprop;

TEST_CASE("the strategy space keeps only realizable rows") {
  Network net = Network::dary_forest(3, 4, 2);
  EliminationState st = EliminationState::initial(net);
  NodeId root = net.subtree_root(0);
  CHECK(st.realizable_buckets(root) == std::vector<int>{2});
  NodeId child = net.forest_children(root)[0];
  CHECK(st.realizable_buckets(child) == std::vector<int>{1});
  NodeId leaf = net.forest_children(child)[0];
  CHECK(st.realizable_buckets(leaf).empty());
  CHECK(st.coordinates().size() == 4 * (3 + 9));
  CHECK(st.surviving(root, 2, st.child_slots(root)[0]).size() == 4);
  CHECK(st.surviving(child, 1, st.child_slots(child)[0]).size() == 2);
  CHECK(full_propagation_survives(st));
  CHECK(!st.collapsed_to_full_propagation());

  CHECK_THROWS_AS(st.surviving(root, 1, st.child_slots(root)[0]), std::invalid_argument);
  CHECK_THROWS_AS(st.eliminate(root, 2, st.child_slots(root)[0], Action(Rational(7))),
                  std::invalid_argument);
  Network general = Network::general(3, 0, {{0, 1}, {1, 2}}, Rational(1, 2), Rational(1));
  CHECK_THROWS_AS(EliminationState::initial(general), std::invalid_argument);
}

TEST_CASE("declines are dominated by zero offers, exhaustively on a shallow forest") {
  Network net = Network::dary_forest(3, 4, 1);
  EliminationState st = EliminationState::initial(net);
  NodeId root = net.subtree_root(0);
  int slot = st.child_slots(root)[0];
  DominanceOutcome out = verify_dominance(st, Coordinate{root, 1, slot}, decline(),
                                          Rational(0), VerifyOptions{});
  CHECK(out.dominated);
  CHECK(out.strict_seen);
  CHECK(!out.vacuous);
  CHECK(out.label == "exhaustive");
  CHECK(out.profiles_tested == 2048);  // all completions of the other 11 coordinates
}

TEST_CASE("a bogus dominance claim is refuted with a counterexample") {
  Network net = Network::dary_forest(3, 4, 2);
  EliminationState st = EliminationState::initial(net);
  NodeId root = net.subtree_root(0);
  int slot = st.child_slots(root)[1];
  // Leaving x_min/2 wastes margin over leaving 0 with the same reach, so the
  // claimed direction is backwards.
  DominanceOutcome out = verify_dominance(st, Coordinate{root, 2, slot}, Action(Rational(0)),
                                          Rational(1, 4), VerifyOptions{});
  CHECK(!out.dominated);
  CHECK(!out.counterexample.empty());
}

TEST_CASE("a coordinate nobody can reach verifies vacuously") {
  Network net = Network::dary_forest(3, 4, 2);
  EliminationState st = EliminationState::initial(net);
  NodeId root = net.subtree_root(0);
  NodeId child = net.forest_children(root)[0];
  // Remove the only root offer that lands the child in bucket 1.
  st.eliminate(root, 2, net.slot_of(root, child), Action(Rational(1, 2)));
  DominanceOutcome out = verify_dominance(st, Coordinate{child, 1, st.child_slots(child)[0]},
                                          decline(), Rational(0), VerifyOptions{});
  CHECK(out.vacuous);
  CHECK(out.label == "vacuous");
}

TEST_CASE("the fixed order collapses a shallow forest in one exhaustive round") {
  Network net = Network::dary_forest(3, 4, 1);
  EliminationResult res = eliminate_appendix_order(net);
  CHECK(res.rounds == 1);
  CHECK(res.collapsed_to_fp);
  CHECK(res.log.size() == 12);
  for (const EliminationEvent& e : res.log) {
    CHECK(e.round == 1);
    CHECK(e.victim == decline());
    CHECK(e.dominator == Rational(0));
    CHECK(e.verification == "exhaustive");
  }
  CHECK(order_is_almost_monotonic(net, res.log));
  CHECK(full_propagation_survives(replay(net, res.log)));
}

TEST_CASE("the fixed order collapses the depth-two forest in two rounds") {
  Network net = Network::dary_forest(3, 4, 2);
  VerifyOptions opts;
  opts.samples = 16;
  opts.own_completion_cap = 4;
  EliminationResult res = eliminate_appendix_order(net, opts);
  CHECK(res.rounds == 2);
  CHECK(res.collapsed_to_fp);
  REQUIRE(res.log.size() == 72);
  auto round_count = [&](int r) {
    return std::count_if(res.log.begin(), res.log.end(),
                         [r](const EliminationEvent& e) { return e.round == r; });
  };
  CHECK(round_count(1) == 60);  // every decline plus the fraction below x_min
  CHECK(round_count(2) == 12);  // zero offers at the root rows
  CHECK(order_is_almost_monotonic(net, res.log));

  // Replaying only round 1 already pins every depth-1 row to zero offers.
  std::vector<EliminationEvent> first;
  for (const EliminationEvent& e : res.log)
    if (e.round == 1) first.push_back(e);
  EliminationState mid = replay(net, first);
  for (int tree = 0; tree < 4; ++tree) {
    NodeId root = net.subtree_root(tree);
    for (NodeId c : net.forest_children(root))
      for (int s : mid.child_slots(c))
        CHECK(mid.surviving(c, 1, s) == std::vector<Action>{Action(Rational(0))});
    for (int s : mid.child_slots(root))
      CHECK(mid.surviving(root, 2, s).size() == 2);  // zero and x_min remain
  }
}

TEST_CASE("shuffled elimination orders land on full propagation") {
  Network shallow = Network::dary_forest(3, 4, 1);
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    EliminationResult res = eliminate_random_order(shallow, seed);
    CHECK(res.collapsed_to_fp);
    CHECK(full_propagation_survives(replay(shallow, res.log)));
  }
  Network net = Network::dary_forest(3, 4, 2);
  VerifyOptions opts;
  opts.samples = 16;
  opts.own_completion_cap = 4;
  opts.exhaustive_budget = 4096;  // keep midgame spaces sampled
  for (std::uint64_t seed : {21u, 22u}) {
    EliminationResult res = eliminate_random_order(net, seed, opts);
    CHECK(res.collapsed_to_fp);
    CHECK(full_propagation_survives(replay(net, res.log)));
  }
}

TEST_CASE("order validation flags a big downward jump, tolerates small ones") {
  Network net = Network::dary_forest(3, 4, 2);
  NodeId root = net.subtree_root(0);
  int slot = 1;
  auto ev = [&](int round, Action victim) {
    return EliminationEvent{round, Coordinate{root, 2, slot}, victim, Rational(1, 2), "test"};
  };
  // Dropping the fraction first and the decline later stays within the
  // x_min slack; dropping zero two levels below the fraction does not.
  CHECK(order_is_almost_monotonic(net, {ev(1, decline()), ev(2, Action(Rational(0)))}));
  CHECK(order_is_almost_monotonic(net, {ev(1, Action(Rational(1, 4))), ev(2, Action(Rational(0)))}));
  CHECK(!order_is_almost_monotonic(net, {ev(1, Action(Rational(1, 4))), ev(2, decline())}));
  // Same round means simultaneous, so the jump does not count.
  CHECK(order_is_almost_monotonic(net, {ev(1, Action(Rational(1, 4))), ev(1, decline())}));
}
