#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lotprop/checks.hpp"
#include "lotprop/network.hpp"

using lotprop::check_claim1;
using lotprop::check_claim2;
using lotprop::check_claim3;
using lotprop::check_eq2;
using lotprop::check_intro_inequality;
using lotprop::check_lemma3;
using lotprop::intro_friend_inequality_holds;
using lotprop::intro_friend_precondition;
using lotprop::Rational;
using lotprop::SweepReport;

namespace {
const std::vector<Rational> kEpsGrid{Rational(0), Rational(1, 4), Rational(1, 2),
                                     Rational(3, 4)};
}

TEST_CASE("claim1 integer grid reproduces exact values") {
  // den = 1 keeps every power integral, so the sweep is exact: for d=3, k=3
  // the curve runs 0, 3, 8 and the certified margin is the 0 -> 1 step.
  SweepReport rep = check_claim1({3}, {3}, 1);
  CHECK(rep.violations.empty());
  CHECK(rep.boundary.empty());
  CHECK(rep.margin == Rational(3));
  CHECK(rep.points == 5);  // 2 steps + 3 cap checks

  // d=3, k=2: values 0, 2 against G(2) = 4; the cap gap at y=1 is the min.
  SweepReport cap = check_claim1({3}, {2}, 1);
  CHECK(cap.violations.empty());
  CHECK(cap.margin == Rational(2));
}

TEST_CASE("claim1 eighth grid certifies monotonicity below G(k)") {
  SweepReport rep = check_claim1({3, 4, 5}, {1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(rep.violations.empty());
  CHECK(rep.boundary.empty());
  CHECK(rep.margin.sign() > 0);
  // per (d,k): (8k-1) step checks + 8k cap checks
  std::int64_t expected = 0;
  for (int k = 1; k <= 8; ++k) expected += 3 * (16 * k - 1);
  CHECK(rep.points == expected);
  CHECK(rep.grid.find("y = m/8") != std::string::npos);
}

TEST_CASE("claim1 rejects bad shapes") {
  CHECK_THROWS_AS(check_claim1({3}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(check_claim1({1}, {2}), std::invalid_argument);
  CHECK_THROWS_AS(check_claim1({3}, {2}, 0), std::invalid_argument);
  CHECK_THROWS_AS(check_claim1({9}, {2}, 3), std::invalid_argument);  // 9 >= 2^3
}

TEST_CASE("claim2 strict at threshold except the full-propagation corner") {
  SweepReport rep = check_claim2({3, 4}, {2, 3, 4}, kEpsGrid);
  CHECK(rep.violations.empty());
  // one equality per (d,k): eps = 0 with every unit at depth k
  CHECK(rep.boundary.size() == 6);
  CHECK(rep.boundary.front().find("d=3 k=2") != std::string::npos);
  CHECK(rep.boundary.front().find("comp=(0,0,3)") != std::string::npos);
  // minimum strict gap: one unit pulled a level up from full propagation at
  // eps = 0, e.g. d=3 k=2 comp (0,1,2): W=25, Q=12, 25 - 24 = 1.
  CHECK(rep.margin == Rational(1));
  std::int64_t comps = (10 + 20 + 35) + (15 + 35 + 70);  // d=3 then d=4
  CHECK(rep.points == comps * 4);
}

TEST_CASE("claim2 below the observer threshold admits violations") {
  SweepReport probe = check_claim2({3}, {2}, {Rational(0)}, -1);
  CHECK(!probe.violations.empty());
  bool fp_fails = false;
  for (const std::string& v : probe.violations)
    if (v.find("comp=(0,0,3)") != std::string::npos) fp_fails = true;
  CHECK(fp_fails);
  CHECK_THROWS_AS(check_claim2({3}, {1}, {Rational(0)}), std::invalid_argument);
  CHECK_THROWS_AS(check_claim2({3}, {2}, {Rational(1)}), std::invalid_argument);
}

TEST_CASE("claim3 strict except full mass at the deepest level") {
  SweepReport rep = check_claim3({3, 4, 5}, {1, 2, 3, 4, 5, 6});
  CHECK(rep.violations.empty());
  CHECK(rep.boundary.size() == 18);  // one per (d,k)
  CHECK(rep.boundary.front().find("d=3 k=1") != std::string::npos);
  CHECK(rep.boundary.front().find("comp=(3)") != std::string::npos);
  // d=3, k=2, (d_1,d_2)=(1,2): 1*1*3 + 2*4*1 = 11 against 12.
  CHECK(rep.margin == Rational(1));
  CHECK_THROWS_AS(check_claim3({2}, {2}), std::invalid_argument);
}

TEST_CASE("eq2 chain holds with known equality corners") {
  std::vector<int> ks;
  for (int k = 1; k <= 12; ++k) ks.push_back(k);
  SweepReport rep = check_eq2({3, 4, 5}, {3, 4, 5, 6, 7, 8}, ks);
  CHECK(rep.violations.empty());
  // f = d collapses the first link (one per k, three d values); k = 1
  // collapses the last two links at every valid (d,f) pair (6+5+4 pairs).
  CHECK(rep.boundary.size() == 3 * 12 + 2 * 15);
  CHECK(rep.margin == Rational(1));  // G(2) = d+1 vs 2k-1 = 3 at d=3
  // 15 (d,f) pairs, 12 k values, 5 links each
  CHECK(rep.points == 15 * 12 * 5);
  CHECK_THROWS_AS(check_eq2({2}, {3}, {1}), std::invalid_argument);
}

TEST_CASE("intro sharing bound holds for every n >= 2") {
  std::vector<int> ns, fis;
  for (int n = 2; n <= 30; ++n) ns.push_back(n);
  for (int f = 1; f <= 10; ++f) fis.push_back(f);
  SweepReport rep = check_intro_inequality(ns, fis, {}, {});
  CHECK(rep.violations.empty());
  CHECK(rep.points == 29 * 10);
  // worst point is f_i = 1 at the largest n: 2/31 - 1/30
  CHECK(rep.margin == Rational(29, 930));
  CHECK_THROWS_AS(check_intro_inequality({1}, {1}, {}, {}), std::invalid_argument);
}

TEST_CASE("intro friend inequality holds on a grid inside the sharp region") {
  std::vector<int> ns;
  for (int n = 5; n <= 12; ++n) ns.push_back(n);
  SweepReport rep = check_intro_inequality(
      ns, {1, 2}, {2, 3, 4}, {Rational(0), Rational(1, 100), Rational(1, 50)});
  CHECK(rep.violations.empty());
  CHECK(rep.margin.sign() > 0);
  CHECK(rep.points > 16 * 3);  // every (n, f_i) base bound plus friend points
}

TEST_CASE("intro stated threshold admits a corner failure") {
  // n=5, f_i=2, phi=3, c=1/4 passes the stated threshold (3 > 24/11) yet the
  // comparison fails: (1 + 3/4*6)/13 = 11/26 < 3/7. The sharp condition
  // phi*(n(1-c) - 1 - c*f_i) > n + f_i gives 3*(11/4 - 1/2) = 27/4 < 7.
  Rational c(1, 4);
  CHECK(intro_friend_precondition(5, 3, c));
  CHECK(!intro_friend_inequality_holds(5, 2, 3, c));
  // same corner with c small enough is fine
  CHECK(intro_friend_inequality_holds(5, 2, 3, Rational(1, 50)));
  // vacuous threshold when n(1-c) <= 1
  CHECK(!intro_friend_precondition(2, 10, Rational(1, 2)));
}

TEST_CASE("lemma3 sweep certifies every single-unit deepening") {
  SweepReport rep = check_lemma3({3, 4, 5}, 5, kEpsGrid);
  CHECK(rep.violations.empty());
  CHECK(rep.boundary.empty());
  CHECK(rep.margin.sign() > 0);
  CHECK(rep.points > 1000);
  CHECK_THROWS_AS(check_lemma3({3}, 0, kEpsGrid), std::invalid_argument);
  CHECK_THROWS_AS(check_lemma3({2}, 2, kEpsGrid), std::invalid_argument);
}
