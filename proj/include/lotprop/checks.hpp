#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lotprop/rational.hpp"

namespace lotprop {

// Result of sweeping one inequality family over a finite grid, all exact
// arithmetic. `violations` lists grid points where an asserted inequality
// failed (empty on a healthy sweep). `boundary` lists points where it held
// with equality; some sweeps have known equality corners that are reported
// here instead of being treated as failures. `margin` is the smallest
// certified lhs - rhs gap over the strictly-asserted points; where an
// irrational power is involved the gap is a certified lower bound obtained
// from rational brackets, never a float.
struct SweepReport {
  std::string claim;
  std::string grid;
  std::vector<std::string> violations;
  std::vector<std::string> boundary;
  Rational margin;
  std::int64_t points = 0;
};

// f(y) = (k+1-y) * (d^y - 1)/(d-1) increases in y on the grid
// y = m/den, m = 0 .. k*den - 1, and stays strictly below G(k).
// d^(m/den) is sandwiched in a rational bracket of width d^q/2^64 built by
// integer binary search (N^den <= d * 2^(64*den) < (N+1)^den), so each
// certified step is an exact rational inequality. Requires d >= 2, den >= 1,
// d < 2^den.
SweepReport check_claim1(const std::vector<int>& ds, const std::vector<int>& ks,
                         int den = 8);

// (1 + 2*eps) * W > 2 * Q / x_min for a root holding (k+eps)*x_min whose d
// children realize a composition (d_0..d_k), with pi0 = d*G(k) + 2k - 1 +
// pi0_offset outside observers. Strict everywhere except the single known
// corner (full propagation, eps = 0, offset 0), which is reported as
// boundary. Negative offsets probe below the precondition: failures there
// are recorded as violations for the caller to inspect, so a probe run is
// expected to return a non-empty list. Requires d >= 3, k >= 2,
// 0 <= eps < 1.
SweepReport check_claim2(const std::vector<int>& ds, const std::vector<int>& ks,
                         const std::vector<Rational>& eps_grid,
                         long pi0_offset = 0);

// sum_{i=1..k} d_i * G(i) * (2k - 2i + 1) <= d * G(k) over all partial
// compositions sum d_i <= d, strict unless all d units sit at level k
// (reported as boundary). Requires d >= 3, k >= 1.
SweepReport check_claim3(const std::vector<int>& ds, const std::vector<int>& ks);

// The chain (f-1)*G(k+1) >= d^(k+1) - 1 > d*(d^k - 1) >= (d+1)*G(k)
// >= d*G(k) + 2k - 1, link by link, plus G(k) >= 2k - 1 on its own.
// Equalities at f = d (first link) and k = 1 (last link and the standalone
// bound) are boundary, everything else strict. Pairs with f < d are skipped.
// Requires d >= 3, k >= 1.
SweepReport check_eq2(const std::vector<int>& ds, const std::vector<int>& fs,
                      const std::vector<int>& ks);

// Two sharing inequalities from the motivating example. The first,
// (1 + f_i)/(n + f_i) > 1/n, is asserted for every n >= 2, f_i >= 1. The
// second compares leaving a fraction c to each of f_i friends who each have
// phi onward friends against keeping everything:
//   (1 + (1-c)*f_i*phi) / (f_i*phi + n') > (1 + f_i)/n',   n' = n + f_i,
// asserted wherever the stated threshold phi > (n+1)/(n*(1-c) - 1) holds.
// That threshold is not sufficient in general (see
// intro_friend_inequality_holds for the sharp form), so callers should
// sweep grids chosen inside the sharp region; violations are reported
// honestly either way.
SweepReport check_intro_inequality(const std::vector<int>& ns,
                                   const std::vector<int>& f_is,
                                   const std::vector<int>& phis,
                                   const std::vector<Rational>& cs);

// Every single-unit move from level l to l+1 strictly raises the root's
// subgame utility, over all compositions of d into levels 0..k, every l with
// a unit, at pi0 = d*G(k) + 2k - 1. Margin is the smallest utility gain
// seen. Requires d >= 3, k >= 1, 0 <= eps < 1.
SweepReport check_lemma3(const std::vector<int>& ds, int k_max,
                         const std::vector<Rational>& eps_grid);

// Stated threshold for the friend-of-friend inequality: phi strictly above
// (n+1)/(n*(1-c) - 1). False whenever n*(1-c) <= 1 (threshold vacuous).
bool intro_friend_precondition(int n, int phi, const Rational& c);

// Exact evaluation of the friend-of-friend comparison above. The sharp
// condition is phi * (n*(1-c) - 1 - c*f_i) > n + f_i; the stated threshold
// drops the c*f_i term and admits corner failures such as
// n=5, f_i=2, phi=3, c=1/4.
bool intro_friend_inequality_holds(int n, int f_i, int phi, const Rational& c);

}  // namespace lotprop
