#include "lotprop/checks.hpp"

#include <gmpxx.h>

#include <sstream>
#include <stdexcept>

#include "lotprop/equilibrium.hpp"
#include "lotprop/network.hpp"

namespace lotprop {

namespace {

Rational rat_pow(const Rational& base, int e) {
  Rational r(1);
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

std::int64_t ipow64(std::int64_t base, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Tracks the smallest strictly-asserted gap; stays 0 if nothing was asserted.
struct MarginTracker {
  bool seen = false;
  Rational best;
  void feed(const Rational& gap) {
    if (!seen || gap < best) {
      best = gap;
      seen = true;
    }
  }
  Rational value() const { return seen ? best : Rational(0); }
};

std::string int_list(const std::vector<int>& xs) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  os << "}";
  return os.str();
}

std::string rat_list(const std::vector<Rational>& xs) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i].str();
  os << "}";
  return os.str();
}

std::string comp_str(const Composition& comp) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < comp.size(); ++i) os << (i ? "," : "") << comp[i];
  os << ")";
  return os.str();
}

// [N/2^64, (N+1)/2^64] around d^(1/den): binary search the unique N with
// N^den <= d * 2^(64*den) < (N+1)^den. The root lies in [1, 2) because
// d < 2^den, so N starts in [2^64, 2^65).
struct RootBracket {
  Rational lo, hi;
};

RootBracket bracket_root(int d, int den) {
  mpz_class target = d;
  target <<= 64 * den;
  mpz_class lo = mpz_class(1) << 64;
  mpz_class hi = mpz_class(1) << 65;
  while (hi - lo > 1) {
    mpz_class mid = (lo + hi) / 2;
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), mid.get_mpz_t(), static_cast<unsigned long>(den));
    if (p <= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  mpz_class unit = mpz_class(1) << 64;
  return {Rational(mpq_class(lo, unit)), Rational(mpq_class(lo + 1, unit))};
}

void require_eps(const Rational& eps) {
  if (eps.sign() < 0 || eps >= Rational(1))
    throw std::invalid_argument("check: eps must lie in [0, 1)");
}

}  // namespace

SweepReport check_claim1(const std::vector<int>& ds, const std::vector<int>& ks,
                         int den) {
  if (den < 1) throw std::invalid_argument("check_claim1: den must be >= 1");
  SweepReport rep;
  rep.claim = "claim1";
  rep.grid = "d in " + int_list(ds) + ", k in " + int_list(ks) + ", y = m/" +
             std::to_string(den) + " on [0, k)";
  MarginTracker margin;

  for (int d : ds) {
    if (d < 2 || (den > 1 && den < 63 && d >= (1LL << den)))
      throw std::invalid_argument("check_claim1: need 2 <= d < 2^den");
    // den == 1 never leaves the integer powers, so no bracket is needed.
    RootBracket br{Rational(1), Rational(1)};
    if (den > 1) br = bracket_root(d, den);
    for (int k : ks) {
      if (k < 1) throw std::invalid_argument("check_claim1: k must be >= 1");
      Rational cap = Rational(geometric_count(d, k));
      Rational prev_hi;
      for (int m = 0; m < k * den; ++m) {
        int q = m / den;
        int s = m % den;
        Rational dq = Rational(ipow64(d, q));
        Rational coeff = Rational(k + 1) - Rational(m, den);
        Rational flo = coeff * (dq * rat_pow(br.lo, s) - 1) / Rational(d - 1);
        Rational fhi = coeff * (dq * rat_pow(br.hi, s) - 1) / Rational(d - 1);
        std::string at = "d=" + std::to_string(d) + " k=" + std::to_string(k) +
                         " y=" + std::to_string(m) + "/" + std::to_string(den);
        if (m > 0) {
          ++rep.points;
          Rational gap = flo - prev_hi;
          if (gap.sign() <= 0)
            rep.violations.push_back(at + ": step not certified increasing");
          else
            margin.feed(gap);
        }
        ++rep.points;
        Rational headroom = cap - fhi;
        if (headroom.sign() <= 0)
          rep.violations.push_back(at + ": value not certified below G(k)");
        else
          margin.feed(headroom);
        prev_hi = fhi;
      }
    }
  }
  rep.margin = margin.value();
  return rep;
}

SweepReport check_claim2(const std::vector<int>& ds, const std::vector<int>& ks,
                         const std::vector<Rational>& eps_grid,
                         long pi0_offset) {
  SweepReport rep;
  rep.claim = "claim2";
  rep.grid = "d in " + int_list(ds) + ", k in " + int_list(ks) + ", eps in " +
             rat_list(eps_grid) + ", pi0 = d*G(k)+2k-1" +
             (pi0_offset ? (pi0_offset > 0 ? "+" : "") + std::to_string(pi0_offset)
                         : std::string());
  MarginTracker margin;

  for (const Rational& eps : eps_grid) require_eps(eps);
  for (int d : ds) {
    if (d < 3) throw std::invalid_argument("check_claim2: d must be >= 3");
    for (int k : ks) {
      if (k < 2) throw std::invalid_argument("check_claim2: k must be >= 2");
      long pi0 = d * geometric_count(d, k) + 2 * k - 1 + pi0_offset;
      for (const Rational& eps : eps_grid) {
        Rational x = Rational(k) + eps;
        for (const Composition& comp : all_compositions(d, k + 1)) {
          Rational w = Rational(pi0 + 1);
          Rational q = x;
          for (int l = 1; l <= k; ++l) {
            if (comp[l] == 0) continue;
            Rational weight = Rational(comp[l]) * Rational(geometric_count(d, l));
            w += weight;
            q += weight * (x - Rational(l - 1));
          }
          Rational diff = (Rational(1) + Rational(2) * eps) * w - Rational(2) * q;
          ++rep.points;
          std::string at = "d=" + std::to_string(d) + " k=" + std::to_string(k) +
                           " eps=" + eps.str() + " comp=" + comp_str(comp);
          bool fp_corner =
              pi0_offset == 0 && eps.is_zero() && comp[k] == d;
          if (diff.sign() < 0 || (diff.is_zero() && !fp_corner))
            rep.violations.push_back(at + ": lhs-rhs=" + diff.str());
          else if (diff.is_zero())
            rep.boundary.push_back(at + ": equality");
          else
            margin.feed(diff);
        }
      }
    }
  }
  rep.margin = margin.value();
  return rep;
}

SweepReport check_claim3(const std::vector<int>& ds, const std::vector<int>& ks) {
  SweepReport rep;
  rep.claim = "claim3";
  rep.grid = "d in " + int_list(ds) + ", k in " + int_list(ks) +
             ", all compositions with sum d_i <= d over levels 1..k";
  MarginTracker margin;

  for (int d : ds) {
    if (d < 3) throw std::invalid_argument("check_claim3: d must be >= 3");
    for (int k : ks) {
      if (k < 1) throw std::invalid_argument("check_claim3: k must be >= 1");
      Rational rhs = Rational(d) * Rational(geometric_count(d, k));
      for (int total = 0; total <= d; ++total) {
        for (const Composition& comp : all_compositions(total, k)) {
          // comp[i] holds d_{i+1}: levels run 1..k here, level 0 is absent.
          Rational lhs(0);
          for (int i = 1; i <= k; ++i)
            lhs += Rational(comp[i - 1]) * Rational(geometric_count(d, i)) *
                   Rational(2 * k - 2 * i + 1);
          Rational diff = rhs - lhs;
          ++rep.points;
          std::string at = "d=" + std::to_string(d) + " k=" + std::to_string(k) +
                           " comp=" + comp_str(comp);
          bool full_mass_deepest = comp[k - 1] == d;
          if (diff.sign() < 0 || (diff.is_zero() && !full_mass_deepest))
            rep.violations.push_back(at + ": rhs-lhs=" + diff.str());
          else if (diff.is_zero())
            rep.boundary.push_back(at + ": equality");
          else
            margin.feed(diff);
        }
      }
    }
  }
  rep.margin = margin.value();
  return rep;
}

SweepReport check_eq2(const std::vector<int>& ds, const std::vector<int>& fs,
                      const std::vector<int>& ks) {
  SweepReport rep;
  rep.claim = "eq2";
  rep.grid = "d in " + int_list(ds) + ", f in " + int_list(fs) + " (f >= d), k in " +
             int_list(ks);
  MarginTracker margin;

  for (int d : ds) {
    if (d < 3) throw std::invalid_argument("check_eq2: d must be >= 3");
    for (int f : fs) {
      if (f < d) continue;
      for (int k : ks) {
        if (k < 1) throw std::invalid_argument("check_eq2: k must be >= 1");
        std::int64_t gk = geometric_count(d, k);
        std::int64_t gk1 = geometric_count(d, k + 1);
        std::int64_t dk1 = ipow64(d, k + 1);
        std::int64_t dk = ipow64(d, k);
        std::string at = "d=" + std::to_string(d) + " f=" + std::to_string(f) +
                         " k=" + std::to_string(k);

        struct Link {
          std::int64_t diff;
          bool strict;           // asserted strict; otherwise >= with equality ok
          const char* label;
        };
        Link links[] = {
            {(f - 1) * gk1 - (dk1 - 1), false, "(f-1)G(k+1) vs d^(k+1)-1"},
            {(dk1 - 1) - d * (dk - 1), true, "d^(k+1)-1 vs d(d^k-1)"},
            {d * (dk - 1) - (d + 1) * gk, true, "d(d^k-1) vs (d+1)G(k)"},
            {(d + 1) * gk - (d * gk + 2 * k - 1), false, "(d+1)G(k) vs dG(k)+2k-1"},
            {gk - (2 * k - 1), false, "G(k) vs 2k-1"},
        };
        for (const Link& link : links) {
          ++rep.points;
          if (link.diff < 0 || (link.diff == 0 && link.strict))
            rep.violations.push_back(at + " " + link.label + ": diff=" +
                                     std::to_string(link.diff));
          else if (link.diff == 0)
            rep.boundary.push_back(at + " " + link.label + ": equality");
          else
            margin.feed(Rational(link.diff));
        }
      }
    }
  }
  rep.margin = margin.value();
  return rep;
}

bool intro_friend_precondition(int n, int phi, const Rational& c) {
  Rational scale = Rational(n) * (Rational(1) - c) - Rational(1);
  if (scale.sign() <= 0) return false;
  return Rational(phi) * scale > Rational(n + 1);
}

bool intro_friend_inequality_holds(int n, int f_i, int phi, const Rational& c) {
  long np = n + f_i;
  long s = static_cast<long>(f_i) * phi;
  Rational lhs = (Rational(1) + (Rational(1) - c) * Rational(s)) / Rational(s + np);
  Rational rhs = Rational(1 + f_i) / Rational(np);
  return lhs > rhs;
}

SweepReport check_intro_inequality(const std::vector<int>& ns,
                                   const std::vector<int>& f_is,
                                   const std::vector<int>& phis,
                                   const std::vector<Rational>& cs) {
  SweepReport rep;
  rep.claim = "intro";
  rep.grid = "n in " + int_list(ns) + ", f_i in " + int_list(f_is) + ", phi in " +
             int_list(phis) + ", c in " + rat_list(cs);
  MarginTracker margin;

  for (const Rational& c : cs) require_eps(c);
  for (int n : ns) {
    if (n < 2) throw std::invalid_argument("check_intro_inequality: n must be >= 2");
    for (int f_i : f_is) {
      if (f_i < 1)
        throw std::invalid_argument("check_intro_inequality: f_i must be >= 1");
      Rational base = Rational(1 + f_i) / Rational(n + f_i) - Rational(1, n);
      ++rep.points;
      if (base.sign() <= 0)
        rep.violations.push_back("n=" + std::to_string(n) + " f_i=" +
                                 std::to_string(f_i) + ": sharing bound failed");
      else
        margin.feed(base);

      for (int phi : phis) {
        if (phi < 1)
          throw std::invalid_argument("check_intro_inequality: phi must be >= 1");
        for (const Rational& c : cs) {
          if (!intro_friend_precondition(n, phi, c)) continue;
          ++rep.points;
          long np = n + f_i;
          long s = static_cast<long>(f_i) * phi;
          Rational diff =
              (Rational(1) + (Rational(1) - c) * Rational(s)) / Rational(s + np) -
              Rational(1 + f_i) / Rational(np);
          if (diff.sign() <= 0)
            rep.violations.push_back("n=" + std::to_string(n) + " f_i=" +
                                     std::to_string(f_i) + " phi=" +
                                     std::to_string(phi) + " c=" + c.str() +
                                     ": lhs-rhs=" + diff.str());
          else
            margin.feed(diff);
        }
      }
    }
  }
  rep.margin = margin.value();
  return rep;
}

SweepReport check_lemma3(const std::vector<int>& ds, int k_max,
                         const std::vector<Rational>& eps_grid) {
  if (k_max < 1) throw std::invalid_argument("check_lemma3: k_max must be >= 1");
  SweepReport rep;
  rep.claim = "lemma3";
  rep.grid = "d in " + int_list(ds) + ", k in 1.." + std::to_string(k_max) +
             ", eps in " + rat_list(eps_grid) + ", pi0 = d*G(k)+2k-1";
  MarginTracker margin;

  for (const Rational& eps : eps_grid) require_eps(eps);
  for (int d : ds) {
    if (d < 3) throw std::invalid_argument("check_lemma3: d must be >= 3");
    for (int k = 1; k <= k_max; ++k) {
      SubgameContext ctx;
      ctx.d = d;
      ctx.k = k;
      ctx.pi0 = d * geometric_count(d, k) + 2 * k - 1;
      for (const Rational& eps : eps_grid) {
        ctx.eps = eps;
        for (const Composition& comp : all_compositions(d, k + 1)) {
          Rational before = subgame_utility(ctx, comp);
          for (int l = 0; l < k; ++l) {
            if (comp[l] == 0) continue;
            Composition moved = comp;
            --moved[l];
            ++moved[l + 1];
            Rational diff = subgame_utility(ctx, moved) - before;
            ++rep.points;
            if (diff.sign() <= 0)
              rep.violations.push_back(
                  "d=" + std::to_string(d) + " k=" + std::to_string(k) +
                  " eps=" + eps.str() + " comp=" + comp_str(comp) +
                  " l=" + std::to_string(l) + ": gain=" + diff.str());
            else
              margin.feed(diff);
          }
        }
      }
    }
  }
  rep.margin = margin.value();
  return rep;
}

}  // namespace lotprop
