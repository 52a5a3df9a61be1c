#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace lotprop {

// Exact rational number. Thin wrapper over GMP's mpq_class that keeps the
// value canonical at all times: reduced to lowest terms, denominator > 0,
// sign carried by the numerator. All comparisons are exact.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}       // NOLINT: implicit by design
  Rational(int n) : v_(n) {}        // NOLINT
  Rational(long n, long d);
  explicit Rational(const mpz_class& n) : v_(n) {}
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  // Accepts "p/q" or a bare integer "p". Throws std::invalid_argument on
  // malformed input or zero denominator.
  static Rational parse(const std::string& s);

  // Always renders as "p/q", q > 0, reduced ("3/1" for integers).
  std::string str() const;

  // Decimal rendering with exactly `digits` significant digits, computed from
  // the integer representation (no floating point). Rounds half away from
  // zero. Uses plain notation for moderate magnitudes, otherwise "...e+k".
  std::string decimal(int digits) const;

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  // floor(*this / unit) as a machine integer; unit must be positive and the
  // quotient must fit. Used for reward-bucket indexing.
  long floor_div(const Rational& unit) const;

  double to_double() const { return v_.get_d(); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) == 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) < 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class v_;
};

}  // namespace lotprop
