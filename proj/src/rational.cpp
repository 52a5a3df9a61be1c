#include "lotprop/rational.hpp"

#include <cctype>
#include <ostream>

namespace lotprop {

Rational::Rational(long n, long d) {
  if (d == 0) throw std::invalid_argument("rational: zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::invalid_argument("rational: division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rational: empty string");
  auto slash = s.find('/');
  auto check_int = [&](const std::string& part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!check_int(num) || !check_int(den))
    throw std::invalid_argument("rational: malformed '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);  // mpz rejects an explicit plus
  if (den[0] == '+') den.erase(0, 1);
  mpq_class q;
  mpz_class n(num), d(den);
  if (d == 0) throw std::invalid_argument("rational: zero denominator in '" + s + "'");
  q = mpq_class(n) / mpq_class(d);
  q.canonicalize();
  return Rational(q);
}

std::string Rational::str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

long Rational::floor_div(const Rational& unit) const {
  if (unit.sign() <= 0) throw std::invalid_argument("rational: floor_div needs positive unit");
  // floor((a/b) / (c/d)) = floor(a*d / (b*c))
  mpz_class n = v_.get_num() * unit.v_.get_den();
  mpz_class d = v_.get_den() * unit.v_.get_num();
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  if (!q.fits_slong_p()) throw std::overflow_error("rational: floor_div overflow");
  return q.get_si();
}

std::string Rational::decimal(int digits) const {
  if (digits < 1) throw std::invalid_argument("rational: need at least one digit");
  if (is_zero()) return "0";
  mpz_class a = abs(v_.get_num());
  mpz_class b = v_.get_den();
  bool neg = sgn(v_) < 0;

  // Find exponent e with 10^e <= |v| < 10^(e+1).
  int e = 0;
  mpz_class lo = a, hi = a;  // compare a/b against powers of ten
  // scale until 1 <= a'/b < 10
  mpz_class ten(10);
  while (lo < b) { lo *= 10; --e; }
  // now lo/b >= 1 with lo = a * 10^(-e)
  mpz_class bound = b * 10;
  while (lo >= bound) { bound *= 10; ++e; }

  // digits of round(a * 10^(digits-1-e) / b), half away from zero
  mpz_class scaled = a;
  int shift = digits - 1 - e;
  if (shift >= 0) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift));
    scaled *= p;
  } else {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-shift));
    b *= p;
  }
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.get_mpz_t(), b.get_mpz_t());
  if (r * 2 >= b) ++q;
  std::string ds = q.get_str();
  if (static_cast<int>(ds.size()) > digits) {  // rounding carried into a new digit
    ++e;
    ds.pop_back();
  }

  std::string out;
  if (e >= -4 && e < digits + 3) {
    if (e >= 0) {
      out = ds.substr(0, e + 1);
      while (static_cast<int>(out.size()) < e + 1) out += '0';
      std::string frac = static_cast<int>(ds.size()) > e + 1 ? ds.substr(e + 1) : "";
      if (!frac.empty()) out += "." + frac;
    } else {
      out = "0." + std::string(-e - 1, '0') + ds;
    }
  } else {
    out = ds.substr(0, 1);
    if (ds.size() > 1) out += "." + ds.substr(1);
    out += "e" + std::string(e >= 0 ? "+" : "-") + std::to_string(e >= 0 ? e : -e);
  }
  return neg ? "-" + out : out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace lotprop
