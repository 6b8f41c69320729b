#pragma once

// Exact rationals, extended rationals and single-power algebraic terms
// coeff * M^(1/b).  All measure and threshold comparisons go through here.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <compare>
#include <limits>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace medmax {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
// 80 decimal digits, i.e. a little over 256 bits of mantissa.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<80>,
                                           boost::multiprecision::et_off>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Rational helpers

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Rational make_rational(const Integer& n, const Integer& d) {
  if (d == 0) throw Error("zero denominator");
  return Rational(n, d);
}

inline Rational ipow(const Rational& q, unsigned e) {
  return Rational(boost::multiprecision::pow(num(q), e), boost::multiprecision::pow(den(q), e));
}

inline Integer floor_div(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.backend().data(), num(q).backend().data(), den(q).backend().data());
  return r;
}

inline Integer ceil_div(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.backend().data(), num(q).backend().data(), den(q).backend().data());
  return r;
}

inline std::string to_string(const Integer& z) { return z.str(); }

inline std::string to_string(const Rational& q) {
  if (den(q) == 1) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

namespace detail {
inline bool parse_integer(std::string_view s, Integer& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j)
    if (s[j] < '0' || s[j] > '9') return false;
  std::string digits(s.substr(i));
  out = Integer(digits);
  if (s[0] == '-') out = -out;
  return true;
}
}  // namespace detail

// Accepts "p", "p/q" (signed p, q > 0); the result is reduced.
inline Rational parse_rational(std::string_view s) {
  const auto slash = s.find('/');
  Integer n, d = 1;
  bool ok = detail::parse_integer(s.substr(0, slash), n);
  if (ok && slash != std::string_view::npos) {
    auto rest = s.substr(slash + 1);
    ok = !rest.empty() && rest[0] != '-' && rest[0] != '+' && detail::parse_integer(rest, d);
  }
  if (!ok) throw Error("malformed rational '" + std::string(s) + "'");
  if (d == 0) throw Error("zero denominator in '" + std::string(s) + "'");
  return make_rational(n, d);
}

inline Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
  return r;
}

inline Real to_real(const Integer& z) {
  Real r;
  mpfr_set_z(r.backend().data(), z.backend().data(), MPFR_RNDN);
  return r;
}

// Positional decimal with exactly `digits` significant digits.
inline std::string format_decimal(const Real& x, int digits = 40) {
  if (x == 0) {
    std::string s = "0.";
    s.append(static_cast<std::size_t>(digits - 1), '0');
    return s;
  }
  mpfr_exp_t exp = 0;
  char* raw = mpfr_get_str(nullptr, &exp, 10, static_cast<std::size_t>(digits),
                           x.backend().data(), MPFR_RNDN);
  std::string mant(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!mant.empty() && mant[0] == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  std::string out;
  if (exp <= 0) {
    out = "0." + std::string(static_cast<std::size_t>(-exp), '0') + mant;
  } else if (static_cast<std::size_t>(exp) >= mant.size()) {
    out = mant + std::string(static_cast<std::size_t>(exp) - mant.size(), '0');
  } else {
    out = mant.substr(0, static_cast<std::size_t>(exp)) + "." +
          mant.substr(static_cast<std::size_t>(exp));
  }
  return sign + out;
}

// ---------------------------------------------------------------------------
// Extended non-negative-or-signed rational with a +inf value.

class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(Rational v) : value_(std::move(v)) {}  // NOLINT: implicit by intent
  ExtRational(long v) : value_(v) {}                  // NOLINT

  static ExtRational infinity() {
    ExtRational e;
    e.infinite_ = true;
    return e;
  }

  bool is_infinite() const { return infinite_; }
  const Rational& value() const {
    if (infinite_) throw Error("value() of +inf");
    return value_;
  }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) {
      if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
      return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string str() const { return infinite_ ? "inf" : to_string(value_); }

 private:
  Rational value_{0};
  bool infinite_ = false;
};

inline ExtRational parse_ext_rational(std::string_view s) {
  if (s == "inf") return ExtRational::infinity();
  return parse_rational(s);
}

// ---------------------------------------------------------------------------
// ExactScalar: coeff * M^(1/b) with coeff >= 0 rational, M >= 1 integer,
// plus +inf.  Closed under products, quotients and rational powers.

namespace detail {

inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t limit = 1u << 16;
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

struct Factor {
  Integer base;
  unsigned exp;
};

// Trial division up to 2^16, then a perfect-power test of the cofactor.
// A cofactor above 2^32 that is not a perfect power is kept as one factor.
inline std::vector<Factor> factorize(Integer m) {
  std::vector<Factor> out;
  if (m <= 1) return out;
  if (m <= Integer(std::numeric_limits<std::uint64_t>::max())) {
    auto v = m.convert_to<std::uint64_t>();
    for (std::uint32_t p : small_primes()) {
      if (std::uint64_t{p} * p > v) break;
      if (v % p) continue;
      unsigned e = 0;
      while (v % p == 0) {
        v /= p;
        ++e;
      }
      out.push_back({Integer(p), e});
    }
    m = Integer(v);
  } else {
    for (std::uint32_t p : small_primes()) {
      if (Integer(p) * p > m) break;
      if (mpz_divisible_ui_p(m.backend().data(), p) == 0) continue;
      unsigned e = 0;
      while (mpz_divisible_ui_p(m.backend().data(), p) != 0) {
        mpz_divexact_ui(m.backend().data(), m.backend().data(), p);
        ++e;
      }
      out.push_back({Integer(p), e});
    }
  }
  if (m > 1) {
    const auto bits = static_cast<unsigned>(mpz_sizeinbase(m.backend().data(), 2));
    for (unsigned d = bits; d >= 2; --d) {
      Integer root;
      if (mpz_root(root.backend().data(), m.backend().data(), d) != 0) {
        out.push_back({root, d});
        return out;
      }
    }
    out.push_back({m, 1});
  }
  return out;
}

}  // namespace detail

class ExactScalar {
 public:
  ExactScalar() = default;

  ExactScalar(const Rational& q) : coeff_(q) {  // NOLINT: rationals embed
    if (q < 0) throw Error("ExactScalar requires a non-negative value");
  }
  ExactScalar(long v) : ExactScalar(Rational(v)) {}  // NOLINT

  ExactScalar(const ExtRational& e) {  // NOLINT
    if (e.is_infinite()) {
      infinite_ = true;
    } else {
      *this = ExactScalar(e.value());
    }
  }

  static ExactScalar infinity() {
    ExactScalar s;
    s.infinite_ = true;
    return s;
  }

  // base^exponent, base > 0.
  static ExactScalar power(const Rational& base, const Rational& exponent) {
    if (base <= 0) throw Error("power base must be positive");
    Rational b = base;
    Integer a = num(exponent);
    const Integer q = den(exponent);
    if (a < 0) {
      b = 1 / b;
      a = -a;
    }
    if (q > 1u << 20) throw Error("root index too large");
    const auto root = q.convert_to<unsigned>();
    const Integer whole = a / q;
    const auto frac = static_cast<unsigned>((a % q).convert_to<unsigned long>());
    if (whole > 1u << 20) throw Error("exponent too large");
    ExactScalar s;
    // b^(frac/root) = (n^frac * d^(frac*(root-1)))^(1/root) / d^frac
    const Integer n = num(b), d = den(b);
    s.coeff_ = ipow(b, whole.convert_to<unsigned>()) /
               Rational(boost::multiprecision::pow(d, frac));
    s.radicand_ = boost::multiprecision::pow(n, frac) *
                  boost::multiprecision::pow(d, frac * (root - 1));
    s.root_ = root;
    s.normalize();
    return s;
  }

  bool is_infinite() const { return infinite_; }
  bool is_zero() const { return !infinite_ && coeff_ == 0; }
  bool is_rational() const { return !infinite_ && radicand_ == 1; }

  const Rational& coeff() const { return coeff_; }
  const Integer& radicand() const { return radicand_; }
  unsigned root_index() const { return root_; }
  Rational base() const { return Rational(radicand_); }
  Rational exponent() const { return radicand_ == 1 ? Rational(0) : Rational(1, root_); }

  std::optional<Rational> as_rational() const {
    if (!is_rational()) return std::nullopt;
    return coeff_;
  }

  ExtRational to_ext_rational() const {
    if (infinite_) return ExtRational::infinity();
    if (!is_rational()) throw Error("ExactScalar " + str() + " is irrational");
    return coeff_;
  }

  ExactScalar operator*(const Rational& r) const {
    if (r < 0) throw Error("ExactScalar scaled by a negative rational");
    if (infinite_) {
      if (r == 0) throw Error("0 * inf");
      return *this;
    }
    ExactScalar s = *this;
    s.coeff_ *= r;
    if (s.coeff_ == 0) s = ExactScalar();
    return s;
  }

  ExactScalar operator*(const ExactScalar& o) const {
    if (infinite_ || o.infinite_) {
      if (is_zero() || o.is_zero()) throw Error("0 * inf");
      return infinity();
    }
    if (is_zero() || o.is_zero()) return ExactScalar();
    const unsigned l = std::lcm(root_, o.root_);
    ExactScalar s;
    s.coeff_ = coeff_ * o.coeff_;
    s.radicand_ = boost::multiprecision::pow(radicand_, l / root_) *
                  boost::multiprecision::pow(o.radicand_, l / o.root_);
    s.root_ = l;
    s.normalize();
    return s;
  }

  ExactScalar inverse() const {
    if (infinite_) return ExactScalar();
    if (is_zero()) return infinity();
    // 1/(c M^(1/b)) = (M^(b-1))^(1/b) / (c M)
    ExactScalar s;
    s.coeff_ = 1 / (coeff_ * Rational(radicand_));
    s.radicand_ = boost::multiprecision::pow(radicand_, root_ - 1);
    s.root_ = root_;
    s.normalize();
    return s;
  }

  ExactScalar pow(const Rational& e) const {
    if (e == 0) return ExactScalar(1);
    if (infinite_) return e > 0 ? infinity() : ExactScalar();
    if (is_zero()) {
      if (e < 0) return infinity();
      return ExactScalar();
    }
    // (c M^(1/b))^e = (c^b M)^(e/b)
    const Rational inner = ipow(coeff_, root_) * Rational(radicand_);
    return power(inner, e / Rational(root_));
  }

  Real to_real() const {
    if (infinite_) return std::numeric_limits<Real>::infinity();
    Real r = medmax::to_real(coeff_);
    if (radicand_ != 1) {
      Real m = medmax::to_real(radicand_);
      mpfr_rootn_ui(m.backend().data(), m.backend().data(), root_, MPFR_RNDN);
      r *= m;
    }
    return r;
  }

  Integer floor() const;
  Integer ceil() const;

  // "p/q", "inf", or "c*M^(1/b)".
  std::string str() const {
    if (infinite_) return "inf";
    if (radicand_ == 1) return to_string(coeff_);
    return to_string(coeff_) + "*" + radicand_.str() + "^(1/" + std::to_string(root_) + ")";
  }

  friend std::strong_ordering cmp(const ExactScalar& a, const ExactScalar& b);
  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return cmp(a, b) == std::strong_ordering::equal;
  }
  friend std::strong_ordering operator<=>(const ExactScalar& a, const ExactScalar& b) {
    return cmp(a, b);
  }

 private:
  void normalize() {
    if (infinite_) return;
    if (coeff_ == 0) {
      radicand_ = 1;
      root_ = 1;
      return;
    }
    if (root_ == 1) {
      coeff_ *= Rational(radicand_);
      radicand_ = 1;
      return;
    }
    if (radicand_ == 1) {
      root_ = 1;
      return;
    }
    auto factors = detail::factorize(radicand_);
    Integer extracted = 1;
    unsigned g = root_;
    for (auto& f : factors) {
      if (f.exp >= root_) {
        extracted *= boost::multiprecision::pow(f.base, f.exp / root_);
        f.exp %= root_;
      }
      if (f.exp) g = std::gcd(g, f.exp);
    }
    coeff_ *= Rational(extracted);
    Integer m = 1;
    for (const auto& f : factors)
      if (f.exp) m *= boost::multiprecision::pow(f.base, f.exp / g);
    radicand_ = m;
    root_ = m == 1 ? 1 : root_ / g;
  }

  Rational coeff_{0};
  Integer radicand_{1};
  unsigned root_ = 1;
  bool infinite_ = false;
};

namespace detail {
inline std::strong_ordering order(const Rational& a, const Rational& b) {
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}
}  // namespace detail

inline std::strong_ordering cmp(const ExactScalar& a, const ExactScalar& b) {
  if (a.infinite_ || b.infinite_) {
    if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
    return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  if (a.coeff_ == 0 || b.coeff_ == 0) return detail::order(a.coeff_, b.coeff_);
  if (a.radicand_ == b.radicand_ && a.root_ == b.root_) return detail::order(a.coeff_, b.coeff_);
  // Raise both sides to lcm(b1, b2) and compare rationals.
  const unsigned l = std::lcm(a.root_, b.root_);
  const Rational lhs = ipow(a.coeff_, l) * Rational(boost::multiprecision::pow(a.radicand_, l / a.root_));
  const Rational rhs = ipow(b.coeff_, l) * Rational(boost::multiprecision::pow(b.radicand_, l / b.root_));
  return detail::order(lhs, rhs);
}

// Signed rationals against non-negative scalars.
inline std::strong_ordering cmp(const ExactScalar& a, const Rational& b) {
  if (b < 0) return std::strong_ordering::greater;
  return cmp(a, ExactScalar(b));
}
inline std::strong_ordering cmp(const Rational& a, const ExactScalar& b) {
  if (a < 0) return std::strong_ordering::less;
  return cmp(ExactScalar(a), b);
}

inline Integer ExactScalar::floor() const {
  if (infinite_) throw Error("floor of +inf");
  if (is_rational()) return floor_div(coeff_);
  Real approx = to_real();
  Real fl = boost::multiprecision::floor(approx);
  Integer n;
  mpfr_get_z(n.backend().data(), fl.backend().data(), MPFR_RNDD);
  while (cmp(ExactScalar(Rational(n + 1)), *this) != std::strong_ordering::greater) ++n;
  while (n > 0 && cmp(ExactScalar(Rational(n)), *this) == std::strong_ordering::greater) --n;
  return n;
}

inline Integer ExactScalar::ceil() const {
  if (infinite_) throw Error("ceil of +inf");
  if (is_rational()) return ceil_div(coeff_);
  // Irrational values are never integers.
  return floor() + 1;
}

inline ExactScalar pow_measure(const Rational& m, const Rational& e) {
  if (m <= 0) throw Error("measure base must be positive");
  return ExactScalar::power(m, e);
}

inline ExactScalar mul(const ExactScalar& a, const Rational& b) { return a * b; }

// A rational strictly between lo and hi (lo < hi required).
inline Rational rational_between(const ExactScalar& lo, const Rational& hi) {
  if (cmp(lo, hi) != std::strong_ordering::less) throw Error("rational_between: empty interval");
  if (hi <= 0) throw Error("rational_between: non-positive upper end");
  Rational step = hi / 2;
  Rational c = hi - step;
  while (cmp(ExactScalar(c), lo) != std::strong_ordering::greater) {
    step /= 2;
    c = hi - step;
  }
  return c;
}

}  // namespace medmax
