#pragma once

// Lorentz quasi-norms of step functions.  With d the distribution function,
//
//   ||f||_{p,q} = ( p * int_0^inf (l d(l)^(1/p))^q dl/l )^(1/q),   q < inf
//   ||f||_{p,inf} = sup_l l d(l)^(1/p)
//
// and, through a rearrangement N = R or L,
//
//   ( int_0^inf (t^(1/p) N(t))^q dt/t )^(1/q),   sup_t t^(1/p) N(t).
//
// For step curves both integrals are finite sums over the same staircase and
// agree exactly; the sums are evaluated in high precision.

#include "medmax/grid.hpp"
#include "medmax/rearrangement.hpp"

#include <variant>

namespace medmax {

struct LorentzIndex {
  Rational p{1};
  ExtRational q{1};

  void validate() const {
    if (p <= 0) throw Error("Lorentz exponent p must be positive");
    if (!q.is_infinite() && q.value() <= 0) throw Error("Lorentz exponent q must be positive");
  }
};

// 1/r - 1/r~ = gamma/n and p~ = p r~ / r.
struct WeakIndices {
  Rational r, r_tilde, p_tilde;
};

inline WeakIndices derive_indices(const Rational& p, const Rational& r, const Rational& gamma, std::size_t n) {
  if (p <= 0) throw Error("p must be positive");
  if (gamma < 0 || gamma >= Rational(n)) throw Error("gamma must lie in [0, n)");
  if (r < 1 || (gamma > 0 && r >= Rational(n) / gamma)) throw Error("r must lie in [1, n/gamma)");
  WeakIndices w;
  w.r = r;
  w.r_tilde = 1 / (1 / r - gamma / Rational(n));
  w.p_tilde = p * w.r_tilde / r;
  return w;
}

// Either a high-precision value or an exact one (q = inf).  +inf marks a
// divergent integral.
struct LorentzValue {
  std::variant<Real, ExactScalar> v;

  bool exact() const { return std::holds_alternative<ExactScalar>(v); }
  Real real() const { return exact() ? std::get<ExactScalar>(v).to_real() : std::get<Real>(v); }
  bool infinite() const { return exact() ? std::get<ExactScalar>(v).is_infinite() : boost::multiprecision::isinf(std::get<Real>(v)); }
};

namespace detail {

inline Real rpow(const Rational& base, const Real& e) {
  if (base == 0) return Real(0);
  return boost::multiprecision::pow(to_real(base), e);
}

}  // namespace detail

inline LorentzValue lorentz_norm_from_distribution(const StepCurve& d, const LorentzIndex& idx) {
  idx.validate();
  if (d.side() != Continuity::right) throw Error("distribution curve must be right-continuous");
  const auto& b = d.breaks();
  const auto& v = d.values();
  for (const auto& x : v)
    if (x.is_infinite()) return {ExactScalar::infinity()};
  if (v.back().value() != 0) return {ExactScalar::infinity()};

  if (idx.q.is_infinite()) {
    // On [l1, l2) with d = D the supremum of l D^(1/p) is l2 D^(1/p).
    ExactScalar best(0);
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
      if (v[i].value() == 0) continue;
      ExactScalar c = pow_measure(v[i].value(), 1 / idx.p) * b[i + 1];
      if (c > best) best = c;
    }
    return {best};
  }
  const Rational& q = idx.q.value();
  const Real qr = to_real(q), qp = to_real(Rational(q / idx.p));
  Real sum = 0;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    if (v[i].value() == 0) continue;
    sum += detail::rpow(v[i].value(), qp) * (detail::rpow(b[i + 1], qr) - detail::rpow(b[i], qr));
  }
  sum *= to_real(Rational(idx.p / q));
  return {Real(boost::multiprecision::pow(sum, 1 / qr))};
}

inline LorentzValue lorentz_norm_from_distribution(const GridFunction& f, const LorentzIndex& idx) {
  return lorentz_norm_from_distribution(distribution(f), idx);
}

// Integral over t of a rearrangement curve; segments with an infinite value
// can only occur next to the origin of a finite grid's curve, on a null set.
inline LorentzValue lorentz_norm_from_rearrangement(const StepCurve& n, const LorentzIndex& idx) {
  idx.validate();
  const auto& b = n.breaks();
  const auto& v = n.values();
  for (const auto& x : v)
    if (x.is_infinite()) return {ExactScalar::infinity()};
  if (v.back().value() != 0) return {ExactScalar::infinity()};

  if (idx.q.is_infinite()) {
    // On (t1, t2) with N = v the supremum of t^(1/p) v is t2^(1/p) v.
    ExactScalar best(0);
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
      if (v[i].value() == 0) continue;
      ExactScalar c = pow_measure(b[i + 1], 1 / idx.p) * v[i].value();
      if (c > best) best = c;
    }
    return {best};
  }
  const Rational& q = idx.q.value();
  const Real qr = to_real(q), qp = to_real(Rational(q / idx.p));
  Real sum = 0;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    if (v[i].value() == 0) continue;
    sum += detail::rpow(v[i].value(), qr) * (detail::rpow(b[i + 1], qp) - detail::rpow(b[i], qp));
  }
  sum *= to_real(Rational(idx.p / q));
  return {Real(boost::multiprecision::pow(sum, 1 / qr))};
}

enum class Side { R, L };

inline LorentzValue lorentz_norm_from_rearrangement(const GridFunction& f, const LorentzIndex& idx, Side which) {
  const auto d = distribution(f);
  return lorentz_norm_from_rearrangement(which == Side::R ? rearrangement_curve_R(d) : rearrangement_curve_L(d), idx);
}

// Distribution of a field of non-negative scalars on a grid; every value must
// be rational.
inline StepCurve distribution_of_values(const std::vector<ExactScalar>& vals, const Rational& cell_measure) {
  std::vector<Rational> a;
  a.reserve(vals.size());
  for (const auto& x : vals) a.push_back(x.to_ext_rational().value());
  return distribution(GridFunction::line(a, cell_measure));
}

inline bool within_relative(const Real& a, const Real& b, const Real& tol) {
  if (a == b) return true;
  return boost::multiprecision::abs(a - b) <= tol * std::max(boost::multiprecision::abs(a), boost::multiprecision::abs(b));
}

}  // namespace medmax
