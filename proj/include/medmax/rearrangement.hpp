#pragma once

// Distribution functions and non-increasing rearrangements of grid functions.
//
//   d_f(l)   = |{|f| > l}|
//   R[f](t)  = inf{l >= 0 : d_f(l) <= t}      right-continuous
//   L[f](t)  = inf{l >= 0 : d_f(l) <  t}      left-continuous, L(0) = inf
//
// R and L are read off the distribution curve; the set-optimisation forms
// (R2, L2, L2*) are evaluated from the sorted cell magnitudes.

#include "medmax/grid.hpp"
#include "medmax/step_curve.hpp"

#include <optional>
#include <vector>

namespace medmax {

namespace detail {

inline std::vector<Rational> sorted_magnitudes_desc(const GridFunction& f) {
  std::vector<Rational> a;
  a.reserve(f.size());
  for (const auto& v : f.values()) a.push_back(boost::multiprecision::abs(v));
  std::sort(a.begin(), a.end(), [](const Rational& x, const Rational& y) { return x > y; });
  return a;
}

}  // namespace detail

inline StepCurve distribution(const GridFunction& f) {
  const Rational mu = f.geometry().cell_measure();
  auto a = detail::sorted_magnitudes_desc(f);
  std::vector<Rational> levels{Rational(0)};
  for (auto it = a.rbegin(); it != a.rend(); ++it)
    if (*it > levels.back()) levels.push_back(*it);
  std::vector<ExtRational> d;
  d.reserve(levels.size());
  // a is descending, so the count of entries > l is a prefix length.
  std::size_t above = a.size();
  for (const auto& l : levels) {
    while (above > 0 && a[above - 1] <= l) --above;
    d.emplace_back(mu * Rational(above));
  }
  return StepCurve::right(std::move(levels), std::move(d));
}

// R as a right-continuous step curve in t, from a finite distribution curve.
inline StepCurve rearrangement_curve_R(const StepCurve& d) {
  const auto dn = d.normalized();
  std::vector<Rational> breaks;
  std::vector<ExtRational> values;
  for (std::size_t i = dn.segments(); i-- > 0;) {
    if (dn.values()[i].is_infinite()) throw Error("distribution is infinite");
    breaks.push_back(dn.values()[i].value());
    values.emplace_back(dn.breaks()[i]);
  }
  if (breaks.front() != 0) {
    // d never reaches 0: R is +inf near the origin.
    breaks.insert(breaks.begin(), Rational(0));
    values.insert(values.begin(), ExtRational::infinity());
  }
  return StepCurve::right(std::move(breaks), std::move(values));
}

inline StepCurve rearrangement_curve_L(const StepCurve& d) {
  const auto r = rearrangement_curve_R(d);
  return StepCurve::left(r.breaks(), r.values(), ExtRational::infinity());
}

inline StepCurve rearrangement_curve_R(const GridFunction& f) { return rearrangement_curve_R(distribution(f)); }
inline StepCurve rearrangement_curve_L(const GridFunction& f) { return rearrangement_curve_L(distribution(f)); }

// inf{l : d(l) <= t} on a right-continuous distribution curve.
inline ExtRational rearrange_R(const StepCurve& d, const ExactScalar& t) {
  for (std::size_t i = 0; i < d.segments(); ++i)
    if (ExactScalar(d.values()[i]) <= t) return d.breaks()[i];
  return ExtRational::infinity();
}

// inf{l : d(l) < t}.
inline ExtRational rearrange_L(const StepCurve& d, const ExactScalar& t) {
  for (std::size_t i = 0; i < d.segments(); ++i)
    if (ExactScalar(d.values()[i]) < t) return d.breaks()[i];
  return ExtRational::infinity();
}

inline ExtRational rearrange_R(const GridFunction& f, const ExactScalar& t) {
  return rearrange_R(distribution(f), t);
}

inline ExtRational rearrange_L(const GridFunction& f, const ExactScalar& t) {
  return rearrange_L(distribution(f), t);
}

// inf over |A| <= t of ||f||_{L^inf(A^c)}.  A removes floor(t/mu) whole cells;
// a partial cell never lowers the essential supremum of the rest.
inline ExtRational rearrange_R2(const GridFunction& f, const ExactScalar& t) {
  if (t.is_infinite()) return Rational(0);
  const auto a = detail::sorted_magnitudes_desc(f);
  const Integer j = (t * (1 / f.geometry().cell_measure())).floor();
  if (j >= Integer(a.size())) return Rational(0);
  return a[j.convert_to<std::size_t>()];
}

// sup over |A| = t of ess inf_A |f|: A takes the ceil(t/mu) largest cells,
// the last one possibly partially; past the grid A must pick up zeros.
inline ExtRational rearrange_L2(const GridFunction& f, const ExactScalar& t) {
  if (t.is_zero()) return ExtRational::infinity();
  if (t.is_infinite()) return Rational(0);
  const auto a = detail::sorted_magnitudes_desc(f);
  const Integer m = (t * (1 / f.geometry().cell_measure())).ceil();
  if (m > Integer(a.size())) return Rational(0);
  return a[m.convert_to<std::size_t>() - 1];
}

// sup over |A| = t of inf_A |f|.  Differs from L2 only at t = 0, where a
// single point in the largest cell gives sup |f|.
inline ExtRational rearrange_L2star(const GridFunction& f, const ExactScalar& t) {
  if (t.is_zero()) {
    const auto a = detail::sorted_magnitudes_desc(f);
    return a.empty() ? Rational(0) : a.front();
  }
  return rearrange_L2(f, t);
}

struct ContinuityReport {
  bool ok = true;
  std::size_t points_checked = 0;
  std::optional<Rational> failing_point;
};

namespace detail {
inline constexpr int kContinuityProbes = 8;
}

// L(b - eps) == L(b) at every breakpoint b > 0 with L(b) finite, for
// eps = gap / 2^j.
inline ContinuityReport check_left_continuity(const StepCurve& c) {
  ContinuityReport rep;
  const auto& b = c.breaks();
  for (std::size_t i = 1; i < b.size(); ++i) {
    const auto at = c(b[i]);
    if (at.is_infinite()) continue;
    Rational eps = (b[i] - b[i - 1]) / 2;
    for (int j = 0; j < detail::kContinuityProbes; ++j, eps /= 2) {
      ++rep.points_checked;
      if (c(b[i] - eps) != at) {
        rep.ok = false;
        rep.failing_point = b[i];
        return rep;
      }
    }
  }
  return rep;
}

// N(b + eps) == N(b) at every breakpoint.
inline ContinuityReport check_right_continuity(const StepCurve& c) {
  ContinuityReport rep;
  const auto& b = c.breaks();
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (c.side() == Continuity::left && i == 0) continue;
    const auto at = c(b[i]);
    Rational eps = i + 1 < b.size() ? (b[i + 1] - b[i]) / 2 : Rational(1, 2);
    for (int j = 0; j < detail::kContinuityProbes; ++j, eps /= 2) {
      ++rep.points_checked;
      if (c(b[i] + eps) != at) {
        rep.ok = false;
        rep.failing_point = b[i];
        return rep;
      }
    }
  }
  return rep;
}

struct EquimeasurabilityReport {
  bool ok = false;
  StepCurve d_f, d_R, d_L;
};

inline EquimeasurabilityReport check_equimeasurable(const GridFunction& f) {
  EquimeasurabilityReport rep;
  rep.d_f = distribution(f).normalized();
  rep.d_R = distribution_of_profile(rearrangement_curve_R(rep.d_f));
  rep.d_L = distribution_of_profile(rearrangement_curve_L(rep.d_f));
  rep.ok = rep.d_f == rep.d_R && rep.d_f == rep.d_L;
  return rep;
}

}  // namespace medmax
