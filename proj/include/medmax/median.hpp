#pragma once

// Fractional median sets.  For t = alpha |E|^(1 - gamma/n), m is a median of
// f on E when |{x in E : f < m}| <= |E| - t and |{x in E : f > m}| <= t.  The
// set of such m is a closed interval [lo, hi].

#include "medmax/grid.hpp"
#include "medmax/oracle.hpp"
#include "medmax/params.hpp"
#include "medmax/rearrangement.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace medmax {

struct MedianInterval {
  Rational lo, hi;
  friend bool operator==(const MedianInterval&, const MedianInterval&) = default;
};

struct ScalarInterval {
  ExactScalar lo, hi;
  friend bool operator==(const ScalarInterval& a, const ScalarInterval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

namespace detail {

inline ExactScalar checked_threshold(const CellSet& e, const FractionalParams& p) {
  p.validate();
  if (p.n != e.geometry().dim()) throw Error("parameter dimension does not match the grid");
  const Rational m = measure(e);
  if (m == 0) throw Error("median over a null set");
  if (!p.admissible_for(m))
    throw Error("alpha must be below |E|^(gamma/n); got alpha = " + to_string(p.alpha));
  return p.threshold(m);
}

inline std::vector<Rational> values_on(const GridFunction& f, const CellSet& e) {
  if (!(f.geometry() == e.geometry())) throw Error("set and function live on different grids");
  std::vector<Rational> v;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (e.contains(i)) v.push_back(f[i]);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace detail

// Scan over the attained values plus one sentinel on each side.  Both measure
// conditions are step functions of m that only jump at attained values.
inline MedianInterval median_set_by_definition(const GridFunction& f, const CellSet& e,
                                               const FractionalParams& p) {
  const ExactScalar t = detail::checked_threshold(e, p);
  const Rational mu = f.geometry().cell_measure();
  const Rational total = measure(e);
  const auto v = detail::values_on(f, e);

  std::vector<Rational> cand{v.front() - 1};
  for (const auto& x : v)
    if (x != cand.back()) cand.push_back(x);
  cand.push_back(v.back() + 1);

  std::optional<Rational> max_a, min_b;
  for (const auto& m : cand) {
    const auto below = static_cast<long>(std::lower_bound(v.begin(), v.end(), m) - v.begin());
    const auto above = static_cast<long>(v.end() - std::upper_bound(v.begin(), v.end(), m));
    // |{f < m}| <= |E| - t  and  |{f > m}| <= t
    if (cmp(t, total - mu * Rational(below)) != std::strong_ordering::greater) max_a = m;
    if (!min_b && cmp(ExactScalar(mu * Rational(above)), t) != std::strong_ordering::greater) min_b = m;
  }
  if (!max_a || !min_b || *max_a < *min_b) throw Error("median scan found no common value");
  // max A is the largest m with the first condition; min B the smallest with
  // the second.  The medians are the m satisfying both, i.e. [min B, max A].
  return {*min_b, *max_a};
}

inline bool is_fractional_median(const GridFunction& f, const CellSet& e, const FractionalParams& p,
                                 const Rational& m) {
  const ExactScalar t = detail::checked_threshold(e, p);
  const Rational mu = f.geometry().cell_measure();
  Rational below = 0, above = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!e.contains(i)) continue;
    if (f[i] < m) below += mu;
    if (f[i] > m) above += mu;
  }
  return cmp(t, measure(e) - below) != std::strong_ordering::greater &&
         cmp(ExactScalar(above), t) != std::strong_ordering::greater;
}

inline MedianInterval median_set_by_rearrangement(const GridFunction& f, const CellSet& e,
                                                  const FractionalParams& p) {
  const ExactScalar t = detail::checked_threshold(e, p);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (e.contains(i) && f[i] < 0) throw Error("this route needs f >= 0 on E");
  const auto d = distribution(restrict_to(f, e));
  const auto lo = rearrange_R(d, t), hi = rearrange_L(d, t);
  if (lo.is_infinite() || hi.is_infinite()) throw Error("rearrangement is infinite at the threshold");
  return {lo.value(), hi.value()};
}

// A distribution of the form omega * g(lambda) with g non-increasing and
// right-continuous.  omega may be left symbolic.
class MonotoneDistribution {
 public:
  virtual ~MonotoneDistribution() = default;
  // inf{l >= 0 : g(l) <= tau} and inf{l >= 0 : g(l) < tau}.
  virtual ExactScalar inf_at_most(const ExactScalar& tau) const = 0;
  virtual ExactScalar inf_below(const ExactScalar& tau) const = 0;
  // sup g, which must not exceed the normalised total measure.
  virtual ExactScalar supremum() const = 0;
};

class StepDistribution : public MonotoneDistribution {
 public:
  explicit StepDistribution(StepCurve d) : d_(std::move(d)) {
    if (d_.side() != Continuity::right) throw Error("distribution curve must be right-continuous");
  }
  ExactScalar inf_at_most(const ExactScalar& tau) const override { return rearrange_R(d_, tau); }
  ExactScalar inf_below(const ExactScalar& tau) const override { return rearrange_L(d_, tau); }
  ExactScalar supremum() const override { return d_.at_origin(); }

 private:
  StepCurve d_;
};

// g(l) = min(1, 1/l).
class ReciprocalDistribution : public MonotoneDistribution {
 public:
  ExactScalar inf_at_most(const ExactScalar& tau) const override {
    if (tau.is_zero()) return ExactScalar::infinity();
    if (cmp(tau, Rational(1)) != std::strong_ordering::less) return ExactScalar(0);
    return tau.inverse();
  }
  ExactScalar inf_below(const ExactScalar& tau) const override {
    if (tau.is_zero()) return ExactScalar::infinity();
    if (cmp(tau, Rational(1)) == std::strong_ordering::greater) return ExactScalar(0);
    return tau.inverse();
  }
  ExactScalar supremum() const override { return ExactScalar(1); }
};

// Total measure = multiple * omega.  omega = nullopt keeps it symbolic, which
// is only possible when the threshold does not depend on it (gamma = 0).
struct SymbolicMeasure {
  Rational multiple{1};
  std::optional<Rational> omega;
};

inline ScalarInterval median_from_distribution(const MonotoneDistribution& g, const SymbolicMeasure& total,
                                               const FractionalParams& p) {
  p.validate();
  if (total.multiple <= 0 || (total.omega && *total.omega <= 0)) throw Error("total measure must be positive");
  // tau = t / omega with t = alpha (multiple omega)^(1 - gamma/n).
  ExactScalar tau;
  if (p.gamma == 0) {
    if (p.alpha >= 1) throw Error("alpha must be below 1 when gamma = 0");
    tau = ExactScalar(p.alpha * total.multiple);
  } else {
    if (!total.omega) throw Error("gamma > 0 needs a concrete value for the measure scale");
    const Rational m = total.multiple * *total.omega;
    if (!p.admissible_for(m)) throw Error("alpha must be below |E|^(gamma/n)");
    tau = p.threshold(m) * (1 / *total.omega);
  }
  if (cmp(g.supremum(), total.multiple) == std::strong_ordering::greater)
    throw Error("distribution exceeds the total measure");
  return {g.inf_at_most(tau), g.inf_below(tau)};
}

inline ScalarInterval median_from_distribution(const StepCurve& d, const Rational& total_measure,
                                               const FractionalParams& p) {
  return median_from_distribution(StepDistribution(d), SymbolicMeasure{total_measure, Rational(1)}, p);
}

struct LocalRepresentation {
  ExtRational value;             // L[f chi_E](t)
  ExtRational constrained_sup;   // sup over A in E, |A| = t, of ess inf_A |f|
  std::vector<std::size_t> optimal_cells;
  std::optional<ExtRational> oracle;
  bool agrees = false;
};

// The constrained supremum is attained by the ceil(t/mu) largest cells of E,
// the last one possibly in part.
inline LocalRepresentation local_L_representation(const GridFunction& f, const CellSet& e,
                                                  const FractionalParams& p) {
  const ExactScalar t = detail::checked_threshold(e, p);
  LocalRepresentation rep;
  rep.value = rearrange_L(restrict_to(f, e), t);

  auto cells = e.members();
  std::stable_sort(cells.begin(), cells.end(), [&](std::size_t a, std::size_t b) {
    return boost::multiprecision::abs(f[a]) > boost::multiprecision::abs(f[b]);
  });
  const auto take = (t * (1 / f.geometry().cell_measure())).ceil().convert_to<std::size_t>();
  rep.optimal_cells.assign(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(take));
  rep.constrained_sup = Rational(boost::multiprecision::abs(f[rep.optimal_cells.back()]));
  std::sort(rep.optimal_cells.begin(), rep.optimal_cells.end());

  rep.agrees = rep.value == rep.constrained_sup;
  if (e.count() <= oracle::kSubsetCells) {
    rep.oracle = oracle::local_sup(f, e, t);
    rep.agrees = rep.agrees && *rep.oracle == rep.value;
  }
  return rep;
}

struct PowerMeanEntry {
  Rational r;
  bool exact = false;
  bool ok = false;
  Real lhs, rhs;
};

struct PowerMeanReport {
  bool ok = true;
  ExtRational value;
  std::vector<PowerMeanEntry> entries;
};

inline constexpr const char* kFloatRelTol = "1e-30";

// L(t)^r * t <= integral over E of |f|^r for each sampled r > 0.
inline PowerMeanReport power_mean_bound_check(const GridFunction& f, const CellSet& e, const FractionalParams& p,
                                              const std::vector<Rational>& r_samples) {
  const ExactScalar t = detail::checked_threshold(e, p);
  const Rational mu = f.geometry().cell_measure();
  PowerMeanReport rep;
  rep.value = rearrange_L(restrict_to(f, e), t);
  if (rep.value.is_infinite()) throw Error("L is infinite at the threshold");
  const Rational l = rep.value.value();
  const Real tol(kFloatRelTol);
  for (const auto& r : r_samples) {
    if (r <= 0) throw Error("power mean exponent must be positive");
    PowerMeanEntry en{r};
    if (den(r) == 1) {
      const unsigned k = num(r).convert_to<unsigned>();
      Rational integral = 0;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (e.contains(i)) integral += ipow(boost::multiprecision::abs(f[i]), k) * mu;
      const ExactScalar lhs = t * ipow(l, k);
      en.exact = true;
      en.ok = cmp(lhs, integral) != std::strong_ordering::greater;
      en.lhs = lhs.to_real();
      en.rhs = to_real(integral);
    } else {
      const Real rr = to_real(r);
      Real integral = 0;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (e.contains(i) && f[i] != 0) integral += boost::multiprecision::pow(to_real(Rational(boost::multiprecision::abs(f[i]))), rr);
      integral *= to_real(mu);
      en.lhs = l == 0 ? Real(0) : Real(boost::multiprecision::pow(to_real(l), rr) * t.to_real());
      en.rhs = integral;
      en.ok = en.lhs <= en.rhs * (1 + tol);
    }
    rep.ok = rep.ok && en.ok;
    rep.entries.push_back(std::move(en));
  }
  return rep;
}

}  // namespace medmax
