#pragma once

// Non-increasing step functions on [0, inf) with finitely many breakpoints.
// A right-continuous curve takes values[i] on [breaks[i], breaks[i+1]); a
// left-continuous one takes values[i] on (breaks[i], breaks[i+1]] and a
// separate value at the origin.  The last segment extends to +inf.

#include "medmax/scalar.hpp"

#include <algorithm>
#include <vector>

namespace medmax {

enum class Continuity { right, left };

class StepCurve {
 public:
  StepCurve() : breaks_{Rational(0)}, values_{ExtRational(0)} {}

  static StepCurve right(std::vector<Rational> breaks, std::vector<ExtRational> values) {
    return StepCurve(Continuity::right, std::move(breaks), std::move(values), ExtRational());
  }

  static StepCurve left(std::vector<Rational> breaks, std::vector<ExtRational> values,
                        ExtRational origin) {
    return StepCurve(Continuity::left, std::move(breaks), std::move(values), std::move(origin));
  }

  Continuity side() const { return side_; }
  const std::vector<Rational>& breaks() const { return breaks_; }
  const std::vector<ExtRational>& values() const { return values_; }
  std::size_t segments() const { return breaks_.size(); }

  // Value at 0: values[0] for right curves, the origin value for left ones.
  const ExtRational& at_origin() const { return side_ == Continuity::right ? values_.front() : origin_; }

  ExtRational operator()(const ExactScalar& t) const {
    if (t.is_infinite()) return values_.back();
    if (side_ == Continuity::left && t.is_zero()) return origin_;
    return values_[segment_of(t)];
  }

  ExtRational operator()(const Rational& t) const {
    if (t < 0) throw Error("step curve evaluated at a negative argument");
    return (*this)(ExactScalar(t));
  }

  // Merge equal neighbouring segments.
  StepCurve normalized() const {
    StepCurve out = *this;
    out.breaks_.clear();
    out.values_.clear();
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
      if (!out.values_.empty() && out.values_.back() == values_[i]) continue;
      out.breaks_.push_back(breaks_[i]);
      out.values_.push_back(values_[i]);
    }
    return out;
  }

  bool non_increasing() const {
    for (std::size_t i = 1; i < values_.size(); ++i)
      if (values_[i] > values_[i - 1]) return false;
    return side_ == Continuity::right || origin_ >= values_.front();
  }

  // Integral over [0, upto] of a curve with finite values there.
  Rational integral(const Rational& upto) const {
    Rational acc = 0;
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
      const Rational& a = breaks_[i];
      if (a >= upto) break;
      Rational b = i + 1 < breaks_.size() ? std::min(breaks_[i + 1], upto) : upto;
      if (values_[i].is_infinite()) throw Error("integral of an infinite segment");
      acc += values_[i].value() * (b - a);
    }
    return acc;
  }

  friend bool operator==(const StepCurve& a, const StepCurve& b) {
    return a.side_ == b.side_ && a.breaks_ == b.breaks_ && a.values_ == b.values_ &&
           (a.side_ == Continuity::right || a.origin_ == b.origin_);
  }

 private:
  StepCurve(Continuity side, std::vector<Rational> breaks, std::vector<ExtRational> values,
            ExtRational origin)
      : side_(side), breaks_(std::move(breaks)), values_(std::move(values)), origin_(std::move(origin)) {
    if (breaks_.empty() || breaks_.size() != values_.size()) throw Error("malformed step curve");
    if (breaks_.front() != 0) throw Error("step curve must start at 0");
    for (std::size_t i = 1; i < breaks_.size(); ++i)
      if (breaks_[i] <= breaks_[i - 1]) throw Error("step curve breakpoints must ascend");
    if (!non_increasing()) throw Error("step curve must be non-increasing");
  }

  std::size_t segment_of(const ExactScalar& t) const {
    // Right: last i with breaks[i] <= t.  Left: last i with breaks[i] < t.
    std::size_t lo = 0, hi = breaks_.size();
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      const auto c = cmp(ExactScalar(breaks_[mid]), t);
      const bool before = side_ == Continuity::right ? c != std::strong_ordering::greater
                                                     : c == std::strong_ordering::less;
      if (before)
        lo = mid;
      else
        hi = mid;
    }
    return lo;
  }

 private:
  Continuity side_ = Continuity::right;
  std::vector<Rational> breaks_;
  std::vector<ExtRational> values_;
  ExtRational origin_;
};

// d_N(lambda) = |{t > 0 : N(t) > lambda}| for a step profile N on (0, inf).
// The origin value of a left curve sits on a null set and is ignored.
inline StepCurve distribution_of_profile(const StepCurve& n) {
  std::vector<Rational> levels{Rational(0)};
  for (const auto& v : n.values())
    if (!v.is_infinite() && v.value() > 0) levels.push_back(v.value());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  bool unbounded = false;
  for (const auto& v : n.values())
    if (v.is_infinite()) unbounded = true;
  if (unbounded) throw Error("profile takes the value +inf on a segment");

  std::vector<ExtRational> measures;
  for (const auto& lambda : levels) {
    ExtRational m = Rational(0);
    for (std::size_t i = 0; i < n.segments(); ++i) {
      if (!(n.values()[i] > ExtRational(lambda))) continue;
      if (i + 1 == n.segments()) {
        m = ExtRational::infinity();
        break;
      }
      m = Rational(m.value() + (n.breaks()[i + 1] - n.breaks()[i]));
    }
    measures.push_back(m);
  }
  return StepCurve::right(levels, measures).normalized();
}

}  // namespace medmax
