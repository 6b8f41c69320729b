#pragma once

#include "medmax/scalar.hpp"

#include <cstddef>
#include <string>

namespace medmax {

// alpha > 0 and gamma in [0, n), both rational.
struct FractionalParams {
  Rational alpha{1, 2};
  Rational gamma{0};
  std::size_t n = 1;

  void validate() const {
    if (n == 0) throw Error("dimension must be positive");
    if (alpha <= 0) throw Error("alpha must be positive, got " + to_string(alpha));
    if (gamma < 0 || gamma >= Rational(n))
      throw Error("gamma must lie in [0, n), got " + to_string(gamma));
  }

  // alpha * measure^(1 - gamma/n)
  ExactScalar threshold(const Rational& measure) const {
    return pow_measure(measure, 1 - gamma / Rational(n)) * alpha;
  }

  // alpha < measure^(gamma/n), equivalently threshold < measure.
  bool admissible_for(const Rational& measure) const {
    return cmp(threshold(measure), measure) == std::strong_ordering::less;
  }
};

}  // namespace medmax
