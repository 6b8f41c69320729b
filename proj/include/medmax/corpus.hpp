#pragma once

// Deterministic random grids.  Instance i of a corpus depends only on
// (seed, i, options), so any single instance can be regenerated.

#include "medmax/grid.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace medmax {

enum class Profile { sparse, smooth_ramp, indicator, adversarial_steps };

inline Profile parse_profile(const std::string& s) {
  if (s == "sparse") return Profile::sparse;
  if (s == "smooth-ramp") return Profile::smooth_ramp;
  if (s == "indicator") return Profile::indicator;
  if (s == "adversarial-steps") return Profile::adversarial_steps;
  throw Error("unknown profile: " + s);
}

inline std::string to_string(Profile p) {
  switch (p) {
    case Profile::sparse: return "sparse";
    case Profile::smooth_ramp: return "smooth-ramp";
    case Profile::indicator: return "indicator";
    case Profile::adversarial_steps: return "adversarial-steps";
  }
  return "?";
}

struct CorpusOptions {
  Profile profile = Profile::adversarial_steps;
  std::size_t dim = 2;
  std::size_t min_side = 1, max_side = 4;
  std::size_t max_cells = 0;  // 0 = no cap
  bool allow_negative = false;
  bool vary_h = true;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  // Uniform in [lo, hi], by rejection so the stream is identical everywhere.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do x = g_();
    while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  bool chance(std::int64_t num, std::int64_t den) { return uniform(0, den - 1) < num; }

 private:
  std::mt19937_64 g_;
};

inline std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ull + i + 0x632BE59BD9B4E019ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline GridFunction random_grid(Rng& rng, const CorpusOptions& o) {
  std::vector<std::size_t> shape(o.dim);
  while (true) {
    for (auto& s : shape) s = static_cast<std::size_t>(rng.uniform(o.min_side, o.max_side));
    std::size_t c = 1;
    for (auto s : shape) c *= s;
    if (o.max_cells == 0 || c <= o.max_cells) break;
  }
  Rational h = 1;
  if (o.vary_h) {
    static const Rational hs[] = {Rational(1), Rational(1, 2), Rational(2), Rational(1, 3)};
    h = hs[rng.uniform(0, 3)];
  }
  const Geometry g(shape, h);
  std::vector<Rational> v(g.cell_count());
  const auto sign = [&](Rational x) { return o.allow_negative && rng.chance(1, 3) ? Rational(-x) : x; };

  switch (o.profile) {
    case Profile::sparse:
      for (auto& x : v)
        x = rng.chance(2, 3) ? Rational(0) : sign(Rational(rng.uniform(1, 20), rng.uniform(1, 4)));
      break;
    case Profile::smooth_ramp: {
      const auto a = rng.uniform(-3, 3), b = rng.uniform(-3, 3), c = rng.uniform(0, 6);
      const auto d = rng.uniform(1, 3);
      for (std::size_t i = 0; i < v.size(); ++i) {
        const auto co = g.coords(i);
        const std::int64_t r = static_cast<std::int64_t>(co[0]);
        const std::int64_t s = co.size() > 1 ? static_cast<std::int64_t>(co[1]) : 0;
        std::int64_t z = a * r + b * s + c;
        if (!o.allow_negative && z < 0) z = -z;
        v[i] = Rational(z, d);
      }
      break;
    }
    case Profile::indicator: {
      const auto density = rng.uniform(1, 4);
      for (auto& x : v) x = rng.chance(density, 5) ? 1 : 0;
      break;
    }
    case Profile::adversarial_steps: {
      // A few values repeated in runs: ties and plateaus.
      const auto pool_size = rng.uniform(1, 3);
      std::vector<Rational> pool;
      for (std::int64_t j = 0; j < pool_size; ++j) pool.push_back(sign(Rational(rng.uniform(0, 4), rng.uniform(1, 2))));
      std::size_t i = 0;
      while (i < v.size()) {
        const Rational val = pool[rng.uniform(0, pool_size - 1)];
        const auto run = static_cast<std::size_t>(rng.uniform(1, 4));
        for (std::size_t j = 0; j < run && i < v.size(); ++j) v[i++] = val;
      }
      break;
    }
  }
  return GridFunction(g, std::move(v));
}

inline GridFunction corpus_instance(std::uint64_t seed, std::uint64_t i, const CorpusOptions& o) {
  Rng rng(instance_seed(seed, i));
  return random_grid(rng, o);
}

inline std::vector<GridFunction> generate_corpus(std::uint64_t seed, std::size_t count, const CorpusOptions& o) {
  std::vector<GridFunction> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(corpus_instance(seed, i, o));
  return out;
}

// A random nonempty subset of the grid's cells.
inline CellSet random_subset(Rng& rng, const Geometry& g) {
  CellSet s(g);
  const auto density = rng.uniform(1, 4);
  for (std::size_t i = 0; i < g.cell_count(); ++i)
    if (rng.chance(density, 4)) s.insert(i);
  if (s.empty()) s.insert(static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(g.cell_count()) - 1)));
  return s;
}

}  // namespace medmax
