#pragma once

// Brute-force evaluation of the definitions on small grids.  Nothing here
// calls the production rearrangement, median or maximal code.

#include "medmax/grid.hpp"
#include "medmax/scalar.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace medmax::oracle {

inline constexpr std::size_t kSubsetCells = 12;
inline constexpr std::size_t kMedianDistinct = 64;
inline constexpr std::size_t kMaximalCells = 256;

struct Rearrangements {
  ExtRational r1, r2, l1, l2, l2star;
};

namespace detail {

inline Rational mag(const Rational& v) { return v < 0 ? Rational(-v) : v; }

inline std::strong_ordering vs(const Rational& a, const ExactScalar& t) { return cmp(a, t); }

inline bool le(const Rational& a, const ExactScalar& t) { return vs(a, t) != std::strong_ordering::greater; }
inline bool lt(const Rational& a, const ExactScalar& t) { return vs(a, t) == std::strong_ordering::less; }

// |{|f| > l}| by direct count.
inline Rational dist_at(const std::vector<Rational>& a, const Rational& mu, const Rational& l) {
  Rational m = 0;
  for (const auto& x : a)
    if (x > l) m += mu;
  return m;
}

inline std::vector<Rational> levels(const std::vector<Rational>& a) {
  std::vector<Rational> c{Rational(0)};
  for (const auto& x : a) c.push_back(x);
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

}  // namespace detail

// Subsets A of whole cells, plus one partial cell when the budget leaves a
// remainder below a full cell.  Outside the grid |f| = 0.
inline Rearrangements rearrangements(const GridFunction& f, const ExactScalar& t) {
  const std::size_t c = f.size();
  if (c > kSubsetCells) throw Error("oracle: instance too large");
  const Rational mu = f.geometry().cell_measure();
  std::vector<Rational> a(c);
  for (std::size_t i = 0; i < c; ++i) a[i] = detail::mag(f[i]);

  Rearrangements out;
  // R1, L1 by scanning d over its jump points.
  out.r1 = ExtRational::infinity();
  out.l1 = ExtRational::infinity();
  for (const auto& l : detail::levels(a)) {
    const Rational d = detail::dist_at(a, mu, l);
    if (out.r1.is_infinite() && detail::le(d, t)) out.r1 = l;
    if (out.l1.is_infinite() && detail::lt(d, t)) out.l1 = l;
  }
  if (t.is_infinite()) {
    out.r2 = out.l2 = out.l2star = Rational(0);
    return out;
  }

  // R2: inf over |A| <= t of ess sup of |f| off A.
  // L2: sup over |A| = t of ess inf over A; L2* with inf.
  std::optional<Rational> r2;
  std::optional<ExtRational> l2, l2s;
  auto better_sup = [](std::optional<ExtRational>& cur, const ExtRational& v) {
    if (!cur || v > *cur) cur = v;
  };
  for (std::uint32_t s = 0; s < (1u << c); ++s) {
    Rational used = 0;
    std::optional<Rational> inside_min;
    for (std::size_t i = 0; i < c; ++i)
      if (s >> i & 1) {
        used += mu;
        if (!inside_min || a[i] < *inside_min) inside_min = a[i];
      }
    if (!detail::le(used, t)) continue;
    const bool exact_fit = cmp(used, t) == std::strong_ordering::equal;
    // 0 < t - used < mu: a piece of one further cell fits the budget.
    const bool partial_fits = !exact_fit && cmp(used + mu, t) == std::strong_ordering::greater;

    Rational off = 0;
    for (std::size_t i = 0; i < c; ++i)
      if (!(s >> i & 1) && a[i] > off) off = a[i];
    if (!r2 || off < *r2) r2 = off;
    // A piece of cell p leaves the rest of p, of positive measure, outside A.
    if (partial_fits)
      for (std::size_t p = 0; p < c; ++p) {
        if (s >> p & 1) continue;
        Rational off_p = 0;
        for (std::size_t i = 0; i < c; ++i)
          if ((!(s >> i & 1) || i == p) && a[i] > off_p) off_p = a[i];
        if (off_p < *r2) r2 = off_p;
      }

    if (exact_fit) {
      if (inside_min) {
        better_sup(l2, *inside_min);
        better_sup(l2s, *inside_min);
      }
      continue;
    }
    // |A| = t needs extra measure t - used > 0: from outside the grid
    // (value 0) or, when it is less than a cell, from part of one cell.
    better_sup(l2, Rational(0));
    better_sup(l2s, Rational(0));
    if (partial_fits) {
      for (std::size_t p = 0; p < c; ++p) {
        if (s >> p & 1) continue;
        Rational v = inside_min ? std::min(*inside_min, a[p]) : a[p];
        better_sup(l2, v);
        better_sup(l2s, v);
      }
    }
  }
  out.r2 = *r2;
  if (t.is_zero()) {
    // |A| = 0: ess inf over a null set is +inf; inf over one point is |f| there.
    out.l2 = ExtRational::infinity();
    Rational top = 0;
    for (const auto& x : a) top = std::max(top, x);
    out.l2star = top;
  } else {
    out.l2 = *l2;
    out.l2star = *l2s;
  }
  return out;
}

// sup over A in E with |A| = t of ess inf_A |f|, over whole cells of E plus
// one partial cell of E.
inline ExtRational local_sup(const GridFunction& f, const CellSet& e, const ExactScalar& t) {
  const auto cells = e.members();
  if (cells.size() > kSubsetCells) throw Error("oracle: instance too large");
  const Rational mu = f.geometry().cell_measure();
  std::optional<Rational> best;
  const std::size_t c = cells.size();
  for (std::uint32_t s = 1; s < (1u << c); ++s) {
    Rational used = 0;
    std::optional<Rational> mn;
    for (std::size_t i = 0; i < c; ++i)
      if (s >> i & 1) {
        used += mu;
        const Rational v = detail::mag(f[cells[i]]);
        if (!mn || v < *mn) mn = v;
      }
    const auto c_used = cmp(used, t);
    if (c_used == std::strong_ordering::equal) {
      if (!best || *mn > *best) best = *mn;
    } else if (c_used == std::strong_ordering::greater) {
      // Dropping part of one chosen cell reaches |A| = t when used - mu < t.
      if (cmp(used - mu, t) == std::strong_ordering::less && (!best || *mn > *best)) best = *mn;
    }
  }
  if (!best) throw Error("oracle: no subset of E has measure t");
  return *best;
}

struct Interval {
  Rational lo, hi;
};

// Candidate values, sentinels and midpoints, each tested against the two
// measure conditions by direct count.
inline Interval median(const GridFunction& f, const CellSet& e, const Rational& alpha, const Rational& gamma) {
  const auto& g = f.geometry();
  const Rational mu = g.cell_measure();
  std::vector<Rational> v;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (e.contains(i)) v.push_back(f[i]);
  if (v.empty()) throw Error("oracle: empty set");
  const Rational total = mu * Rational(v.size());
  const ExactScalar t = ExactScalar::power(total, 1 - gamma / Rational(g.dim())) * alpha;

  std::vector<Rational> cand(v);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  if (cand.size() > kMedianDistinct) throw Error("oracle: too many distinct values");
  std::vector<Rational> pts{cand.front() - 1};
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (i) pts.push_back((cand[i - 1] + cand[i]) / 2);
    pts.push_back(cand[i]);
  }
  pts.push_back(cand.back() + 1);

  auto ok = [&](const Rational& m) {
    Rational below = 0, above = 0;
    for (const auto& x : v) {
      if (x < m) below += mu;
      if (x > m) above += mu;
    }
    return cmp(t, total - below) != std::strong_ordering::greater &&
           cmp(above, t) != std::strong_ordering::greater;
  };
  std::vector<bool> pass(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) pass[i] = ok(pts[i]);
  std::size_t first = pts.size(), last = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (pass[i]) {
      if (first == pts.size()) first = i;
      last = i;
    }
  if (first == pts.size()) throw Error("oracle: no median found");
  for (std::size_t i = first; i <= last; ++i)
    if (!pass[i]) throw Error("oracle: median set is not an interval");
  // Endpoints of the closed interval are attained values, never midpoints
  // or sentinels.
  if (first % 2 == 0 || last % 2 == 0) throw Error("oracle: median endpoint off the value set");
  return {pts[first], pts[last]};
}

enum class Which { R, L, M };

// Per cell, the maximum over family cubes containing it of the cube's value.
// R/L: the rearrangement of f chi_Q at alpha |Q|^(1-gamma/n), by scanning
// the distribution of the cube's values.  M: |Q|^(gamma/n) times the mean.
inline std::vector<ExactScalar> maximal(const GridFunction& f, const CubeFamily& fam, const Rational& alpha,
                                        const Rational& gamma, Which which) {
  const auto& g = f.geometry();
  if (f.size() > kMaximalCells) throw Error("oracle: instance too large");
  const Rational mu = g.cell_measure();
  const Rational n(g.dim());
  std::vector<ExactScalar> out(f.size(), ExactScalar(0));
  fam.for_each([&](const GridCube& q) {
    std::vector<Rational> a;
    q.for_each_cell(g, [&](std::size_t i) { a.push_back(detail::mag(f[i])); });
    const Rational vol = q.measure(g);
    ExactScalar value;
    if (which == Which::M) {
      Rational sum = 0;
      for (const auto& x : a) sum += x * mu;
      value = ExactScalar::power(vol, gamma / n) * (sum / vol);
    } else {
      const ExactScalar t = ExactScalar::power(vol, 1 - gamma / n) * alpha;
      if (!(t < ExactScalar(vol))) return;  // only cubes with alpha < |Q|^(g/n) count
      ExtRational best = ExtRational::infinity();
      for (const auto& l : detail::levels(a)) {
        const Rational d = detail::dist_at(a, mu, l);
        const bool hit = which == Which::R ? detail::le(d, t) : detail::lt(d, t);
        if (hit) {
          best = l;
          break;
        }
      }
      if (best.is_infinite()) throw Error("oracle: infinite rearrangement");
      value = ExactScalar(best.value());
    }
    q.for_each_cell(g, [&](std::size_t i) {
      if (value > out[i]) out[i] = value;
    });
  });
  return out;
}

}  // namespace medmax::oracle
