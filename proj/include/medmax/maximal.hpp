#pragma once

// Maximal operators over a family of grid-aligned cubes in a domain:
//
//   M_g f(x)  = sup_{Q ∋ x} |Q|^(g/n) <|f|>_Q
//   m^R f(x)  = sup_{Q ∋ x} R[f chi_Q](alpha |Q|^(1-g/n))
//   m^L f(x)  = sup_{Q ∋ x} L[f chi_Q](alpha |Q|^(1-g/n))
//
// Fields are evaluated per cell.  Kernels work on 1-D and 2-D grids; a 1-D
// grid is handled as a single row.
//
// For a cube of side k with c_k = alpha |Q|^(1-g/n) / h^n cells of budget,
//   R[f chi_Q](t) > l  iff  #{cells of Q with |f| > l} >= floor(c_k) + 1
//   L[f chi_Q](t) > l  iff  #{cells of Q with |f| > l} >= ceil(c_k)
// so both operators reduce to integer counts against per-side thresholds.

#include "medmax/grid.hpp"
#include "medmax/params.hpp"
#include "medmax/rearrangement.hpp"

#include <deque>
#include <optional>
#include <string>
#include <vector>

namespace medmax {

enum class MaximalOp { R, L, M };
enum class Kernel { naive, fast };

inline std::string to_string(MaximalOp op) {
  switch (op) {
    case MaximalOp::R: return "R";
    case MaximalOp::L: return "L";
    case MaximalOp::M: return "Mg";
  }
  return "?";
}

inline std::string to_string(Kernel k) { return k == Kernel::naive ? "naive" : "fast"; }

struct MaximalField {
  Geometry geometry;
  std::vector<ExactScalar> values;
  MaximalOp op = MaximalOp::R;
  Kernel provenance = Kernel::naive;

  const ExactScalar& operator[](std::size_t i) const { return values[i]; }
  std::size_t size() const { return values.size(); }

  // {x : value(x) > l}
  CellSet above(const ExactScalar& l) const {
    CellSet s(geometry);
    for (std::size_t i = 0; i < values.size(); ++i)
      if (values[i] > l) s.insert(i);
    return s;
  }

  // {x : value(x) >= l}
  CellSet at_least(const ExactScalar& l) const {
    CellSet s(geometry);
    for (std::size_t i = 0; i < values.size(); ++i)
      if (values[i] >= l) s.insert(i);
    return s;
  }
};

// Same values with the same canonical representation in every cell.
inline bool bit_identical(const MaximalField& a, const MaximalField& b) {
  if (!(a.geometry == b.geometry) || a.values.size() != b.values.size()) return false;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    if (a.values[i].str() != b.values[i].str()) return false;
  return true;
}

namespace detail {

struct Plane {
  std::size_t rows = 1, cols = 1;
  bool two_d = false;

  std::size_t extent_rows(std::size_t k) const { return two_d ? k : 1; }
  std::size_t max_side() const { return two_d ? std::min(rows, cols) : cols; }
  std::size_t cube_cells(std::size_t k) const { return extent_rows(k) * k; }
};

inline Plane plane_of(const Geometry& g) {
  if (g.dim() == 1) return {1, g.shape[0], false};
  if (g.dim() == 2) return {g.shape[0], g.shape[1], true};
  throw Error("maximal kernels support 1-D and 2-D grids");
}

template <class T>
class Sat {
 public:
  Sat(const Plane& p, const std::vector<T>& v) : cols_(p.cols + 1), s_((p.rows + 1) * (p.cols + 1), T(0)) {
    for (std::size_t r = 0; r < p.rows; ++r) {
      T run = T(0);
      for (std::size_t c = 0; c < p.cols; ++c) {
        run += v[r * p.cols + c];
        s_[(r + 1) * cols_ + c + 1] = s_[r * cols_ + c + 1] + run;
      }
    }
  }

  // Sum over rows [r0, r1) and columns [c0, c1).
  T box(std::size_t r0, std::size_t c0, std::size_t r1, std::size_t c1) const {
    return s_[r1 * cols_ + c1] - s_[r0 * cols_ + c1] - s_[r1 * cols_ + c0] + s_[r0 * cols_ + c0];
  }

 private:
  std::size_t cols_;
  std::vector<T> s_;
};

// Anchors (top-left cells) of admissible cubes of side k, row-major over the
// (rows - er + 1) x (cols - k + 1) anchor grid.
inline std::vector<std::uint8_t> admissible_anchors(const CubeFamily& fam, const Plane& p, std::size_t k) {
  const std::size_t er = p.extent_rows(k);
  const std::size_t ar = p.rows - er + 1, ac = p.cols - k + 1;
  std::vector<std::uint8_t> ok(ar * ac, 1);
  const auto& mask = fam.domain().mask();
  bool full = true;
  for (auto m : mask) full = full && m;
  if (full) return ok;
  std::vector<std::int64_t> outside(mask.size());
  for (std::size_t i = 0; i < mask.size(); ++i) outside[i] = mask[i] ? 0 : 1;
  const Sat<std::int64_t> sat(p, outside);
  for (std::size_t r = 0; r < ar; ++r)
    for (std::size_t c = 0; c < ac; ++c) ok[r * ac + c] = sat.box(r, c, r + er, c + k) == 0;
  return ok;
}

// out[c] = max of in[a] over anchors a in [c - k + 1, c], for c < in.size() + k - 1.
template <class T>
void window_max(const T* in, std::size_t n_anchor, std::size_t k, std::size_t stride_in, T* out,
                std::size_t stride_out) {
  std::deque<std::size_t> q;
  const std::size_t n = n_anchor + k - 1;
  for (std::size_t c = 0; c < n; ++c) {
    if (c < n_anchor) {
      while (!q.empty() && in[q.back() * stride_in] <= in[c * stride_in]) q.pop_back();
      q.push_back(c);
    }
    while (q.front() + k <= c) q.pop_front();
    out[c * stride_out] = in[q.front() * stride_in];
  }
}

// Per-cell maximum of per-anchor values over the anchors whose cube covers the cell.
template <class T>
std::vector<T> spread_max(const Plane& p, std::size_t k, const std::vector<T>& anchor_vals) {
  const std::size_t er = p.extent_rows(k);
  const std::size_t ar = p.rows - er + 1, ac = p.cols - k + 1;
  std::vector<T> rowwise(ar * p.cols);
  for (std::size_t r = 0; r < ar; ++r) window_max(&anchor_vals[r * ac], ac, k, 1, &rowwise[r * p.cols], 1);
  if (!p.two_d) return rowwise;
  std::vector<T> out(p.rows * p.cols);
  for (std::size_t c = 0; c < p.cols; ++c) window_max(&rowwise[c], ar, er, p.cols, &out[c], p.cols);
  return out;
}

struct SideThreshold {
  std::size_t need_R = 0, need_L = 0;  // capped at cube_cells + 1
  ExactScalar budget;                  // c_k
};

inline SideThreshold side_threshold(const Geometry& g, const Plane& pl, const FractionalParams& p, std::size_t k) {
  const Rational vol = ipow(g.h * Rational(k), static_cast<unsigned>(g.dim()));
  SideThreshold s;
  s.budget = p.threshold(vol) * (1 / g.cell_measure());
  const Integer cap(pl.cube_cells(k) + 1);
  const Integer r = s.budget.floor() + 1, l = s.budget.ceil();
  // Cubes with alpha >= |Q|^(g/n) are left out of the supremum altogether.
  if (cmp(s.budget, ExactScalar(Rational(pl.cube_cells(k)))) != std::strong_ordering::less) {
    s.need_R = s.need_L = pl.cube_cells(k) + 1;
    return s;
  }
  s.need_R = (r > cap ? cap : r).convert_to<std::size_t>();
  s.need_L = (l > cap ? cap : l).convert_to<std::size_t>();
  return s;
}

// |Q|^(g/n) * mu / |Q|: the factor turning a cell-value sum into the cube's value.
inline ExactScalar side_weight(const Geometry& g, const Rational& gamma, std::size_t k) {
  const Rational vol = ipow(g.h * Rational(k), static_cast<unsigned>(g.dim()));
  return pow_measure(vol, gamma / Rational(g.dim())) * (g.cell_measure() / vol);
}

struct Ranked {
  std::vector<Rational> levels;     // 0 and the distinct |values|, ascending
  std::vector<std::uint32_t> rank;  // levels[rank[i]] == |f[i]|
};

inline Ranked rank_magnitudes(const GridFunction& f) {
  Ranked r;
  r.levels.push_back(0);
  for (const auto& v : f.values()) r.levels.push_back(boost::multiprecision::abs(v));
  std::sort(r.levels.begin(), r.levels.end());
  r.levels.erase(std::unique(r.levels.begin(), r.levels.end()), r.levels.end());
  r.rank.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Rational a = boost::multiprecision::abs(f[i]);
    r.rank[i] = static_cast<std::uint32_t>(std::lower_bound(r.levels.begin(), r.levels.end(), a) - r.levels.begin());
  }
  return r;
}

inline void check_inputs(const GridFunction& f, const CubeFamily& fam, const FractionalParams& p) {
  p.validate();
  if (!(f.geometry() == fam.geometry())) throw Error("family and function live on different grids");
  if (p.n != f.dim()) throw Error("parameter dimension does not match the grid");
}

inline MaximalField field_from_ranks(const GridFunction& f, const Ranked& rk, const std::vector<std::uint32_t>& best,
                                     MaximalOp op, Kernel kernel) {
  MaximalField out{f.geometry(), {}, op, kernel};
  out.values.reserve(best.size());
  for (auto b : best) out.values.emplace_back(rk.levels[b]);
  return out;
}

// Per cube: the rank of the need-th largest value (0 if the cube has fewer
// cells); per cell: the maximum over covering cubes.
inline MaximalField naive_rearrangement_maximal(const GridFunction& f, const CubeFamily& fam,
                                                const FractionalParams& p, MaximalOp op) {
  check_inputs(f, fam, p);
  const Plane pl = plane_of(f.geometry());
  const Ranked rk = rank_magnitudes(f);
  const std::size_t top = rk.levels.size() - 1;
  std::vector<std::uint32_t> best(f.size(), 0);
  std::vector<std::uint32_t> hist(top + 1), buf;
  const auto& rank = rk.rank;

  for (std::size_t k = 1; k <= pl.max_side(); ++k) {
    const auto th = side_threshold(f.geometry(), pl, p, k);
    const std::size_t need = op == MaximalOp::R ? th.need_R : th.need_L;
    if (need > pl.cube_cells(k) || top == 0) continue;
    const std::size_t er = pl.extent_rows(k);
    const std::size_t ar = pl.rows - er + 1, ac = pl.cols - k + 1;
    const auto adm = admissible_anchors(fam, pl, k);
    for (std::size_t r0 = 0; r0 < ar; ++r0)
      for (std::size_t c0 = 0; c0 < ac; ++c0) {
        if (!adm[r0 * ac + c0]) continue;
        std::uint32_t v = 0;
        if (top == 1) {
          std::size_t cnt = 0;
          for (std::size_t r = r0; r < r0 + er; ++r) {
            const std::uint32_t* row = &rank[r * pl.cols + c0];
            for (std::size_t c = 0; c < k; ++c) cnt += row[c];
          }
          v = cnt >= need ? 1 : 0;
        } else if (top < 256) {
          std::fill(hist.begin(), hist.end(), 0);
          for (std::size_t r = r0; r < r0 + er; ++r)
            for (std::size_t c = c0; c < c0 + k; ++c) ++hist[rank[r * pl.cols + c]];
          std::size_t acc = 0;
          for (std::size_t lv = top + 1; lv-- > 0;) {
            acc += hist[lv];
            if (acc >= need) {
              v = static_cast<std::uint32_t>(lv);
              break;
            }
          }
        } else {
          buf.clear();
          for (std::size_t r = r0; r < r0 + er; ++r)
            for (std::size_t c = c0; c < c0 + k; ++c) buf.push_back(rank[r * pl.cols + c]);
          std::nth_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(need - 1), buf.end(),
                           std::greater<>());
          v = buf[need - 1];
        }
        if (v == 0) continue;
        for (std::size_t r = r0; r < r0 + er; ++r) {
          std::uint32_t* row = &best[r * pl.cols + c0];
          for (std::size_t c = 0; c < k; ++c) row[c] = std::max(row[c], v);
        }
      }
  }
  return field_from_ranks(f, rk, best, op, Kernel::naive);
}

// Level by level from the top: a cell takes the largest level l whose set
// {|f| > l} has at least need(k) cells in some admissible cube covering it.
inline MaximalField fast_rearrangement_maximal(const GridFunction& f, const CubeFamily& fam,
                                               const FractionalParams& p, MaximalOp op) {
  check_inputs(f, fam, p);
  const Plane pl = plane_of(f.geometry());
  const Ranked rk = rank_magnitudes(f);
  const std::size_t top = rk.levels.size() - 1;
  const std::size_t cells = f.size();
  std::vector<std::uint32_t> best(cells, 0);

  struct Side {
    std::size_t k, need;
    std::vector<std::uint8_t> adm;
  };
  std::vector<Side> sides;
  for (std::size_t k = 1; k <= pl.max_side(); ++k) {
    const auto th = side_threshold(f.geometry(), pl, p, k);
    const std::size_t need = op == MaximalOp::R ? th.need_R : th.need_L;
    if (need <= pl.cube_cells(k)) sides.push_back({k, need, admissible_anchors(fam, pl, k)});
  }

  std::size_t unassigned = cells;
  std::vector<std::int32_t> level(cells);
  for (std::size_t lv = top; lv-- > 0 && unassigned > 0;) {
    for (std::size_t i = 0; i < cells; ++i) level[i] = rk.rank[i] > lv;
    const Sat<std::int32_t> sat(pl, level);
    std::vector<std::uint8_t> covered(cells, 0);
    for (const auto& s : sides) {
      const std::size_t er = pl.extent_rows(s.k);
      const std::size_t ar = pl.rows - er + 1, ac = pl.cols - s.k + 1;
      std::vector<std::uint8_t> hit(ar * ac, 0);
      bool any = false;
      for (std::size_t r = 0; r < ar; ++r)
        for (std::size_t c = 0; c < ac; ++c) {
          const bool q = s.adm[r * ac + c] &&
                         static_cast<std::size_t>(sat.box(r, c, r + er, c + s.k)) >= s.need;
          hit[r * ac + c] = q;
          any = any || q;
        }
      if (!any) continue;
      const auto cov = spread_max(pl, s.k, hit);
      for (std::size_t i = 0; i < cells; ++i) covered[i] |= cov[i];
    }
    for (std::size_t i = 0; i < cells; ++i)
      if (covered[i] && best[i] == 0) {
        best[i] = static_cast<std::uint32_t>(lv + 1);
        --unassigned;
      }
  }
  return field_from_ranks(f, rk, best, op, Kernel::fast);
}

// Per side k, the best (largest) cube sum over admissible cubes covering each
// cell, -1 where no cube of that side covers it.  Naive: direct summation.
template <class T, class Visit>
void naive_side_sums(const Plane& pl, const CubeFamily& fam, const std::vector<T>& v, Visit&& visit) {
  for (std::size_t k = 1; k <= pl.max_side(); ++k) {
    const std::size_t er = pl.extent_rows(k);
    const std::size_t ar = pl.rows - er + 1, ac = pl.cols - k + 1;
    const auto adm = admissible_anchors(fam, pl, k);
    std::vector<T> best(v.size(), T(-1));
    for (std::size_t r0 = 0; r0 < ar; ++r0)
      for (std::size_t c0 = 0; c0 < ac; ++c0) {
        if (!adm[r0 * ac + c0]) continue;
        T sum = T(0);
        for (std::size_t r = r0; r < r0 + er; ++r)
          for (std::size_t c = c0; c < c0 + k; ++c) sum += v[r * pl.cols + c];
        for (std::size_t r = r0; r < r0 + er; ++r)
          for (std::size_t c = c0; c < c0 + k; ++c)
            if (best[r * pl.cols + c] < sum) best[r * pl.cols + c] = sum;
      }
    visit(k, best);
  }
}

// Fast: summed-area table and a separable sliding maximum.
template <class T, class Visit>
void fast_side_sums(const Plane& pl, const CubeFamily& fam, const std::vector<T>& v, Visit&& visit) {
  const Sat<T> sat(pl, v);
  for (std::size_t k = 1; k <= pl.max_side(); ++k) {
    const std::size_t er = pl.extent_rows(k);
    const std::size_t ar = pl.rows - er + 1, ac = pl.cols - k + 1;
    const auto adm = admissible_anchors(fam, pl, k);
    std::vector<T> sums(ar * ac);
    for (std::size_t r = 0; r < ar; ++r)
      for (std::size_t c = 0; c < ac; ++c)
        sums[r * ac + c] = adm[r * ac + c] ? sat.box(r, c, r + er, c + k) : T(-1);
    visit(k, spread_max(pl, k, sums));
  }
}

template <class T>
MaximalField combine_sides(const Geometry& g, const CubeFamily& fam, const Rational& gamma,
                           const std::vector<T>& v, Kernel kernel) {
  const Plane pl = plane_of(g);
  MaximalField out{g, std::vector<ExactScalar>(v.size(), ExactScalar(0)), MaximalOp::M, kernel};
  auto visit = [&](std::size_t k, const std::vector<T>& best) {
    const ExactScalar w = side_weight(g, gamma, k);
    for (std::size_t i = 0; i < best.size(); ++i) {
      if (!(best[i] > T(0))) continue;
      ExactScalar cand = w * Rational(best[i]);
      if (cand > out.values[i]) out.values[i] = std::move(cand);
    }
  };
  if (kernel == Kernel::naive)
    naive_side_sums(pl, fam, v, visit);
  else
    fast_side_sums(pl, fam, v, visit);
  return out;
}

inline void check_gamma(const Geometry& g, const Rational& gamma) {
  if (gamma < 0 || gamma >= Rational(g.dim())) throw Error("gamma must lie in [0, n), got " + to_string(gamma));
}

}  // namespace detail

inline MaximalField fractional_maximal_M(const GridFunction& f, const CubeFamily& fam, const Rational& gamma,
                                         Kernel kernel = Kernel::naive) {
  detail::check_gamma(f.geometry(), gamma);
  if (!(f.geometry() == fam.geometry())) throw Error("family and function live on different grids");
  bool integral = true;
  for (const auto& x : f.values())
    integral = integral && den(x) == 1 && boost::multiprecision::abs(x) < Integer(1) << 40;
  if (integral) {
    std::vector<std::int64_t> v(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) v[i] = boost::multiprecision::abs(num(f[i])).convert_to<std::int64_t>();
    return detail::combine_sides(f.geometry(), fam, gamma, v, kernel);
  }
  return detail::combine_sides(f.geometry(), fam, gamma, f.abs().values(), kernel);
}

// M_g of the indicator of s.
inline MaximalField indicator_maximal(const CellSet& s, const CubeFamily& fam, const Rational& gamma,
                                      Kernel kernel = Kernel::naive) {
  detail::check_gamma(s.geometry(), gamma);
  if (!(s.geometry() == fam.geometry())) throw Error("family and set live on different grids");
  std::vector<std::int64_t> v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) v[i] = s.contains(i);
  return detail::combine_sides(s.geometry(), fam, gamma, v, kernel);
}

// M_g of |f|^r in high precision, for non-integer r.
inline std::vector<Real> fractional_maximal_M_real(const GridFunction& f, const CubeFamily& fam,
                                                   const Rational& gamma, const Rational& r) {
  detail::check_gamma(f.geometry(), gamma);
  const auto& g = f.geometry();
  const detail::Plane pl = detail::plane_of(g);
  std::vector<Real> v(f.size());
  const Real rr = to_real(r);
  for (std::size_t i = 0; i < f.size(); ++i)
    v[i] = f[i] == 0 ? Real(0) : Real(boost::multiprecision::pow(to_real(Rational(boost::multiprecision::abs(f[i]))), rr));
  std::vector<Real> out(f.size(), Real(0));
  detail::naive_side_sums(pl, fam, v, [&](std::size_t k, const std::vector<Real>& best) {
    const Real w = detail::side_weight(g, gamma, k).to_real();
    for (std::size_t i = 0; i < best.size(); ++i)
      if (best[i] > 0) out[i] = std::max(out[i], Real(w * best[i]));
  });
  return out;
}

inline MaximalField maximal_R(const GridFunction& f, const CubeFamily& fam, const FractionalParams& p) {
  return detail::naive_rearrangement_maximal(f, fam, p, MaximalOp::R);
}

inline MaximalField maximal_L(const GridFunction& f, const CubeFamily& fam, const FractionalParams& p) {
  return detail::naive_rearrangement_maximal(f, fam, p, MaximalOp::L);
}

inline MaximalField naive_maximal(const GridFunction& f, const CubeFamily& fam, const FractionalParams& p,
                                  MaximalOp op) {
  if (op == MaximalOp::M) return fractional_maximal_M(f, fam, p.gamma, Kernel::naive);
  return detail::naive_rearrangement_maximal(f, fam, p, op);
}

inline MaximalField fast_maximal(const GridFunction& f, const CubeFamily& fam, const FractionalParams& p,
                                 MaximalOp op) {
  if (op == MaximalOp::M) return fractional_maximal_M(f, fam, p.gamma, Kernel::fast);
  return detail::fast_rearrangement_maximal(f, fam, p, op);
}

inline MaximalField maximal(const GridFunction& f, const CubeFamily& fam, const FractionalParams& p, MaximalOp op,
                            Kernel kernel) {
  return kernel == Kernel::naive ? naive_maximal(f, fam, p, op) : fast_maximal(f, fam, p, op);
}

// ---------------------------------------------------------------------------
// Level-set identities.

// The largest cube value M_g chi_s(Q) attained strictly below alpha, if any.
inline std::optional<ExactScalar> largest_value_below(const CellSet& s, const CubeFamily& fam,
                                                      const FractionalParams& p) {
  const auto& g = s.geometry();
  const detail::Plane pl = detail::plane_of(g);
  std::vector<std::int64_t> v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) v[i] = s.contains(i);
  const detail::Sat<std::int64_t> sat(pl, v);
  std::optional<ExactScalar> best;
  for (std::size_t k = 1; k <= pl.max_side(); ++k) {
    const std::size_t er = pl.extent_rows(k);
    const std::size_t ar = pl.rows - er + 1, ac = pl.cols - k + 1;
    const auto adm = detail::admissible_anchors(fam, pl, k);
    // count * w_k < alpha  iff  count < c_k  iff  count <= ceil(c_k) - 1
    const auto th = detail::side_threshold(g, pl, p, k);
    const std::int64_t limit =
        std::min<std::int64_t>(th.budget.ceil().convert_to<std::int64_t>() - 1, static_cast<std::int64_t>(pl.cube_cells(k)));
    std::int64_t top = -1;
    for (std::size_t r = 0; r < ar; ++r)
      for (std::size_t c = 0; c < ac; ++c)
        if (adm[r * ac + c]) {
          const auto cnt = sat.box(r, c, r + er, c + k);
          if (cnt <= limit) top = std::max(top, cnt);
        }
    if (top < 0) continue;
    ExactScalar val = detail::side_weight(g, p.gamma, k) * Rational(top);
    if (!best || val > *best) best = val;
  }
  return best;
}

// An eps in (0, alpha) with no attained cube value in [alpha - eps, alpha).
inline Rational sufficient_eps(const CellSet& s, const CubeFamily& fam, const FractionalParams& p) {
  const auto below = largest_value_below(s, fam, p);
  if (!below) return p.alpha / 2;
  return p.alpha - rational_between(*below, p.alpha);
}

inline bool eps_small_enough(const std::optional<ExactScalar>& below, const Rational& alpha, const Rational& eps) {
  if (eps <= 0 || eps >= alpha) return false;
  return !below || cmp(*below, alpha - eps) == std::strong_ordering::less;
}

struct LevelSetReport {
  bool ok = true;
  Rational lambda;
  CellSet lhs, rhs;
  std::optional<std::size_t> counterexample_cell;
};

namespace detail {
inline std::optional<std::size_t> first_difference(const CellSet& a, const CellSet& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.contains(i) != b.contains(i)) return i;
  return std::nullopt;
}

inline std::optional<std::size_t> first_escape(const CellSet& a, const CellSet& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.contains(i) && !b.contains(i)) return i;
  return std::nullopt;
}

inline CellSet within(const CellSet& a, const CellSet& dom) {
  CellSet out(a.geometry());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.contains(i) && dom.contains(i)) out.insert(i);
  return out;
}
}  // namespace detail

// {x in Omega : m^R f(x) > l} = {x in Omega : M_g chi_{Omega, |f| > l}(x) > alpha}
inline LevelSetReport level_set_identity_check(const GridFunction& f, const CubeFamily& fam,
                                               const FractionalParams& p, const Rational& lambda,
                                               const MaximalField* m_r = nullptr) {
  if (lambda < 0) throw Error("level must be non-negative");
  LevelSetReport rep;
  rep.lambda = lambda;
  const MaximalField own = m_r ? MaximalField{} : maximal_R(f, fam, p);
  const MaximalField& mr = m_r ? *m_r : own;
  rep.lhs = detail::within(mr.above(lambda), fam.domain());
  const CellSet level = super_level_set(f, fam.domain(), lambda, true, LevelSign::magnitude);
  rep.rhs = detail::within(indicator_maximal(level, fam, p.gamma).above(ExactScalar(p.alpha)), fam.domain());
  rep.counterexample_cell = detail::first_difference(rep.lhs, rep.rhs);
  rep.ok = !rep.counterexample_cell;
  return rep;
}

struct EpsOutcome {
  Rational eps;
  bool small_enough = false;
  bool ok = true;  // meaningful only when small_enough
  std::optional<std::size_t> counterexample_cell;
};

struct InclusionReport {
  bool ok = true;
  Rational lambda;
  bool inclusion = true;
  std::optional<std::size_t> inclusion_counterexample;
  Rational sufficient_eps;
  std::vector<EpsOutcome> eps;
};

// {m^L > l} ⊆ {M_g chi >= alpha}, and for every small enough eps,
// {M_g chi >= alpha} = {m^R_{alpha-eps} > l} = {m^L_{alpha-eps} > l}.
inline InclusionReport level_set_inclusion_check(const GridFunction& f, const CubeFamily& fam,
                                                 const FractionalParams& p, const Rational& lambda,
                                                 const std::vector<Rational>& eps_samples,
                                                 const MaximalField* m_l = nullptr) {
  if (lambda < 0) throw Error("level must be non-negative");
  InclusionReport rep;
  rep.lambda = lambda;
  const CellSet level = super_level_set(f, fam.domain(), lambda, true, LevelSign::magnitude);
  const CellSet target =
      detail::within(indicator_maximal(level, fam, p.gamma).at_least(ExactScalar(p.alpha)), fam.domain());

  const MaximalField own = m_l ? MaximalField{} : maximal_L(f, fam, p);
  const MaximalField& ml = m_l ? *m_l : own;
  rep.inclusion_counterexample = detail::first_escape(detail::within(ml.above(lambda), fam.domain()), target);
  rep.inclusion = !rep.inclusion_counterexample;
  rep.ok = rep.inclusion;

  const auto below = largest_value_below(level, fam, p);
  rep.sufficient_eps = sufficient_eps(level, fam, p);
  std::vector<Rational> all(eps_samples);
  all.push_back(rep.sufficient_eps);
  for (const auto& e : all) {
    EpsOutcome out{e};
    out.small_enough = eps_small_enough(below, p.alpha, e);
    if (out.small_enough) {
      FractionalParams q = p;
      q.alpha = p.alpha - e;
      const auto r_set = detail::within(maximal_R(f, fam, q).above(lambda), fam.domain());
      const auto l_set = detail::within(maximal_L(f, fam, q).above(lambda), fam.domain());
      out.counterexample_cell = detail::first_difference(r_set, target);
      if (!out.counterexample_cell) out.counterexample_cell = detail::first_difference(l_set, target);
      out.ok = !out.counterexample_cell;
      rep.ok = rep.ok && out.ok;
    }
    rep.eps.push_back(std::move(out));
  }
  return rep;
}

struct DistributionBoundReport {
  bool ok = true;
  Rational lambda, eps;
  Rational d_f, d_mL, d_M;
};

inline void check_weak_exponent(const FractionalParams& p, const Rational& r) {
  if (r < 1) throw Error("r must be at least 1");
  if (p.gamma > 0 && r >= Rational(p.n) / p.gamma) throw Error("r must be below n/gamma");
}

// d_{m^L}(l) <= d_{M_g chi_{|f|>l}}(alpha - eps) at a sufficient eps.
inline DistributionBoundReport distribution_bound_check(const GridFunction& f, const CubeFamily& fam,
                                                        const FractionalParams& p, const Rational& r,
                                                        const Rational& lambda,
                                                        const MaximalField* m_l = nullptr) {
  check_weak_exponent(p, r);
  if (lambda < 0) throw Error("level must be non-negative");
  DistributionBoundReport rep;
  rep.lambda = lambda;
  const Rational mu = f.geometry().cell_measure();
  const MaximalField own = m_l ? MaximalField{} : maximal_L(f, fam, p);
  const MaximalField& ml = m_l ? *m_l : own;
  const CellSet level = super_level_set(f, fam.domain(), lambda, true, LevelSign::magnitude);
  rep.eps = sufficient_eps(level, fam, p);
  rep.d_f = mu * Rational(super_level_set(f, CellSet::all(f.geometry()), lambda, true, LevelSign::magnitude).count());
  rep.d_mL = mu * Rational(ml.above(lambda).count());
  rep.d_M = mu * Rational(indicator_maximal(level, fam, p.gamma).above(ExactScalar(p.alpha - rep.eps)).count());
  rep.ok = rep.d_mL <= rep.d_M;
  return rep;
}

struct ChainEntry {
  Rational r;
  bool exact = false;
  bool ok = true;
  std::optional<std::size_t> counterexample_cell;
};

struct ChainReport {
  bool ok = true;
  bool r_below_l = true;
  std::optional<std::size_t> counterexample_cell;
  std::vector<ChainEntry> entries;
};

// m^R <= m^L <= alpha^(-1/r) M_g(|f|^r)^(1/r), checked as alpha (m^L)^r <= M_g(|f|^r).
inline ChainReport pointwise_chain_check(const GridFunction& f, const CubeFamily& fam, const FractionalParams& p,
                                         const std::vector<Rational>& r_samples) {
  ChainReport rep;
  const auto mr = maximal_R(f, fam, p), ml = maximal_L(f, fam, p);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (mr[i] > ml[i]) {
      rep.r_below_l = false;
      rep.counterexample_cell = i;
      break;
    }
  rep.ok = rep.r_below_l;
  const Real tol("1e-30");
  for (const auto& r : r_samples) {
    if (r <= 0) throw Error("chain exponent must be positive");
    ChainEntry en{r};
    if (den(r) == 1) {
      en.exact = true;
      const unsigned k = num(r).convert_to<unsigned>();
      std::vector<Rational> pw(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) pw[i] = ipow(boost::multiprecision::abs(f[i]), k);
      const auto m = fractional_maximal_M(GridFunction(f.geometry(), pw), fam, p.gamma);
      for (std::size_t i = 0; i < f.size() && en.ok; ++i) {
        const ExactScalar lhs = ExactScalar(p.alpha * ipow(ml[i].to_ext_rational().value(), k));
        if (lhs > m[i]) {
          en.ok = false;
          en.counterexample_cell = i;
        }
      }
    } else {
      const auto m = fractional_maximal_M_real(f, fam, p.gamma, r);
      const Real rr = to_real(r), a = to_real(p.alpha);
      for (std::size_t i = 0; i < f.size() && en.ok; ++i) {
        const Rational v = ml[i].to_ext_rational().value();
        const Real lhs = v == 0 ? Real(0) : Real(a * boost::multiprecision::pow(to_real(v), rr));
        if (lhs > m[i] * (1 + tol)) {
          en.ok = false;
          en.counterexample_cell = i;
        }
      }
    }
    rep.ok = rep.ok && en.ok;
    rep.entries.push_back(std::move(en));
  }
  return rep;
}

struct LayerCakeReport {
  bool ok = true;
  std::size_t cubes_checked = 0;
  std::optional<GridCube> counterexample;
  bool field_agrees = true;
};

// For every cube: |Q|^(g/n - 1) * integral_0^|Q| N[f chi_Q](s) ds equals
// |Q|^(g/n) <|f|>_Q for N = R and N = L, and the supremum of these values
// over cubes containing a cell reproduces M_g f.
inline LayerCakeReport layer_cake_identity_check(const GridFunction& f, const CubeFamily& fam, const Rational& gamma) {
  detail::check_gamma(f.geometry(), gamma);
  const auto& g = f.geometry();
  const Rational mu = g.cell_measure();
  const Rational n(g.dim());
  LayerCakeReport rep;
  std::vector<ExactScalar> sup(f.size(), ExactScalar(0));
  fam.for_each([&](const GridCube& q) {
    std::vector<Rational> a;
    Rational sum = 0;
    q.for_each_cell(g, [&](std::size_t i) {
      a.push_back(f[i]);
      sum += boost::multiprecision::abs(f[i]) * mu;
    });
    const Rational vol = q.measure(g);
    // The cube's values as a line of cells with the same cell measure.
    const GridFunction piece = GridFunction::line(a, mu);
    const ExactScalar rhs = pow_measure(vol, gamma / n) * (sum / vol);
    for (const auto& curve : {rearrangement_curve_R(piece), rearrangement_curve_L(piece)}) {
      const ExactScalar lhs = pow_measure(vol, gamma / n - 1) * curve.integral(vol);
      if (!(lhs == rhs) && rep.ok) {
        rep.ok = false;
        rep.counterexample = q;
      }
    }
    ++rep.cubes_checked;
    q.for_each_cell(g, [&](std::size_t i) {
      if (rhs > sup[i]) sup[i] = rhs;
    });
  });
  const auto m = fractional_maximal_M(f, fam, gamma);
  for (std::size_t i = 0; i < f.size(); ++i) rep.field_agrees = rep.field_agrees && sup[i] == m[i];
  rep.ok = rep.ok && rep.field_agrees;
  return rep;
}

}  // namespace medmax
