#pragma once

// Anisotropic discrete total variation: h^(n-1) times the sum of |jumps|
// across every cell face, the function being 0 outside the grid.

#include "medmax/grid.hpp"
#include "medmax/lorentz.hpp"
#include "medmax/maximal.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace medmax {

struct BVResult {
  Rational seminorm;
  // (level w_k, perimeter of {f > w_k}) over consecutive distinct values.
  std::vector<std::pair<Rational, Rational>> perimeters;
};

namespace detail {

// Calls fn(a, b) for both sides of every face; -1 stands for outside.
template <class Fn>
void for_each_face(const Geometry& g, Fn&& fn) {
  const std::size_t n = g.dim();
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t a = n - 1; a-- > 0;) stride[a] = stride[a + 1] * g.shape[a + 1];
  const std::size_t cells = g.cell_count();
  for (std::size_t i = 0; i < cells; ++i)
    for (std::size_t a = 0; a < n; ++a) {
      const std::size_t c = (i / stride[a]) % g.shape[a];
      if (c == 0) fn(std::ptrdiff_t(-1), static_cast<std::ptrdiff_t>(i));
      fn(static_cast<std::ptrdiff_t>(i), c + 1 < g.shape[a] ? static_cast<std::ptrdiff_t>(i + stride[a]) : -1);
    }
}

inline Rational face_measure(const Geometry& g) { return ipow(g.h, static_cast<unsigned>(g.dim() - 1)); }

// Perimeter of {f > l}; outside cells have value 0.
inline Rational level_perimeter(const GridFunction& f, const Rational& l) {
  const bool outside = Rational(0) > l;
  std::size_t faces = 0;
  for_each_face(f.geometry(), [&](std::ptrdiff_t a, std::ptrdiff_t b) {
    const bool ia = a < 0 ? outside : f[static_cast<std::size_t>(a)] > l;
    const bool ib = b < 0 ? outside : f[static_cast<std::size_t>(b)] > l;
    faces += ia != ib;
  });
  return face_measure(f.geometry()) * Rational(faces);
}

}  // namespace detail

inline BVResult discrete_bv(const GridFunction& f) {
  BVResult out;
  Rational sum = 0;
  detail::for_each_face(f.geometry(), [&](std::ptrdiff_t a, std::ptrdiff_t b) {
    const Rational va = a < 0 ? Rational(0) : f[static_cast<std::size_t>(a)];
    const Rational vb = b < 0 ? Rational(0) : f[static_cast<std::size_t>(b)];
    sum += boost::multiprecision::abs(va - vb);
  });
  out.seminorm = detail::face_measure(f.geometry()) * sum;

  std::vector<Rational> w{Rational(0)};
  for (const auto& v : f.values()) w.push_back(v);
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  for (std::size_t k = 0; k + 1 < w.size(); ++k) out.perimeters.emplace_back(w[k], detail::level_perimeter(f, w[k]));
  return out;
}

struct CoareaReport {
  bool ok = false;
  Rational seminorm, layered;
};

// |f|_BV = sum_k (w_{k+1} - w_k) Per({f > w_k}) over the sorted values and 0.
inline CoareaReport coarea_check(const GridFunction& f) {
  const auto bv = discrete_bv(f);
  std::vector<Rational> w{Rational(0)};
  for (const auto& v : f.values()) w.push_back(v);
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  CoareaReport rep;
  rep.seminorm = bv.seminorm;
  rep.layered = 0;
  for (std::size_t k = 0; k + 1 < w.size(); ++k) rep.layered += (w[k + 1] - w[k]) * bv.perimeters[k].second;
  rep.ok = rep.seminorm == rep.layered;
  return rep;
}

struct AlvinoRow {
  std::size_t id = 0;
  Real norm_mL, norm_f, bv;
  Real ratio_maximal, ratio_bv;  // norm_mL / norm_f, norm_f / bv
  Real layer_cake, direct;       // two routes to ||m^R_alpha f||_{n/(n-1),1}
  bool routes_agree = false;
};

struct AlvinoReport {
  std::vector<AlvinoRow> rows;
  Real sup_ratio_maximal = 0, sup_ratio_bv = 0;
  bool finite = true;
  bool routes_agree = true;
  std::size_t skipped = 0;  // zero functions
};

inline constexpr const char* kAlvinoRouteTol = "1e-30";

// ||m^R_alpha f||_{p,1} with p = n/(n-1), through level sets of f:
// p * sum_k (w_{k+1} - w_k) * |{M(chi_{f > w_k}) > alpha}|^(1/p).
inline Real alvino_layer_cake(const GridFunction& f, const CubeFamily& fam, const Rational& alpha) {
  const auto& g = f.geometry();
  const Rational p = Rational(g.dim()) / Rational(g.dim() - 1);
  std::vector<Rational> w{Rational(0)};
  for (const auto& v : f.values()) w.push_back(v);
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  Real sum = 0;
  const Real ip = to_real(Rational(1 / p));
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    const CellSet level = super_level_set(f, fam.domain(), w[k]);
    const auto m = indicator_maximal(level, fam, 0);
    const Rational d = g.cell_measure() * Rational(m.above(ExactScalar(alpha)).count());
    if (d == 0) continue;
    sum += to_real(Rational(w[k + 1] - w[k])) * boost::multiprecision::pow(to_real(d), ip);
  }
  return to_real(p) * sum;
}

inline AlvinoReport alvino_chain_survey(const std::vector<GridFunction>& corpus, const Rational& alpha,
                                        const Rational& gamma) {
  AlvinoReport rep;
  const Real tol(kAlvinoRouteTol);
  for (std::size_t id = 0; id < corpus.size(); ++id) {
    const auto& f = corpus[id];
    const std::size_t n = f.dim();
    if (n != 2) throw Error("the survey runs on 2-D grids");
    if (gamma <= 0 || gamma >= Rational(n - 1)) throw Error("gamma must lie in (0, n-1)");
    if (!f.nonnegative()) throw Error("the survey needs non-negative functions");
    if (f.support().empty()) {
      ++rep.skipped;
      continue;
    }
    const auto fam = CubeFamily::whole_grid(f.geometry());
    const Rational mu = f.geometry().cell_measure();
    const Rational nn(n);
    const LorentzIndex target{nn / (nn - 1 - gamma), ExtRational(1)};
    const LorentzIndex source{nn / (nn - 1), ExtRational(1)};

    AlvinoRow row;
    row.id = id;
    const auto ml = fast_maximal(f, fam, {alpha, gamma, n}, MaximalOp::L);
    row.norm_mL = lorentz_norm_from_distribution(distribution_of_values(ml.values, mu), target).real();
    row.norm_f = lorentz_norm_from_distribution(f, source).real();
    row.bv = to_real(discrete_bv(f).seminorm);
    row.ratio_maximal = row.norm_mL / row.norm_f;
    row.ratio_bv = row.norm_f / row.bv;

    const auto mr = fast_maximal(f, fam, {alpha, 0, n}, MaximalOp::R);
    row.direct = lorentz_norm_from_distribution(distribution_of_values(mr.values, mu), source).real();
    row.layer_cake = alvino_layer_cake(f, fam, alpha);
    row.routes_agree = within_relative(row.direct, row.layer_cake, tol);

    rep.routes_agree = rep.routes_agree && row.routes_agree;
    rep.sup_ratio_maximal = std::max(rep.sup_ratio_maximal, row.ratio_maximal);
    rep.sup_ratio_bv = std::max(rep.sup_ratio_bv, row.ratio_bv);
    rep.finite = rep.finite && !boost::multiprecision::isinf(row.ratio_maximal) && !boost::multiprecision::isinf(row.ratio_bv);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace medmax
