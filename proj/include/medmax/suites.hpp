#pragma once

// Seeded verification suites pairing production paths with oracles or with
// an identity, and the naive/fast kernel benchmark.

#include "medmax/bv.hpp"
#include "medmax/corpus.hpp"
#include "medmax/io.hpp"
#include "medmax/lorentz.hpp"
#include "medmax/maximal.hpp"
#include "medmax/median.hpp"
#include "medmax/oracle.hpp"
#include "medmax/parallel.hpp"
#include "medmax/rearrangement.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace medmax {

using io::json;

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t count = 0;      // corpus instances generated
  std::size_t instances = 0;  // individual checks performed
  std::size_t failures = 0;
  json parameters = json::object();
  json first_counterexample = nullptr;
  json summary = json::object();
  bool extra_ok = true;  // suite-level conditions beyond per-instance checks
  double seconds = 0;

  bool pass() const { return failures == 0 && extra_ok; }

  json to_json(bool with_timing = true) const {
    json j;
    j["suite"] = suite;
    j["seed"] = seed;
    j["count"] = count;
    j["parameters"] = parameters;
    j["instances"] = instances;
    j["failures"] = failures;
    j["pass"] = pass();
    j["first_counterexample"] = first_counterexample;
    j["summary"] = summary;
    if (with_timing) j["timing"] = {{"seconds", seconds}};
    return j;
  }
};

namespace suites {

struct Outcome {
  std::size_t checks = 0;
  std::size_t failures = 0;
  json counterexample = nullptr;
  json data = nullptr;

  void check(bool ok, const std::function<json()>& payload) {
    ++checks;
    if (ok) return;
    ++failures;
    if (counterexample.is_null()) counterexample = payload();
  }
};

inline json params_json(const FractionalParams& p) {
  return {{"alpha", to_string(p.alpha)}, {"gamma", to_string(p.gamma)}, {"n", p.n}};
}

inline json payload(std::size_t i, const GridFunction& f, json extra) {
  json j;
  j["instance"] = i;
  j["grid"] = io::to_json(f);
  for (auto& [k, v] : extra.items()) j[k] = v;
  return j;
}

// Runs fn over instances in parallel and folds the outcomes in index order.
inline void fold(VerificationReport& rep, std::size_t count, const std::function<Outcome(std::size_t)>& fn,
                 std::vector<Outcome>* keep = nullptr) {
  std::vector<Outcome> out(count);
  parallel_for(count, [&](std::size_t i) { out[i] = fn(i); });
  rep.count = count;
  for (auto& o : out) {
    rep.instances += o.checks;
    rep.failures += o.failures;
    if (rep.first_counterexample.is_null() && !o.counterexample.is_null()) rep.first_counterexample = o.counterexample;
  }
  if (keep) *keep = std::move(out);
}

inline CorpusOptions mixed_options(std::size_t i, std::size_t max_cells_1d, std::size_t max_side_2d, bool signed_values) {
  CorpusOptions o;
  o.profile = static_cast<Profile>(i % 4);
  o.dim = i % 3 == 2 ? 1 : 2;
  o.min_side = 1;
  o.max_side = o.dim == 1 ? max_cells_1d : max_side_2d;
  o.allow_negative = signed_values && i % 2 == 1;
  return o;
}

// R1 = R2 <= L1 = L2 = L2* against the subset oracle.
inline void prop21(VerificationReport& rep, std::size_t count) {
  rep.parameters = {{"max_cells", oracle::kSubsetCells}, {"thresholds_per_grid", 10}};
  fold(rep, count, [&](std::size_t i) {
    Outcome o;
    auto opt = mixed_options(i, 12, 4, true);
    opt.max_cells = oracle::kSubsetCells;
    const auto f = corpus_instance(rep.seed, i, opt);
    Rng rng(instance_seed(rep.seed ^ 0x5bd1e995u, i));
    const Rational mu = f.geometry().cell_measure(), total = f.geometry().total_measure();
    std::vector<ExactScalar> ts{ExactScalar(0), ExactScalar(mu), ExactScalar(total), ExactScalar(Rational(total + mu)),
                                ExactScalar::power(2, Rational(1, 2)) * (total / 2)};
    for (int k = 0; k < 5; ++k) ts.emplace_back(total * Rational(rng.uniform(1, 23), 24));
    Rational top = 0;
    for (const auto& v : f.values()) top = std::max(top, Rational(boost::multiprecision::abs(v)));
    for (const auto& t : ts) {
      const auto orc = oracle::rearrangements(f, t);
      const ExtRational r1 = rearrange_R(f, t), r2 = rearrange_R2(f, t), l1 = rearrange_L(f, t),
                        l2 = rearrange_L2(f, t), l2s = rearrange_L2star(f, t);
      bool ok = orc.r1 == r1 && orc.r2 == r2 && orc.l1 == l1 && orc.l2 == l2 && orc.l2star == l2s;
      if (t.is_zero())
        ok = ok && r1 == ExtRational(top) && r2 == r1 && l1.is_infinite() && l2.is_infinite() && l2s == ExtRational(top);
      else
        ok = ok && r1 == r2 && r1 <= l1 && l1 == l2 && l2 == l2s;
      o.check(ok, [&] {
        return payload(i, f, {{"t", t.str()},
                              {"production", {r1.str(), r2.str(), l1.str(), l2.str(), l2s.str()}},
                              {"oracle", {orc.r1.str(), orc.r2.str(), orc.l1.str(), orc.l2.str(), orc.l2star.str()}}});
      });
    }
    return o;
  });
}

inline std::vector<FractionalParams> median_params(std::size_t n) {
  std::vector<FractionalParams> out;
  const std::vector<Rational> alphas{Rational(1, 10), Rational(1, 4), Rational(1, 3), Rational(1, 2),
                                     Rational(2, 3),  Rational(9, 10), Rational(3, 2)};
  const std::vector<Rational> gammas = n == 2 ? std::vector<Rational>{0, Rational(1, 2), 1}
                                              : std::vector<Rational>{0, Rational(1, 2)};
  for (const auto& g : gammas)
    for (const auto& a : alphas) out.push_back({a, g, n});
  return out;
}

// Definition scan = rearrangement form, both endpoints are medians, and the
// oracle scan with midpoints agrees.
inline void thm31(VerificationReport& rep, std::size_t count) {
  rep.parameters = {{"alpha", {"1/10", "1/4", "1/3", "1/2", "2/3", "9/10", "3/2"}},
                    {"gamma_2d", {"0", "1/2", "1"}},
                    {"gamma_1d", {"0", "1/2"}}};
  std::vector<Outcome> outs;
  fold(rep, count, [&](std::size_t i) {
    Outcome o;
    CorpusOptions opt;
    opt.profile = static_cast<Profile>(i % 4);
    opt.dim = i % 5 == 4 ? 1 : 2;
    opt.max_side = opt.dim == 1 ? 16 : 5;
    const auto f = corpus_instance(rep.seed, i, opt);
    Rng rng(instance_seed(rep.seed ^ 0x1b873593u, i));
    const auto e = random_subset(rng, f.geometry());
    std::size_t admissible = 0;
    for (const auto& p : median_params(opt.dim)) {
      if (!p.admissible_for(measure(e))) continue;
      ++admissible;
      const auto a = median_set_by_definition(f, e, p);
      const auto b = median_set_by_rearrangement(f, e, p);
      const auto c = oracle::median(f, e, p.alpha, p.gamma);
      const bool ok = a == b && a.lo == c.lo && a.hi == c.hi && is_fractional_median(f, e, p, a.lo) &&
                      is_fractional_median(f, e, p, a.hi) && is_fractional_median(f, e, p, (a.lo + a.hi) / 2);
      o.check(ok, [&] {
        return payload(i, f, {{"set", io::to_json(e)},
                              {"parameters", params_json(p)},
                              {"definition", {to_string(a.lo), to_string(a.hi)}},
                              {"rearrangement", {to_string(b.lo), to_string(b.hi)}},
                              {"oracle", {to_string(c.lo), to_string(c.hi)}}});
      });
    }
    o.data = {{"gamma_one_checked", opt.dim == 2}};
    return o;
  }, &outs);
  rep.summary["checks"] = rep.instances;
}

inline std::vector<Rational> levels_of(const GridFunction& f) {
  std::vector<Rational> l{Rational(0)};
  for (const auto& v : f.values()) l.push_back(boost::multiprecision::abs(v));
  std::sort(l.begin(), l.end());
  l.erase(std::unique(l.begin(), l.end()), l.end());
  return l;
}

inline std::vector<FractionalParams> level_params(std::size_t n) {
  if (n == 1) return {{Rational(1, 2), 0, 1}, {Rational(1, 3), Rational(1, 2), 1}, {1, 0, 1}};
  return {{Rational(1, 2), 0, 2}, {Rational(1, 4), 0, 2}, {Rational(1, 3), Rational(1, 2), 2},
          {Rational(1, 2), 1, 2}, {1, 0, 2}};
}

// Level-set identity and inclusions at every level of |f|.
inline void lemma43(VerificationReport& rep, std::size_t count) {
  rep.parameters = {{"max_side", 16}, {"eps_samples", {"alpha/1000", "alpha/2", "sufficient"}}};
  fold(rep, count, [&](std::size_t i) {
    Outcome o;
    CorpusOptions opt;
    opt.profile = static_cast<Profile>(i % 4);
    opt.dim = i % 4 == 3 ? 1 : 2;
    opt.min_side = i < 8 ? 16 : 1;  // the first instances take the full 16x16
    opt.max_side = 16;
    opt.allow_negative = i % 2 == 1;
    const auto f = corpus_instance(rep.seed, i, opt);
    Rng rng(instance_seed(rep.seed ^ 0xe6546b64u, i));
    const CubeFamily fam = i % 5 == 2 ? CubeFamily(random_subset(rng, f.geometry())) : CubeFamily::whole_grid(f.geometry());
    const auto levels = levels_of(f);
    for (const auto& p : level_params(opt.dim)) {
      const auto mr = maximal_R(f, fam, p);
      const auto ml = maximal_L(f, fam, p);
      // One eps below every level's gap serves all levels at once.
      Rational eps_star = p.alpha / 2;
      for (const auto& l : levels)
        eps_star = std::min(eps_star, sufficient_eps(super_level_set(f, fam.domain(), l, true, LevelSign::magnitude), fam, p));
      struct Shifted {
        Rational eps;
        MaximalField r, l;
      };
      std::vector<Shifted> shifted;
      for (const Rational& e : std::vector<Rational>{p.alpha / 1000, p.alpha / 2, eps_star}) {
        FractionalParams q = p;
        q.alpha = p.alpha - e;
        shifted.push_back(Shifted{e, maximal_R(f, fam, q), maximal_L(f, fam, q)});
      }
      for (const auto& l : levels) {
        const CellSet level = super_level_set(f, fam.domain(), l, true, LevelSign::magnitude);
        const auto m = indicator_maximal(level, fam, p.gamma);
        const CellSet strict = detail::within(m.above(ExactScalar(p.alpha)), fam.domain());
        const CellSet weak = detail::within(m.at_least(ExactScalar(p.alpha)), fam.domain());
        const auto id = detail::first_difference(detail::within(mr.above(l), fam.domain()), strict);
        o.check(!id, [&] {
          return payload(i, f, {{"parameters", params_json(p)}, {"lambda", to_string(l)}, {"part", "identity"}, {"cell", *id}});
        });
        const auto inc = detail::first_escape(detail::within(ml.above(l), fam.domain()), weak);
        o.check(!inc, [&] {
          return payload(i, f, {{"parameters", params_json(p)}, {"lambda", to_string(l)}, {"part", "inclusion"}, {"cell", *inc}});
        });
        const auto below = largest_value_below(level, fam, p);
        bool sufficient_used = false;
        for (const auto& s : shifted) {
          if (!eps_small_enough(below, p.alpha, s.eps)) continue;
          sufficient_used = sufficient_used || s.eps == eps_star;
          auto d = detail::first_difference(detail::within(s.r.above(l), fam.domain()), weak);
          if (!d) d = detail::first_difference(detail::within(s.l.above(l), fam.domain()), weak);
          o.check(!d, [&] {
            return payload(i, f, {{"parameters", params_json(p)}, {"lambda", to_string(l)}, {"part", "eps"},
                                  {"eps", to_string(s.eps)}, {"cell", *d}});
          });
        }
        o.check(sufficient_used, [&] {
          return payload(i, f, {{"parameters", params_json(p)}, {"lambda", to_string(l)}, {"part", "sufficient eps"},
                                {"eps", to_string(eps_star)}});
        });
      }
    }
    return o;
  });
}

// d_f = d_R = d_L, L left-continuous, R and d_f right-continuous.
inline void appendix(VerificationReport& rep, std::size_t count) {
  fold(rep, count, [&](std::size_t i) {
    Outcome o;
    const auto f = corpus_instance(rep.seed, i, mixed_options(i, 24, 8, true));
    const auto eq = check_equimeasurable(f);
    o.check(eq.ok, [&] { return payload(i, f, {{"part", "equimeasurable"}}); });
    const auto d = distribution(f);
    const auto lc = check_left_continuity(rearrangement_curve_L(d));
    o.check(lc.ok, [&] { return payload(i, f, {{"part", "L left-continuous"}, {"t", lc.failing_point ? to_string(*lc.failing_point) : ""}}); });
    const auto rc = check_right_continuity(rearrangement_curve_R(d));
    o.check(rc.ok, [&] { return payload(i, f, {{"part", "R right-continuous"}, {"t", rc.failing_point ? to_string(*rc.failing_point) : ""}}); });
    const auto dc = check_right_continuity(d);
    o.check(dc.ok, [&] { return payload(i, f, {{"part", "d right-continuous"}}); });
    return o;
  });
}

inline void coarea(VerificationReport& rep, std::size_t count) {
  fold(rep, count, [&](std::size_t i) {
    Outcome o;
    const auto f = corpus_instance(rep.seed, i, mixed_options(i, 32, 12, true));
    const auto c = coarea_check(f);
    o.check(c.ok, [&] {
      return payload(i, f, {{"seminorm", to_string(c.seminorm)}, {"layered", to_string(c.layered)}});
    });
    return o;
  });
}

struct NormTriple {
  Rational p;
  ExtRational q;
  Rational r;
};

inline const std::vector<NormTriple>& norm_triples() {
  static const std::vector<NormTriple> t{{2, ExtRational(1), 2}, {2, ExtRational(2), 2}, {3, ExtRational(1), Rational(3, 2)}};
  return t;
}

inline constexpr const char* kStabilityTol = "0.05";

inline CorpusOptions thm42_options(std::size_t i) {
  CorpusOptions o;
  o.profile = static_cast<Profile>(i % 4);
  o.dim = 2;
  o.min_side = 4;
  o.max_side = 8;
  o.vary_h = false;
  return o;
}

// Distribution inequality behind the weak-type bound, and the empirical
// norm-chain constant C = sup ||m^L f||_{p~,q} / ||f||_{p,q}.
inline void thm42(VerificationReport& rep, std::size_t count) {
  const FractionalParams p{Rational(1, 2), Rational(1, 2), 2};
  rep.parameters = params_json(p);
  rep.parameters["triples"] = json::array();
  for (const auto& t : norm_triples()) {
    const auto w = derive_indices(t.p, t.r, p.gamma, p.n);
    rep.parameters["triples"].push_back({{"p", to_string(t.p)}, {"q", t.q.str()}, {"r", to_string(t.r)},
                                         {"r_tilde", to_string(w.r_tilde)}, {"p_tilde", to_string(w.p_tilde)}});
  }
  std::vector<Outcome> outs;
  fold(rep, count, [&](std::size_t i) {
    Outcome o;
    const auto f = corpus_instance(rep.seed, i, thm42_options(i));
    const auto fam = CubeFamily::whole_grid(f.geometry());
    const auto ml = maximal_L(f, fam, p);
    // The level inequality involves r only through its admissible range.
    for (const auto& l : levels_of(f)) {
      const auto b = distribution_bound_check(f, fam, p, norm_triples().front().r, l, &ml);
      o.check(b.ok, [&] {
        return payload(i, f, {{"parameters", params_json(p)}, {"lambda", to_string(l)}, {"d_mL", to_string(b.d_mL)},
                              {"d_M", to_string(b.d_M)}, {"eps", to_string(b.eps)}});
      });
    }
    json ratios = json::array();
    const auto dm = distribution_of_values(ml.values, f.geometry().cell_measure());
    for (const auto& t : norm_triples()) {
      const auto w = derive_indices(t.p, t.r, p.gamma, p.n);
      const Real num = lorentz_norm_from_distribution(dm, {w.p_tilde, t.q}).real();
      const Real den = lorentz_norm_from_distribution(f, {t.p, t.q}).real();
      ratios.push_back(den == 0 ? std::string("nan") : format_decimal(num / den, 40));
    }
    o.data = ratios;
    return o;
  }, &outs);

  const Real tol(kStabilityTol);
  json constants = json::array();
  for (std::size_t k = 0; k < norm_triples().size(); ++k) {
    Real all = 0, first = 0, second = 0;
    for (std::size_t i = 0; i < outs.size(); ++i) {
      const std::string s = outs[i].data[k].get<std::string>();
      if (s == "nan") continue;
      const Real v(s);
      all = std::max(all, v);
      Real& half = i < outs.size() / 2 ? first : second;
      half = std::max(half, v);
    }
    const Real spread = boost::multiprecision::abs(first - second) / std::max(first, second);
    const bool finite = !boost::multiprecision::isinf(all) && all > 0;
    const bool stable = spread <= tol;
    rep.extra_ok = rep.extra_ok && finite && stable;
    const auto& t = norm_triples()[k];
    constants.push_back({{"p", to_string(t.p)}, {"q", t.q.str()}, {"r", to_string(t.r)},
                         {"C", format_decimal(all, 12)}, {"C_first_half", format_decimal(first, 12)},
                         {"C_second_half", format_decimal(second, 12)}, {"relative_spread", format_decimal(spread, 6)},
                         {"finite", finite}, {"stable", stable}});
  }
  rep.summary["constants"] = constants;
}

inline CorpusOptions alvino_options(std::size_t i) {
  CorpusOptions o;
  o.profile = static_cast<Profile>(i % 4);
  o.dim = 2;
  o.min_side = 2;
  o.max_side = 10;
  return o;
}

inline constexpr const char* kConvergenceTol = "0.10";

// Ratio suprema over nested corpora of 1/4, 1/2 and all of the instances.
inline void alvino(VerificationReport& rep, std::size_t count) {
  const Rational alpha(1, 2), gamma(1, 2);
  rep.parameters = {{"alpha", "1/2"}, {"gamma", "1/2"}, {"n", 2}};
  std::vector<AlvinoRow> rows(count);
  std::vector<bool> present(count, false);
  std::vector<Outcome> outs;
  fold(rep, count, [&](std::size_t i) {
    Outcome o;
    const auto f = corpus_instance(rep.seed, i, alvino_options(i));
    const auto r = alvino_chain_survey({f}, alpha, gamma);
    if (!r.rows.empty()) {
      rows[i] = r.rows.front();
      rows[i].id = i;
      present[i] = true;
      o.check(r.routes_agree && r.finite, [&] {
        return payload(i, f, {{"layer_cake", format_decimal(r.rows[0].layer_cake)}, {"direct", format_decimal(r.rows[0].direct)}});
      });
    }
    return o;
  }, &outs);
  json sizes = json::array();
  std::vector<std::pair<Real, Real>> sups;
  for (std::size_t n : {count / 4, count / 2, count}) {
    Real a = 0, b = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (present[i]) {
        a = std::max(a, rows[i].ratio_maximal);
        b = std::max(b, rows[i].ratio_bv);
      }
    sups.emplace_back(a, b);
    sizes.push_back({{"corpus", n}, {"sup_maximal_ratio", format_decimal(a, 12)}, {"sup_bv_ratio", format_decimal(b, 12)}});
  }
  const Real tol(kConvergenceTol);
  bool monotone = true, converged = true, finite = true;
  for (std::size_t k = 1; k < sups.size(); ++k)
    monotone = monotone && sups[k].first >= sups[k - 1].first && sups[k].second >= sups[k - 1].second;
  const auto& [a1, b1] = sups[1];
  const auto& [a2, b2] = sups[2];
  converged = (a2 - a1) <= tol * a2 && (b2 - b1) <= tol * b2;
  for (const auto& [a, b] : sups) finite = finite && a > 0 && b > 0 && !boost::multiprecision::isinf(a) && !boost::multiprecision::isinf(b);
  rep.extra_ok = monotone && converged && finite;
  rep.summary = {{"nested", sizes}, {"monotone", monotone}, {"converged", converged}, {"finite", finite}};
}

// Naive, fast and oracle maximal fields on oracle-sized grids.
inline void kernels(VerificationReport& rep, std::size_t count) {
  rep.parameters = {{"max_side", 16}, {"ops", {"R", "L", "Mg"}}};
  fold(rep, count, [&](std::size_t i) {
    Outcome o;
    CorpusOptions opt;
    opt.profile = static_cast<Profile>(i % 4);
    opt.dim = i % 3 == 2 ? 1 : 2;
    opt.min_side = 1;
    opt.max_side = 16;
    opt.allow_negative = i % 2 == 0;
    const auto f = corpus_instance(rep.seed, i, opt);
    Rng rng(instance_seed(rep.seed ^ 0x85ebca6bu, i));
    const CubeFamily fam = i % 5 == 1 ? CubeFamily(random_subset(rng, f.geometry())) : CubeFamily::whole_grid(f.geometry());
    for (const auto& p : level_params(opt.dim))
      for (auto op : {MaximalOp::R, MaximalOp::L, MaximalOp::M}) {
        const auto a = naive_maximal(f, fam, p, op);
        const auto b = fast_maximal(f, fam, p, op);
        const auto c = oracle::maximal(f, fam, p.alpha, p.gamma,
                                       op == MaximalOp::R ? oracle::Which::R : op == MaximalOp::L ? oracle::Which::L : oracle::Which::M);
        bool same = bit_identical(a, b);
        for (std::size_t k = 0; k < c.size() && same; ++k) same = a[k].str() == c[k].str();
        o.check(same, [&] { return payload(i, f, {{"parameters", params_json(p)}, {"op", to_string(op)}}); });
      }
    return o;
  });
}

using SuiteFn = void (*)(VerificationReport&, std::size_t);

struct SuiteEntry {
  SuiteFn fn;
  std::size_t default_count;
};

inline const std::map<std::string, SuiteEntry>& registry() {
  static const std::map<std::string, SuiteEntry> r{
      {"prop21", {prop21, 200}}, {"thm31", {thm31, 500}},     {"lemma43", {lemma43, 200}},
      {"appendix", {appendix, 400}}, {"coarea", {coarea, 400}}, {"thm42", {thm42, 6400}},
      {"alvino", {alvino, 400}},    {"kernels", {kernels, 200}}};
  return r;
}

}  // namespace suites

inline std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : suites::registry()) out.push_back(k);
  return out;
}

inline bool is_suite(const std::string& name) { return suites::registry().count(name) != 0; }

// count = 0 selects the suite's default size.
inline VerificationReport run_suite(const std::string& name, std::uint64_t seed, std::size_t count = 0) {
  const auto it = suites::registry().find(name);
  if (it == suites::registry().end()) throw Error("unknown suite: " + name);
  VerificationReport rep;
  rep.suite = name;
  rep.seed = seed;
  const auto t0 = std::chrono::steady_clock::now();
  it->second.fn(rep, count ? count : it->second.default_count);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

struct BenchRow {
  std::size_t side = 0;
  double naive_seconds = 0, fast_seconds = 0;
  bool identical = false;
  double ratio() const { return fast_seconds > 0 ? naive_seconds / fast_seconds : 0; }
};

// Naive vs fast m^R on an indicator-profile square grid with all cubes,
// gamma = 0, alpha = 1/2.
inline BenchRow bench_one(std::size_t side, std::uint64_t seed, MaximalOp op = MaximalOp::R) {
  CorpusOptions o;
  o.profile = Profile::indicator;
  o.dim = 2;
  o.min_side = o.max_side = side;
  o.vary_h = false;
  const auto f = corpus_instance(seed, 0, o);
  const auto fam = CubeFamily::whole_grid(f.geometry());
  const FractionalParams p{Rational(1, 2), 0, 2};
  BenchRow row;
  row.side = side;
  auto t0 = std::chrono::steady_clock::now();
  const auto fast = fast_maximal(f, fam, p, op);
  auto t1 = std::chrono::steady_clock::now();
  const auto naive = naive_maximal(f, fam, p, op);
  auto t2 = std::chrono::steady_clock::now();
  row.fast_seconds = std::chrono::duration<double>(t1 - t0).count();
  row.naive_seconds = std::chrono::duration<double>(t2 - t1).count();
  row.identical = bit_identical(naive, fast);
  return row;
}

inline std::string bench_csv_header() { return "side,cells,naive_seconds,fast_seconds,ratio,identical\n"; }

inline std::string bench_csv_row(const BenchRow& r) {
  std::ostringstream s;
  s << r.side << ',' << r.side * r.side << ',' << r.naive_seconds << ',' << r.fast_seconds << ',' << r.ratio() << ','
    << (r.identical ? "true" : "false") << '\n';
  return s.str();
}

}  // namespace medmax
