#include "medmax/medmax.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace medmax;
using io::json;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

struct Common {
  std::string grid, set, out;
  std::string alpha = "1/2", gamma = "0";
};

void emit(const std::string& out, const std::string& text) {
  if (out.empty())
    std::cout << text;
  else
    io::write_text(out, text);
}

FractionalParams params_for(const Common& c, std::size_t n) {
  FractionalParams p{parse_rational(c.alpha), parse_rational(c.gamma), n};
  p.validate();
  return p;
}

CellSet domain_for(const Common& c, const GridFunction& f) {
  if (c.set.empty()) return CellSet::all(f.geometry());
  return io::mask_from_json(io::read_json(c.set), f.geometry());
}

json curves_at(const GridFunction& f, const ExactScalar& t) {
  return {{"t", t.str()},
          {"R1", rearrange_R(f, t).str()},
          {"R2", rearrange_R2(f, t).str()},
          {"L1", rearrange_L(f, t).str()},
          {"L2", rearrange_L2(f, t).str()},
          {"L2star", rearrange_L2star(f, t).str()}};
}

std::vector<std::pair<std::string, GridFunction>> load_corpus(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<std::pair<std::string, GridFunction>> out;
  for (const auto& p : files) out.emplace_back(p.stem().string(), io::read_grid(p.string()));
  return out;
}

int run_maximal_check(const GridFunction& f, const CubeFamily& fam, const FractionalParams& p, const std::string& out) {
  json rep;
  rep["check"] = "lemma43";
  rep["parameters"] = suites::params_json(p);
  const auto mr = maximal_R(f, fam, p);
  const auto ml = maximal_L(f, fam, p);
  bool ok = true;
  json levels = json::array();
  for (const auto& l : suites::levels_of(f)) {
    const auto id = level_set_identity_check(f, fam, p, l, &mr);
    const auto inc = level_set_inclusion_check(f, fam, p, l, {p.alpha / 1000}, &ml);
    json row{{"lambda", to_string(l)}, {"identity", id.ok}, {"inclusion", inc.inclusion},
             {"sufficient_eps", to_string(inc.sufficient_eps)}};
    if (id.counterexample_cell) row["identity_cell"] = f.geometry().coords(*id.counterexample_cell);
    if (inc.inclusion_counterexample) row["inclusion_cell"] = f.geometry().coords(*inc.inclusion_counterexample);
    json eps = json::array();
    for (const auto& e : inc.eps) {
      json x{{"eps", to_string(e.eps)}, {"small_enough", e.small_enough}, {"ok", e.ok}};
      if (e.counterexample_cell) x["cell"] = f.geometry().coords(*e.counterexample_cell);
      eps.push_back(std::move(x));
    }
    row["eps"] = std::move(eps);
    ok = ok && id.ok && inc.ok;
    levels.push_back(std::move(row));
  }
  rep["levels"] = std::move(levels);
  rep["pass"] = ok;
  emit(out, rep.dump(2) + "\n");
  return ok ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rearrangements, fractional medians and maximal functions on grids"};
  app.require_subcommand(1);
  Common c;
  std::uint64_t seed = 0;
  std::size_t count = 0;

  auto* compute = app.add_subcommand("compute", "distribution, rearrangements and BV of a grid function");
  std::vector<std::string> ts;
  compute->add_option("--grid", c.grid, "grid JSON")->required();
  compute->add_option("--t", ts, "evaluate R1, R2, L1, L2, L2* at these measures");
  compute->add_option("--out", c.out);

  auto* median = app.add_subcommand("median", "fractional median interval on a cell set");
  median->add_option("--grid", c.grid)->required();
  median->add_option("--set", c.set, "mask JSON (default: the whole grid)");
  median->add_option("--alpha", c.alpha);
  median->add_option("--gamma", c.gamma);
  median->add_option("--out", c.out);

  auto* maximal = app.add_subcommand("maximal", "maximal field over grid-aligned cubes");
  std::string op = "R", kernel = "fast", check;
  maximal->add_option("--grid", c.grid)->required();
  maximal->add_option("--set", c.set, "domain mask (default: the whole grid)");
  maximal->add_option("--alpha", c.alpha);
  maximal->add_option("--gamma", c.gamma);
  maximal->add_option("--op", op)->check(CLI::IsMember({"R", "L", "Mg"}));
  maximal->add_option("--kernel", kernel)->check(CLI::IsMember({"naive", "fast"}));
  maximal->add_option("--check", check)->check(CLI::IsMember({"lemma43"}));
  maximal->add_option("--out", c.out);

  auto* lorentz = app.add_subcommand("lorentz", "Lorentz quasi-norm, 40 significant digits");
  std::string p_str = "2", q_str = "1", route = "distribution";
  lorentz->add_option("--grid", c.grid)->required();
  lorentz->add_option("--p", p_str);
  lorentz->add_option("--q", q_str, "rational or inf");
  lorentz->add_option("--route", route)->check(CLI::IsMember({"distribution", "R", "L"}));
  lorentz->add_option("--out", c.out);

  auto* alvino = app.add_subcommand("alvino", "norm-chain survey as CSV");
  std::string corpus_dir;
  alvino->add_option("--corpus", corpus_dir, "directory of grid JSON files");
  alvino->add_option("--seed", seed);
  alvino->add_option("--count", count, "generated corpus size when no directory is given");
  alvino->add_option("--alpha", c.alpha);
  std::string alvino_gamma = "1/2";
  alvino->add_option("--gamma", alvino_gamma);
  alvino->add_option("--out", c.out);

  auto* verify = app.add_subcommand("verify", "seeded verification suite, JSON report");
  std::string suite;
  verify->add_option("--suite", suite)->required();
  verify->add_option("--seed", seed);
  verify->add_option("--count", count, "0 selects the suite default");
  verify->add_option("--out", c.out);

  auto* bench = app.add_subcommand("bench", "naive vs fast maximal kernels, CSV");
  std::vector<std::size_t> sizes{16, 32, 64, 128, 256};
  std::string bench_op = "R";
  bench->add_option("--sizes", sizes)->delimiter(',');
  bench->add_option("--op", bench_op)->check(CLI::IsMember({"R", "L", "Mg"}));
  bench->add_option("--seed", seed);
  bench->add_option("--out", c.out);

  auto* corpus = app.add_subcommand("corpus", "write seeded random grids");
  std::string profile = "adversarial-steps";
  CorpusOptions copt;
  corpus->add_option("--seed", seed);
  corpus->add_option("--count", count);
  corpus->add_option("--profile", profile)->check(CLI::IsMember({"sparse", "smooth-ramp", "indicator", "adversarial-steps"}));
  corpus->add_option("--dim", copt.dim)->check(CLI::Range(1, 2));
  corpus->add_option("--min-side", copt.min_side);
  corpus->add_option("--max-side", copt.max_side);
  corpus->add_flag("--signed", copt.allow_negative);
  corpus->add_option("--out", c.out, "directory (default: JSON array on stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kUsage;
  }

  try {
    if (*compute) {
      const auto f = io::read_grid(c.grid);
      const auto d = distribution(f);
      const auto bv = discrete_bv(f);
      json j;
      j["distribution"] = io::to_json(d);
      j["R"] = io::to_json(rearrangement_curve_R(d));
      j["L"] = io::to_json(rearrangement_curve_L(d));
      j["bv"] = to_string(bv.seminorm);
      json at = json::array();
      for (const auto& t : ts) at.push_back(curves_at(f, ExactScalar(parse_rational(t))));
      if (!ts.empty()) j["at"] = std::move(at);
      emit(c.out, j.dump(2) + "\n");
      return kPass;
    }
    if (*median) {
      const auto f = io::read_grid(c.grid);
      const auto e = domain_for(c, f);
      const auto m = median_set_by_definition(f, e, params_for(c, f.dim()));
      emit(c.out, json{{"lo", to_string(m.lo)}, {"hi", to_string(m.hi)}}.dump() + "\n");
      return kPass;
    }
    if (*maximal) {
      const auto f = io::read_grid(c.grid);
      const CubeFamily fam(domain_for(c, f));
      const auto p = params_for(c, f.dim());
      if (!check.empty()) return run_maximal_check(f, fam, p, c.out);
      const MaximalOp o = op == "R" ? MaximalOp::R : op == "L" ? MaximalOp::L : MaximalOp::M;
      const auto m = kernel == "fast" ? fast_maximal(f, fam, p, o) : naive_maximal(f, fam, p, o);
      emit(c.out, io::to_json(m).dump() + "\n");
      return kPass;
    }
    if (*lorentz) {
      const auto f = io::read_grid(c.grid);
      const LorentzIndex idx{parse_rational(p_str), parse_ext_rational(q_str)};
      const auto v = route == "distribution" ? lorentz_norm_from_distribution(f, idx)
                                             : lorentz_norm_from_rearrangement(f, idx, route == "R" ? Side::R : Side::L);
      emit(c.out, (v.infinite() ? std::string("inf") : format_decimal(v.real(), 40)) + "\n");
      return kPass;
    }
    if (*alvino) {
      std::vector<std::pair<std::string, GridFunction>> named;
      if (!corpus_dir.empty()) {
        named = load_corpus(corpus_dir);
      } else {
        for (std::size_t i = 0; i < (count ? count : 100); ++i)
          named.emplace_back(std::to_string(i), corpus_instance(seed, i, suites::alvino_options(i)));
      }
      std::vector<GridFunction> fs;
      for (auto& [name, f] : named) fs.push_back(f);
      const auto rep = alvino_chain_survey(fs, parse_rational(c.alpha), parse_rational(alvino_gamma));
      std::ostringstream s;
      s << "id,norm_mL,norm_f,bv,ratio_maximal,ratio_bv,layer_cake,direct,routes_agree\n";
      for (const auto& r : rep.rows)
        s << named[r.id].first << ',' << format_decimal(r.norm_mL, 20) << ',' << format_decimal(r.norm_f, 20) << ','
          << format_decimal(r.bv, 20) << ',' << format_decimal(r.ratio_maximal, 20) << ','
          << format_decimal(r.ratio_bv, 20) << ',' << format_decimal(r.layer_cake, 40) << ','
          << format_decimal(r.direct, 40) << ',' << (r.routes_agree ? "true" : "false") << '\n';
      emit(c.out, s.str());
      return rep.routes_agree && rep.finite ? kPass : kFail;
    }
    if (*verify) {
      if (!is_suite(suite)) {
        std::cerr << "unknown suite: " << suite << "\n";
        return kUsage;
      }
      const auto rep = run_suite(suite, seed, count);
      emit(c.out, rep.to_json().dump(2) + "\n");
      return rep.pass() ? kPass : kFail;
    }
    if (*bench) {
      const MaximalOp o = bench_op == "R" ? MaximalOp::R : bench_op == "L" ? MaximalOp::L : MaximalOp::M;
      std::string csv = bench_csv_header();
      bool identical = true;
      for (auto n : sizes) {
        const auto row = bench_one(n, seed, o);
        identical = identical && row.identical;
        csv += bench_csv_row(row);
        if (!c.out.empty()) std::cerr << bench_csv_row(row);
      }
      emit(c.out, csv);
      return identical ? kPass : kFail;
    }
    if (*corpus) {
      copt.profile = parse_profile(profile);
      const auto grids = generate_corpus(seed, count, copt);
      if (c.out.empty()) {
        json arr = json::array();
        for (const auto& g : grids) arr.push_back(io::to_json(g));
        std::cout << arr.dump(2) << "\n";
      } else {
        fs::create_directories(c.out);
        for (std::size_t i = 0; i < grids.size(); ++i) {
          std::ostringstream name;
          name << "grid_" << std::setw(5) << std::setfill('0') << i << ".json";
          io::write_text((fs::path(c.out) / name.str()).string(), io::to_json(grids[i]).dump(2) + "\n");
        }
      }
      return kPass;
    }
  } catch (const std::exception& e) {
    std::cerr << "medmax: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
