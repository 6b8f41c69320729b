#include "medmax/corpus.hpp"
#include "medmax/io.hpp"
#include "medmax/suites.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace medmax;
using io::json;

TEST(GridIo, RoundTripIsBitExact) {
  CorpusOptions o;
  o.profile = Profile::sparse;
  o.allow_negative = true;
  for (std::size_t i = 0; i < 20; ++i) {
    const auto f = corpus_instance(11, i, o);
    const auto text = io::to_json(f).dump();
    const auto g = io::grid_from_json(json::parse(text));
    EXPECT_EQ(f, g);
    EXPECT_EQ(io::to_json(g).dump(), text);
  }
}

TEST(GridIo, ParsesTheDocumentedLayout) {
  const auto f = io::grid_from_json(json::parse(R"({"dim":2,"shape":[1,2],"h":"1/2","values":["3","1/2"]})"));
  EXPECT_EQ(f.geometry().h, Rational(1, 2));
  EXPECT_EQ(f[1], Rational(1, 2));
  EXPECT_THROW(io::grid_from_json(json::parse(R"({"dim":2,"shape":[2,2],"values":["1"]})")), Error);
  EXPECT_THROW(io::grid_from_json(json::parse(R"({"dim":1,"shape":[1],"values":["0.5"]})")), Error);
  EXPECT_THROW(io::grid_from_json(json::parse(R"({"dim":3,"shape":[1],"values":["1"]})")), Error);
}

TEST(GridIo, MaskMustMatchTheGrid) {
  const Geometry g({3}, 1);
  const auto s = io::mask_from_json(json::parse(R"({"dim":1,"shape":[3],"mask":[1,0,1]})"), g);
  EXPECT_EQ(s.count(), 2u);
  EXPECT_THROW(io::mask_from_json(json::parse(R"({"dim":1,"shape":[2],"mask":[1,0]})"), g), Error);
  EXPECT_THROW(io::mask_from_json(json::parse(R"({"dim":1,"shape":[3],"mask":[1,2,0]})"), g), Error);
}

TEST(CurveIo, BothSidesRoundTrip) {
  const auto f = GridFunction::line({3, 1, 2});
  for (const auto& c : {distribution(f), rearrangement_curve_R(f), rearrangement_curve_L(f)}) {
    const auto back = io::curve_from_json(json::parse(io::to_json(c).dump()));
    EXPECT_EQ(back, c);
  }
  EXPECT_EQ(io::to_json(rearrangement_curve_L(f)).front()["v"], "inf");
}

TEST(Corpus, DeterministicAndBounded) {
  CorpusOptions o;
  EXPECT_TRUE(generate_corpus(0, 0, o).empty());
  const auto a = generate_corpus(5, 30, o), b = generate_corpus(5, 30, o);
  EXPECT_EQ(a, b);
  o.profile = Profile::indicator;
  for (const auto& f : generate_corpus(1, 40, o))
    for (const auto& v : f.values()) EXPECT_TRUE(v == 0 || v == 1);
}

TEST(Corpus, GoldenFirstInstance) {
  std::ifstream in(std::string(MEDMAX_TEST_DATA) + "/golden_corpus_seed0.json");
  ASSERT_TRUE(in);
  const auto golden = json::parse(in);
  ASSERT_EQ(golden.size(), 1u);
  EXPECT_EQ(io::grid_from_json(golden[0]), generate_corpus(0, 1, CorpusOptions{}).front());
}

TEST(Suites, ReportsAreReproducible) {
  for (const auto& name : {"prop21", "appendix", "coarea", "thm31"}) {
    const auto a = run_suite(name, 9, 12), b = run_suite(name, 9, 12);
    EXPECT_EQ(a.to_json(false).dump(), b.to_json(false).dump()) << name;
    EXPECT_TRUE(a.pass()) << name;
    EXPECT_EQ(a.to_json()["seed"], 9);
  }
  EXPECT_THROW(run_suite("nope", 0), Error);
}

TEST(Suites, WorkerCountDoesNotChangeReports) {
  const auto many = run_suite("kernels", 4, 6);
  setenv("MEDMAX_THREADS", "1", 1);
  const auto one = run_suite("kernels", 4, 6);
  unsetenv("MEDMAX_THREADS");
  EXPECT_EQ(many.to_json(false).dump(), one.to_json(false).dump());
}

TEST(Bench, SmallGridIsIdentical) {
  const auto r = bench_one(16, 0);
  EXPECT_TRUE(r.identical);
  EXPECT_EQ(bench_csv_row(r).substr(0, 7), "16,256,");
}
