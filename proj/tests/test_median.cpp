#include "medmax/corpus.hpp"
#include "medmax/median.hpp"
#include "medmax/oracle.hpp"

#include <gtest/gtest.h>

using namespace medmax;

namespace {

FractionalParams params(Rational alpha, Rational gamma, std::size_t n) { return {alpha, gamma, n}; }

}  // namespace

TEST(Median, DefinitionExamples) {
  const auto f = GridFunction::line({3, 1, 2});
  const auto e = CellSet::all(f.geometry());
  EXPECT_EQ(median_set_by_definition(f, e, params(Rational(1, 2), 0, 1)), (MedianInterval{2, 2}));

  const auto g = GridFunction::line({1, 1, 2, 2});
  EXPECT_EQ(median_set_by_definition(g, CellSet::all(g.geometry()), params(Rational(1, 2), 0, 1)),
            (MedianInterval{1, 2}));

  const auto c = GridFunction::line({Rational(-5, 2), Rational(-5, 2)});
  EXPECT_EQ(median_set_by_definition(c, CellSet::all(c.geometry()), params(Rational(1, 3), 0, 1)),
            (MedianInterval{Rational(-5, 2), Rational(-5, 2)}));
}

TEST(Median, RearrangementExamples) {
  const auto f = GridFunction::line({3, 1, 2});
  EXPECT_EQ(median_set_by_rearrangement(f, CellSet::all(f.geometry()), params(Rational(1, 2), 0, 1)),
            (MedianInterval{2, 2}));

  // n = 2, |E| = 4, gamma = 1, alpha = 1: t = 4^(1/2) = 2.
  const Geometry g({2, 2}, 1);
  const GridFunction v(g, {1, 1, 2, 2});
  const auto p = params(1, 1, 2);
  EXPECT_EQ(p.threshold(4).str(), "2");
  EXPECT_EQ(median_set_by_rearrangement(v, CellSet::all(g), p), (MedianInterval{1, 2}));
  EXPECT_EQ(median_set_by_definition(v, CellSet::all(g), p), (MedianInterval{1, 2}));

  CellSet e(Geometry({3, 3}, 1));
  e.insert(0);
  e.insert(5);
  e.insert(7);
  EXPECT_EQ(median_set_by_rearrangement(GridFunction::indicator(e), e, params(Rational(1, 2), 0, 2)),
            (MedianInterval{1, 1}));
}

TEST(Median, Errors) {
  const auto f = GridFunction::line({3, 1, 2});
  const auto e = CellSet::all(f.geometry());
  EXPECT_THROW(median_set_by_definition(f, e, params(1, 0, 1)), Error);
  EXPECT_THROW(median_set_by_definition(f, CellSet::none(f.geometry()), params(Rational(1, 2), 0, 1)), Error);
  EXPECT_THROW(median_set_by_rearrangement(GridFunction::line({-1, 2}), CellSet::all(Geometry({2}, 1)),
                                           params(Rational(1, 2), 0, 1)),
               Error);
  // |E|^(gamma/n) = 3^(1/2) > 3/2 but < 2.
  EXPECT_NO_THROW(median_set_by_definition(f, e, params(Rational(3, 2), Rational(1, 2), 1)));
  EXPECT_THROW(median_set_by_definition(f, e, params(2, Rational(1, 2), 1)), Error);
}

TEST(Median, FromReciprocalDistribution) {
  // d = omega min(1, 1/l), total measure omega, gamma = 0: the median is {1/alpha}.
  for (auto alpha : {Rational(1, 2), Rational(1, 7), Rational(9, 10)}) {
    const auto m = median_from_distribution(ReciprocalDistribution(), SymbolicMeasure{1, std::nullopt},
                                            params(alpha, 0, 3));
    EXPECT_EQ(m.lo, ExactScalar(1 / alpha));
    EXPECT_EQ(m.hi, ExactScalar(1 / alpha));
  }
  // With gamma > 0 and a concrete measure the value is |B|^(gamma/n)/alpha.
  const auto m = median_from_distribution(ReciprocalDistribution(), SymbolicMeasure{1, Rational(4)},
                                          params(Rational(1, 2), 1, 2));
  EXPECT_EQ(m.lo, ExactScalar(4));
  EXPECT_EQ(m.hi, ExactScalar(4));
  EXPECT_THROW(median_from_distribution(ReciprocalDistribution(), SymbolicMeasure{1, std::nullopt},
                                        params(Rational(1, 2), 1, 2)),
               Error);
}

TEST(Median, FromStepDistribution) {
  const auto f = GridFunction::line({3, 1, 2});
  const auto m = median_from_distribution(distribution(f), 3, params(Rational(1, 2), 0, 1));
  EXPECT_EQ(m.lo, ExactScalar(2));
  EXPECT_EQ(m.hi, ExactScalar(2));
  const auto z = median_from_distribution(StepCurve::right({0}, {ExtRational(0)}), 5, params(Rational(1, 2), 0, 1));
  EXPECT_EQ(z.lo, ExactScalar(0));
  EXPECT_EQ(z.hi, ExactScalar(0));
}

TEST(Median, LocalRepresentation) {
  const auto f = GridFunction::line({3, 1, 2});
  const auto rep = local_L_representation(f, CellSet::all(f.geometry()), params(Rational(1, 2), 0, 1));
  EXPECT_EQ(rep.value, ExtRational(2));
  EXPECT_TRUE(rep.agrees);
  EXPECT_EQ(rep.optimal_cells, (std::vector<std::size_t>{0, 2}));
  ASSERT_TRUE(rep.oracle);
  EXPECT_EQ(*rep.oracle, ExtRational(2));

  CorpusOptions o;
  o.dim = 1;
  o.min_side = 10;
  o.max_side = 10;
  o.profile = Profile::sparse;
  o.allow_negative = true;
  const auto g = corpus_instance(5, 0, o);
  const auto r2 = local_L_representation(g, CellSet::all(g.geometry()), params(Rational(3, 10), 0, 1));
  EXPECT_TRUE(r2.agrees);
  EXPECT_TRUE(r2.oracle.has_value());
}

TEST(Median, PowerMeanBound) {
  const auto f = GridFunction::line({3, 1, 2});
  const auto rep = power_mean_bound_check(f, CellSet::all(f.geometry()), params(Rational(1, 2), 0, 1),
                                          {Rational(1), Rational(2), Rational(1, 2), Rational(7, 3)});
  EXPECT_TRUE(rep.ok);
  EXPECT_EQ(rep.entries[0].lhs, Real(3));
  EXPECT_EQ(rep.entries[0].rhs, Real(6));
  EXPECT_TRUE(rep.entries[0].exact);
  EXPECT_FALSE(rep.entries[2].exact);
}

TEST(Median, AgreementWithOracleAndRearrangement) {
  CorpusOptions o;
  o.dim = 2;
  o.max_side = 4;
  const std::vector<std::pair<Rational, Rational>> ag{{Rational(1, 2), 0}, {Rational(1, 5), 0}, {Rational(1, 2), 1}};
  for (std::uint64_t i = 0; i < 80; ++i) {
    o.profile = static_cast<Profile>(i % 4);
    const auto f = corpus_instance(21, i, o);
    Rng rng(i + 1000);
    const auto e = random_subset(rng, f.geometry());
    for (const auto& [alpha, gamma] : ag) {
      const auto p = params(alpha, gamma, 2);
      if (!p.admissible_for(measure(e))) continue;
      const auto a = median_set_by_definition(f, e, p);
      const auto b = median_set_by_rearrangement(f, e, p);
      const auto c = oracle::median(f, e, alpha, gamma);
      EXPECT_EQ(a, b) << i;
      EXPECT_EQ(a.lo, c.lo);
      EXPECT_EQ(a.hi, c.hi);
      EXPECT_TRUE(is_fractional_median(f, e, p, a.lo));
      EXPECT_TRUE(is_fractional_median(f, e, p, a.hi));
      EXPECT_TRUE(is_fractional_median(f, e, p, (a.lo + a.hi) / 2));
    }
  }
}

TEST(Median, MonotoneInAlpha) {
  CorpusOptions o;
  o.dim = 1;
  o.max_side = 9;
  for (std::uint64_t i = 0; i < 40; ++i) {
    const auto f = corpus_instance(3, i, o);
    const auto e = CellSet::all(f.geometry());
    const auto a = median_set_by_rearrangement(f, e, params(Rational(1, 4), 0, 1));
    const auto b = median_set_by_rearrangement(f, e, params(Rational(2, 3), 0, 1));
    EXPECT_GE(a.lo, b.lo);
    EXPECT_GE(a.hi, b.hi);
  }
}
