#include "medmax/corpus.hpp"
#include "medmax/oracle.hpp"
#include "medmax/rearrangement.hpp"

#include <gtest/gtest.h>

using namespace medmax;

namespace {

GridFunction f312() { return GridFunction::line({3, 1, 2}); }

ExtRational q(long a, long b = 1) { return Rational(a, b); }

}  // namespace

TEST(Distribution, ThreeOneTwo) {
  const auto d = distribution(f312());
  EXPECT_EQ(d.breaks(), (std::vector<Rational>{0, 1, 2, 3}));
  EXPECT_EQ(d.values(), (std::vector<ExtRational>{3, 2, 1, 0}));
  EXPECT_EQ(d(Rational(1, 2)), q(3));
  EXPECT_EQ(d(Rational(1)), q(2));
  EXPECT_EQ(d(Rational(100)), q(0));
}

TEST(Distribution, ZeroAndIndicator) {
  const auto z = distribution(GridFunction::zero(Geometry({4}, 1)));
  EXPECT_EQ(z.segments(), 1u);
  EXPECT_EQ(z(Rational(0)), q(0));

  CellSet e(Geometry({2, 3}, Rational(1, 2)));
  e.insert(0);
  e.insert(4);
  const auto d = distribution(GridFunction::indicator(e));
  EXPECT_EQ(d(Rational(0)), q(1, 2));
  EXPECT_EQ(d(Rational(99, 100)), q(1, 2));
  EXPECT_EQ(d(Rational(1)), q(0));
}

TEST(Rearrangement, SpecValues) {
  const auto f = f312();
  EXPECT_EQ(rearrange_R(f, Rational(3, 2)), q(2));
  EXPECT_EQ(rearrange_R(f, Rational(2)), q(1));
  EXPECT_EQ(rearrange_L(f, Rational(2)), q(2));
  EXPECT_EQ(rearrange_L(f, Rational(0)), ExtRational::infinity());
  EXPECT_EQ(rearrange_R(f, Rational(0)), q(3));
  EXPECT_EQ(rearrange_R(f, Rational(3)), q(0));
  EXPECT_EQ(rearrange_R2(f, Rational(3, 2)), q(2));
  EXPECT_EQ(rearrange_L2star(f, Rational(2)), q(2));
  EXPECT_EQ(rearrange_L2star(f, Rational(0)), q(3));
  EXPECT_EQ(rearrange_L2(f, Rational(0)), ExtRational::infinity());
  // Beyond the grid, A must leave it.
  EXPECT_EQ(rearrange_L2(f, Rational(4)), q(0));
}

TEST(Rearrangement, IrrationalThreshold) {
  const auto f = f312();
  const auto t = ExactScalar::power(2, Rational(1, 2));  // between 1 and 2
  EXPECT_EQ(rearrange_R(f, t), q(2));
  EXPECT_EQ(rearrange_L(f, t), q(2));
  EXPECT_EQ(rearrange_R2(f, t), q(2));
  EXPECT_EQ(rearrange_L2(f, t), q(2));
}

TEST(Rearrangement, ConstantOnSet) {
  CellSet e(Geometry({5}, 1));
  e.insert(1);
  e.insert(2);
  e.insert(4);
  const auto f = GridFunction::indicator(e).scaled(Rational(-7, 3));
  for (auto t : {Rational(1, 5), Rational(1), Rational(3)}) EXPECT_EQ(rearrange_L(f, t), q(7, 3));
  EXPECT_EQ(rearrange_L(f, Rational(7, 2)), q(0));
}

TEST(Rearrangement, ZeroFunction) {
  const auto f = GridFunction::zero(Geometry({3}, 1));
  for (auto t : {Rational(1, 2), Rational(3)}) {
    EXPECT_EQ(rearrange_R(f, t), q(0));
    EXPECT_EQ(rearrange_L(f, t), q(0));
    EXPECT_EQ(rearrange_R2(f, t), q(0));
    EXPECT_EQ(rearrange_L2(f, t), q(0));
    EXPECT_EQ(rearrange_L2star(f, t), q(0));
  }
}

TEST(Rearrangement, CurvesOfThreeOneTwo) {
  const auto r = rearrangement_curve_R(f312());
  EXPECT_EQ(r.breaks(), (std::vector<Rational>{0, 1, 2, 3}));
  EXPECT_EQ(r.values(), (std::vector<ExtRational>{3, 2, 1, 0}));
  const auto l = rearrangement_curve_L(f312());
  EXPECT_EQ(l(Rational(0)), ExtRational::infinity());
  EXPECT_EQ(l(Rational(1)), q(3));
  EXPECT_EQ(r(Rational(1)), q(2));
  EXPECT_TRUE(check_left_continuity(l).ok);
  EXPECT_TRUE(check_right_continuity(r).ok);
}

TEST(Rearrangement, Equimeasurable) {
  EXPECT_TRUE(check_equimeasurable(f312()).ok);
  CellSet e(Geometry({3, 3}, 1));
  e.insert(2);
  e.insert(3);
  EXPECT_TRUE(check_equimeasurable(GridFunction::indicator(e)).ok);
}

TEST(Oracle, RearrangementValues) {
  const auto a = oracle::rearrangements(f312(), Rational(3, 2));
  EXPECT_EQ(a.r1, q(2));
  EXPECT_EQ(a.r2, q(2));
  EXPECT_EQ(a.l1, q(2));
  EXPECT_EQ(a.l2, q(2));
  EXPECT_EQ(a.l2star, q(2));
  const auto b = oracle::rearrangements(f312(), Rational(2));
  EXPECT_EQ(b.r1, q(1));
  EXPECT_EQ(b.r2, q(1));
  EXPECT_EQ(b.l1, q(2));
  EXPECT_EQ(b.l2, q(2));
  EXPECT_EQ(b.l2star, q(2));
  const auto z = oracle::rearrangements(GridFunction::zero(Geometry({4}, 1)), Rational(1));
  EXPECT_EQ(z.r1, q(0));
  EXPECT_EQ(z.l2star, q(0));
}

TEST(Oracle, RandomAgreement) {
  CorpusOptions o;
  o.dim = 2;
  o.max_side = 4;
  o.max_cells = 12;
  o.allow_negative = true;
  for (std::uint64_t i = 0; i < 60; ++i) {
    o.profile = static_cast<Profile>(i % 4);
    const auto f = corpus_instance(11, i, o);
    const Rational total = f.geometry().total_measure();
    Rng rng(i);
    std::vector<ExactScalar> ts{ExactScalar(0), ExactScalar(f.geometry().cell_measure()),
                                ExactScalar(total), ExactScalar::power(total, Rational(1, 2)) * Rational(1, 2)};
    for (int j = 0; j < 3; ++j) ts.emplace_back(total * Rational(rng.uniform(1, 11), 12));
    for (const auto& t : ts) {
      const auto o5 = oracle::rearrangements(f, t);
      EXPECT_EQ(o5.r1, rearrange_R(f, t)) << i << " t=" << t.str();
      EXPECT_EQ(o5.r2, rearrange_R2(f, t)) << i;
      EXPECT_EQ(o5.l1, rearrange_L(f, t)) << i;
      EXPECT_EQ(o5.l2, rearrange_L2(f, t)) << i;
      EXPECT_EQ(o5.l2star, rearrange_L2star(f, t)) << i;
      if (!t.is_zero()) {
        EXPECT_EQ(o5.r1, o5.r2);
        EXPECT_LE(o5.r1, o5.l1);
        EXPECT_EQ(o5.l1, o5.l2);
        EXPECT_EQ(o5.l2, o5.l2star);
      }
    }
  }
}
