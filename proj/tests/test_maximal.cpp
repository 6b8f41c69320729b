#include "medmax/corpus.hpp"
#include "medmax/maximal.hpp"
#include "medmax/oracle.hpp"

#include <gtest/gtest.h>

using namespace medmax;

namespace {

FractionalParams params(Rational alpha, Rational gamma, std::size_t n) { return {alpha, gamma, n}; }

std::vector<std::string> strs(const MaximalField& m) {
  std::vector<std::string> out;
  for (const auto& v : m.values) out.push_back(v.str());
  return out;
}

std::vector<std::string> strs(const std::vector<ExactScalar>& m) {
  std::vector<std::string> out;
  for (const auto& v : m) out.push_back(v.str());
  return out;
}

oracle::Which which(MaximalOp op) {
  return op == MaximalOp::R ? oracle::Which::R : op == MaximalOp::L ? oracle::Which::L : oracle::Which::M;
}

}  // namespace

TEST(FractionalMaximal, SingleCell) {
  const Geometry g({3, 3}, 1);
  CellSet s(g);
  s.insert(4);
  const auto fam = CubeFamily::whole_grid(g);
  const auto m = fractional_maximal_M(GridFunction::indicator(s), fam, 0);
  EXPECT_EQ(m[4], ExactScalar(1));
  EXPECT_EQ(m[1], ExactScalar(Rational(1, 4)));
  EXPECT_EQ(m[0], ExactScalar(Rational(1, 4)));
}

TEST(FractionalMaximal, BlockWithGammaOne) {
  const Geometry g({4, 4}, 1);
  CellSet s(g);
  for (auto i : {5, 6, 9, 10}) s.insert(static_cast<std::size_t>(i));
  const auto fam = CubeFamily::whole_grid(g);
  const auto m = fractional_maximal_M(GridFunction::indicator(s), fam, 1);
  EXPECT_EQ(m[5], ExactScalar(2));
  EXPECT_EQ(m[10], ExactScalar(2));
  EXPECT_EQ(strs(m), strs(indicator_maximal(s, fam, 1, Kernel::fast)));
}

TEST(FractionalMaximal, ConstantGammaZero) {
  const Geometry g({3, 4}, Rational(1, 2));
  const auto f = GridFunction::indicator(CellSet::all(g)).scaled(Rational(5, 3));
  const auto m = fractional_maximal_M(f, CubeFamily::whole_grid(g), 0);
  for (const auto& v : m.values) EXPECT_EQ(v, ExactScalar(Rational(5, 3)));
}

TEST(RearrangementMaximal, ThreeOneTwo) {
  const auto f = GridFunction::line({3, 1, 2});
  const auto fam = CubeFamily::whole_grid(f.geometry());
  const auto p = params(Rational(1, 2), 0, 1);
  EXPECT_EQ(strs(maximal_R(f, fam, p)), (std::vector<std::string>{"3", "2", "2"}));
  EXPECT_EQ(strs(maximal_L(f, fam, p)), (std::vector<std::string>{"3", "3", "2"}));
  EXPECT_EQ(strs(fast_maximal(f, fam, p, MaximalOp::R)), (std::vector<std::string>{"3", "2", "2"}));
  EXPECT_EQ(strs(fast_maximal(f, fam, p, MaximalOp::L)), (std::vector<std::string>{"3", "3", "2"}));
}

TEST(RearrangementMaximal, Constant) {
  const Geometry g({4, 3}, 1);
  const auto f = GridFunction::indicator(CellSet::all(g)).scaled(7);
  const auto fam = CubeFamily::whole_grid(g);
  for (auto alpha : {Rational(1, 10), Rational(1, 2), Rational(99, 100)}) {
    const auto p = params(alpha, 0, 2);
    for (const auto& v : maximal_R(f, fam, p).values) EXPECT_EQ(v, ExactScalar(7));
    for (const auto& v : maximal_L(f, fam, p).values) EXPECT_EQ(v, ExactScalar(7));
  }
}

TEST(RearrangementMaximal, VanishesAboveLargestCube) {
  // Largest cube 3x3, |Q|^(1/2 / 2) = 9^(1/4) = 3^(1/2).
  const Geometry g({3, 5}, 1);
  std::vector<Rational> v(15);
  for (std::size_t i = 0; i < 15; ++i) v[i] = Rational(static_cast<long>(i % 4 + 1), 2);
  const GridFunction f(g, v);
  const auto fam = CubeFamily::whole_grid(g);
  const auto p = params(Rational(7, 4), Rational(1, 2), 2);
  for (const auto& x : maximal_R(f, fam, p).values) EXPECT_TRUE(x.is_zero());
  for (const auto& x : maximal_L(f, fam, p).values) EXPECT_TRUE(x.is_zero());
}

TEST(RearrangementMaximal, BoundaryCubesAreExcluded) {
  // gamma = 0, alpha = 1 = |Q|^0 for every cube, so no cube qualifies.  Were
  // the boundary cubes kept, L at t = |Q| would return the cube minimum.
  const auto f = GridFunction::line({3, 1, 2});
  const auto fam = CubeFamily::whole_grid(f.geometry());
  const auto p = params(1, 0, 1);
  EXPECT_EQ(strs(maximal_R(f, fam, p)), (std::vector<std::string>{"0", "0", "0"}));
  EXPECT_EQ(strs(maximal_L(f, fam, p)), (std::vector<std::string>{"0", "0", "0"}));
  EXPECT_EQ(rearrange_L(f, ExactScalar(3)), ExtRational(1));
  const auto orc = oracle::maximal(f, fam, 1, 0, oracle::Which::L);
  for (const auto& x : orc) EXPECT_TRUE(x.is_zero());
}

TEST(RearrangementMaximal, PointwiseBelowField) {
  CorpusOptions o;
  o.dim = 2;
  o.max_side = 6;
  o.allow_negative = true;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto f = corpus_instance(8, i, o);
    const auto fam = CubeFamily::whole_grid(f.geometry());
    const auto mr = maximal_R(f, fam, params(Rational(2, 3), 0, 2));
    for (std::size_t c = 0; c < f.size(); ++c)
      EXPECT_LE(ExactScalar(Rational(boost::multiprecision::abs(f[c]))), mr[c]);
  }
}

TEST(RearrangementMaximal, MonotoneInAlpha) {
  CorpusOptions o;
  o.dim = 2;
  o.max_side = 6;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto f = corpus_instance(9, i, o);
    const auto fam = CubeFamily::whole_grid(f.geometry());
    for (auto op : {MaximalOp::R, MaximalOp::L}) {
      const auto a = naive_maximal(f, fam, params(Rational(1, 3), Rational(1, 2), 2), op);
      const auto b = naive_maximal(f, fam, params(Rational(1, 2), Rational(1, 2), 2), op);
      for (std::size_t c = 0; c < f.size(); ++c) EXPECT_GE(a[c], b[c]);
    }
  }
}

TEST(Kernels, AgreeWithOracle) {
  const std::vector<FractionalParams> ps{params(Rational(1, 2), 0, 2), params(Rational(1, 3), 1, 2),
                                         params(Rational(3, 2), Rational(1, 2), 2), params(1, 0, 2)};
  for (std::uint64_t i = 0; i < 24; ++i) {
    CorpusOptions o;
    o.dim = 1 + i % 2;
    o.max_side = o.dim == 1 ? 16 : 16;
    o.min_side = 2;
    o.profile = static_cast<Profile>(i % 4);
    o.allow_negative = i % 3 == 0;
    const auto f = corpus_instance(13, i, o);
    Rng rng(i);
    const CubeFamily fam = i % 5 == 4 ? CubeFamily(random_subset(rng, f.geometry()))
                                      : CubeFamily::whole_grid(f.geometry());
    for (auto p : ps) {
      p.n = o.dim;
      if (p.gamma >= Rational(p.n)) continue;
      for (auto op : {MaximalOp::R, MaximalOp::L, MaximalOp::M}) {
        const auto naive = naive_maximal(f, fam, p, op);
        const auto fast = fast_maximal(f, fam, p, op);
        const auto orc = oracle::maximal(f, fam, p.alpha, p.gamma, which(op));
        EXPECT_TRUE(bit_identical(naive, fast)) << i << " " << to_string(op);
        EXPECT_EQ(strs(naive), strs(orc)) << i << " " << to_string(op);
      }
    }
  }
}

TEST(LevelSets, IdentityAndInclusion) {
  for (std::uint64_t i = 0; i < 16; ++i) {
    CorpusOptions o;
    o.dim = 2;
    o.max_side = 8;
    o.profile = static_cast<Profile>(i % 4);
    const auto f = corpus_instance(17, i, o);
    const auto fam = CubeFamily::whole_grid(f.geometry());
    for (const auto& p : {params(Rational(1, 2), 0, 2), params(Rational(1, 4), 1, 2)}) {
      const auto mr = maximal_R(f, fam, p);
      const auto ml = maximal_L(f, fam, p);
      std::vector<Rational> levels{0};
      for (const auto& v : f.values()) levels.push_back(boost::multiprecision::abs(v));
      for (const auto& l : levels) {
        EXPECT_TRUE(level_set_identity_check(f, fam, p, l, &mr).ok) << i;
        const auto inc = level_set_inclusion_check(f, fam, p, l, {p.alpha / 1000, p.alpha / 2}, &ml);
        EXPECT_TRUE(inc.ok) << i;
        EXPECT_TRUE(inc.eps.back().small_enough);
      }
    }
  }
}

TEST(LevelSets, IndicatorAtAttainedAverage) {
  // alpha equal to an attained average: the 2x2 cube over one cell of E.
  const Geometry g({4, 4}, 1);
  CellSet e(g);
  e.insert(0);
  e.insert(5);
  e.insert(15);
  const auto f = GridFunction::indicator(e);
  const auto fam = CubeFamily::whole_grid(g);
  const auto p = params(Rational(1, 4), 0, 2);
  EXPECT_TRUE(level_set_identity_check(f, fam, p, Rational(1, 2)).ok);
  const auto inc = level_set_inclusion_check(f, fam, p, Rational(1, 2), {Rational(1, 100)});
  EXPECT_TRUE(inc.ok);
  EXPECT_TRUE(inc.eps.back().small_enough);
  EXPECT_FALSE(level_set_identity_check(GridFunction::zero(g), fam, p, 1).lhs.count());
}

TEST(Chains, PointwiseAndLayerCake) {
  const auto f = GridFunction::line({3, 1, 2});
  const auto fam = CubeFamily::whole_grid(f.geometry());
  EXPECT_TRUE(pointwise_chain_check(f, fam, params(Rational(1, 2), 0, 1), {Rational(1)}).ok);
  const auto lc = layer_cake_identity_check(f, fam, 0);
  EXPECT_TRUE(lc.ok);
  EXPECT_EQ(lc.cubes_checked, 6u);
  for (std::uint64_t i = 0; i < 10; ++i) {
    CorpusOptions o;
    o.dim = 2;
    o.max_side = 6;
    o.allow_negative = true;
    const auto g = corpus_instance(19, i, o);
    const auto gf = CubeFamily::whole_grid(g.geometry());
    EXPECT_TRUE(pointwise_chain_check(g, gf, params(Rational(1, 2), Rational(1, 2), 2),
                                      {Rational(1), Rational(2), Rational(3, 2)})
                    .ok);
    EXPECT_TRUE(layer_cake_identity_check(g, gf, Rational(1, 3)).ok);
  }
}

TEST(Chains, DistributionBound) {
  for (std::uint64_t i = 0; i < 3; ++i) {
    CorpusOptions o;
    o.dim = 2;
    o.max_side = 10;
    const auto f = corpus_instance(23, i, o);
    const auto fam = CubeFamily::whole_grid(f.geometry());
    const auto p = params(Rational(1, 2), Rational(1, 2), 2);
    for (const auto& v : f.values()) EXPECT_TRUE(distribution_bound_check(f, fam, p, 2, v).ok);
  }
  const auto f = GridFunction::line({1});
  EXPECT_THROW(distribution_bound_check(f, CubeFamily::whole_grid(f.geometry()), params(Rational(1, 2), Rational(1, 2), 1), 2, 0), Error);
}
