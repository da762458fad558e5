#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace oreherm;
using oreherm::testing::example_hermite;
using oreherm::testing::example_matrix;

namespace {

const RatFun kT = RatFun::t();
const OrePoly D = OrePoly::D();
const OrePoly T(kT);
const OrePoly One = OrePoly::one();
const OrePoly Zero;

OreMatrix mat(std::vector<std::vector<OrePoly>> rows) { return OreMatrix(rows); }
DegreeProfile profile(std::vector<Degree> d) { return DegreeProfile{std::move(d)}; }

struct Shape {
  std::size_t n;
  int d, e;
};
const Shape kShapes[] = {{1, 2, 2}, {2, 1, 1}, {2, 2, 1}, {2, 1, 2}, {3, 1, 1}};

}  // namespace

TEST(ClearDenominators, Examples) {
  const OreMatrix a = example_matrix();
  EXPECT_EQ(clear_denominators(a), a);

  EXPECT_EQ(clear_denominators(mat({{OrePoly::term(kT.inverse(), 1), One}})), mat({{D, T}}));

  const OrePoly f({(kT + RatFun(1)).inverse(), kT.inverse()});
  const OreMatrix c = clear_denominators(mat({{f, Zero}}));
  EXPECT_EQ(c(0, 0), OrePoly({kT, kT + RatFun(1)}));
  EXPECT_TRUE(c(0, 1).is_zero());
  EXPECT_EQ(row_denominator_lcms(mat({{f, Zero}}))[0], (TPoly{0, 1, 1}));
}

TEST(BuildSystem, ShapesFollowDegreeCap) {
  const OreMatrix a = mat({{D + T, One}, {T, D}});
  const EncodedSystem s = build_system(a, profile({1, 1}));
  EXPECT_EQ(s.beta, 2u);
  EXPECT_EQ(s.ahat.rows(), 6u);
  EXPECT_EQ(s.ahat.cols(), 8u);
  EXPECT_EQ(expected_ahat_shape(2, 1, 1), std::make_pair(std::size_t(6), std::size_t(8)));
  // row (j = 0, l = 1) holds D (D + t) = D^2 + t D + 1
  EXPECT_EQ(s.ahat(s.ahat_row(0, 1), s.ahat_col(0, 0)), RatFun(1));
  EXPECT_EQ(s.ahat(s.ahat_row(0, 1), s.ahat_col(0, 1)), kT);
  EXPECT_EQ(s.ahat(s.ahat_row(0, 1), s.ahat_col(0, 2)), RatFun(1));
}

TEST(BuildSystem, Layout) {
  const EncodedSystem s = build_system(example_matrix(), profile({1, 1, 2}));
  EXPECT_EQ(s.p_unknowns, 9 * (s.beta + 1));
  // lower triangle pinned to zero, monic pin on the diagonal
  for (std::size_t m = 0; m <= s.mu; ++m) EXPECT_EQ(s.g_layout[2][s.ahat_col(0, m)], long(GSlot::zero));
  EXPECT_EQ(s.g_layout[2][s.ahat_col(2, 2)], long(GSlot::one));
  EXPECT_EQ(s.g_layout[2][s.ahat_col(2, 3)], long(GSlot::zero));
  EXPECT_GE(s.g_layout[2][s.ahat_col(2, 1)], long(s.p_unknowns));
  // above the diagonal: unknown only below the degree of the diagonal beneath
  EXPECT_GE(s.g_layout[0][s.ahat_col(2, 1)], 0);
  EXPECT_EQ(s.g_layout[0][s.ahat_col(2, 2)], long(GSlot::zero));
  EXPECT_EQ(s.g_unknowns, 1u + 1u + 2u + 1u + 2u + 2u);
}

TEST(BuildSystem, Errors) {
  EXPECT_THROW(build_system(mat({{OrePoly(kT.inverse())}}), profile({0})), NotCleared);
  EXPECT_THROW(build_system(mat({{D}}), profile({0, 0})), ShapeError);
  EXPECT_THROW(build_system(mat({{D}}), profile({2})), Error);
  EXPECT_THROW(build_system(mat({{D}}), profile({-1})), Error);
}

TEST(SolveAtProfile, SingleEntry) {
  auto r = solve_at_profile(mat({{D}}), profile({1}));
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->U, mat({{One}}));
  EXPECT_EQ(r->H, mat({{D}}));
  EXPECT_FALSE(solve_at_profile(mat({{D}}), profile({0})).has_value());
}

TEST(SolveAtProfile, WorkedExampleDecodesToHermiteForm) {
  auto r = solve_at_profile(example_matrix(), profile({1, 1, 2}));
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->H, example_hermite());
}

TEST(ProbeConsistent, Examples) {
  const OreMatrix a = example_matrix();
  EXPECT_TRUE(probe_consistent(a, profile({6, 6, 6})));
  EXPECT_FALSE(probe_consistent(a, profile({0, 6, 6})));
  EXPECT_TRUE(probe_consistent(a, profile({1, 6, 6})));
  EXPECT_TRUE(probe_consistent(mat({{One, Zero}, {Zero, One}}), profile({0, 0})));
}

TEST(SearchDegrees, Examples) {
  EXPECT_EQ(search_degrees(OreMatrix::identity(3)).degs, (std::vector<Degree>{0, 0, 0}));
  EXPECT_EQ(search_degrees(mat({{OrePoly::D(2), Zero}, {Zero, D}})).degs,
            (std::vector<Degree>{2, 1}));
  LinsysStats st;
  EXPECT_EQ(search_degrees(example_matrix(), &st).degs, (std::vector<Degree>{1, 1, 2}));
  EXPECT_LE(st.probes, 12u);
  EXPECT_EQ(st.probe_budget, 12u);
  EXPECT_EQ(probe_budget(3, 2), 12u);
  EXPECT_THROW(search_degrees(mat({{D, One}, {D * D, D}})), RankDeficient);
}

TEST(HermiteViaLinsys, Examples) {
  const HermiteResult id = hermite_via_linsys(OreMatrix::identity(2));
  EXPECT_TRUE(id.U.is_identity());
  EXPECT_TRUE(id.H.is_identity());

  const OreMatrix a = example_matrix();
  LinsysStats st;
  const HermiteResult r = hermite_via_linsys(a, &st);
  EXPECT_EQ(r.H, example_hermite());
  EXPECT_EQ(print_matrix(r.H), print_matrix(hermite_elimination(a).H));
  EXPECT_EQ(r.diag_degrees.degs, (std::vector<Degree>{1, 1, 2}));
  EXPECT_LE(st.probes, 12u);

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const OreMatrix b = random_full_rank(2, 1, 1, seed);
    const HermiteResult e = hermite_elimination(b), l = hermite_via_linsys(b);
    EXPECT_EQ(l.H, e.H);
    EXPECT_EQ(l.U, e.U);
  }
}

TEST(HermiteViaLinsys, RationalInput) {
  // rows with denominators in t are cleared first; the Hermite form is unchanged
  const OreMatrix a = mat({{OrePoly({kT.inverse(), RatFun(1)}), One}, {T, OrePoly::term(kT.inverse(), 1)}});
  const HermiteResult e = hermite_elimination(a), l = hermite_via_linsys(a);
  EXPECT_EQ(l.H, e.H);
  EXPECT_EQ(l.U, e.U);
}

TEST(HermiteViaLinsys, ConcurrentProbesGiveSameResult) {
  const OreMatrix a = example_matrix();
  LinsysStats one, four;
  const HermiteResult r1 = hermite_via_linsys(a, &one, 1);
  const HermiteResult r4 = hermite_via_linsys(a, &four, 4);
  EXPECT_EQ(r1.H, r4.H);
  EXPECT_EQ(r1.U, r4.U);
  EXPECT_LE(four.probes, four.probe_budget);
}

TEST(LinsysProperty, MonotoneConsistency) {
  FixtureRng rng(307);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const std::size_t n = 2 + seed % 2;
    const OreMatrix a = random_full_rank(n, 1, 1, 800 + seed);
    const Degree cap = Degree(n) * a.deg_D();
    for (int k = 0; k < 4; ++k) {
      DegreeProfile p, q;
      for (std::size_t i = 0; i < n; ++i) {
        p.degs.push_back(Degree(rng.uniform(0, cap)));
        q.degs.push_back(Degree(rng.uniform(p.degs.back(), cap)));
      }
      if (probe_consistent(a, p)) {
        EXPECT_TRUE(probe_consistent(a, q));
      }
    }
  }
}

TEST(LinsysProperty, OracleAgreementAndCaps) {
  std::uint64_t seed = 900;
  for (const Shape& s : kShapes)
    for (int k = 0; k < 2; ++k, ++seed) {
      const OreMatrix a = random_full_rank(s.n, s.d, s.e, seed);
      LinsysStats st;
      const HermiteResult l = hermite_via_linsys(a, &st);
      const HermiteResult e = hermite_elimination(a);
      EXPECT_EQ(l.H, e.H) << seed;
      EXPECT_EQ(l.U, e.U) << seed;
      EXPECT_EQ(l.diag_degrees, e.diag_degrees) << seed;
      const Degree d = a.deg_D();
      EXPECT_LE(l.H.deg_D(), Degree(s.n) * d);
      EXPECT_LE(l.U.deg_D(), Degree(s.n - 1) * d + l.diag_degrees.max());
      EXPECT_LE(st.probes, probe_budget(s.n, std::size_t(d)));
      // every solved system has the shape n(beta+1) x n(beta+d+1)
      for (const auto& sys : st.probe_systems) {
        EXPECT_EQ(sys.equations, s.n * sys.ahat_cols);
        EXPECT_LE(sys.solution_deg_t, Degree(sys.max_row_unknowns) * sys.input_deg_t);
      }
      const auto shape = expected_ahat_shape(s.n, std::size_t(d), std::size_t(l.diag_degrees.max()));
      EXPECT_EQ(st.final_system.ahat_rows, shape.first);
      EXPECT_EQ(st.final_system.ahat_cols, shape.second);
      EXPECT_LE(st.final_system.solution_deg_t,
                Degree(st.final_system.max_row_unknowns) * st.final_system.input_deg_t);
    }
}

TEST(LinsysProperty, InvariantUnderUnimodularMultiplication) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const OreMatrix a = random_full_rank(2, 1, 1, 1100 + seed);
    const OreMatrix m = random_unimodular(2, 3, 1200 + seed);
    EXPECT_EQ(hermite_via_linsys(m * a).H, hermite_via_linsys(a).H) << seed;
  }
}

TEST(LinsysProperty, EulerDerivation) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const OreMatrix a = random_full_rank(2, 1, 1, 1300 + seed, Derivation::euler);
    const HermiteResult e = hermite_elimination(a), l = hermite_via_linsys(a);
    EXPECT_EQ(l.H, e.H);
    EXPECT_EQ(l.U, e.U);
  }
}
