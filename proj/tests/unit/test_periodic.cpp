#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ricker/orbit.hpp"
#include "ricker/periodic.hpp"

using namespace ricker;

namespace {
ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Overflow;  // sentinel: nothing thrown
}

// mpmath, 40 digits
struct CycleRef {
  double r, h0, h1, z0, z1, tr, det;
};
constexpr CycleRef kRefs[] = {
    {1.0, 2.0, 1.5, 2.230153736344186055, 2.4984075953397381195, -1.1632481455634239439, 0.36391416795963092121},
    {1.0, 2.0, 1.0, 1.9497266070049477681, 2.4550459773112216685, -1.3144865585826271627, 0.43216927206303700018},
    {2.0, 2.156, 2.72, 3.4617233707454495493, 3.1993397158265516186, -1.7151891863305223331, 0.77386945085546932294},
    {3.0, 2.0, 6.444, 6.5612142330242758237, 4.1266348395007534897, -2.2346426052068313234, 0.24927187163478473571},
    {1.5, 0.82, 1.8, 2.5515228100689817781, 2.1508628614591809448, -1.9001374509054673524, 1.0001737974602496506},
};
}  // namespace

TEST(TwoCycle, ReferenceValues) {
  for (const auto& c : kRefs) {
    const auto rep = solve_two_cycle(ModelParams::periodic(c.r, c.h0, c.h1));
    EXPECT_NEAR(rep.z0, c.z0, 1e-10) << c.r << ' ' << c.h0 << ' ' << c.h1;
    EXPECT_NEAR(rep.z1, c.z1, 1e-10);
    EXPECT_NEAR(rep.trace, c.tr, 1e-9);
    EXPECT_NEAR(rep.det, c.det, 1e-9);
  }
}

TEST(TwoCycle, Verdicts) {
  const auto a = solve_two_cycle(ModelParams::periodic(1.0, 2.0, 1.5));
  EXPECT_EQ(a.local_verdict, LocalVerdict::LAS);
  EXPECT_NEAR(a.eigenvalues.first.real(), -0.58162407278171197194, 1e-9);
  EXPECT_NEAR(std::abs(a.eigenvalues.first.imag()), 0.16008624525687625763, 1e-9);
  EXPECT_TRUE(a.det_below_one);

  EXPECT_EQ(solve_two_cycle(ModelParams::periodic(2.0, 2.156, 2.72)).local_verdict, LocalVerdict::LAS);

  const auto c = solve_two_cycle(ModelParams::periodic(3.0, 2.0, 6.444));
  EXPECT_EQ(c.local_verdict, LocalVerdict::Unstable);
  EXPECT_FALSE(c.eigenvalues.is_complex());
  EXPECT_NEAR(c.eigenvalues.second.real(), -2.1168887198477998407, 1e-8);
  EXPECT_NEAR(c.eigenvalues.first.real(), -0.11775388535903148268, 1e-8);

  // just past the Neimark-Sacker point
  const auto d = solve_two_cycle(ModelParams::periodic(1.5, 0.82, 1.8));
  EXPECT_EQ(d.local_verdict, LocalVerdict::Unstable);
  EXPECT_TRUE(d.eigenvalues.is_complex());
}

TEST(TwoCycle, RejectsConstantStocking) {
  EXPECT_EQ(code_of([] { solve_two_cycle(ModelParams(1.0, {2.0, 2.0})); }), ErrorCode::InvalidArgument);
}

TEST(TwoCycle, InvariantsOnRandomDraws) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ur(0.05, 3.5), uh(0.0, 8.0);
  for (int i = 0; i < 1000; ++i) {
    const double r = ur(rng), h0 = uh(rng), h1 = uh(rng);
    if (h0 == h1) continue;
    const auto p = ModelParams::periodic(r, h0, h1);
    const auto rep = solve_two_cycle(p);
    const double scale = std::max(1.0, std::max(rep.z0, rep.z1));
    EXPECT_LT(std::abs(rep.residuals.first), 1e-10 * scale);
    EXPECT_LT(std::abs(rep.residuals.second), 1e-10 * scale);
    EXPECT_GT(rep.z0, h1);
    EXPECT_GT(rep.z1, h0);
    EXPECT_EQ(h0 > h1, rep.z1 > rep.z0) << r << ' ' << h0 << ' ' << h1;
    EXPECT_NEAR(rep.det, (rep.z1 - h0) * (rep.z0 - h1), 1e-12 * std::max(1.0, rep.det));
    EXPECT_GT(rep.det - rep.trace + 1.0, 0.0);
    // Det < 1 alone is not enough; with the flip condition it is
    if (rep.det < 1.0 && rep.det + rep.trace + 1.0 > 0.0) {
      EXPECT_LT(rep.eigenvalues.spectral_radius(), 1.0);
    }
  }
}

TEST(TwoCycle, DetBelowOneCanStillFlip) {
  // Det = 0.249 but one real eigenvalue is -2.117
  const auto rep = solve_two_cycle(ModelParams::periodic(3.0, 2.0, 6.444));
  EXPECT_LT(rep.det, 1.0);
  EXPECT_LT(rep.det + rep.trace + 1.0, 0.0);
  EXPECT_EQ(rep.local_verdict, LocalVerdict::Unstable);
}

TEST(TwoCycle, SwapSymmetry) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> ur(0.1, 3.0), uh(0.0, 6.0);
  for (int i = 0; i < 200; ++i) {
    const double r = ur(rng), h0 = uh(rng), h1 = uh(rng);
    if (h0 == h1) continue;
    const auto a = solve_two_cycle(ModelParams::periodic(r, h0, h1));
    const auto b = solve_two_cycle(ModelParams::periodic(r, h1, h0));
    EXPECT_NEAR(a.z0, b.z1, 1e-9 * std::max(1.0, a.z0));
    EXPECT_NEAR(a.z1, b.z0, 1e-9 * std::max(1.0, a.z1));
  }
}

TEST(Corollary, Clauses) {
  const auto p = ModelParams::periodic(1.0, 2.0, 1.5);
  const auto fired = corollary_shortcuts(solve_two_cycle(p), p);
  EXPECT_EQ(fired, (std::vector{CorollaryClause::SmallGrowthDetBelowOne, CorollaryClause::BelowShiftedStockingLAS}));

  const auto q = ModelParams::periodic(3.0, 2.0, 6.444);
  EXPECT_TRUE(corollary_shortcuts(solve_two_cycle(q), q).empty());

  const auto s = ModelParams::periodic(0.5, 1.0, 2.0);
  const auto f = corollary_shortcuts(solve_two_cycle(s), s);
  EXPECT_NE(std::find(f.begin(), f.end(), CorollaryClause::SmallGrowthDetBelowOne), f.end());

  // a doctored report that contradicts the clause
  auto bad = solve_two_cycle(p);
  bad.local_verdict = LocalVerdict::Unstable;
  EXPECT_EQ(code_of([&] { corollary_shortcuts(bad, p); }), ErrorCode::ContradictionDetected);
}

TEST(Corollary, ConsistentOnRandomDraws) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> ur(0.05, 3.5), uh(0.0, 8.0);
  for (int i = 0; i < 500; ++i) {
    const double r = ur(rng), h0 = uh(rng), h1 = uh(rng);
    if (h0 == h1) continue;
    const auto p = ModelParams::periodic(r, h0, h1);
    EXPECT_NO_THROW(corollary_shortcuts(solve_two_cycle(p), p));
  }
}

TEST(ArtificialCycles, NoneWhenUnique) {
  const auto set = find_artificial_cycles(ModelParams::periodic(1.0, 2.0, 1.5));
  EXPECT_EQ(set.count(), 0u);
  ASSERT_TRUE(set.two_cycle.has_value());
  EXPECT_NEAR(set.two_cycle->x, 2.230153736344186055, 1e-9);
  EXPECT_EQ(set.resolution, 1024);
}

TEST(ArtificialCycles, TwoCyclesAtUnitGrowth) {
  const auto p = ModelParams::periodic(1.0, 2.0, 1.0);
  const auto set = find_artificial_cycles(p);
  ASSERT_EQ(set.count(), 2u);
  const QuadPoint want[2] = {
      {1.1087550341333049871, 3.3062780550091576646, 3.9655664742232152614, 2.1104667995192875103},
      {3.9655664742232152614, 2.1104667995192875103, 1.1087550341333049871, 3.3062780550091576646}};
  for (int i = 0; i < 2; ++i) {
    EXPECT_LT(sup_distance(set.cycles[i].point, want[i]), 1e-9);
    EXPECT_EQ(set.cycles[i].kind, G10Class::ArtificialCycles);
    const auto res = artificial_residual(p, {set.cycles[i].point.x, set.cycles[i].point.y});
    EXPECT_LT(std::max(std::abs(res.x), std::abs(res.y)), 1e-9);
  }
  ASSERT_TRUE(set.two_cycle.has_value());
  EXPECT_NEAR(set.two_cycle->x, 1.9497266070049477681, 1e-9);
}

TEST(ArtificialCycles, SwapTransposesQuadruples) {
  const auto a = find_artificial_cycles(ModelParams::periodic(1.0, 2.0, 1.0), 512);
  const auto b = find_artificial_cycles(ModelParams::periodic(1.0, 1.0, 2.0), 512);
  ASSERT_EQ(a.count(), b.count());
  for (const auto& c : a.cycles) {
    const QuadPoint t{c.point.v, c.point.u, c.point.y, c.point.x};
    const bool found = std::any_of(b.cycles.begin(), b.cycles.end(),
                                   [&](const ArtificialCycle& d) { return sup_distance(d.point, t) < 1e-9; });
    EXPECT_TRUE(found);
  }
}

TEST(ArtificialCycles, Validation) {
  EXPECT_EQ(code_of([] { find_artificial_cycles(ModelParams(1.0, {2.0, 2.0})); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { find_artificial_cycles(ModelParams::periodic(1.0, 2.0, 1.0), 4); }),
            ErrorCode::InvalidArgument);
}

TEST(GMaps, Values) {
  const auto p = ModelParams::periodic(1.0, 2.0, 1.5);
  const auto [g1, g2] = g_maps(2.0, p);
  EXPECT_NEAR(g1, 3.1639534137386528488, 1e-14);
  EXPECT_NEAR(g2, 2.5856945923638200229, 1e-14);
  const auto [a1, a2] = g_maps(3.0, p);
  EXPECT_GT(g1, a1);
  EXPECT_GT(g2, a2);
  const auto [l1, l2] = g_maps(60.0, p);
  EXPECT_NEAR(l1, 2.0, 1e-12);
  EXPECT_NEAR(l2, 1.5, 1e-12);
  EXPECT_EQ(code_of([&] { g_maps(1.0, p); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { g_maps(0.5, p); }), ErrorCode::InvalidArgument);
}

TEST(CertifyPeriodic, GloballyStable) {
  const auto p = ModelParams::periodic(1.0, 2.0, 1.5);
  const auto v = certify_periodic(p);
  EXPECT_EQ(v.tag, VerdictTag::GloballyStable);
  EXPECT_EQ(v.local, LocalVerdict::LAS);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_TRUE(periodic_witness_holds(p, v.witness->a, v.witness->b));
  EXPECT_TRUE(v.witness->contains({2.230153736344186055, 2.4984075953397381195}));
}

TEST(CertifyPeriodic, WitnessForBothOrderings) {
  for (auto [h0, h1] : {std::pair{3.0, 2.0}, {2.0, 3.0}, {1.6, 5.0}, {5.0, 1.6}}) {
    const auto p = ModelParams::periodic(1.2, h0, h1);
    const auto box = periodic_witness(p);
    EXPECT_TRUE(periodic_witness_holds(p, box.a, box.b)) << h0 << ' ' << h1;
    const auto G10 = compose(build_G(p.map(1)), build_G(p.map(0)));
    EXPECT_TRUE(is_compatible(G10, box));
  }
  EXPECT_EQ(code_of([] { periodic_witness(ModelParams::periodic(1.0, 2.0, 1.0)); }),
            ErrorCode::WitnessConstructionFailed);
}

TEST(CertifyPeriodic, NotApplicableBelowGrowthRate) {
  const auto v = certify_periodic(ModelParams::periodic(1.0, 2.0, 1.0));
  EXPECT_EQ(v.tag, VerdictTag::NotApplicable);
  EXPECT_EQ(v.local, LocalVerdict::LAS);
  ASSERT_TRUE(v.even_range && v.odd_range);
  EXPECT_NEAR(v.even_range->lo, 1.1087550341333049871, 1e-9);
  EXPECT_NEAR(v.even_range->hi, 3.9655664742232152614, 1e-9);
  EXPECT_NEAR(v.odd_range->lo, 2.1104667995192875103, 1e-9);
  EXPECT_NEAR(v.odd_range->hi, 3.3062780550091576646, 1e-9);

  const auto w = certify_periodic(ModelParams::periodic(1.5, 0.82, 1.8));
  EXPECT_EQ(w.tag, VerdictTag::NotApplicable);
  EXPECT_EQ(w.local, LocalVerdict::Unstable);
}

TEST(CertifyPeriodic, GloballyStableOrbitsConverge) {
  const auto p = ModelParams::periodic(1.0, 2.0, 1.5);
  ASSERT_EQ(certify_periodic(p).tag, VerdictTag::GloballyStable);
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int k = 0; k < 100; ++k) {
    const auto xs = simulate(p, u(rng), u(rng), 4000);  // xs[k] = x_{k+1}
    EXPECT_NEAR(xs[3998], 2.4984075953397381195, 1e-6);  // x_3999
    EXPECT_NEAR(xs[3999], 2.230153736344186055, 1e-6);   // x_4000
  }
}

TEST(CertifyPeriodic, AbsorbingRangesContainOrbitTails) {
  const auto p = ModelParams::periodic(1.0, 2.0, 1.0);
  const auto v = certify_periodic(p);
  ASSERT_TRUE(v.even_range && v.odd_range);
  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int k = 0; k < 100; ++k) {
    const auto xs = simulate(p, u(rng), u(rng), 3000);
    for (std::size_t i = 2000; i < xs.size(); ++i) {
      const std::size_t n = i + 1;
      EXPECT_TRUE((n % 2 == 0 ? *v.even_range : *v.odd_range).contains(xs[i], 1e-6));
    }
  }
}

TEST(CertifyPeriodic, EvenOddSubsequencesMonotoneInsideCertifiedBox) {
  // G10 corner orbits from the witness box squeeze the even states
  const auto p = ModelParams::periodic(1.2, 3.0, 2.0);
  const auto v = certify_periodic(p, {512, false});
  ASSERT_EQ(v.tag, VerdictTag::GloballyStable);
  const auto G10 = compose(build_G(p.map(1)), build_G(p.map(0)));
  CornerOptions opts;
  opts.monotonicity_samples = 2000;
  const auto enc = corner_iterate(G10, *v.witness, opts);
  EXPECT_TRUE(enc.collapsed(1e-8));
  const auto tc = solve_two_cycle(p);
  EXPECT_NEAR(enc.lower.x, tc.z0, 1e-8);
  EXPECT_NEAR(enc.lower.y, tc.z1, 1e-8);
}
