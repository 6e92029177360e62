#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ricker/constant.hpp"
#include "ricker/model.hpp"
#include "ricker/orbit.hpp"

using namespace ricker;

TEST(Density, KnownValues) {
  EXPECT_DOUBLE_EQ(density(2.0, 2.0), 1.0);
  EXPECT_DOUBLE_EQ(density(0.37, 0.37), 1.0);
  // mpmath
  EXPECT_NEAR(density(3.684, 2.0), 0.18562996914105796, 1e-16);
}

TEST(Density, RejectsBadInput) {
  EXPECT_THROW(density(NAN, 1.0), Error);
  try {
    density(-1000.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
  }
}

TEST(Density, StrictlyDecreasing) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> t(0.0, 30.0);
  for (int i = 0; i < 1000; ++i) {
    double a = t(rng), b = t(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    EXPECT_GT(density(a, 2.0), density(b, 2.0));
  }
}

TEST(Params, MinimalPeriod) {
  EXPECT_EQ(ModelParams(1.0, {2.0, 2.0}).period(), 1u);
  EXPECT_EQ(ModelParams(1.0, {1.0, 2.0, 1.0, 2.0}).period(), 2u);
  EXPECT_EQ(ModelParams(1.0, {1.0, 2.0, 3.0}).period(), 3u);
  EXPECT_EQ(ModelParams(1.0, {1.0, 1.0, 2.0, 1.0, 1.0, 2.0}).period(), 3u);
  EXPECT_TRUE(ModelParams(1.0, {4.0, 4.0, 4.0}).is_constant());
  EXPECT_DOUBLE_EQ(ModelParams(1.0, {4.0, 4.0}).h(), 4.0);
}

TEST(Params, Validation) {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Overflow;  // sentinel: nothing thrown
  };
  EXPECT_EQ(code_of([] { ModelParams(0.0, {1.0}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { ModelParams(-1.0, {1.0}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { ModelParams(1.0, {-0.1}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { ModelParams(1.0, {}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { ModelParams(1.0, {INFINITY}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { ModelParams::periodic(1.0, 1.0, 2.0).h(); }), ErrorCode::InvalidArgument);
  EXPECT_NO_THROW(ModelParams(1.0, {0.0}));
}

TEST(Step, Basics) {
  const auto p = ModelParams::constant(2.0, 3.0);
  const double yb = 3.683907095534409458;
  EXPECT_NEAR(step(yb, yb, p, 0), yb, 1e-14);
  EXPECT_DOUBLE_EQ(step(1.0, 1.7, ModelParams::constant(1.7, 0.0), 0), 1.0);
  EXPECT_THROW(step(-1.0, 1.0, p, 0), Error);
  EXPECT_THROW(step(1.0, -1.0, p, 0), Error);
}

TEST(Step, FourCycleStep) {
  // attracting 4-cycle at r=3, h=(2, 6.444) in orbit order, c[0] at an even index
  const auto p = ModelParams::periodic(3.0, 2.0, 6.444);
  const double c[4] = {6.47888480057, 19.6114272422, 7.04885145401, 2.00000043039};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(step(c[i], c[(i + 3) % 4], p, i), c[(i + 1) % 4], 5e-3);
  }
}

TEST(Step, ExceedsStocking) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 20.0);
  for (int i = 0; i < 2000; ++i) {
    const auto p = ModelParams::periodic(0.1 + u(rng) / 4, u(rng) / 2, u(rng) / 2 + 0.01);
    const double x = u(rng) + 1e-6, y = u(rng);
    const std::size_t n = i % 2;
    EXPECT_GT(step(x, y, p, n), p.h(n));
  }
}

TEST(Step, MonotoneInEachArgument) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 15.0);
  for (int i = 0; i < 2000; ++i) {
    const auto p = ModelParams::constant(0.1 + u(rng) / 3, u(rng) / 3);
    double x1 = u(rng) + 1e-3, x2 = u(rng) + 1e-3, y = u(rng);
    if (x1 == x2) continue;
    if (x1 > x2) std::swap(x1, x2);
    EXPECT_LT(step(x1, y, p, 0), step(x2, y, p, 0));
    double y1 = u(rng), y2 = u(rng);
    if (y1 == y2) continue;
    if (y1 > y2) std::swap(y1, y2);
    EXPECT_GT(step(x1, y1, p, 0), step(x1, y2, p, 0));
  }
}

TEST(VectorStep, Basics) {
  const auto p = ModelParams::constant(2.0, 3.0);
  const double yb = solve_equilibrium(p).y_bar;
  const auto t = vector_step({yb, yb}, p, 0);
  EXPECT_NEAR(t.x, yb, 1e-14);
  EXPECT_EQ(t.y, yb);
  const auto z = vector_step({0.0, 5.0}, p, 0);
  EXPECT_EQ(z.x, 3.0);
  EXPECT_EQ(z.y, 0.0);
}

TEST(VectorStep, TwoCycleStates) {
  // (x_{2k}, x_{2k-1}) = (z0, z1); T0 then T1 returns there
  const auto p = ModelParams::periodic(1.0, 2.0, 1.5);
  const double z0 = 2.230153736344186055, z1 = 2.4984075953397381195;
  const auto odd = vector_step({z0, z1}, p, 0);
  EXPECT_NEAR(odd.x, z1, 1e-12);
  EXPECT_EQ(odd.y, z0);
  const auto even = vector_step(odd, p, 1);
  EXPECT_NEAR(even.x, z0, 1e-12);
  EXPECT_NEAR(even.y, z1, 1e-12);
}

TEST(Bounds, TwoStepBoundAlongOrbits) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 8.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = ModelParams::periodic(0.2 + u(rng) / 2, u(rng), u(rng) + 0.05);
    const double bound = orbit_bound(p);
    const auto xs = simulate(p, u(rng), u(rng), 2000);
    for (std::size_t k = 1; k < xs.size(); ++k) EXPECT_LE(xs[k], bound * (1 + 1e-12));
  }
}
