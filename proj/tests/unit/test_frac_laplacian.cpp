// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fks/error.hpp"
#include "fks/frac_laplacian.hpp"
#include "fks/rng.hpp"

using namespace fks;
using std::numbers::pi;

namespace {

// Oracles below were evaluated with mpmath at 40 digits.
constexpr double kC15 = 0.1711671296905523429252020719937325708423;
constexpr double kC001 = 0.001593395448625832374998553937483342168126;
constexpr double kC199 = 0.006295392956093523678819684592300930656364;

struct PlaneWave {
  Vec2 r;
  double operator()(const Vec2& x) const { return std::cos(dot(r, x)); }
};

double plane_wave_apply(double a, double k, const Vec2& x, double outer) {
  const Vec2 r{k, 0.0};
  auto f = [r](const Vec2& y) { return std::cos(dot(r, y)); };
  auto g = [r](const Vec2& y) { return -std::sin(dot(r, y)) * r; };
  auto q = PvQuadratureParams::defaults_for(x);
  q.outer_radius = outer;
  return apply_pv(f, g, x, a, q);
}

}  // namespace

TEST(CNorm, KnownValues) {
  EXPECT_NEAR(c_norm(1.0), 1.0 / (2.0 * pi), 1e-15);
  EXPECT_NEAR(c_norm(1.5), kC15, 1e-15);
  EXPECT_NEAR(c_norm(0.01), kC001, 1e-16);
  EXPECT_NEAR(c_norm(1.99), kC199, 1e-15);
  EXPECT_LT(c_norm(0.01), 0.05);
  EXPECT_LT(c_norm(1.99), 0.05);
}

TEST(CNorm, Endpoints) {
  EXPECT_THROW(c_norm(0.0), DomainError);
  EXPECT_THROW(c_norm(2.0), DomainError);
  EXPECT_THROW(c_norm_sine_form(-0.1), DomainError);
}

TEST(CNorm, ClosedFormsAgree) {
  for (int i = 0; i < 50; ++i) {
    const double a = 0.05 + 1.9 * i / 49.0;
    const double c1 = c_norm(a), c2 = c_norm_sine_form(a);
    EXPECT_LE(std::abs(c1 - c2), 1e-12 * std::abs(c1)) << "a=" << a;
  }
}

TEST(PvQuadrature, Validation) {
  PvQuadratureParams q;
  q.inner_radius = 2e3;
  EXPECT_THROW(q.validate(1.5), DomainError);
  q = {};
  q.radial_nodes = 16;
  EXPECT_THROW(q.validate(1.5), DomainError);
  q = {};
  q.angular_nodes = 8;
  EXPECT_THROW(q.validate(1.5), DomainError);
  q = {};
  q.growth_exponent = 1.5;
  EXPECT_THROW(q.validate(1.5), DomainError);
}

TEST(PvQuadrature, DefaultsFollowPoint) {
  EXPECT_EQ(PvQuadratureParams::defaults_for({0.0, 0.0}).inner_radius, 1.0);
  EXPECT_EQ(PvQuadratureParams::defaults_for({0.6, 0.8}).inner_radius, 0.5);
  EXPECT_EQ(PvQuadratureParams::defaults_for({10.0, 0.0}).inner_radius, 1.0);
  EXPECT_EQ(PvQuadratureParams::defaults_for({0.6, 0.8}).outer_radius, 1e3);
  EXPECT_EQ(PvQuadratureParams::defaults_for({10.0, 0.0}).outer_radius, 1e4);
}

TEST(ApplyPv, ConstantIsExactlyZero) {
  auto f = [](const Vec2&) { return 1.0; };
  auto g = [](const Vec2&) { return Vec2{}; };
  EXPECT_EQ(apply_pv(f, g, {0.3, -0.2}, 1.5, PvQuadratureParams::defaults_for({0.3, -0.2})), 0.0);
}

TEST(ApplyPv, PlaneWaveAtOrigin) {
  EXPECT_NEAR(plane_wave_apply(1.5, 1.0, {0.0, 0.0}, 1e3), -1.0, 1e-3);
}

TEST(ApplyPv, PlaneWaveSymbol) {
  for (double a : {1.2, 1.5, 1.8})
    for (double k : {0.5, 1.0, 2.0}) {
      const double got = plane_wave_apply(a, k, {0.0, 0.0}, 1e4);
      const double want = -std::pow(k, a);
      EXPECT_LE(std::abs(got - want), 1e-3 * std::abs(want)) << "a=" << a << " k=" << k;
    }
}

TEST(ApplyPv, PlaneWaveAwayFromOrigin) {
  const Vec2 x{0.4, -1.1};
  const double got = plane_wave_apply(1.5, 1.0, x, 1e3);
  EXPECT_NEAR(got, -std::cos(x.x), 1e-3);
}

TEST(ApplyPv, TailCheckFiresWhenTruncationTooShort) {
  // At a = 1.2 the far field of a plane wave decays slowly; a short outer radius
  // leaves an error estimate above the 1e-6 relative budget.
  auto f = [](const Vec2& y) { return std::cos(y.x); };
  auto g = [](const Vec2& y) { return Vec2{-std::sin(y.x), 0.0}; };
  PvQuadratureParams q;
  q.outer_radius = 5.0;
  EXPECT_THROW(apply_pv(f, g, {0.0, 0.0}, 1.2, q), AccuracyError);
}

TEST(ApplyPv, PowerLawMatchesClosedForm) {
  const double a = 1.5, eps = 0.5;
  const Vec2 x{1.0, 0.0};
  auto f = [eps](const Vec2& y) { return std::pow(norm2(y), 0.5 * eps); };
  auto g = [eps](const Vec2& y) { return eps * std::pow(norm2(y), 0.5 * eps - 1.0) * y; };
  auto q = PvQuadratureParams::defaults_for(x);
  q.growth_exponent = eps;
  const double exact = exact_power_law(a, eps, x);
  EXPECT_LE(std::abs(apply_pv(f, g, x, a, q) - exact), 1e-3 * std::abs(exact));
}

TEST(ApplyPv, Linearity) {
  const Vec2 x{0.2, 0.3};
  const auto q = PvQuadratureParams::defaults_for(x);
  auto f1 = [](const Vec2& y) { return std::cos(y.x + 0.5 * y.y); };
  auto g1 = [](const Vec2& y) { return -std::sin(y.x + 0.5 * y.y) * Vec2{1.0, 0.5}; };
  auto f2 = [](const Vec2& y) { return std::exp(-norm2(y)); };
  auto g2 = [](const Vec2& y) { return -2.0 * std::exp(-norm2(y)) * y; };
  auto fs = [&](const Vec2& y) { return 2.0 * f1(y) - 3.0 * f2(y); };
  auto gs = [&](const Vec2& y) { return 2.0 * g1(y) - 3.0 * g2(y); };
  const double lhs = apply_pv(fs, gs, x, 1.5, q);
  const double rhs = 2.0 * apply_pv(f1, g1, x, 1.5, q) - 3.0 * apply_pv(f2, g2, x, 1.5, q);
  EXPECT_NEAR(lhs, rhs, 1e-9 * (1.0 + std::abs(rhs)));
}

TEST(ApplyPv, TranslationCovariance) {
  const Vec2 x{0.2, 0.3}, y{1.5, -0.7};
  const auto q = PvQuadratureParams::defaults_for(x);
  auto f = [](const Vec2& z) { return std::exp(-norm2(z)); };
  auto g = [](const Vec2& z) { return -2.0 * std::exp(-norm2(z)) * z; };
  auto fy = [&](const Vec2& z) { return f(z - y); };
  auto gy = [&](const Vec2& z) { return g(z - y); };
  EXPECT_NEAR(apply_pv(fy, gy, x + y, 1.5, q), apply_pv(f, g, x, 1.5, q), 1e-10);
}

TEST(ApplyPv, GaussianBumpAgainstRadialOracle) {
  // -(-Delta)^{a/2} exp(-|x|^2) at 0 = -(1/(4 pi)) int |k|^a exp(-|k|^2/4) dk = -2^a Gamma(1 + a/2).
  const double a = 1.5;
  auto f = [](const Vec2& z) { return std::exp(-norm2(z)); };
  auto g = [](const Vec2& z) { return -2.0 * std::exp(-norm2(z)) * z; };
  const double want = -std::pow(2.0, a) * std::tgamma(1.0 + 0.5 * a);
  EXPECT_NEAR(apply_pv(f, g, {0.0, 0.0}, a, PvQuadratureParams::defaults_for({0.0, 0.0})), want,
              1e-4 * std::abs(want));
}

TEST(ExactPowerLaw, GoldenValues) {
  EXPECT_NEAR(exact_power_law(1.5, 0.5, {1.0, 0.0}), 0.5230248100265508244760810642115604445127, 1e-13);
  EXPECT_NEAR(exact_power_law(1.2, 0.3, {0.0, 1.0}), 0.3519773528328921721369979783335612837488, 1e-13);
  EXPECT_NEAR(exact_power_law(1.8, 1.2, {0.6, 0.8}), 1.939636270627771992738389548045312318002, 1e-12);
}

TEST(ExactPowerLaw, Homogeneity) {
  const double a = 1.5, eps = 0.5;
  EXPECT_NEAR(exact_power_law(a, eps, {2.0, 0.0}), std::pow(2.0, eps - a) * exact_power_law(a, eps, {1.0, 0.0}),
              1e-15);
  const Vec2 x{0.3, -0.4};
  const double lam = 7.0;
  EXPECT_NEAR(exact_power_law(a, eps, lam * x), std::pow(lam, eps - a) * exact_power_law(a, eps, x), 1e-14);
}

TEST(ExactPowerLaw, PositivePrefactorSweep) {
  int count = 0;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const double a = 0.1 + 1.85 * i / 9.0;
      const double eps = a * (0.05 + 0.9 * j / 9.0);
      EXPECT_GT(exact_power_law(a, eps, {1.0, 0.0}), 0.0) << a << " " << eps;
      ++count;
    }
  EXPECT_EQ(count, 100);
}

TEST(ExactPowerLaw, DomainErrors) {
  EXPECT_THROW(exact_power_law(1.5, 1.5, {1.0, 0.0}), DomainError);
  EXPECT_THROW(exact_power_law(1.5, 0.5, {0.0, 0.0}), DomainError);
  EXPECT_THROW(exact_power_law(2.0, 0.5, {1.0, 0.0}), DomainError);
}

TEST(LowerBound, ConstantByArithmetic) {
  EXPECT_NEAR(frlap_constant(0.5, 1.5), 1.5 / (std::sqrt(3.5) * 1.5 * 0.5) + 1.0 / (1.5 * 0.5), 1e-15);
  EXPECT_NEAR(frlap_constant(0.5, 1.5), 2.402378300983030872071547256852347419549, 1e-14);
}

TEST(LowerBound, HoldsAtUnitPoint) {
  const auto r = smoothed_power_lower_bound(1.5, 0.5, 0.1, {1.0, 0.0});
  EXPECT_GE(r.lhs, r.rhs - 1e-6 * std::abs(r.lhs));
}

TEST(LowerBound, HoldsFarOut) {
  const auto r = smoothed_power_lower_bound(1.5, 0.5, 0.1, {1e3, 0.0});
  EXPECT_LT(std::abs(r.lhs), 1e-2);
  EXPECT_LT(std::abs(r.rhs), 1e-2);
  EXPECT_GE(r.lhs, r.rhs - 1e-6 * std::abs(r.lhs));
}

TEST(LowerBound, DomainErrors) {
  EXPECT_THROW(smoothed_power_lower_bound(0.9, 0.5, 0.1, {1.0, 0.0}), DomainError);
  EXPECT_THROW(smoothed_power_lower_bound(1.5, 1.0, 0.1, {1.0, 0.0}), DomainError);
  EXPECT_THROW(smoothed_power_lower_bound(1.5, 0.5, 0.0, {1.0, 0.0}), DomainError);
  EXPECT_THROW(smoothed_power_lower_bound(1.5, 0.5, 0.1, {0.0, 0.0}), DomainError);
}

TEST(MomentSymbol, PositiveAtMinimum) {
  for (double eps : {0.3, 0.8, 1.2}) {
    const auto r = moment_symbol_bound(1.5, eps, {0.0, 0.0});
    EXPECT_TRUE(std::isfinite(r.lhs));
    EXPECT_GT(r.lhs, 0.0) << eps;
  }
}

TEST(MomentSymbol, BoundedRatioAndDecay) {
  double sup = 0.0;
  for (double s : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0, 100.0, 300.0, 1000.0}) {
    const auto r = moment_symbol_bound(1.5, 1.2, {s, 0.0});
    sup = std::max(sup, std::abs(r.lhs) / r.rhs_shape);
  }
  EXPECT_TRUE(std::isfinite(sup));
  EXPECT_LT(sup, 10.0);
  const double l2 = moment_symbol_bound(1.5, 1.2, {100.0, 0.0}).lhs;
  const double l3 = moment_symbol_bound(1.5, 1.2, {1000.0, 0.0}).lhs;
  EXPECT_LT(std::abs(l3), std::abs(l2));
}
