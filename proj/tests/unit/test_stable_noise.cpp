// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fks/error.hpp"
#include "fks/stable_noise.hpp"
#include "fks/stats.hpp"

using namespace fks;

namespace {

std::vector<double> subordinator_draws(double a_half, double t, std::size_t n, std::uint64_t seed) {
  RngStream rng(seed, 0);
  std::vector<double> s(n);
  for (double& v : s) v = sample_subordinator(a_half, t, rng);
  return s;
}

std::vector<double> radii(const std::vector<Vec2>& z, double scale = 1.0) {
  std::vector<double> r;
  r.reserve(z.size());
  for (const Vec2& p : z) r.push_back(scale * norm(p));
  return r;
}

}  // namespace

TEST(StableParams, Validation) {
  EXPECT_THROW((StableParams{0.0, 1.0}).validate(), DomainError);
  EXPECT_THROW((StableParams{2.1, 1.0}).validate(), DomainError);
  EXPECT_THROW((StableParams{1.5, 0.0}).validate(), DomainError);
  EXPECT_NO_THROW((StableParams{2.0, 1.0}).validate());
}

TEST(Subordinator, DomainErrors) {
  RngStream rng(1, 0);
  EXPECT_THROW(sample_subordinator(0.0, 1.0, rng), DomainError);
  EXPECT_THROW(sample_subordinator(1.0, 1.0, rng), DomainError);
  EXPECT_THROW(sample_subordinator(0.5, -1.0, rng), DomainError);
}

TEST(Subordinator, LaplaceTransformHalf) {
  const auto s = subordinator_draws(0.5, 1.0, 1000000, 17);
  std::vector<double> e(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) e[i] = std::exp(-s[i]);
  const double m = stats::mean(e);
  const double se = std::sqrt(stats::variance(e) / static_cast<double>(e.size()));
  EXPECT_LE(std::abs(m - std::exp(-1.0)), 3.0 * se);
}

TEST(Subordinator, LevyLawKs) {
  const auto s = subordinator_draws(0.5, 1.0, 100000, 23);
  const auto ks = stats::ks_one_sample(s, [](double x) { return levy_cdf(x, 1.0); });
  EXPECT_GT(ks.p_value, 0.01);
}

TEST(Subordinator, LevyCdfClosedForm) {
  // density (1/(2 sqrt(pi))) s^{-3/2} exp(-1/(4s)) integrates to erfc(1/(2 sqrt s))
  EXPECT_NEAR(levy_cdf(1.0, 1.0), std::erfc(0.5), 1e-15);
  EXPECT_NEAR(levy_cdf(0.25, 1.0), std::erfc(1.0), 1e-15);
  EXPECT_EQ(levy_cdf(0.0, 1.0), 0.0);
}

TEST(Subordinator, TimeScaling) {
  const double a_half = 0.75, t = 3.0;
  auto s1 = subordinator_draws(a_half, 1.0, 100000, 5);
  auto st = subordinator_draws(a_half, t, 100000, 6);
  for (double& v : s1) v *= std::pow(t, 1.0 / a_half);
  EXPECT_GT(stats::ks_two_sample(s1, st).p_value, 0.01);
}

TEST(IsotropicStable, GaussianVariance) {
  RngStream rng(31, 0);
  const auto z = sample_isotropic_stable_n({2.0, 1.0}, rng, 1000000);
  std::vector<double> x(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) x[i] = z[i].x;
  const double v = stats::variance(x);
  EXPECT_GE(v, 1.99);
  EXPECT_LE(v, 2.01);
}

TEST(IsotropicStable, CharacteristicFunction) {
  RngStream rng(37, 0);
  const auto z = sample_isotropic_stable_n({1.5, 1.0}, rng, 1000000);
  std::vector<double> c(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) c[i] = std::cos(z[i].x);
  const double m = stats::mean(c);
  const double se = std::sqrt(stats::variance(c) / static_cast<double>(c.size()));
  EXPECT_LE(std::abs(m - std::exp(-1.0)), 3.0 * se);
}

TEST(IsotropicStable, SelfSimilarity) {
  const double a = 1.5, u = 4.0;
  RngStream r1(41, 0), r2(41, 1);
  const auto z = sample_isotropic_stable_n({a, 1.0}, r1, 100000);
  const auto zu = sample_isotropic_stable_n({a, u}, r2, 100000);
  EXPECT_GT(stats::ks_two_sample(radii(z), radii(zu, std::pow(u, -1.0 / a))).p_value, 0.01);
}

TEST(IsotropicStable, Determinism) {
  RngStream r1(99, 12), r2(99, 12);
  const auto a = sample_isotropic_stable_n({1.3, 0.5}, r1, 1000);
  const auto b = sample_isotropic_stable_n({1.3, 0.5}, r2, 1000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].x, b[i].x);
    EXPECT_EQ(a[i].y, b[i].y);
  }
}

TEST(CharExponent, AtUnitRadius) {
  RngStream rng(43, 0);
  const auto z = sample_isotropic_stable_n({1.5, 1.0}, rng, 200000);
  const double r = 1.0;
  const auto e = empirical_char_exponent(z, 1.0, std::span<const double>(&r, 1));
  ASSERT_EQ(e.size(), 1u);
  EXPECT_LE(std::abs(e[0].exponent - 1.0), 3.0 * e[0].std_error);
}

TEST(CharExponent, GaussianCase) {
  RngStream rng(47, 0);
  const auto z = sample_isotropic_stable_n({2.0, 1.0}, rng, 200000);
  const double r = 0.5;
  const auto e = empirical_char_exponent(z, 1.0, std::span<const double>(&r, 1));
  EXPECT_NEAR(e[0].exponent, 0.25, 3.0 * e[0].std_error + 1e-12);
}

TEST(CharExponent, SlopeRecoversIndex) {
  for (double a : {1.2, 1.5, 1.8}) {
    RngStream rng(53, 0);
    const auto z = sample_isotropic_stable_n({a, 1.0}, rng, 100000);
    const std::vector<double> rs{0.25, 0.5, 1.0, 2.0};
    const auto e = empirical_char_exponent(z, 1.0, rs);
    std::vector<double> lx, ly;
    for (const auto& p : e) {
      lx.push_back(std::log(p.radius));
      ly.push_back(std::log(p.exponent));
    }
    EXPECT_NEAR(stats::linear_fit(lx, ly).slope, a, 0.05) << "a=" << a;
  }
}

TEST(CharExponent, Preconditions) {
  std::vector<Vec2> few(100, Vec2{0.0, 0.0});
  const double r = 1.0;
  EXPECT_THROW(empirical_char_exponent(few, 1.0, std::span<const double>(&r, 1)), DomainError);
  std::vector<Vec2> many(10000, Vec2{0.0, 0.0});
  const double bad = 3.5;
  EXPECT_THROW(empirical_char_exponent(many, 1.0, std::span<const double>(&bad, 1)), DomainError);
}

TEST(CharExponent, NonPositiveEstimateRaises) {
  // Points spread on a circle of radius rho average to J0(|r| rho), negative at |r| rho = 3.6.
  std::vector<Vec2> z;
  for (int i = 0; i < 10000; ++i) {
    const double th = 2.0 * std::numbers::pi * i / 10000.0;
    z.push_back({2.4 * std::cos(th), 2.4 * std::sin(th)});
  }
  const double r = 1.5;
  EXPECT_THROW(empirical_char_exponent(z, 1.0, std::span<const double>(&r, 1)), AccuracyError);
}

TEST(NoiseSelfTest, DefaultSuitePasses) {
  for (const auto& r : run_noise_selftest({})) EXPECT_TRUE(r.pass) << r.name << " stat=" << r.statistic;
}

TEST(NoiseSelfTest, GaussianBranchPasses) {
  SelfTestConfig cfg;
  cfg.a = 2.0;
  const auto res = run_noise_selftest(cfg);
  bool saw_variance = false;
  for (const auto& r : res) {
    EXPECT_TRUE(r.pass) << r.name;
    saw_variance |= r.name == "gaussian_variance";
  }
  EXPECT_TRUE(saw_variance);
}

TEST(NoiseSelfTest, CauchyBranchUsesLevyCdf) {
  SelfTestConfig cfg;
  cfg.a = 1.0;
  bool saw = false;
  for (const auto& r : run_noise_selftest(cfg)) {
    EXPECT_TRUE(r.pass) << r.name;
    saw |= r.name == "subordinator_levy_cdf_ks";
  }
  EXPECT_TRUE(saw);
}
