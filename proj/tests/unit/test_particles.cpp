// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "fks/error.hpp"
#include "fks/parallel.hpp"
#include "fks/particles.hpp"
#include "fks/stable_noise.hpp"
#include "fks/stats.hpp"
#include "fks/thresholds.hpp"

using namespace fks;

namespace {

SimConfig small_config() {
  SimConfig c;
  c.n = 64;
  c.dt = 0.01;
  c.t_end = 0.1;
  c.seed = 3;
  return c;
}

}  // namespace

TEST(SimConfig, ValidationErrors) {
  SimConfig c;
  c.n = 1;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.dt = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.t_end = 0.001;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.kernel.alpha = 2.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.initial.kappa_moment = 1.9;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  EXPECT_TRUE(c.validate().empty());
}

TEST(SimConfig, FairCompetitionWarning) {
  SimConfig c;
  c.a = 1.9;
  c.kernel = {1.9, 2.0 * chi_rigorous(1.9), 0.0};
  const auto w = c.validate();
  ASSERT_EQ(w.size(), 1u);
  EXPECT_NE(w[0].find("chi"), std::string::npos);
  c.kernel.chi = 0.5 * chi_rigorous(1.9);
  EXPECT_TRUE(c.validate().empty());
  c.a = 0.8;
  c.kernel = {0.8, 0.1, 0.0};
  c.initial.kappa_moment = 0.5;
  EXPECT_FALSE(c.validate().empty());
}

TEST(SimConfig, StepsAndHash) {
  SimConfig c;
  c.dt = 0.01;
  c.t_end = 0.1;
  EXPECT_EQ(c.steps(), 10u);
  SimConfig d = c;
  EXPECT_EQ(c.hash(), d.hash());
  d.seed = 2;
  EXPECT_NE(c.hash(), d.hash());
}

TEST(Init, GaussianMean) {
  SimConfig c;
  c.n = 10000;
  const auto e = init(c);
  double mx = 0.0, my = 0.0;
  for (const Vec2& p : e.positions) {
    mx += p.x;
    my += p.y;
  }
  EXPECT_LT(std::abs(mx / 10000.0), 4.0 / 100.0);
  EXPECT_LT(std::abs(my / 10000.0), 4.0 / 100.0);
  EXPECT_EQ(e.config_hash, c.hash());
  EXPECT_EQ(e.streams[17].stream_id(), 17u);
}

TEST(Init, UniformDiskSupport) {
  SimConfig c;
  c.n = 5000;
  c.initial.kind = InitialKind::kUniformDisk;
  c.initial.radius = 1.0;
  for (const Vec2& p : init(c).positions) EXPECT_LE(norm(p), 1.0);
}

TEST(Init, TwoBumpsSplit) {
  SimConfig c;
  c.n = 4000;
  c.initial.kind = InitialKind::kTwoBumps;
  c.initial.sigma = 0.3;
  int left = 0;
  for (const Vec2& p : init(c).positions) left += p.x < 0.0;
  EXPECT_NEAR(left / 4000.0, 0.5, 4.0 * 0.5 / std::sqrt(4000.0));
}

TEST(Init, Deterministic) {
  const auto a = init(small_config()), b = init(small_config());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.positions[i].x, b.positions[i].x);
    EXPECT_EQ(a.positions[i].y, b.positions[i].y);
  }
}

TEST(Drift, TwoBody) {
  const std::vector<Vec2> x{{1.0, 0.0}, {-1.0, 0.0}};
  const auto v = drift(x, {1.5, 1.0, 0.0});
  EXPECT_NEAR(v[0].x, -std::pow(2.0, -1.5), 1e-15);
  EXPECT_NEAR(v[0].x, -0.35355339059327373, 1e-15);
  EXPECT_EQ(v[0].y, 0.0);
  EXPECT_NEAR(v[1].x, std::pow(2.0, -1.5), 1e-15);
}

TEST(Drift, MomentumAndPermutation) {
  auto e = init(small_config());
  const KernelParams k{1.3, 0.7, 0.0};
  const auto v = drift(e.positions, k);
  double sx = 0.0, sy = 0.0, mag = 0.0;
  for (const Vec2& d : v) {
    sx += d.x;
    sy += d.y;
    mag += norm(d);
  }
  EXPECT_LE(std::hypot(sx, sy), 1e-12 * mag);
  std::vector<std::size_t> perm(e.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  std::rotate(perm.begin(), perm.begin() + 5, perm.end());
  std::vector<Vec2> xp(e.size());
  for (std::size_t i = 0; i < perm.size(); ++i) xp[i] = e.positions[perm[i]];
  const auto vp = drift(xp, k);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    EXPECT_NEAR(vp[i].x, v[perm[i]].x, 1e-12 * (1.0 + std::abs(v[perm[i]].x)));
    EXPECT_NEAR(vp[i].y, v[perm[i]].y, 1e-12 * (1.0 + std::abs(v[perm[i]].y)));
  }
}

TEST(Drift, CollisionReportsIndices) {
  const std::vector<Vec2> x{{0.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}};
  try {
    drift(x, {1.5, 1.0, 0.0});
    FAIL() << "expected CollisionError";
  } catch (const CollisionError& e) {
    EXPECT_EQ(e.first, 0u);
    EXPECT_EQ(e.second, 2u);
  }
  EXPECT_NO_THROW(drift(x, {1.5, 1.0, 0.01}));
}

TEST(Drift, ThreadCountIndependent) {
  SimConfig c = small_config();
  c.n = 700;
  const auto e = init(c);
  set_max_threads(1);
  const auto v1 = drift(e.positions, c.kernel);
  set_max_threads(4);
  const auto v4 = drift(e.positions, c.kernel);
  set_max_threads(0);
  for (std::size_t i = 0; i < v1.size(); ++i) {
    EXPECT_EQ(v1[i].x, v4[i].x);
    EXPECT_EQ(v1[i].y, v4[i].y);
  }
}

TEST(Step, TwoBodyNoNoise) {
  SimConfig c;
  c.n = 2;
  c.kernel = {1.5, 1.0, 0.0};
  ParticleEnsemble e;
  e.positions = {{1.0, 0.0}, {-1.0, 0.0}};
  e.streams = {RngStream(1, 0), RngStream(1, 1)};
  const auto next = step(e, c, NoiseMode::kZero);
  EXPECT_NEAR(next.positions[0].x, 1.0 - c.dt * std::pow(2.0, -1.5), 1e-15);
  EXPECT_NEAR(next.positions[1].x, -1.0 + c.dt * std::pow(2.0, -1.5), 1e-15);
  EXPECT_NEAR(next.time, c.dt, 1e-15);
}

TEST(Step, ZeroChiIsStableWalk) {
  SimConfig c;
  c.a = 1.5;
  c.kernel.chi = 0.0;
  c.n = 20000;
  c.dt = 1.0;
  c.t_end = 1.0;
  auto e = init(c);
  const auto x0 = e.positions;
  step_in_place(e, c, 1);
  std::vector<Vec2> inc(c.n);
  for (std::size_t i = 0; i < c.n; ++i) inc[i] = e.positions[i] - x0[i];
  const std::vector<double> rs{0.25, 0.5, 1.0, 2.0};
  const auto est = empirical_char_exponent(inc, 1.0, rs);
  std::vector<double> lx, ly;
  for (const auto& p : est) {
    lx.push_back(std::log(p.radius));
    ly.push_back(std::log(p.exponent));
  }
  EXPECT_NEAR(stats::linear_fit(lx, ly).slope, 1.5, 0.05);
}

TEST(Step, RelabelingWithStreamsCommutes) {
  auto e = init(small_config());
  const SimConfig c = small_config();
  ParticleEnsemble p = e;
  std::reverse(p.positions.begin(), p.positions.end());
  std::reverse(p.streams.begin(), p.streams.end());
  const auto a = step(e, c), b = step(p, c);
  const std::size_t n = e.size();
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_NEAR(a.positions[i].x, b.positions[n - 1 - i].x, 1e-12);
    EXPECT_NEAR(a.positions[i].y, b.positions[n - 1 - i].y, 1e-12);
  }
}

TEST(Step, BlowUpRaises) {
  SimConfig c = small_config();
  c.a = 1.9;
  c.kernel = {1.9, 1e20, 0.0};
  auto e = init(c);
  EXPECT_THROW(step_in_place(e, c, 1), BlowUpError);
}

TEST(Run, SnapshotCount) {
  SimConfig c = small_config();
  c.t_end = 10 * c.dt;
  c.record_every = 5;
  const DiagnosticHook hook = [](const ParticleEnsemble& e, DiagnosticsSeries& s) { s.add(e.time, "n", e.size()); };
  const auto s = run(c, std::span<const DiagnosticHook>(&hook, 1));
  ASSERT_EQ(s.snapshot_times.size(), 3u);
  EXPECT_NEAR(s.snapshot_times[1], 5 * c.dt, 1e-15);
  EXPECT_NEAR(s.snapshot_times[2], 10 * c.dt, 1e-15);
  EXPECT_EQ(s.records.size(), 3u);
  EXPECT_FALSE(s.blown_up);
}

TEST(Run, BlowUpIsFlaggedNotThrown) {
  SimConfig c = small_config();
  c.a = 1.9;
  c.kernel = {1.9, 1e20, 0.0};
  DiagnosticsSeries s;
  EXPECT_NO_THROW(s = run(c, {}));
  EXPECT_TRUE(s.blown_up);
  EXPECT_NEAR(s.blow_up_time, c.dt, 1e-15);
  EXPECT_FALSE(s.termination_reason.empty());
}

TEST(Run, FairCompetitionBelowThresholdStaysFinite) {
  SimConfig c;
  c.a = 1.9;
  c.kernel = {1.9, 0.5 * chi_rigorous(1.9), 0.0};
  c.n = 512;
  c.dt = 0.01;
  c.t_end = 1.0;
  c.record_every = 100;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    c.seed = seed;
    const auto s = run(c, {});
    EXPECT_FALSE(s.blown_up) << "seed " << seed << ": " << s.termination_reason;
  }
}

TEST(Coupled, ZeroPerturbationIsExact) {
  SimConfig c = small_config();
  CoupledOptions o;
  o.delta = 0.0;
  const auto s = coupled_run(c, o);
  ASSERT_EQ(s.times.size(), 2u);
  for (double d : s.q_distance) EXPECT_EQ(d, 0.0);
}

TEST(Coupled, InitialDistanceScalesAsDeltaToQ) {
  SimConfig c = small_config();
  for (auto mode : {PerturbationMode::kRigid, PerturbationMode::kRandomDirection}) {
    CoupledOptions o;
    o.mode = mode;
    o.delta = 1e-3;
    const double d1 = coupled_run(c, o).q_distance.front();
    o.delta = 2e-3;
    const double d2 = coupled_run(c, o).q_distance.front();
    EXPECT_NEAR(d1, std::pow(1e-3, o.q), 1e-6 * d1);
    EXPECT_NEAR(d2 / d1, std::pow(2.0, o.q), 1e-6);
  }
}

TEST(Coupled, RateFiniteAcrossSeeds) {
  SimConfig c;
  c.a = 1.8;
  c.kernel = {1.3, 0.1, 0.0};
  c.n = 128;
  c.t_end = 0.5;
  c.record_every = 5;
  std::vector<double> rates;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    c.seed = seed;
    const auto s = coupled_run(c, {});
    ASSERT_FALSE(s.blown_up);
    std::vector<double> ld;
    for (double d : s.q_distance) ld.push_back(std::log(d));
    const double rate = stats::linear_fit(s.times, ld).slope;
    ASSERT_TRUE(std::isfinite(rate));
    rates.push_back(rate);
  }
  const double sd = std::sqrt(stats::variance(rates));
  EXPECT_LT(sd, std::abs(stats::mean(rates)) + 1.0);
}
