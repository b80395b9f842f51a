// SPDX-License-Identifier: Apache-2.0
#include "fks/particles.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "fks/error.hpp"
#include "fks/parallel.hpp"
#include "fks/stable_noise.hpp"
#include "fks/thresholds.hpp"

namespace fks {
namespace {

constexpr double kBlowUpThreshold = 1e12;
constexpr std::uint64_t kPerturbationStreamBase = std::uint64_t{1} << 62;

double gaussian_pdf(const Vec2& x, const Vec2& c, double s) {
  const double r2 = norm2(x - c);
  return std::exp(-0.5 * r2 / (s * s)) / (2.0 * std::numbers::pi * s * s);
}

}  // namespace

void InitialDensity::validate(double a) const {
  switch (kind) {
    case InitialKind::kGaussian:
    case InitialKind::kTwoBumps:
      if (!(sigma > 0.0)) throw ConfigError("initial sigma must be positive");
      break;
    case InitialKind::kUniformDisk:
      if (!(radius > 0.0)) throw ConfigError("initial radius must be positive");
      break;
  }
  if (a > 1.0 && !(kappa_moment > 1.0 && kappa_moment < a))
    throw ConfigError("kappa_moment must lie in (1, a)");
}

Vec2 InitialDensity::sample(RngStream& rng) const {
  switch (kind) {
    case InitialKind::kGaussian: {
      const auto [g1, g2] = rng.normal_pair();
      return {sigma * g1, sigma * g2};
    }
    case InitialKind::kUniformDisk: {
      const double r = radius * std::sqrt(rng.uniform());
      const double th = 2.0 * std::numbers::pi * rng.uniform();
      return {r * std::cos(th), r * std::sin(th)};
    }
    case InitialKind::kTwoBumps: {
      const Vec2 c = rng.uniform() < 0.5 ? centers[0] : centers[1];
      const auto [g1, g2] = rng.normal_pair();
      return c + Vec2{sigma * g1, sigma * g2};
    }
  }
  return {};
}

double InitialDensity::pdf(const Vec2& x) const {
  switch (kind) {
    case InitialKind::kGaussian:
      return gaussian_pdf(x, {0.0, 0.0}, sigma);
    case InitialKind::kUniformDisk:
      return norm2(x) <= radius * radius ? 1.0 / (std::numbers::pi * radius * radius) : 0.0;
    case InitialKind::kTwoBumps:
      return 0.5 * (gaussian_pdf(x, centers[0], sigma) + gaussian_pdf(x, centers[1], sigma));
  }
  return 0.0;
}

std::vector<std::string> SimConfig::validate() const {
  std::vector<std::string> warnings;
  if (!(a > 0.0 && a <= 2.0)) throw ConfigError("a must lie in (0, 2]");
  try {
    kernel.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (n < 2) throw ConfigError("need at least two particles");
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(t_end >= dt)) throw ConfigError("t_end must be at least dt");
  if (record_every < 1) throw ConfigError("record_every must be >= 1");
  initial.validate(a);
  if (a <= 1.0) warnings.push_back("a <= 1 is experimental");
  if (kernel.alpha == a && a > 1.0 && a < 2.0) {
    const double chi_a = chi_rigorous(a);
    if (chi_a <= 0.0)
      warnings.push_back("a is below a*: no positive rigorous fair-competition threshold");
    else if (kernel.chi >= chi_a)
      warnings.push_back("chi >= chi_rigorous(a) in the fair-competition regime");
  }
  return warnings;
}

std::size_t SimConfig::steps() const {
  return static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
}

std::string SimConfig::hash() const {
  char buf[512];
  std::snprintf(buf, sizeof buf, "a=%.17g;alpha=%.17g;chi=%.17g;eta=%.17g;n=%zu;dt=%.17g;T=%.17g;seed=%llu;"
                "init=%d;sigma=%.17g;R=%.17g;c=%.17g,%.17g,%.17g,%.17g;kappa=%.17g;rec=%d",
                a, kernel.alpha, kernel.chi, kernel.eta, n, dt, t_end, static_cast<unsigned long long>(seed),
                static_cast<int>(initial.kind), initial.sigma, initial.radius, initial.centers[0].x,
                initial.centers[0].y, initial.centers[1].x, initial.centers[1].y, initial.kappa_moment,
                record_every);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const char* p = buf; *p; ++p) {
    h ^= static_cast<unsigned char>(*p);
    h *= 0x100000001b3ull;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

ParticleEnsemble init(const SimConfig& config) {
  config.validate();
  ParticleEnsemble ens;
  ens.positions.resize(config.n);
  ens.streams.resize(config.n);
  ens.config_hash = config.hash();
  for (std::size_t i = 0; i < config.n; ++i) {
    ens.streams[i] = RngStream(config.seed, i);
    ens.positions[i] = config.initial.sample(ens.streams[i]);
  }
  return ens;
}

std::vector<Vec2> drift(std::span<const Vec2> x, const KernelParams& kernel) {
  const std::size_t n = x.size();
  std::vector<Vec2> out(n);
  if (n == 0 || kernel.chi == 0.0) return out;
  const double alpha = kernel.alpha;
  const double eta = kernel.eta;
  const double scale = kernel.chi / static_cast<double>(n);
  parallel_for(n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const Vec2 xi = x[i];
      double ax = 0.0, ay = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double dx = xi.x - x[j].x;
        const double dy = xi.y - x[j].y;
        const double r2 = dx * dx + dy * dy;
        double w;
        if (eta > 0.0) {
          w = std::pow(std::max(r2, eta * eta), -0.5 * alpha);
        } else {
          if (r2 == 0.0) throw CollisionError(std::min(i, j), std::max(i, j));
          w = std::pow(r2, -0.5 * alpha);
        }
        ax -= w * dx;
        ay -= w * dy;
      }
      out[i] = {scale * ax, scale * ay};
    }
  });
  return out;
}

void step_in_place(ParticleEnsemble& ens, const SimConfig& config, std::size_t step_index, NoiseMode noise) {
  const std::size_t n = ens.size();
  if (ens.streams.size() != n) throw DomainError("ensemble streams do not match positions");
  const auto v = drift(ens.positions, config.kernel);
  const StableParams sp{config.a, config.dt};
  const double dt = config.dt;
  parallel_for(n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      Vec2 x = ens.positions[i] + dt * v[i];
      if (noise == NoiseMode::kStable) x += sample_isotropic_stable(sp, ens.streams[i]);
      ens.positions[i] = x;
    }
  });
  ens.time = static_cast<double>(step_index) * dt;
  for (const Vec2& x : ens.positions) {
    if (!std::isfinite(x.x) || !std::isfinite(x.y) || std::abs(x.x) > kBlowUpThreshold ||
        std::abs(x.y) > kBlowUpThreshold)
      throw BlowUpError(ens.time);
  }
}

ParticleEnsemble step(const ParticleEnsemble& ens, const SimConfig& config, NoiseMode noise) {
  ParticleEnsemble next = ens;
  const auto k = static_cast<std::size_t>(std::llround(ens.time / config.dt)) + 1;
  step_in_place(next, config, k, noise);
  return next;
}

namespace {

void snapshot(const ParticleEnsemble& ens, std::span<const DiagnosticHook> hooks, DiagnosticsSeries& series) {
  series.snapshot_times.push_back(ens.time);
  for (const auto& h : hooks) h(ens, series);
}

}  // namespace

DiagnosticsSeries run(const SimConfig& config, std::span<const DiagnosticHook> hooks) {
  DiagnosticsSeries series;
  ParticleEnsemble ens = init(config);
  series.run_manifest = ens.config_hash;
  snapshot(ens, hooks, series);
  const std::size_t steps = config.steps();
  for (std::size_t s = 1; s <= steps; ++s) {
    try {
      step_in_place(ens, config, s);
    } catch (const BlowUpError& e) {
      series.blown_up = true;
      series.blow_up_time = e.time;
      series.termination_reason = e.what();
      return series;
    } catch (const CollisionError& e) {
      series.blown_up = true;
      series.blow_up_time = static_cast<double>(s) * config.dt;
      series.termination_reason = e.what();
      return series;
    }
    if (s % static_cast<std::size_t>(config.record_every) == 0) snapshot(ens, hooks, series);
  }
  return series;
}

CoupledSeries coupled_run(const SimConfig& config, const CoupledOptions& options) {
  if (!(options.delta >= 0.0)) throw DomainError("perturbation must be non-negative");
  if (!(options.q > 0.0)) throw DomainError("distance exponent q must be positive");
  ParticleEnsemble first = init(config);
  ParticleEnsemble second = first;
  const std::size_t n = first.size();
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 dir{1.0, 0.0};
    if (options.mode == PerturbationMode::kRandomDirection) {
      RngStream r(config.seed, kPerturbationStreamBase + i);
      const double th = 2.0 * std::numbers::pi * r.uniform();
      dir = {std::cos(th), std::sin(th)};
    }
    second.positions[i] += options.delta * dir;
  }
  CoupledSeries out;
  auto record = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::pow(norm(first.positions[i] - second.positions[i]), options.q);
    out.times.push_back(first.time);
    out.q_distance.push_back(s / static_cast<double>(n));
  };
  record();
  const std::size_t steps = config.steps();
  for (std::size_t s = 1; s <= steps; ++s) {
    try {
      step_in_place(first, config, s);
      step_in_place(second, config, s);
    } catch (const BlowUpError& e) {
      out.blown_up = true;
      out.blow_up_time = e.time;
      return out;
    } catch (const CollisionError&) {
      out.blown_up = true;
      out.blow_up_time = static_cast<double>(s) * config.dt;
      return out;
    }
    if (s % static_cast<std::size_t>(config.record_every) == 0) record();
  }
  return out;
}

}  // namespace fks
