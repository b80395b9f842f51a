// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fks/interaction.hpp"
#include "fks/rng.hpp"
#include "fks/series.hpp"
#include "fks/vec2.hpp"

namespace fks {

enum class InitialKind { kGaussian, kUniformDisk, kTwoBumps };

struct InitialDensity {
  InitialKind kind = InitialKind::kGaussian;
  double sigma = 1.0;   // gaussian and two_bumps
  double radius = 1.0;  // uniform_disk
  std::array<Vec2, 2> centers{{{-2.0, 0.0}, {2.0, 0.0}}};
  double kappa_moment = 1.2;

  void validate(double a) const;
  Vec2 sample(RngStream& rng) const;
  double pdf(const Vec2& x) const;
};

struct SimConfig {
  double a = 1.8;
  KernelParams kernel{1.3, 0.1, 0.0};
  std::size_t n = 512;
  double dt = 0.01;
  double t_end = 1.0;
  std::uint64_t seed = 1;
  InitialDensity initial;
  int record_every = 10;

  // Throws ConfigError; returns non-fatal warnings.
  std::vector<std::string> validate() const;
  std::size_t steps() const;
  std::string hash() const;
};

struct ParticleEnsemble {
  std::vector<Vec2> positions;
  double time = 0.0;
  std::vector<RngStream> streams;
  std::string config_hash;

  std::size_t size() const { return positions.size(); }
};

ParticleEnsemble init(const SimConfig& config);

// (chi/N) sum_{j != i} K(x_i - x_j), direct summation per particle.
std::vector<Vec2> drift(std::span<const Vec2> positions, const KernelParams& kernel);

enum class NoiseMode { kStable, kZero };

// Euler-Maruyama step with exact stable increments. Throws BlowUpError or CollisionError.
ParticleEnsemble step(const ParticleEnsemble& ens, const SimConfig& config, NoiseMode noise = NoiseMode::kStable);
void step_in_place(ParticleEnsemble& ens, const SimConfig& config, std::size_t step_index,
                   NoiseMode noise = NoiseMode::kStable);

using DiagnosticHook = std::function<void(const ParticleEnsemble&, DiagnosticsSeries&)>;

// Steps to T, calling hooks at t = 0 and every record_every steps. Blow-ups and
// collisions end the run early with the series flagged.
DiagnosticsSeries run(const SimConfig& config, std::span<const DiagnosticHook> hooks);

enum class PerturbationMode {
  kRigid,            // every particle shifted by delta along e_1
  kRandomDirection,  // particle i shifted by delta along its own seeded unit vector
};

struct CoupledOptions {
  double delta = 1e-3;
  double q = 1.5;
  PerturbationMode mode = PerturbationMode::kRandomDirection;
};

struct CoupledSeries {
  std::vector<double> times;
  std::vector<double> q_distance;  // (1/N) sum_i |X_i^1 - X_i^2|^q
  bool blown_up = false;
  double blow_up_time = 0.0;
};

// Two systems driven by identical noise streams, the second initially perturbed.
CoupledSeries coupled_run(const SimConfig& config, const CoupledOptions& options);

}  // namespace fks
