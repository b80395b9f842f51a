// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fks/rng.hpp"
#include "fks/vec2.hpp"

namespace fks {

struct StableParams {
  double a = 1.5;  // stability index in (0, 2]
  double t = 1.0;  // horizon
  void validate() const;
};

// One draw of the positive a_half-stable subordinator at horizon t,
// E[exp(-lambda S)] = exp(-t lambda^a_half). Uses Kanter's representation of
// the totally skewed Chambers-Mallows-Stuck transform.
double sample_subordinator(double a_half, double t, RngStream& rng);

// Z_t with E[exp(i r.Z_t)] = exp(-t |r|^a), built as sqrt(2 S) G.
Vec2 sample_isotropic_stable(const StableParams& p, RngStream& rng);

std::vector<Vec2> sample_isotropic_stable_n(const StableParams& p, RngStream& rng, std::size_t n);

struct CharExponentEstimate {
  double radius = 0.0;
  double exponent = 0.0;
  double std_error = 0.0;
};

// -log(direction-averaged Re E exp(i r.Z)) / t at each |r|.
std::vector<CharExponentEstimate> empirical_char_exponent(std::span<const Vec2> samples, double t,
                                                          std::span<const double> radii);

// CDF of the 1/2-stable subordinator at horizon t (Levy law).
double levy_cdf(double s, double t);

struct SelfTestConfig {
  double a = 1.5;
  double t = 1.0;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  double level = 0.01;
};

struct SelfTestResult {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

std::vector<SelfTestResult> run_noise_selftest(const SelfTestConfig& cfg);

}  // namespace fks
