// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>

#include "fks/meanfield.hpp"
#include "fks/particles.hpp"
#include "fks/series.hpp"
#include "fks/vec2.hpp"

namespace fks {

struct Estimate {
  double value = 0.0;
  double mc_error = 0.0;
};

// (1/N) sum <x_i>^kappa with its standard error.
Estimate moment_estimate(std::span<const Vec2> x, double kappa);
double empirical_moment(const ParticleEnsemble& ens, double kappa);

// (1/(N(N-1))) sum_{i != j} min(m_cap, |x_i - x_j|^{-gamma}); the error is the
// first-order U-statistic standard error.
Estimate pair_moment_estimate(std::span<const Vec2> x, double gamma, double m_cap);
double singular_pair_moment(const ParticleEnsemble& ens, double gamma, double m_cap);

// int rho_hat ln rho_hat for a Gaussian KDE evaluated on a grid of spacing bandwidth/4.
double entropy_kde(std::span<const Vec2> x, double bandwidth);
double entropy_kde(const ParticleEnsemble& ens, double bandwidth);

struct ChaosGap {
  double w1_one_marginal = 0.0;
  double w2_product_gap = 0.0;
};

// Sliced W1 of the empirical measure against the reference, and of the
// disjoint-pair empirical measure against a product of two bootstrap copies.
ChaosGap chaos_gap(std::span<const Vec2> x, const GridDensity& reference, std::uint64_t seed);
ChaosGap chaos_gap(const ParticleEnsemble& ens, const GridDensity& reference, std::uint64_t seed);

// Pair-measure gap only; needs no reference density.
double product_gap(std::span<const Vec2> x, std::uint64_t seed);

}  // namespace fks
