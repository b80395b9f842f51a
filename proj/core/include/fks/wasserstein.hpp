// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fks/meanfield.hpp"
#include "fks/vec2.hpp"

namespace fks {

// Atoms in R^dim stored contiguously, one weight per atom.
struct WeightedPointSet {
  int dim = 2;
  std::vector<double> coords;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  const double* atom(std::size_t i) const { return coords.data() + i * static_cast<std::size_t>(dim); }
  double total_mass() const;

  static WeightedPointSet uniform(std::span<const Vec2> points);
  static WeightedPointSet uniform(int dim, std::vector<double> coords);
  // One atom per cell with positive value, weight value * h^2, renormalised.
  static WeightedPointSet from_grid(const GridDensity& rho);
};

struct W1Options {
  bool allow_approximate = false;
  bool force_approximate = false;
  int directions = 64;
  std::uint64_t seed = 0x5157u;
  std::size_t exact_cap = 4096;
};

struct W1Result {
  double value = 0.0;
  bool approximate = false;
};

// Exact min-cost-flow W1 when the combined support fits under the cap,
// otherwise sliced W1 if permitted, otherwise SizeError.
W1Result wasserstein1(const WeightedPointSet& mu, const WeightedPointSet& nu, const W1Options& options = {});

double wasserstein1_exact(const WeightedPointSet& mu, const WeightedPointSet& nu);
double sliced_wasserstein1(const WeightedPointSet& mu, const WeightedPointSet& nu, int directions,
                           std::uint64_t seed);
// Exact W1 between weighted atoms on the line.
double wasserstein1_line(std::vector<std::pair<double, double>> a, std::vector<std::pair<double, double>> b);

}  // namespace fks
