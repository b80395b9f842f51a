// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fks/meanfield.hpp"
#include "fks/vec2.hpp"

namespace fks {

// Strictly positive density on the periodic M x M grid of GridDensity.
// Distances are minimum-image distances on the torus of side L.
struct FisherGridDensity {
  int m = 0;
  double box_length = 0.0;
  std::vector<double> values;

  double cell() const { return box_length / m; }
  // Unit mass within 1e-8 and finite values; zeros are floored at 1e-30 later.
  void validate() const;

  static FisherGridDensity from_grid(const GridDensity& rho);
  static FisherGridDensity from_pdf(const std::function<double(const Vec2&)>& pdf, int m, double box_length);
};

struct FisherBreakdown {
  double total = 0.0;
  double off_diagonal = 0.0;
  double diagonal = 0.0;
};

// Raw double sum of Phi(f(x), f(y)) |x - y|^{-2-a} over the grid (no 1/2, no mass
// check). The coincident-cell block uses the local form |grad f|^2 / f.
FisherBreakdown fisher_pair_integral(std::span<const double> values, int m, double box_length, double a);

// I_a = (1/2) double integral, with its split into off-diagonal and diagonal parts.
FisherBreakdown fisher_breakdown(const FisherGridDensity& rho, double a);

// Throws ResolutionError when the diagonal part exceeds 10% of the total.
double fisher_info_grid(const FisherGridDensity& rho, double a);

// Two-particle densities on an M^4 grid, index ((i0 M + i1) M + i2) M + i3,
// particle 1 at (i0, i1) and particle 2 at (i2, i3).
// Sum over the other particle's cells of h^2 * pair integral of the slice.
double fisher_partial_two_particle(std::span<const double> g, int m, double box_length, double a, int particle);
// (1/2)(1/2) sum over both particles.
double fisher_info_two_particle(std::span<const double> g, int m, double box_length, double a);
// G o Psi^{-1} with Psi(x1, x2) = (x1 - x2, x2), exact on the periodic index grid.
std::vector<double> shear_two_particle(std::span<const double> g, int m);

double gns_theta(double p, double a);

struct GnsScalingReport {
  double theta = 0.0;
  double identity_residual = 0.0;  // |a theta - 2(1 - 1/p)|
  double ratio_min = 0.0;          // over Gaussians of 5 widths
  double ratio_max = 0.0;
  bool pass = false;
};

GnsScalingReport gns_scaling_report(double p, double a);
bool gns_scaling_check(double p, double a);

double lp_norm(const FisherGridDensity& rho, double p);

}  // namespace fks
