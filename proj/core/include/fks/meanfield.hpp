// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "fks/interaction.hpp"
#include "fks/vec2.hpp"

namespace fks {

struct SimConfig;
class Fft2d;

// Periodic M x M grid on [-L/2, L/2)^2; node (ix, iy) sits at ((ix - M/2) h, (iy - M/2) h)
// and is stored at values[iy * M + ix].
struct GridDensity {
  int m = 0;
  double box_length = 0.0;
  double time = 0.0;
  std::vector<double> values;

  double cell() const { return box_length / m; }
  double coord(int i) const { return (i - m / 2) * cell(); }
  Vec2 node(int ix, int iy) const { return {coord(ix), coord(iy)}; }
  double& at(int ix, int iy) { return values[static_cast<std::size_t>(iy) * m + ix]; }
  double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * m + ix]; }
  double mass() const;
  double min_value() const;
  double max_value() const;
  // Throws DomainError unless mass is 1 within tol and negativity is within 1e-12 max.
  void validate(double mass_tol = 1e-8) const;

  // Samples pdf at the nodes and rescales to unit discrete mass.
  static GridDensity from_pdf(const std::function<double(const Vec2&)>& pdf, int m, double box_length);
};

struct VectorGrid {
  int m = 0;
  std::vector<double> vx;
  std::vector<double> vy;
};

// Cell-averaged K_alpha tabulated on grid offsets and truncated at |z| <= L/4.
struct KernelTable {
  int m = 0;
  double box_length = 0.0;
  std::vector<double> kx;
  std::vector<double> ky;
};

KernelTable tabulate_kernel(int m, double box_length, double alpha);

// K_alpha * rho on the grid (no chi factor).
VectorGrid drift_field(const GridDensity& rho, const KernelParams& kernel);

// exp(-dt |k|^a) on the r2c half spectrum, row-major M x (M/2 + 1).
std::vector<double> diffusion_multipliers(int m, double box_length, double a, double dt);

// Integrating-factor Heun step: diffusion exact through exp(-dt|k|^a), the
// advection term explicit with the 2/3 rule applied to rho (K*rho).
class SpectralStepper {
 public:
  SpectralStepper(int m, double box_length, const KernelParams& kernel, double a, double dt);
  ~SpectralStepper();

  GridDensity step(const GridDensity& rho) const;
  VectorGrid drift_field(const GridDensity& rho) const;
  const std::vector<double>& multipliers() const { return multipliers_; }
  double dt() const { return dt_; }
  // Largest |chi K*rho| over the grid.
  double max_speed(const GridDensity& rho) const;

 private:
  using Spectrum = std::vector<std::complex<double>>;
  Spectrum advection(const Spectrum& rho_hat, const GridDensity& rho) const;

  int m_;
  double box_length_;
  KernelParams kernel_;
  double a_;
  double dt_;
  std::unique_ptr<Fft2d> fft_;
  std::vector<double> multipliers_;
  Spectrum kx_hat_;
  Spectrum ky_hat_;
  std::vector<double> wave_x_;
  std::vector<double> wave_y_;
  std::vector<char> keep_;
};

GridDensity step_semi_implicit(const GridDensity& rho, const KernelParams& kernel, double a, double dt);

struct PdeRun {
  std::vector<GridDensity> snapshots;
  double initial_outside_mass = 0.0;  // mass outside the L/4 ball at t = 0
  bool boundary_contamination = false;
  double contamination_time = 0.0;
  bool unreliable = false;
  double unreliable_after = 0.0;
  double max_relative_mass_change = 0.0;
  std::size_t substeps = 0;
};

// Evolves config.initial to config.t_end with step config.dt (split further when
// the advective CFL requires) and snapshots every record_every steps.
PdeRun run_pde(const SimConfig& config, int m, double box_length);

// Mass fraction in the strip within L/4 of the box boundary.
double boundary_mass(const GridDensity& rho);
// Mass outside the centred ball of radius L/4.
double outside_ball_mass(const GridDensity& rho);

// Trigonometric interpolant of the grid values at an arbitrary point.
double fourier_interpolate(const GridDensity& rho, const Vec2& x);

struct RadialBin {
  double radius = 0.0;
  double mean = 0.0;
};
std::vector<RadialBin> radial_profile(const GridDensity& rho, int bins);

// Second moment int |x|^2 rho.
double second_moment(const GridDensity& rho);

}  // namespace fks
