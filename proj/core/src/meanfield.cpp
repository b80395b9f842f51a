// SPDX-License-Identifier: Apache-2.0
#include "fks/meanfield.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "fks/error.hpp"
#include "fks/fft.hpp"
#include "fks/particles.hpp"

namespace fks {
namespace {

using std::numbers::pi;
using Complex = std::complex<double>;

int wrap_index(int i, int m) { return i < m / 2 ? i : i - m; }

// 8x8 Gauss-Legendre average of K over the cell centred at c with side h.
Vec2 cell_average(const Vec2& c, double h, double alpha) {
  using G = boost::math::quadrature::gauss<double, 8>;
  const auto& ab = G::abscissa();
  const auto& wt = G::weights();
  std::array<double, 8> x{}, w{};
  for (int i = 0; i < 4; ++i) {
    x[3 - i] = -ab[i];
    w[3 - i] = wt[i];
    x[4 + i] = ab[i];
    w[4 + i] = wt[i];
  }
  Vec2 sum{};
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const Vec2 z{c.x + 0.5 * h * x[i], c.y + 0.5 * h * x[j]};
      sum += (w[i] * w[j] * -std::pow(norm2(z), -0.5 * alpha)) * z;
    }
  return 0.25 * sum;
}

}  // namespace

double GridDensity::mass() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * cell() * cell();
}

double GridDensity::min_value() const { return *std::min_element(values.begin(), values.end()); }
double GridDensity::max_value() const { return *std::max_element(values.begin(), values.end()); }

void GridDensity::validate(double mass_tol) const {
  if (m < 4 || values.size() != static_cast<std::size_t>(m) * m || !(box_length > 0.0))
    throw DomainError("malformed grid density");
  if (std::abs(mass() - 1.0) > mass_tol) throw DomainError("grid density is not mass-normalised");
  if (min_value() < -1e-12 * max_value()) throw DomainError("grid density has negative values");
}

GridDensity GridDensity::from_pdf(const std::function<double(const Vec2&)>& pdf, int m, double box_length) {
  GridDensity g;
  g.m = m;
  g.box_length = box_length;
  g.values.resize(static_cast<std::size_t>(m) * m);
  for (int iy = 0; iy < m; ++iy)
    for (int ix = 0; ix < m; ++ix) g.at(ix, iy) = pdf(g.node(ix, iy));
  const double mass = g.mass();
  if (!(mass > 0.0)) throw DomainError("density has no mass on the grid");
  for (double& v : g.values) v /= mass;
  return g;
}

KernelTable tabulate_kernel(int m, double box_length, double alpha) {
  const double h = box_length / m;
  const double near = std::pow(h, 1.0 - alpha);
  if (!std::isfinite(near) || near > 1e300) throw ResolutionError("kernel magnitude at one cell overflows");
  KernelTable t{m, box_length, std::vector<double>(static_cast<std::size_t>(m) * m, 0.0),
                std::vector<double>(static_cast<std::size_t>(m) * m, 0.0)};
  const double cutoff = 0.25 * box_length;
  for (int iy = 0; iy < m; ++iy)
    for (int ix = 0; ix < m; ++ix) {
      const int ox = wrap_index(ix, m), oy = wrap_index(iy, m);
      if (ox == 0 && oy == 0) continue;  // odd kernel: zero cell average
      const Vec2 z{ox * h, oy * h};
      if (norm(z) > cutoff) continue;
      Vec2 k;
      if (std::max(std::abs(ox), std::abs(oy)) <= 3)
        k = cell_average(z, h, alpha);
      else
        k = (-std::pow(norm2(z), -0.5 * alpha)) * z;
      const std::size_t idx = static_cast<std::size_t>(iy) * m + ix;
      t.kx[idx] = k.x;
      t.ky[idx] = k.y;
    }
  return t;
}

std::vector<double> diffusion_multipliers(int m, double box_length, double a, double dt) {
  const int mc = m / 2 + 1;
  std::vector<double> out(static_cast<std::size_t>(m) * mc);
  const double dk = 2.0 * pi / box_length;
  for (int iy = 0; iy < m; ++iy)
    for (int ix = 0; ix < mc; ++ix) {
      const double kx = dk * ix, ky = dk * wrap_index(iy, m);
      out[static_cast<std::size_t>(iy) * mc + ix] = std::exp(-dt * std::pow(kx * kx + ky * ky, 0.5 * a));
    }
  return out;
}

SpectralStepper::SpectralStepper(int m, double box_length, const KernelParams& kernel, double a, double dt)
    : m_(m), box_length_(box_length), kernel_(kernel), a_(a), dt_(dt), fft_(std::make_unique<Fft2d>(m)) {
  kernel_.validate();
  if (!(a > 0.0 && a <= 2.0)) throw DomainError("a must lie in (0, 2]");
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  if (!(box_length > 0.0)) throw DomainError("box length must be positive");
  multipliers_ = diffusion_multipliers(m, box_length, a, dt);
  const KernelTable table = tabulate_kernel(m, box_length, kernel.alpha);
  kx_hat_.resize(fft_->complex_size());
  ky_hat_.resize(fft_->complex_size());
  fft_->forward(table.kx.data(), kx_hat_.data());
  fft_->forward(table.ky.data(), ky_hat_.data());
  const int mc = m / 2 + 1;
  const double dk = 2.0 * pi / box_length;
  wave_x_.resize(fft_->complex_size());
  wave_y_.resize(fft_->complex_size());
  keep_.resize(fft_->complex_size());
  for (int iy = 0; iy < m; ++iy)
    for (int ix = 0; ix < mc; ++ix) {
      const std::size_t idx = static_cast<std::size_t>(iy) * mc + ix;
      const int jy = wrap_index(iy, m);
      wave_x_[idx] = dk * ix;
      wave_y_[idx] = dk * jy;
      keep_[idx] = (3 * ix < m && 3 * std::abs(jy) < m) ? 1 : 0;
    }
}

SpectralStepper::~SpectralStepper() = default;

VectorGrid SpectralStepper::drift_field(const GridDensity& rho) const {
  if (rho.m != m_ || rho.box_length != box_length_) throw DomainError("grid does not match stepper");
  Spectrum rho_hat(fft_->complex_size());
  fft_->forward(rho.values.data(), rho_hat.data());
  const double h2 = rho.cell() * rho.cell();
  Spectrum vx(rho_hat.size()), vy(rho_hat.size());
  for (std::size_t i = 0; i < rho_hat.size(); ++i) {
    vx[i] = h2 * kx_hat_[i] * rho_hat[i];
    vy[i] = h2 * ky_hat_[i] * rho_hat[i];
  }
  VectorGrid out{m_, std::vector<double>(rho.values.size()), std::vector<double>(rho.values.size())};
  fft_->inverse(vx.data(), out.vx.data());
  fft_->inverse(vy.data(), out.vy.data());
  return out;
}

double SpectralStepper::max_speed(const GridDensity& rho) const {
  const VectorGrid v = drift_field(rho);
  double s = 0.0;
  for (std::size_t i = 0; i < v.vx.size(); ++i) s = std::max(s, std::hypot(v.vx[i], v.vy[i]));
  return kernel_.chi * s;
}

SpectralStepper::Spectrum SpectralStepper::advection(const Spectrum& rho_hat, const GridDensity& rho) const {
  const double h2 = rho.cell() * rho.cell();
  const std::size_t nc = rho_hat.size();
  const std::size_t n = rho.values.size();
  Spectrum vx(nc), vy(nc);
  for (std::size_t i = 0; i < nc; ++i) {
    vx[i] = h2 * kx_hat_[i] * rho_hat[i];
    vy[i] = h2 * ky_hat_[i] * rho_hat[i];
  }
  std::vector<double> fx(n), fy(n);
  fft_->inverse(vx.data(), fx.data());
  fft_->inverse(vy.data(), fy.data());
  const double speed_limit = 0.5 * rho.cell() / dt_;
  double vmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    vmax = std::max(vmax, kernel_.chi * std::hypot(fx[i], fy[i]));
    fx[i] *= rho.values[i];
    fy[i] *= rho.values[i];
  }
  if (vmax > speed_limit) throw CflError("advective CFL violated: dt*max|v| exceeds half a cell");
  fft_->forward(fx.data(), vx.data());
  fft_->forward(fy.data(), vy.data());
  // -chi div(rho v) in Fourier space, dealiased.
  Spectrum out(nc);
  const Complex i_unit(0.0, 1.0);
  for (std::size_t i = 0; i < nc; ++i)
    out[i] = keep_[i] ? -kernel_.chi * i_unit * (wave_x_[i] * vx[i] + wave_y_[i] * vy[i]) : Complex{};
  return out;
}

GridDensity SpectralStepper::step(const GridDensity& rho) const {
  if (rho.m != m_ || rho.box_length != box_length_) throw DomainError("grid does not match stepper");
  const std::size_t nc = fft_->complex_size();
  Spectrum rho_hat(nc);
  fft_->forward(rho.values.data(), rho_hat.data());
  GridDensity next = rho;
  next.time = rho.time + dt_;
  Spectrum out(nc);
  if (kernel_.chi == 0.0) {
    for (std::size_t i = 0; i < nc; ++i) out[i] = multipliers_[i] * rho_hat[i];
  } else {
    const Spectrum n0 = advection(rho_hat, rho);
    Spectrum stage(nc);
    for (std::size_t i = 0; i < nc; ++i) stage[i] = multipliers_[i] * (rho_hat[i] + dt_ * n0[i]);
    GridDensity mid = rho;
    fft_->inverse(stage.data(), mid.values.data());
    const Spectrum n1 = advection(stage, mid);
    for (std::size_t i = 0; i < nc; ++i)
      out[i] = multipliers_[i] * (rho_hat[i] + 0.5 * dt_ * n0[i]) + 0.5 * dt_ * n1[i];
  }
  fft_->inverse(out.data(), next.values.data());
  const double m0 = rho.mass(), m1 = next.mass();
  if (std::abs(m1 - m0) > 1e-12 * std::abs(m0)) throw MassDriftError("mass conservation breached in PDE step");
  return next;
}

VectorGrid drift_field(const GridDensity& rho, const KernelParams& kernel) {
  rho.validate();
  SpectralStepper s(rho.m, rho.box_length, kernel, 2.0, 1.0);
  return s.drift_field(rho);
}

GridDensity step_semi_implicit(const GridDensity& rho, const KernelParams& kernel, double a, double dt) {
  SpectralStepper s(rho.m, rho.box_length, kernel, a, dt);
  return s.step(rho);
}

double boundary_mass(const GridDensity& rho) {
  const double inner = 0.25 * rho.box_length;
  double s = 0.0;
  for (int iy = 0; iy < rho.m; ++iy)
    for (int ix = 0; ix < rho.m; ++ix) {
      const Vec2 x = rho.node(ix, iy);
      if (std::max(std::abs(x.x), std::abs(x.y)) > inner) s += rho.at(ix, iy);
    }
  return s * rho.cell() * rho.cell();
}

double outside_ball_mass(const GridDensity& rho) {
  const double r2 = 0.0625 * rho.box_length * rho.box_length;
  double s = 0.0;
  for (int iy = 0; iy < rho.m; ++iy)
    for (int ix = 0; ix < rho.m; ++ix)
      if (norm2(rho.node(ix, iy)) > r2) s += rho.at(ix, iy);
  return s * rho.cell() * rho.cell();
}

PdeRun run_pde(const SimConfig& config, int m, double box_length) {
  config.validate();
  PdeRun out;
  GridDensity rho = GridDensity::from_pdf([&](const Vec2& x) { return config.initial.pdf(x); }, m, box_length);
  out.initial_outside_mass = outside_ball_mass(rho);
  out.snapshots.push_back(rho);
  const std::size_t steps = config.steps();
  // The CFL check inside the stepper is authoritative; the split below keeps a
  // factor-two margin against growth of the speed within one macro step.
  std::unique_ptr<SpectralStepper> stepper;
  std::size_t current_split = 0;
  auto stepper_for = [&](std::size_t split) -> const SpectralStepper& {
    if (split != current_split) {
      stepper = std::make_unique<SpectralStepper>(m, box_length, config.kernel, config.a,
                                                  config.dt / static_cast<double>(split));
      current_split = split;
    }
    return *stepper;
  };
  for (std::size_t s = 1; s <= steps; ++s) {
    const double speed = stepper_for(std::max<std::size_t>(1, current_split)).max_speed(rho);
    std::size_t split = 1;
    while (speed * config.dt / static_cast<double>(split) > 0.25 * rho.cell()) split *= 2;
    const SpectralStepper& st = stepper_for(split);
    const double m0 = rho.mass();
    for (std::size_t k = 0; k < split; ++k) {
      rho = st.step(rho);
      ++out.substeps;
    }
    rho.time = static_cast<double>(s) * config.dt;
    out.max_relative_mass_change = std::max(out.max_relative_mass_change, std::abs(rho.mass() - m0) / m0);
    if (!out.unreliable && rho.min_value() < -1e-6 * rho.max_value()) {
      out.unreliable = true;
      out.unreliable_after = rho.time;
    }
    if (!out.boundary_contamination && boundary_mass(rho) > 1e-4) {
      out.boundary_contamination = true;
      out.contamination_time = rho.time;
    }
    if (s % static_cast<std::size_t>(config.record_every) == 0 || s == steps) out.snapshots.push_back(rho);
  }
  return out;
}

double fourier_interpolate(const GridDensity& rho, const Vec2& x) {
  // Nyquist rows and columns are dropped; they carry no mass for resolved data.
  const int m = rho.m;
  const double L = rho.box_length;
  Fft2d fft(m);
  std::vector<Complex> hat(fft.complex_size());
  fft.forward(rho.values.data(), hat.data());
  const int mc = m / 2 + 1;
  const double dk = 2.0 * pi / L;
  // Node (0, 0) sits at (-L/2, -L/2).
  const double ux = x.x + 0.5 * L, uy = x.y + 0.5 * L;
  double sum = 0.0;
  for (int iy = 0; iy < m; ++iy) {
    const int jy = wrap_index(iy, m);
    if (2 * jy == -m) continue;
    for (int ix = 0; 2 * ix < m; ++ix) {
      const Complex c = hat[static_cast<std::size_t>(iy) * mc + ix];
      const double phase = dk * (ix * ux + jy * uy);
      const double term = c.real() * std::cos(phase) - c.imag() * std::sin(phase);
      sum += (ix == 0 ? 1.0 : 2.0) * term;
    }
  }
  return sum / (static_cast<double>(m) * m);
}

std::vector<RadialBin> radial_profile(const GridDensity& rho, int bins) {
  if (bins < 1) throw DomainError("radial profile needs at least one bin");
  const double rmax = 0.5 * rho.box_length;
  std::vector<double> sum(bins, 0.0), count(bins, 0.0);
  for (int iy = 0; iy < rho.m; ++iy)
    for (int ix = 0; ix < rho.m; ++ix) {
      const double r = norm(rho.node(ix, iy));
      if (r >= rmax) continue;
      const int b = std::min(bins - 1, static_cast<int>(r / rmax * bins));
      sum[b] += rho.at(ix, iy);
      count[b] += 1.0;
    }
  std::vector<RadialBin> out;
  for (int b = 0; b < bins; ++b)
    if (count[b] > 0.0) out.push_back({(b + 0.5) * rmax / bins, sum[b] / count[b]});
  return out;
}

double second_moment(const GridDensity& rho) {
  double s = 0.0;
  for (int iy = 0; iy < rho.m; ++iy)
    for (int ix = 0; ix < rho.m; ++ix) s += norm2(rho.node(ix, iy)) * rho.at(ix, iy);
  return s * rho.cell() * rho.cell();
}

}  // namespace fks
