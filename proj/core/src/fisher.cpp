// SPDX-License-Identifier: Apache-2.0
#include "fks/fisher.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "fks/error.hpp"
#include "fks/fft.hpp"

namespace fks {
namespace {

constexpr double kFloor = 1e-30;

int wrap_index(int i, int m) { return i < m / 2 ? i : i - m; }

// int over the unit square centred at 0 of |z|^{-a}.
double unit_cell_singular_integral(double a) {
  using G = boost::math::quadrature::gauss<double, 20>;
  const double q = G::integrate([a](double th) { return std::pow(2.0 * std::cos(th), a - 2.0); }, 0.0,
                                0.25 * std::numbers::pi);
  return 8.0 / (2.0 - a) * q;
}

}  // namespace

void FisherGridDensity::validate() const {
  if (m < 4 || values.size() != static_cast<std::size_t>(m) * m || !(box_length > 0.0))
    throw DomainError("malformed Fisher grid density");
  double s = 0.0;
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) throw DomainError("Fisher grid density must be finite and non-negative");
    s += v;
  }
  if (std::abs(s * cell() * cell() - 1.0) > 1e-8) throw DomainError("Fisher grid density is not mass-normalised");
}

FisherGridDensity FisherGridDensity::from_grid(const GridDensity& rho) {
  FisherGridDensity f{rho.m, rho.box_length, rho.values};
  for (double& v : f.values) v = std::max(v, 0.0);
  double s = 0.0;
  for (double v : f.values) s += v;
  const double scale = 1.0 / (s * f.cell() * f.cell());
  for (double& v : f.values) v *= scale;
  return f;
}

FisherGridDensity FisherGridDensity::from_pdf(const std::function<double(const Vec2&)>& pdf, int m,
                                              double box_length) {
  return from_grid(GridDensity::from_pdf(pdf, m, box_length));
}

FisherBreakdown fisher_pair_integral(std::span<const double> values, int m, double box_length, double a) {
  if (!(a > 0.0 && a < 2.0)) throw DomainError("index a must lie in (0, 2)");
  if (values.size() != static_cast<std::size_t>(m) * m) throw DomainError("grid size mismatch");
  const double h = box_length / m;
  const std::size_t n = values.size();
  std::vector<double> rho(n), logr(n), w(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    rho[i] = std::max(values[i], kFloor);
    logr[i] = std::log(rho[i]);
  }
  double wsum = 0.0;
  for (int iy = 0; iy < m; ++iy)
    for (int ix = 0; ix < m; ++ix) {
      const int ox = wrap_index(ix, m), oy = wrap_index(iy, m);
      if (ox == 0 && oy == 0) continue;
      const double r2 = h * h * (static_cast<double>(ox) * ox + static_cast<double>(oy) * oy);
      const double v = std::pow(r2, -0.5 * (2.0 + a));
      w[static_cast<std::size_t>(iy) * m + ix] = v;
      wsum += v;
    }
  // sum_{i != j} w_{j-i} Phi(rho_i, rho_j) = 2 W sum rho L - 2 sum rho (w * L).
  Fft2d fft(m);
  std::vector<std::complex<double>> wh(fft.complex_size()), lh(fft.complex_size());
  fft.forward(w.data(), wh.data());
  fft.forward(logr.data(), lh.data());
  for (std::size_t i = 0; i < wh.size(); ++i) lh[i] *= wh[i];
  std::vector<double> conv(n);
  fft.inverse(lh.data(), conv.data());
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s1 += rho[i] * logr[i];
    s2 += rho[i] * conv[i];
  }
  const double h4 = h * h * h * h;
  FisherBreakdown out;
  out.off_diagonal = std::max(0.0, 2.0 * h4 * (wsum * s1 - s2));

  const double cell_weight = 0.5 * unit_cell_singular_integral(a) * std::pow(h, 2.0 - a);
  double diag = 0.0;
  for (int iy = 0; iy < m; ++iy)
    for (int ix = 0; ix < m; ++ix) {
      auto at = [&](int x, int y) { return rho[static_cast<std::size_t>((y + m) % m) * m + (x + m) % m]; };
      const double gx = (at(ix + 1, iy) - at(ix - 1, iy)) / (2.0 * h);
      const double gy = (at(ix, iy + 1) - at(ix, iy - 1)) / (2.0 * h);
      diag += (gx * gx + gy * gy) / at(ix, iy);
    }
  out.diagonal = h * h * cell_weight * diag;
  out.total = out.off_diagonal + out.diagonal;
  return out;
}

FisherBreakdown fisher_breakdown(const FisherGridDensity& rho, double a) {
  rho.validate();
  FisherBreakdown d = fisher_pair_integral(rho.values, rho.m, rho.box_length, a);
  d.total *= 0.5;
  d.off_diagonal *= 0.5;
  d.diagonal *= 0.5;
  return d;
}

double fisher_info_grid(const FisherGridDensity& rho, double a) {
  const FisherBreakdown d = fisher_breakdown(rho, a);
  if (d.diagonal > 0.1 * d.total)
    throw ResolutionError("near-diagonal correction exceeds 10% of the Fisher information");
  return d.total;
}

double fisher_partial_two_particle(std::span<const double> g, int m, double box_length, double a, int particle) {
  const std::size_t m2 = static_cast<std::size_t>(m) * m;
  if (g.size() != m2 * m2) throw DomainError("4-D grid size mismatch");
  if (particle != 1 && particle != 2) throw DomainError("particle index must be 1 or 2");
  const double h = box_length / m;
  std::vector<double> slice(m2);
  double sum = 0.0;
  for (std::size_t z = 0; z < m2; ++z) {
    for (std::size_t x = 0; x < m2; ++x) slice[x] = particle == 1 ? g[x * m2 + z] : g[z * m2 + x];
    sum += h * h * fisher_pair_integral(slice, m, box_length, a).total;
  }
  return sum;
}

double fisher_info_two_particle(std::span<const double> g, int m, double box_length, double a) {
  return 0.25 * (fisher_partial_two_particle(g, m, box_length, a, 1) +
                 fisher_partial_two_particle(g, m, box_length, a, 2));
}

std::vector<double> shear_two_particle(std::span<const double> g, int m) {
  const std::size_t m2 = static_cast<std::size_t>(m) * m;
  if (g.size() != m2 * m2) throw DomainError("4-D grid size mismatch");
  std::vector<double> out(g.size());
  // Node i sits at (i - m/2) h, so y1 + y2 has index i0 + i2 - m/2 (mod m).
  auto idx = [m](int i) { return ((i % m) + m) % m; };
  for (int i0 = 0; i0 < m; ++i0)
    for (int i1 = 0; i1 < m; ++i1)
      for (int i2 = 0; i2 < m; ++i2)
        for (int i3 = 0; i3 < m; ++i3) {
          const int s0 = idx(i0 + i2 - m / 2), s1 = idx(i1 + i3 - m / 2);
          const std::size_t dst = ((static_cast<std::size_t>(i0) * m + i1) * m + i2) * m + i3;
          const std::size_t src = ((static_cast<std::size_t>(s0) * m + s1) * m + i2) * m + i3;
          out[dst] = g[src];
        }
  return out;
}

double gns_theta(double p, double a) {
  if (!(a > 0.0 && a < 2.0)) throw DomainError("index a must lie in (0, 2)");
  if (!(p > 1.0 && p <= 2.0 / (2.0 - a))) throw DomainError("p outside (1, 2/(2-a)]");
  return 1.0 - (2.0 / a) * (1.0 / p - 0.5 * (2.0 - a));
}

double lp_norm(const FisherGridDensity& rho, double p) {
  double s = 0.0;
  for (double v : rho.values) s += std::pow(std::max(v, 0.0), p);
  return std::pow(s * rho.cell() * rho.cell(), 1.0 / p);
}

GnsScalingReport gns_scaling_report(double p, double a) {
  GnsScalingReport r;
  r.theta = gns_theta(p, a);
  r.identity_residual = std::abs(a * r.theta - 2.0 * (1.0 - 1.0 / p));
  // Box and grid scale with the width, so the discrete problems are exact rescalings.
  constexpr int kM = 64;
  r.ratio_min = std::numeric_limits<double>::infinity();
  r.ratio_max = 0.0;
  for (double sigma : {0.5, 0.75, 1.0, 1.5, 2.0}) {
    const auto rho = FisherGridDensity::from_pdf(
        [sigma](const Vec2& x) { return std::exp(-0.5 * norm2(x) / (sigma * sigma)); }, kM, 12.0 * sigma);
    const double ratio = lp_norm(rho, p) / std::pow(fisher_breakdown(rho, a).total, r.theta);
    r.ratio_min = std::min(r.ratio_min, ratio);
    r.ratio_max = std::max(r.ratio_max, ratio);
  }
  const double tol = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(a * r.theta));
  r.pass = r.identity_residual <= tol && r.ratio_max <= 1.02 * r.ratio_min;
  return r;
}

bool gns_scaling_check(double p, double a) { return gns_scaling_report(p, a).pass; }

}  // namespace fks
