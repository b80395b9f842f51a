// SPDX-License-Identifier: Apache-2.0
#include "fks/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "fks/csv.hpp"
#include "fks/error.hpp"
#include "fks/parallel.hpp"
#include "fks/rng.hpp"
#include "fks/wasserstein.hpp"

namespace fks {

void DiagnosticsSeries::add(double t, std::string name, double value, double mc_error) {
  if (!records.empty() && t < records.back().t) throw DomainError("diagnostic times must be nondecreasing");
  if (!(mc_error >= 0.0)) throw DomainError("mc_error must be non-negative");
  records.push_back({t, std::move(name), value, mc_error});
}

std::vector<double> DiagnosticsSeries::times_of(const std::string& name) const {
  std::vector<double> out;
  for (const auto& r : records)
    if (r.name == name) out.push_back(r.t);
  return out;
}

std::vector<double> DiagnosticsSeries::values_of(const std::string& name) const {
  std::vector<double> out;
  for (const auto& r : records)
    if (r.name == name) out.push_back(r.value);
  return out;
}

void DiagnosticsSeries::write_csv(std::ostream& os) const {
  write_csv_row(os, {"t", "metric", "value", "mc_error"});
  for (const auto& r : records)
    write_csv_row(os, {format_double(r.t), r.name, format_double(r.value), format_double(r.mc_error)});
}

Estimate moment_estimate(std::span<const Vec2> x, double kappa) {
  if (x.empty()) throw DomainError("moment of an empty ensemble");
  double s = 0.0, s2 = 0.0;
  for (const Vec2& p : x) {
    const double v = std::pow(1.0 + norm2(p), 0.5 * kappa);
    s += v;
    s2 += v * v;
  }
  const double n = static_cast<double>(x.size());
  const double m = s / n;
  const double var = n > 1 ? std::max(0.0, (s2 - n * m * m) / (n - 1.0)) : 0.0;
  return {m, std::sqrt(var / n)};
}

double empirical_moment(const ParticleEnsemble& ens, double kappa) {
  return moment_estimate(ens.positions, kappa).value;
}

Estimate pair_moment_estimate(std::span<const Vec2> x, double gamma, double m_cap) {
  if (!(gamma > 0.0) || !(m_cap > 0.0)) throw DomainError("pair moment needs gamma > 0 and m_cap > 0");
  const std::size_t n = x.size();
  if (n < 2) throw DomainError("pair moment needs two particles");
  // Row sums h1(i) = sum_{j != i} h(x_i, x_j) give both the U-statistic and its
  // Hoeffding-projection standard error 2 sd(h1 / (N-1)) / sqrt(N).
  std::vector<double> row(n, 0.0);
  parallel_for(n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double r2 = norm2(x[i] - x[j]);
        s += r2 == 0.0 ? m_cap : std::min(m_cap, std::pow(r2, -0.5 * gamma));
      }
      row[i] = s / static_cast<double>(n - 1);
    }
  });
  const double dn = static_cast<double>(n);
  double mean = 0.0;
  for (double v : row) mean += v;
  mean /= dn;
  double var = 0.0;
  for (double v : row) var += (v - mean) * (v - mean);
  var /= std::max(1.0, dn - 1.0);
  return {mean, 2.0 * std::sqrt(var / dn)};
}

double singular_pair_moment(const ParticleEnsemble& ens, double gamma, double m_cap) {
  return pair_moment_estimate(ens.positions, gamma, m_cap).value;
}

double entropy_kde(std::span<const Vec2> x, double bandwidth) {
  if (!(bandwidth > 0.0)) throw DomainError("bandwidth must be positive");
  if (x.empty()) throw DomainError("entropy of an empty ensemble");
  constexpr double kReach = 6.0;
  double xmin = x[0].x, xmax = x[0].x, ymin = x[0].y, ymax = x[0].y;
  for (const Vec2& p : x) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  xmin -= kReach * bandwidth;
  ymin -= kReach * bandwidth;
  xmax += kReach * bandwidth;
  ymax += kReach * bandwidth;
  double h = 0.25 * bandwidth;
  constexpr double kMaxCells = 1.6e7;
  while (((xmax - xmin) / h + 1.0) * ((ymax - ymin) / h + 1.0) > kMaxCells) h *= 1.25;
  const int nx = static_cast<int>(std::ceil((xmax - xmin) / h)) + 1;
  const int ny = static_cast<int>(std::ceil((ymax - ymin) / h)) + 1;
  std::vector<double> grid(static_cast<std::size_t>(nx) * ny, 0.0);
  const double norm_c = 1.0 / (2.0 * std::numbers::pi * bandwidth * bandwidth * static_cast<double>(x.size()));
  const int reach = static_cast<int>(std::ceil(kReach * bandwidth / h));
  std::vector<double> wx(2 * reach + 1), wy(2 * reach + 1);
  for (const Vec2& p : x) {
    const int cx = static_cast<int>(std::lround((p.x - xmin) / h));
    const int cy = static_cast<int>(std::lround((p.y - ymin) / h));
    for (int k = -reach; k <= reach; ++k) {
      const double dx = xmin + (cx + k) * h - p.x;
      const double dy = ymin + (cy + k) * h - p.y;
      wx[k + reach] = std::exp(-0.5 * dx * dx / (bandwidth * bandwidth));
      wy[k + reach] = std::exp(-0.5 * dy * dy / (bandwidth * bandwidth));
    }
    for (int ky = -reach; ky <= reach; ++ky) {
      const int iy = cy + ky;
      if (iy < 0 || iy >= ny) continue;
      for (int kx = -reach; kx <= reach; ++kx) {
        const int ix = cx + kx;
        if (ix < 0 || ix >= nx) continue;
        grid[static_cast<std::size_t>(iy) * nx + ix] += norm_c * wx[kx + reach] * wy[ky + reach];
      }
    }
  }
  double s = 0.0;
  for (double v : grid)
    if (v > 0.0) s += v * std::log(v);
  return s * h * h;
}

double entropy_kde(const ParticleEnsemble& ens, double bandwidth) { return entropy_kde(ens.positions, bandwidth); }

double product_gap(std::span<const Vec2> x, std::uint64_t seed) {
  const std::size_t pairs = x.size() / 2;
  if (pairs < 1) throw DomainError("product gap needs at least two particles");
  std::vector<double> joint, product;
  joint.reserve(4 * pairs);
  product.reserve(4 * pairs);
  RngStream boot(seed, 1);
  const auto n = static_cast<double>(x.size());
  auto draw = [&] {
    const auto k = static_cast<std::size_t>(boot.uniform() * n);
    return x[std::min(k, x.size() - 1)];
  };
  for (std::size_t k = 0; k < pairs; ++k) {
    const Vec2 p = x[2 * k], q = x[2 * k + 1];
    joint.insert(joint.end(), {p.x, p.y, q.x, q.y});
    const Vec2 u = draw(), v = draw();
    product.insert(product.end(), {u.x, u.y, v.x, v.y});
  }
  return sliced_wasserstein1(WeightedPointSet::uniform(4, std::move(joint)),
                             WeightedPointSet::uniform(4, std::move(product)), 64, seed);
}

ChaosGap chaos_gap(std::span<const Vec2> x, const GridDensity& reference, std::uint64_t seed) {
  if (!(std::abs(reference.mass() - 1.0) <= 1e-8)) throw DomainError("reference density is not mass-normalised");
  ChaosGap g;
  W1Options opt;
  opt.force_approximate = true;
  opt.seed = seed;
  g.w1_one_marginal = wasserstein1(WeightedPointSet::uniform(x), WeightedPointSet::from_grid(reference), opt).value;
  g.w2_product_gap = product_gap(x, seed);
  return g;
}

ChaosGap chaos_gap(const ParticleEnsemble& ens, const GridDensity& reference, std::uint64_t seed) {
  return chaos_gap(ens.positions, reference, seed);
}

}  // namespace fks
