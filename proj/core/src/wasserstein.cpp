// SPDX-License-Identifier: Apache-2.0
#include "fks/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fks/error.hpp"
#include "fks/rng.hpp"

namespace fks {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double distance(const WeightedPointSet& a, std::size_t i, const WeightedPointSet& b, std::size_t j) {
  const double* p = a.atom(i);
  const double* q = b.atom(j);
  double s = 0.0;
  for (int k = 0; k < a.dim; ++k) s += (p[k] - q[k]) * (p[k] - q[k]);
  return std::sqrt(s);
}

void check_pair(const WeightedPointSet& mu, const WeightedPointSet& nu) {
  if (mu.dim != nu.dim) throw DomainError("point sets live in different dimensions");
  if (mu.size() == 0 || nu.size() == 0) throw DomainError("empty point set");
  for (const auto* s : {&mu, &nu}) {
    if (s->coords.size() != s->size() * static_cast<std::size_t>(s->dim)) throw DomainError("malformed point set");
    for (double w : s->weights)
      if (!(w >= 0.0)) throw DomainError("negative weight in point set");
  }
  if (std::abs(mu.total_mass() - 1.0) > 1e-9 || std::abs(nu.total_mass() - 1.0) > 1e-9)
    throw DomainError("W1 requires unit total mass on both sides");
}

}  // namespace

double WeightedPointSet::total_mass() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

WeightedPointSet WeightedPointSet::uniform(std::span<const Vec2> points) {
  WeightedPointSet s;
  s.dim = 2;
  s.coords.reserve(2 * points.size());
  for (const Vec2& p : points) {
    s.coords.push_back(p.x);
    s.coords.push_back(p.y);
  }
  s.weights.assign(points.size(), 1.0 / static_cast<double>(points.size()));
  return s;
}

WeightedPointSet WeightedPointSet::uniform(int dim, std::vector<double> coords) {
  if (dim < 1 || coords.size() % static_cast<std::size_t>(dim) != 0) throw DomainError("malformed coordinates");
  WeightedPointSet s;
  s.dim = dim;
  s.coords = std::move(coords);
  const std::size_t n = s.coords.size() / static_cast<std::size_t>(dim);
  s.weights.assign(n, 1.0 / static_cast<double>(n));
  return s;
}

WeightedPointSet WeightedPointSet::from_grid(const GridDensity& rho) {
  WeightedPointSet s;
  s.dim = 2;
  const double h2 = rho.cell() * rho.cell();
  for (int iy = 0; iy < rho.m; ++iy)
    for (int ix = 0; ix < rho.m; ++ix) {
      const double v = rho.at(ix, iy);
      if (v <= 0.0) continue;
      const Vec2 x = rho.node(ix, iy);
      s.coords.push_back(x.x);
      s.coords.push_back(x.y);
      s.weights.push_back(v * h2);
    }
  const double total = s.total_mass();
  if (!(total > 0.0)) throw DomainError("grid density has no positive mass");
  for (double& w : s.weights) w /= total;
  return s;
}

double wasserstein1_line(std::vector<std::pair<double, double>> a, std::vector<std::pair<double, double>> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  // Integrate |F_a - F_b| between consecutive breakpoints of the merged support.
  std::size_t i = 0, j = 0;
  double fa = 0.0, fb = 0.0, total = 0.0;
  double prev = std::min(a.front().first, b.front().first);
  while (i < a.size() || j < b.size()) {
    const double next = (j >= b.size() || (i < a.size() && a[i].first <= b[j].first)) ? a[i].first : b[j].first;
    total += std::abs(fa - fb) * (next - prev);
    while (i < a.size() && a[i].first == next) fa += a[i++].second;
    while (j < b.size() && b[j].first == next) fb += b[j++].second;
    prev = next;
  }
  return total;
}

double sliced_wasserstein1(const WeightedPointSet& mu, const WeightedPointSet& nu, int directions,
                           std::uint64_t seed) {
  check_pair(mu, nu);
  if (directions < 1) throw DomainError("sliced W1 needs at least one direction");
  RngStream rng(seed, 0);
  const int d = mu.dim;
  std::vector<double> dir(d);
  std::vector<std::pair<double, double>> pa(mu.size()), pb(nu.size());
  double sum = 0.0;
  for (int k = 0; k < directions; ++k) {
    double n2 = 0.0;
    for (int c = 0; c < d; c += 2) {
      const auto [g1, g2] = rng.normal_pair();
      dir[c] = g1;
      if (c + 1 < d) dir[c + 1] = g2;
    }
    for (double v : dir) n2 += v * v;
    const double inv = 1.0 / std::sqrt(n2);
    for (double& v : dir) v *= inv;
    auto project = [&](const WeightedPointSet& s, std::vector<std::pair<double, double>>& out) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        const double* p = s.atom(i);
        double t = 0.0;
        for (int c = 0; c < d; ++c) t += p[c] * dir[c];
        out[i] = {t, s.weights[i]};
      }
    };
    project(mu, pa);
    project(nu, pb);
    sum += wasserstein1_line(pa, pb);
  }
  return sum / directions;
}

double wasserstein1_exact(const WeightedPointSet& mu, const WeightedPointSet& nu) {
  check_pair(mu, nu);
  // Successive shortest paths with Johnson potentials on the complete bipartite
  // graph (sources = atoms of mu, sinks = atoms of nu), dense Dijkstra.
  const std::size_t n = mu.size(), m = nu.size();
  const double tol = 1e-15;
  std::vector<double> cost(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) cost[i * m + j] = distance(mu, i, nu, j);
  std::vector<double> supply = mu.weights, demand = nu.weights;
  const double s_total = mu.total_mass(), d_total = nu.total_mass();
  for (double& v : supply) v /= s_total;
  for (double& v : demand) v /= d_total;
  std::vector<double> pot_s(n, 0.0), pot_t(m, 0.0);
  // Positive flows per sink: (source, amount).
  std::vector<std::vector<std::pair<std::size_t, double>>> flows(m);

  std::vector<double> dist_s(n), dist_t(m);
  std::vector<long> prev_t(m), prev_s(n);
  std::vector<char> done_s(n), done_t(m);
  while (true) {
    const double rs = std::accumulate(supply.begin(), supply.end(), 0.0);
    const double rd = std::accumulate(demand.begin(), demand.end(), 0.0);
    if (std::min(rs, rd) <= 1e-12) break;
    std::fill(dist_t.begin(), dist_t.end(), kInf);
    std::fill(done_s.begin(), done_s.end(), 0);
    std::fill(done_t.begin(), done_t.end(), 0);
    std::fill(prev_s.begin(), prev_s.end(), -1);
    std::fill(prev_t.begin(), prev_t.end(), -1);
    for (std::size_t i = 0; i < n; ++i) dist_s[i] = supply[i] > tol ? 0.0 : kInf;
    long target = -1;
    while (true) {
      double best = kInf;
      long bi = -1;
      bool is_source = false;
      for (std::size_t i = 0; i < n; ++i)
        if (!done_s[i] && dist_s[i] < best) best = dist_s[i], bi = static_cast<long>(i), is_source = true;
      for (std::size_t j = 0; j < m; ++j)
        if (!done_t[j] && dist_t[j] < best) best = dist_t[j], bi = static_cast<long>(j), is_source = false;
      if (bi < 0) break;
      if (is_source) {
        const std::size_t i = static_cast<std::size_t>(bi);
        done_s[i] = 1;
        for (std::size_t j = 0; j < m; ++j) {
          if (done_t[j]) continue;
          const double nd = best + cost[i * m + j] + pot_s[i] - pot_t[j];
          if (nd < dist_t[j]) {
            dist_t[j] = nd;
            prev_t[j] = static_cast<long>(i);
          }
        }
      } else {
        const std::size_t j = static_cast<std::size_t>(bi);
        done_t[j] = 1;
        if (demand[j] > tol) {
          target = bi;
          break;
        }
        for (const auto& [i, f] : flows[j]) {
          if (done_s[i] || f <= tol) continue;
          const double nd = best - cost[i * m + j] + pot_t[j] - pot_s[i];
          if (nd < dist_s[i]) {
            dist_s[i] = nd;
            prev_s[i] = bi;
          }
        }
      }
    }
    if (target < 0) {
      // Only rounding residue left on one side.
      if (std::max(rs, rd) <= 1e-9) break;
      throw AccuracyError("min-cost flow: no augmenting path with mass remaining");
    }
    const double dt = dist_t[static_cast<std::size_t>(target)];
    for (std::size_t i = 0; i < n; ++i) pot_s[i] += std::min(dist_s[i], dt);
    for (std::size_t j = 0; j < m; ++j) pot_t[j] += std::min(dist_t[j], dt);

    auto flow_ref = [&](std::size_t i, std::size_t j) -> double& {
      for (auto& [src, f] : flows[j])
        if (src == i) return f;
      flows[j].emplace_back(i, 0.0);
      return flows[j].back().second;
    };
    double delta = demand[static_cast<std::size_t>(target)];
    std::size_t j = static_cast<std::size_t>(target);
    std::size_t start = 0;
    while (true) {
      const std::size_t i = static_cast<std::size_t>(prev_t[j]);
      if (prev_s[i] < 0) {
        start = i;
        break;
      }
      const std::size_t jb = static_cast<std::size_t>(prev_s[i]);
      delta = std::min(delta, flow_ref(i, jb));
      j = jb;
    }
    delta = std::min(delta, supply[start]);
    j = static_cast<std::size_t>(target);
    while (true) {
      const std::size_t i = static_cast<std::size_t>(prev_t[j]);
      flow_ref(i, j) += delta;
      if (prev_s[i] < 0) break;
      const std::size_t jb = static_cast<std::size_t>(prev_s[i]);
      flow_ref(i, jb) -= delta;
      j = jb;
    }
    supply[start] -= delta;
    demand[static_cast<std::size_t>(target)] -= delta;
    for (auto& list : flows)
      list.erase(std::remove_if(list.begin(), list.end(), [&](const auto& e) { return e.second <= tol; }),
                 list.end());
  }
  double total = 0.0;
  for (std::size_t j = 0; j < m; ++j)
    for (const auto& [i, f] : flows[j]) total += f * cost[i * m + j];
  return total;
}

W1Result wasserstein1(const WeightedPointSet& mu, const WeightedPointSet& nu, const W1Options& options) {
  check_pair(mu, nu);
  const bool fits = mu.size() + nu.size() <= options.exact_cap;
  if (fits && !options.force_approximate) return {wasserstein1_exact(mu, nu), false};
  if (!options.allow_approximate && !options.force_approximate)
    throw SizeError("combined support exceeds the exact W1 cap; approximate solver not permitted");
  return {sliced_wasserstein1(mu, nu, options.directions, options.seed), true};
}

}  // namespace fks
