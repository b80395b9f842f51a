// SPDX-License-Identifier: Apache-2.0
#include "fks/stable_noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fks/error.hpp"
#include "fks/stats.hpp"

namespace fks {

void StableParams::validate() const {
  if (!(a > 0.0 && a <= 2.0)) throw DomainError("stability index a must lie in (0, 2]");
  if (!(t > 0.0)) throw DomainError("horizon t must be positive");
}

double sample_subordinator(double a_half, double t, RngStream& rng) {
  if (!(a_half > 0.0 && a_half < 1.0)) throw DomainError("a_half must lie in (0, 1)");
  if (!(t > 0.0)) throw DomainError("horizon t must be positive");
  const double b = a_half;
  const double u = std::numbers::pi * rng.uniform();
  const double w = rng.exponential();
  // A(u) = [sin(b u)/sin u]^{1/(1-b)} sin((1-b)u)/sin(b u), S_1 = (A/W)^{(1-b)/b}.
  const double log_a = std::log(std::sin(b * u) / std::sin(u)) / (1.0 - b) +
                       std::log(std::sin((1.0 - b) * u) / std::sin(b * u));
  const double log_s1 = (1.0 - b) / b * (log_a - std::log(w));
  return std::exp(log_s1 + std::log(t) / b);
}

Vec2 sample_isotropic_stable(const StableParams& p, RngStream& rng) {
  p.validate();
  if (p.a == 2.0) {
    const auto [g1, g2] = rng.normal_pair();
    const double s = std::sqrt(2.0 * p.t);
    return {s * g1, s * g2};
  }
  const double sub = sample_subordinator(0.5 * p.a, p.t, rng);
  const auto [g1, g2] = rng.normal_pair();
  const double s = std::sqrt(2.0 * sub);
  return {s * g1, s * g2};
}

std::vector<Vec2> sample_isotropic_stable_n(const StableParams& p, RngStream& rng, std::size_t n) {
  std::vector<Vec2> out(n);
  for (auto& z : out) z = sample_isotropic_stable(p, rng);
  return out;
}

std::vector<CharExponentEstimate> empirical_char_exponent(std::span<const Vec2> samples, double t,
                                                          std::span<const double> radii) {
  if (samples.size() < 10000) throw DomainError("empirical_char_exponent needs >= 1e4 samples");
  if (!(t > 0.0)) throw DomainError("horizon t must be positive");
  constexpr int kDirections = 32;
  std::vector<Vec2> dirs(kDirections);
  for (int k = 0; k < kDirections; ++k) {
    const double th = std::numbers::pi * k / kDirections;
    dirs[k] = {std::cos(th), std::sin(th)};
  }
  const double n = static_cast<double>(samples.size());
  std::vector<CharExponentEstimate> out;
  out.reserve(radii.size());
  for (double r : radii) {
    if (!(r > 0.0 && r <= 3.0)) throw DomainError("radii must lie in (0, 3]");
    double sum = 0.0, sum2 = 0.0;
    for (const Vec2& z : samples) {
      double v = 0.0;
      for (const Vec2& e : dirs) v += std::cos(r * dot(e, z));
      v /= kDirections;
      sum += v;
      sum2 += v * v;
    }
    const double phi = sum / n;
    if (!(phi > 0.0))
      throw AccuracyError("empirical characteristic function non-positive at |r|=" + std::to_string(r));
    const double se_phi = std::sqrt(std::max(0.0, sum2 / n - phi * phi) / (n - 1.0));
    out.push_back({r, -std::log(phi) / t, se_phi / (phi * t)});
  }
  return out;
}

double levy_cdf(double s, double t) {
  if (s <= 0.0) return 0.0;
  return std::erfc(t / (2.0 * std::sqrt(s)));
}

namespace {

enum Stream : std::uint64_t {
  kStreamA = 0,
  kStreamB,
  kStreamC,
  kStreamD,
  kStreamE,
  kStreamF,
};

std::vector<double> radii_of(const std::vector<Vec2>& z) {
  std::vector<double> r(z.size());
  std::transform(z.begin(), z.end(), r.begin(), [](const Vec2& v) { return norm(v); });
  return r;
}

std::vector<double> xs_of(const std::vector<Vec2>& z) {
  std::vector<double> r(z.size());
  std::transform(z.begin(), z.end(), r.begin(), [](const Vec2& v) { return v.x; });
  return r;
}

SelfTestResult p_value_test(std::string name, double p, double level) {
  return {std::move(name), p, level, p > level};
}

}  // namespace

std::vector<SelfTestResult> run_noise_selftest(const SelfTestConfig& cfg) {
  const StableParams base{cfg.a, cfg.t};
  base.validate();
  if (cfg.samples < 10000) throw DomainError("self-test needs >= 1e4 samples");
  const std::size_t n = cfg.samples;
  const double dn = static_cast<double>(n);
  std::vector<SelfTestResult> out;

  RngStream rng_a(cfg.seed, kStreamA);
  const auto z = sample_isotropic_stable_n(base, rng_a, n);

  if (cfg.a < 2.0) {
    const double b = 0.5 * cfg.a;
    RngStream rs(cfg.seed, kStreamE);
    std::vector<double> s1(n), st(n);
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s1[i] = sample_subordinator(b, 1.0, rs);
      const double e = std::exp(-s1[i] * std::pow(cfg.t, 1.0 / b));
      sum += e;
      sum2 += e * e;
    }
    // S_t has the law of t^{1/b} S_1, so E exp(-S_t) = exp(-t).
    const double m = sum / dn;
    const double se = std::sqrt(std::max(0.0, sum2 / dn - m * m) / (dn - 1.0));
    out.push_back({"subordinator_laplace", std::abs(m - std::exp(-cfg.t)) / se, 3.0,
                   std::abs(m - std::exp(-cfg.t)) <= 3.0 * se});
    for (std::size_t i = 0; i < n; ++i) st[i] = sample_subordinator(b, cfg.t, rs) / std::pow(cfg.t, 1.0 / b);
    out.push_back(p_value_test("subordinator_time_scaling_ks", stats::ks_two_sample(s1, st).p_value, cfg.level));
    if (cfg.a == 1.0) {
      const auto ks = stats::ks_one_sample(s1, [](double s) { return levy_cdf(s, 1.0); });
      out.push_back(p_value_test("subordinator_levy_cdf_ks", ks.p_value, cfg.level));
    }
  } else {
    std::vector<double> xs = xs_of(z);
    const double v = stats::variance(xs);
    const double se = 2.0 * cfg.t * std::sqrt(2.0 / dn);
    out.push_back({"gaussian_variance", std::abs(v - 2.0 * cfg.t) / se, 3.0, std::abs(v - 2.0 * cfg.t) <= 3.0 * se});
  }

  {
    // Re E exp(i r.Z) at r = (1, 0).
    double sum = 0.0, sum2 = 0.0;
    for (const Vec2& v : z) {
      const double c = std::cos(v.x);
      sum += c;
      sum2 += c * c;
    }
    const double m = sum / dn;
    const double se = std::sqrt(std::max(0.0, sum2 / dn - m * m) / (dn - 1.0));
    const double target = std::exp(-cfg.t);
    out.push_back({"char_function_r1", std::abs(m - target) / se, 3.0, std::abs(m - target) <= 3.0 * se});
  }

  {
    const std::vector<double> radii{0.25, 0.5, 1.0, 2.0};
    std::vector<double> scaled(radii.size());
    // Keep t|r|^a in a well-estimated range regardless of t.
    const double scale = std::pow(cfg.t, -1.0 / cfg.a);
    for (std::size_t i = 0; i < radii.size(); ++i) scaled[i] = std::min(3.0, radii[i] * scale);
    const auto est = empirical_char_exponent(z, cfg.t, scaled);
    std::vector<double> lx, ly;
    for (const auto& e : est) {
      lx.push_back(std::log(e.radius));
      ly.push_back(std::log(e.exponent));
    }
    const auto fit = stats::linear_fit(lx, ly);
    out.push_back({"char_exponent_slope", std::abs(fit.slope - cfg.a), 0.05, std::abs(fit.slope - cfg.a) <= 0.05});
  }

  {
    constexpr double u = 4.0;
    RngStream rng_b(cfg.seed, kStreamB);
    auto zu = sample_isotropic_stable_n({cfg.a, u * cfg.t}, rng_b, n);
    const double f = std::pow(u, -1.0 / cfg.a);
    for (auto& v : zu) v *= f;
    out.push_back(p_value_test("self_similarity_radius_ks", stats::ks_two_sample(radii_of(z), radii_of(zu)).p_value,
                               cfg.level));
    out.push_back(
        p_value_test("self_similarity_x_ks", stats::ks_two_sample(xs_of(z), xs_of(zu)).p_value, cfg.level));
  }

  {
    constexpr int kBins = 36;
    std::vector<double> counts(kBins, 0.0);
    for (const Vec2& v : z) {
      double th = std::atan2(v.y, v.x);
      if (th < 0.0) th += 2.0 * std::numbers::pi;
      const int bin = std::min(kBins - 1, static_cast<int>(th / (2.0 * std::numbers::pi) * kBins));
      counts[bin] += 1.0;
    }
    out.push_back(p_value_test("isotropy_chi_square", stats::chi_square_uniform(counts).p_value, cfg.level));
  }

  {
    RngStream rc(cfg.seed, kStreamC), rd(cfg.seed, kStreamD);
    const double t1 = 0.3 * cfg.t, t2 = 0.7 * cfg.t;
    auto z1 = sample_isotropic_stable_n({cfg.a, t1}, rc, n);
    const auto z2 = sample_isotropic_stable_n({cfg.a, t2}, rc, n);
    for (std::size_t i = 0; i < n; ++i) z1[i] += z2[i];
    const auto zs = sample_isotropic_stable_n(base, rd, n);
    out.push_back(
        p_value_test("increment_additivity_ks", stats::ks_two_sample(xs_of(z1), xs_of(zs)).p_value, cfg.level));
  }

  {
    RngStream again(cfg.seed, kStreamA);
    const std::size_t m = std::min<std::size_t>(n, 1000);
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const Vec2 v = sample_isotropic_stable(base, again);
      if (!(v == z[i])) ++mismatches;
    }
    out.push_back({"determinism", static_cast<double>(mismatches), 0.0, mismatches == 0});
  }
  return out;
}

}  // namespace fks
