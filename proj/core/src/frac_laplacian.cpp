// SPDX-License-Identifier: Apache-2.0
#include "fks/frac_laplacian.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "fks/error.hpp"

namespace fks {
namespace {

using std::numbers::pi;

constexpr int kPanel = 16;

struct Rule {
  std::array<double, kPanel> x{};
  std::array<double, kPanel> w{};
};

// 16-point Gauss-Legendre on [0, 1].
const Rule& unit_rule() {
  static const Rule rule = [] {
    using G = boost::math::quadrature::gauss<double, kPanel>;
    Rule r;
    const auto& ab = G::abscissa();
    const auto& wt = G::weights();
    const int half = kPanel / 2;
    for (int i = 0; i < half; ++i) {
      r.x[half - 1 - i] = 0.5 * (1.0 - ab[i]);
      r.w[half - 1 - i] = 0.5 * wt[i];
      r.x[half + i] = 0.5 * (1.0 + ab[i]);
      r.w[half + i] = 0.5 * wt[i];
    }
    return r;
  }();
  return rule;
}

// Composite Gauss-Legendre of g over [lo, hi] with `panels` equal panels.
template <class G>
double composite(const G& g, double lo, double hi, int panels) {
  const Rule& r = unit_rule();
  const double h = (hi - lo) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double base = lo + p * h;
    double s = 0.0;
    for (int k = 0; k < kPanel; ++k) s += r.w[k] * g(base + h * r.x[k]);
    sum += s * h;
  }
  return sum;
}

void check_index(double a) {
  if (!(a > 0.0 && a < 2.0)) throw DomainError("index a must lie in (0, 2)");
}

}  // namespace

double c_norm_sine_form(double a) {
  check_index(a);
  const double g = boost::math::tgamma(0.5 * a);
  return std::pow(2.0, a) * a * a * g * g * std::sin(0.5 * a * pi) / (4.0 * pi * pi);
}

double c_norm(double a) {
  check_index(a);
  const double c = -std::pow(2.0, a) * boost::math::tgamma(1.0 + 0.5 * a) / (pi * boost::math::tgamma(-0.5 * a));
  const double alt = c_norm_sine_form(a);
  if (std::abs(c - alt) > 1e-12 * std::abs(c))
    throw AccuracyError("closed forms of c_{2,a} disagree at a=" + std::to_string(a));
  return c;
}

void PvQuadratureParams::validate(double a) const {
  if (!(inner_radius > 0.0 && inner_radius < outer_radius))
    throw DomainError("quadrature requires 0 < inner_radius < outer_radius");
  if (radial_nodes < 32 || angular_nodes < 16) throw DomainError("quadrature requires radial >= 32, angular >= 16");
  if (!(growth_exponent >= 0.0 && growth_exponent < a))
    throw DomainError("growth exponent must lie in [0, a)");
  if (!(tail_rel_tol > 0.0)) throw DomainError("tail tolerance must be positive");
}

PvQuadratureParams PvQuadratureParams::defaults_for(const Vec2& x) {
  PvQuadratureParams q;
  const double r = norm(x);
  q.inner_radius = r > 0.0 ? std::min(1.0, 0.5 * r) : 1.0;
  q.outer_radius = 1.0e3 * std::max(1.0, r);
  return q;
}

PvIntegral pv_integral(const ScalarField& f, const VectorField& grad_f, const Vec2& x, double a,
                       const PvQuadratureParams& q) {
  check_index(a);
  q.validate(a);
  const int nth = q.angular_nodes;
  std::vector<Vec2> dirs(nth);
  for (int k = 0; k < nth; ++k) {
    const double th = 2.0 * pi * (k + 0.5) / nth;
    dirs[k] = {std::cos(th), std::sin(th)};
  }
  const double f0 = f(x);
  const Vec2 g0 = grad_f(x);

  auto mean_diff = [&](double r) {
    double s = 0.0;
    for (const Vec2& e : dirs) s += f(x + r * e) - f0;
    return s / nth;
  };
  auto mean_compensated = [&](double r) {
    double s = 0.0;
    for (const Vec2& e : dirs) s += f(x + r * e) - f0 - r * dot(e, g0);
    return s / nth;
  };

  const double rin = q.inner_radius, rout = q.outer_radius;
  const int mid_panels = std::max(2, q.radial_nodes / kPanel);
  const int side_panels = std::max(2, mid_panels / 4);

  // Near field: r = rin s^m, m = 1/(2-a) turns r^{-1-a} dr into a constant weight
  // once the r^2 behaviour of the compensated mean is divided out. Below r_floor
  // the quotient is frozen: it is smooth in r^2 there, and rounding in the
  // compensated difference would otherwise dominate.
  const double m = 1.0 / (2.0 - a);
  const double r_floor = 1e-3 * rin;
  const double near = std::pow(rin, 2.0 - a) * m * composite(
                          [&](double s) {
                            const double r = std::max(r_floor, rin * std::pow(s, m));
                            return mean_compensated(r) / (r * r);
                          },
                          0.0, 1.0, side_panels);

  // Mid field in log r.
  const double mid = composite(
      [&](double t) {
        const double r = std::exp(t);
        return mean_diff(r) * std::pow(r, -a);
      },
      std::log(rin), std::log(rout), mid_panels);

  // Far field: u = (r/rout)^{-a} maps [rout, inf) to (0, 1]; u = v^p absorbs growth.
  const double p = 1.0 / (1.0 - q.growth_exponent / a);
  auto far_integrand = [&](double v) {
    const double u = std::pow(v, p);
    const double r = rout * std::pow(u, -1.0 / a);
    return mean_diff(r) * p * std::pow(v, p - 1.0);
  };
  const double far_scale = std::pow(rout, -a) / a;
  const double far_fine = far_scale * composite(far_integrand, 0.0, 1.0, side_panels);
  const double far_coarse = far_scale * composite(far_integrand, 0.0, 1.0, side_panels / 2);

  PvIntegral out;
  out.value = 2.0 * pi * (near + mid + far_fine);
  out.tail_error = 2.0 * pi * std::abs(far_fine - far_coarse);
  if (out.tail_error > q.tail_rel_tol * std::abs(out.value))
    throw AccuracyError("far-field error estimate " + std::to_string(out.tail_error) + " exceeds tolerance");
  return out;
}

double apply_pv(const ScalarField& f, const VectorField& grad_f, const Vec2& x, double a,
                const PvQuadratureParams& q) {
  return c_norm(a) * pv_integral(f, grad_f, x, a, q).value;
}

double exact_power_law(double a, double eps, const Vec2& x) {
  if (!(eps > 0.0 && eps < a && a < 2.0)) throw DomainError("exact_power_law requires 0 < eps < a < 2");
  const double r = norm(x);
  if (!(r > 0.0)) throw DomainError("exact_power_law requires x != 0");
  using boost::math::tgamma;
  const double pref = -std::pow(2.0, a) * tgamma(0.5 * (2.0 + eps)) * tgamma(0.5 * (a - eps)) /
                      (tgamma(-0.5 * eps) * tgamma(0.5 * (2.0 + eps - a)));
  return pref * std::pow(r, eps - a);
}

double frlap_constant(double eps, double a) {
  return (2.0 - eps) / (std::sqrt(4.0 - eps) * (3.0 - a) * eps) + 1.0 / (a * eps);
}

LowerBoundCheck smoothed_power_lower_bound(double a, double eps, double eta, const Vec2& x) {
  return smoothed_power_lower_bound(a, eps, eta, x, PvQuadratureParams::defaults_for(x));
}

LowerBoundCheck smoothed_power_lower_bound(double a, double eps, double eta, const Vec2& x,
                                           const PvQuadratureParams& q_in) {
  if (!(a > 1.0 && a < 2.0)) throw DomainError("lower bound requires a in (1, 2)");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("lower bound requires eps in (0, 1)");
  if (!(eta > 0.0)) throw DomainError("lower bound requires eta > 0");
  const double r = norm(x);
  if (!(r > 0.0)) throw DomainError("lower bound requires x != 0");
  const double eta2 = eta * eta;
  auto phi = [=](const Vec2& y) { return std::pow(norm2(y) + eta2, 0.5 * eps); };
  auto grad = [=](const Vec2& y) { return eps * std::pow(norm2(y) + eta2, 0.5 * eps - 1.0) * y; };
  PvQuadratureParams q = q_in;
  q.growth_exponent = eps;
  LowerBoundCheck out;
  out.lhs = pv_integral(phi, grad, x, a, q).value;
  out.constant = frlap_constant(eps, a);
  out.rhs = eps * eps * pi / (2.0 * (2.0 - a)) * std::pow(r * r + eta2, 0.5 * (eps - 4.0)) * std::pow(r, 4.0 - a) -
            eps * 2.0 * pi * out.constant * std::pow(r, eps - a);
  return out;
}

MomentSymbolCheck moment_symbol_bound(double a, double eps, const Vec2& x) {
  check_index(a);
  if (!(eps > 0.0 && eps < a)) throw DomainError("moment bound requires 0 < eps < a");
  auto m = [=](const Vec2& y) { return std::pow(1.0 + norm2(y), 0.5 * eps); };
  auto grad = [=](const Vec2& y) { return eps * std::pow(1.0 + norm2(y), 0.5 * eps - 1.0) * y; };
  PvQuadratureParams q = PvQuadratureParams::defaults_for(x);
  q.growth_exponent = eps;
  MomentSymbolCheck out;
  out.lhs = apply_pv(m, grad, x, a, q);
  out.rhs_shape = std::pow(bracket(x), eps - a);
  return out;
}

}  // namespace fks
