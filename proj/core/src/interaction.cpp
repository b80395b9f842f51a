// SPDX-License-Identifier: Apache-2.0
#include "fks/interaction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fks/error.hpp"

namespace fks {

void KernelParams::validate() const {
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("kernel exponent alpha must lie in (0, 2)");
  if (!(chi >= 0.0)) throw DomainError("sensitivity chi must be non-negative");
  if (!(eta >= 0.0)) throw DomainError("cutoff eta must be non-negative");
}

Vec2 k_alpha(const Vec2& x, const KernelParams& p) {
  const double r = norm(x);
  if (p.eta > 0.0) return (-std::pow(std::max(r, p.eta), -p.alpha)) * x;
  if (r == 0.0) throw SingularityError("K_alpha is singular at the origin");
  return (-std::pow(r, -p.alpha)) * x;
}

double k_alpha_cutoff_gap(const Vec2& x, const KernelParams& p, double eps) {
  if (!(p.eta > 0.0)) throw DomainError("cutoff gap requires eta > 0");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("cutoff gap requires eps in (0, 1)");
  const double r = norm(x);
  if (r == 0.0) throw SingularityError("cutoff gap undefined at the origin");
  KernelParams bare = p;
  bare.eta = 0.0;
  const double gap = norm(k_alpha(x, bare) - k_alpha(x, p));
  const double middle = r <= p.eta ? std::pow(r, 1.0 - p.alpha) : 0.0;
  const double outer = std::pow(p.eta, 1.0 - eps) * std::pow(r, eps - p.alpha);
  const double slack = 1e-12 * std::max(1.0, outer);
  if (gap > middle * (1.0 + 1e-12) + slack || middle > outer * (1.0 + 1e-12) + slack)
    throw ContractViolation("cutoff gap bound chain violated");
  return gap;
}

double div_k_alpha(const Vec2& x, double alpha) {
  const double r = norm(x);
  if (r == 0.0) throw SingularityError("div K_alpha is singular at the origin");
  return -(2.0 - alpha) * std::pow(r, -alpha);
}

Mat2 grad_k_alpha(const Vec2& x, double alpha) {
  const double r2 = norm2(x);
  if (r2 == 0.0) throw SingularityError("grad K_alpha is singular at the origin");
  const double s = -std::pow(r2, -0.5 * alpha);
  const double c = alpha / r2;
  return {s * (1.0 - c * x.x * x.x), -s * c * x.x * x.y, -s * c * x.y * x.x, s * (1.0 - c * x.y * x.y)};
}

double w_alpha(const Vec2& x, double alpha) { return std::pow(norm(x), 2.0 - alpha) / (2.0 - alpha); }

double phi(double x, double y) {
  if (!(x > 0.0 && y > 0.0)) throw DomainError("phi requires positive arguments");
  return (x - y) * (std::log(x) - std::log(y));
}

PhiLogInequality phi_log_inequality(double a, double b, double alpha_w, double beta_w) {
  PhiLogInequality r;
  if (!(a > 0.0 && b > 0.0) || alpha_w < 0.0 || beta_w < 0.0) return r;
  r.lhs = (alpha_w * a - beta_w * b) * (std::log(a) - std::log(b));
  r.rhs = (a - b) * (alpha_w - beta_w);
  const double tol = 1e-12 * (std::abs(r.lhs) + std::abs(r.rhs)) + std::numeric_limits<double>::min();
  r.holds = r.lhs >= r.rhs - tol;
  r.equality = std::abs(r.lhs - r.rhs) <= tol;
  return r;
}

double monotone_gradient_check(const Vec2& x, const Vec2& y, double kappa) {
  const Vec2 gx = std::pow(bracket(x), kappa - 2.0) * x;
  const Vec2 gy = std::pow(bracket(y), kappa - 2.0) * y;
  return dot(gx - gy, x - y);
}

}  // namespace fks
