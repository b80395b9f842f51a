// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "fks/vec2.hpp"

namespace fks {

struct KernelParams {
  double alpha = 1.5;  // kernel exponent in (0, 2)
  double chi = 1.0;    // sensitivity, 0 switches the interaction off
  double eta = 0.0;    // cutoff length, 0 disables the cutoff
  void validate() const;
};

// K_alpha(x) = -x / |x|^alpha, or -x / max(|x|, eta)^alpha with a cutoff.
Vec2 k_alpha(const Vec2& x, const KernelParams& p);

// |K_alpha(x) - K_{eta,alpha}(x)|; checks the bound chain
// gap <= 1_{|x|<=eta} |x|^{1-alpha} <= eta^{1-eps} |x|^{eps-alpha}.
double k_alpha_cutoff_gap(const Vec2& x, const KernelParams& p, double eps);

// div K_alpha(x) = -(2 - alpha) |x|^{-alpha}.
double div_k_alpha(const Vec2& x, double alpha);

// Jacobian of K_alpha: -(I - alpha x x^T / |x|^2) |x|^{-alpha}.
Mat2 grad_k_alpha(const Vec2& x, double alpha);

// W_alpha with K_alpha = -grad W_alpha: |x|^{2-alpha} / (2 - alpha).
double w_alpha(const Vec2& x, double alpha);

// Phi(x, y) = (x - y)(ln x - ln y).
double phi(double x, double y);

struct PhiLogInequality {
  double lhs = 0.0;  // (alpha a - beta b)(ln a - ln b)
  double rhs = 0.0;  // (a - b)(alpha - beta)
  bool holds = false;
  bool equality = false;
};

PhiLogInequality phi_log_inequality(double a, double b, double alpha_w, double beta_w);

// (<x>^{kappa-2} x - <y>^{kappa-2} y) . (x - y).
double monotone_gradient_check(const Vec2& x, const Vec2& y, double kappa);

}  // namespace fks
