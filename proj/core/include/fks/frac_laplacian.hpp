// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

#include "fks/vec2.hpp"

namespace fks {

using ScalarField = std::function<double(const Vec2&)>;
using VectorField = std::function<Vec2(const Vec2&)>;

// c_{2,a} = -2^a Gamma(1 + a/2) / (pi Gamma(-a/2)).
double c_norm(double a);

// Same constant from 2^a a^2 Gamma(a/2)^2 sin(a pi/2) / (4 pi^2).
double c_norm_sine_form(double a);

struct PvQuadratureParams {
  double inner_radius = 1.0;
  double outer_radius = 1.0e3;
  int radial_nodes = 512;
  int angular_nodes = 128;
  // Known growth |f(x)| ~ |x|^g at infinity, g in [0, a). Shapes the far-field
  // substitution so the mapped integrand stays bounded.
  double growth_exponent = 0.0;
  // Relative bound on the far-field error estimate.
  double tail_rel_tol = 1.0e-6;

  void validate(double a) const;
  // inner_radius = min(1, |x|/2), or 1 at x = 0; outer_radius = 1e3 max(1, |x|).
  static PvQuadratureParams defaults_for(const Vec2& x);
};

struct PvIntegral {
  double value = 0.0;       // v.p. integral without the c_{2,a} factor
  double tail_error = 0.0;  // far-field error estimate
};

// v.p. int (f(x+z) - f(x) - z.grad f(x) 1_{|z|<=inner}) |z|^{-2-a} dz.
PvIntegral pv_integral(const ScalarField& f, const VectorField& grad_f, const Vec2& x, double a,
                       const PvQuadratureParams& q);

// -(-Delta)^{a/2} f (x) = c_{2,a} * pv_integral.
double apply_pv(const ScalarField& f, const VectorField& grad_f, const Vec2& x, double a,
                const PvQuadratureParams& q);

// Exact -(-Delta)^{a/2} |.|^eps at x.
double exact_power_law(double a, double eps, const Vec2& x);

// Constant in the lower bound for the smoothed power (|x|^2 + eta^2)^{eps/2}.
double frlap_constant(double eps, double a);

struct LowerBoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
};

LowerBoundCheck smoothed_power_lower_bound(double a, double eps, double eta, const Vec2& x);
LowerBoundCheck smoothed_power_lower_bound(double a, double eps, double eta, const Vec2& x,
                                           const PvQuadratureParams& q);

struct MomentSymbolCheck {
  double lhs = 0.0;        // -(-Delta)^{a/2} <x>^eps
  double rhs_shape = 0.0;  // <x>^{eps - a}
};

MomentSymbolCheck moment_symbol_bound(double a, double eps, const Vec2& x);

}  // namespace fks
