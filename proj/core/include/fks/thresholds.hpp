// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

namespace fks {

// c pi / (2 (2 - a)) - 2 pi c (1/(sqrt(3)(3 - a)) + 1/a), c = c_norm(a).
double chi_rigorous(double a);

// Bisection root of chi_rigorous on [lo, hi].
double a_star_rigorous(double tol = 1e-10, double lo = 1.05, double hi = 1.999);

// 2^{a-2} eps sin(eps pi/2) Gamma(eps/2)^2 / (pi (a - eps)).
double chi_appendix(double eps, double a);

// -2^a Gamma((2+eps)/2) Gamma((a-eps)/2) / (Gamma(-eps/2) Gamma((2+a-eps)/2) eps).
// Equals exactly 2 * chi_appendix(eps, a).
double chi_appendix_gamma_form(double eps, double a);

struct ThresholdSup {
  double sup_value = 0.0;
  double arg_eps = 0.0;
};

// Maximises chi_appendix over eps in (0, 1): 1000-point scan, then golden section to 1e-8.
ThresholdSup chi_appendix_sup(double a);

struct ThresholdTable {
  std::vector<double> a_values;
  std::vector<double> chi_rigorous;
  std::vector<double> chi_appendix;
  std::vector<double> arg_eps;
  double a_star_rigorous = 0.0;
};

ThresholdTable build_threshold_table(std::span<const double> a_values, double tol = 1e-10);

}  // namespace fks
