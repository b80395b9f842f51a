// SPDX-License-Identifier: Apache-2.0
#include "fks/thresholds.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fks/error.hpp"
#include "fks/frac_laplacian.hpp"

namespace fks {
namespace {
using std::numbers::pi;

void check_open_unit_index(double a) {
  if (!(a > 1.0 && a < 2.0)) throw DomainError("threshold index a must lie in (1, 2)");
}
void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0, 1)");
}
}  // namespace

double chi_rigorous(double a) {
  check_open_unit_index(a);
  const double c = c_norm(a);
  return c * pi / (2.0 * (2.0 - a)) - 2.0 * pi * c * (1.0 / (std::sqrt(3.0) * (3.0 - a)) + 1.0 / a);
}

double a_star_rigorous(double tol, double lo, double hi) {
  if (!(tol > 0.0) || !(lo < hi)) throw DomainError("invalid bisection parameters");
  double flo = chi_rigorous(lo);
  const double fhi = chi_rigorous(hi);
  if (!(flo < 0.0 && fhi > 0.0)) {
    std::ostringstream dump;
    dump << "chi_rigorous has no sign change on [" << lo << ", " << hi << "]; curve:";
    for (int k = 0; k <= 10; ++k) {
      const double a = lo + (hi - lo) * k / 10.0;
      dump << " (" << a << ", " << chi_rigorous(a) << ")";
    }
    throw NoSignChangeError(dump.str());
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = chi_rigorous(mid);
    if (fm < 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double chi_appendix_gamma_form(double eps, double a) {
  check_eps(eps);
  check_open_unit_index(a);
  using boost::math::tgamma;
  return -std::pow(2.0, a) * tgamma(0.5 * (2.0 + eps)) * tgamma(0.5 * (a - eps)) /
         (tgamma(-0.5 * eps) * tgamma(0.5 * (2.0 + a - eps)) * eps);
}

double chi_appendix(double eps, double a) {
  check_eps(eps);
  check_open_unit_index(a);
  const double g = boost::math::tgamma(0.5 * eps);
  const double value = std::pow(2.0, a - 2.0) * eps * std::sin(0.5 * eps * pi) * g * g / (pi * (a - eps));
  const double other = chi_appendix_gamma_form(eps, a);
  if (std::abs(other - 2.0 * value) > 1e-10 * std::abs(other))
    throw AccuracyError("Gamma-form cross-check failed for chi_appendix");
  return value;
}

ThresholdSup chi_appendix_sup(double a) {
  check_open_unit_index(a);
  constexpr int kScan = 1000;
  int best = 0;
  double best_value = -INFINITY;
  for (int k = 0; k < kScan; ++k) {
    const double v = chi_appendix((k + 0.5) / kScan, a);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  double lo = std::max(1e-12, (best - 0.5) / kScan);
  double hi = std::min(1.0 - 1e-12, (best + 1.5) / kScan);
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = chi_appendix(x1, a), f2 = chi_appendix(x2, a);
  while (hi - lo > 1e-8) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = chi_appendix(x2, a);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = chi_appendix(x1, a);
    }
  }
  const double arg = 0.5 * (lo + hi);
  return {chi_appendix(arg, a), arg};
}

ThresholdTable build_threshold_table(std::span<const double> a_values, double tol) {
  ThresholdTable t;
  t.a_star_rigorous = a_star_rigorous(tol);
  for (double a : a_values) {
    const auto sup = chi_appendix_sup(a);
    t.a_values.push_back(a);
    t.chi_rigorous.push_back(chi_rigorous(a));
    t.chi_appendix.push_back(sup.sup_value);
    t.arg_eps.push_back(sup.arg_eps);
  }
  return t;
}

}  // namespace fks
