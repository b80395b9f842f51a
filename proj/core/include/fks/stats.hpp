// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace fks::stats {

double mean(std::span<const double> x);
double variance(std::span<const double> x);  // unbiased
double median(std::vector<double> x);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Asymptotic Kolmogorov survival function Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda);

KsResult ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf);
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

struct ChiSquareResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int dof = 0;
};

// Pearson test of the counts against equal expected frequencies.
ChiSquareResult chi_square_uniform(std::span<const double> counts);

struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
  double slope_stderr = 0.0;
};

LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

// Least-squares y = c0 + c1 x + c2 x^2.
std::array<double, 3> quadratic_fit(std::span<const double> x, std::span<const double> y);

// Upper quantile of Student's t with dof degrees of freedom.
double student_t_quantile(double p, double dof);

}  // namespace fks::stats
