#ifndef BITRETRIEVE_STATS_HPP
#define BITRETRIEVE_STATS_HPP

#include <cstddef>
#include <functional>
#include <vector>

namespace bitretrieve::stats {

struct Summary {
  double mean;
  double variance;  // unbiased
  /// Standard error of the mean.
  double standard_error;
};

Summary summarize(const std::vector<double>& samples);

double median(std::vector<double> samples);

/// Standard error of a Bernoulli proportion estimated from `trials` draws.
double proportion_se(double p, std::size_t trials);

double beta_cdf(double a, double b, double x);

/// sup |F_n - F| against a continuous CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Upper tail P(chi2_dof > statistic).
double chi_squared_pvalue(double statistic, double dof);

/// Least-squares slope of y on x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace bitretrieve::stats

#endif  // BITRETRIEVE_STATS_HPP
