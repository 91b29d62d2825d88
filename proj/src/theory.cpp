#include "bitretrieve/theory.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace bitretrieve::theory {

namespace {

constexpr double kLog2 = std::numbers::ln2;
constexpr double kLog4 = 2.0 * std::numbers::ln2;

void require_n(std::int64_t n, std::int64_t minimum, const char* what) {
  if (n < minimum) throw InvalidInput(std::string(what) + ": n too small");
}

void require_delta_d(double delta, double bound_d, const char* what) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidInput(std::string(what) + ": delta must be positive");
  if (!(bound_d >= 0.0) || !std::isfinite(bound_d)) throw InvalidInput(std::string(what) + ": D must be >= 0");
}

double positive_gap(FieldKind field, std::int64_t n, const char* what) {
  const double gap = spectral_gap(field, n).gap;
  if (!(gap > 0.0)) throw InvalidInput(std::string(what) + ": spectral gap is zero (real n = 1)");
  return gap;
}

/// 1/(bn 4^bn B(bn, bn)), the common term of mu1 and mu2.
double flip_excess(FieldKind field, std::int64_t n) {
  const double bn = beta(field) * static_cast<double>(n);
  return std::exp(-(std::log(bn) + bn * kLog4 + log_beta(bn, bn)));
}

/// 128 sqrt(2bn - 1) / (2 sqrt(2 pi)).
double net_constant(FieldKind field, std::int64_t n) {
  const double bn = beta(field) * static_cast<double>(n);
  return 128.0 * std::sqrt(2.0 * bn - 1.0) / (2.0 * std::sqrt(2.0 * std::numbers::pi));
}

std::int64_t ceil_count(double value) {
  if (!std::isfinite(value) || value > 9.0e18) throw InvalidInput("sufficient m overflows a 64-bit count");
  return static_cast<std::int64_t>(std::ceil(value));
}

}  // namespace

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidInput("log_beta: arguments must be positive");
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

MuPair mu_pair(FieldKind field, std::int64_t n) {
  require_n(n, 1, "mu_pair");
  const double c = flip_excess(field, n);
  return {0.5 + c, 0.5 - c / static_cast<double>(2 * n - 1)};
}

SpectralGap spectral_gap(FieldKind field, std::int64_t n) {
  require_n(n, 1, "spectral_gap");
  const double nd = static_cast<double>(n);
  const double bn = beta(field) * nd;
  SpectralGap out{2.0 * (nd - 1.0) / (2.0 * nd - 1.0) * flip_excess(field, n), std::nullopt, std::nullopt};
  if (bn >= 2.0) {
    const double base = (nd - 1.0) * std::sqrt(2.0 * bn - 1.0) /
                        (std::sqrt(2.0 * std::numbers::pi) * bn * (2.0 * nd - 1.0));
    out.lower = base;
    out.upper = 4.0 * base / std::numbers::e;
  }
  return out;
}

TheoryConstants theory_constants(FieldKind field, std::int64_t n) {
  const auto mu = mu_pair(field, n);
  const auto gap = spectral_gap(field, n);
  return {field, n, mu.mu1, mu.mu2, gap.gap, gap.lower, gap.upper};
}

std::int64_t pointwise_m(FieldKind field, std::int64_t n, double delta, double bound_d) {
  require_delta_d(delta, bound_d, "pointwise_m");
  const double gap = positive_gap(field, n, "pointwise_m");
  return ceil_count(14.0 / 3.0 / (gap * gap * delta * delta) * (std::log(4.0 * static_cast<double>(n)) + bound_d));
}

double pointwise_delta(FieldKind field, std::int64_t n, double m, double bound_d) {
  if (!(m > 0.0)) throw InvalidInput("pointwise_delta: m must be positive");
  require_delta_d(1.0, bound_d, "pointwise_delta");
  const double gap = positive_gap(field, n, "pointwise_delta");
  return std::sqrt(14.0 / 3.0 / (gap * gap) * (std::log(4.0 * static_cast<double>(n)) + bound_d) / m);
}

double uniform_m_bound(FieldKind field, std::int64_t n, double delta, double bound_d) {
  require_delta_d(delta, bound_d, "uniform_m");
  const double gap = positive_gap(field, n, "uniform_m");
  const double eps = gap * delta / 8.0;
  const double bn = beta(field) * static_cast<double>(n);
  return 2.0 / (eps * eps) * (8.0 * bn * std::log1p(net_constant(field, n) / eps) + 2.0 * kLog2 + bound_d);
}

std::int64_t uniform_m(FieldKind field, std::int64_t n, double delta, double bound_d) {
  return ceil_count(uniform_m_bound(field, n, delta, bound_d));
}

double uniform_delta(FieldKind field, std::int64_t n, double m, double bound_d, double tolerance) {
  if (!(m > 0.0)) throw InvalidInput("uniform_delta: m must be positive");
  if (!(tolerance > 0.0)) throw InvalidInput("uniform_delta: tolerance must be positive");
  // The bound is strictly decreasing in delta and tends to 0, so bracket then bisect.
  double lo = 0.0;
  double hi = 1.0;
  while (uniform_m_bound(field, n, hi, bound_d) > m) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw InvalidInput("uniform_delta: no delta reaches the requested m");
  }
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (uniform_m_bound(field, n, mid, bound_d) > m) lo = mid;
    else hi = mid;
  }
  return hi;
}

double hamming_conc_m_bound(FieldKind field, std::int64_t n, double delta, double bound_d) {
  require_n(n, 1, "hamming_conc_m");
  require_delta_d(delta, bound_d, "hamming_conc_m");
  const double bn = beta(field) * static_cast<double>(n);
  return 2.0 / (delta * delta) * (8.0 * bn * std::log1p(net_constant(field, n) / delta) + kLog2 + bound_d);
}

std::int64_t hamming_conc_m(FieldKind field, std::int64_t n, double delta, double bound_d) {
  return ceil_count(hamming_conc_m_bound(field, n, delta, bound_d));
}

double net_log_cardinality(FieldKind field, std::int64_t n, double eps) {
  require_n(n, 1, "net_log_cardinality");
  if (!(eps > 0.0)) throw InvalidInput("net_log_cardinality: eps must be positive");
  return 4.0 * beta(field) * static_cast<double>(n) * std::log1p(2.0 / eps);
}

double soft_expectation_drift(FieldKind field, std::int64_t n, double t) {
  require_n(n, 1, "soft_expectation_drift");
  const double bn = beta(field) * static_cast<double>(n);
  return 32.0 * std::sqrt(2.0 * bn - 1.0) / (std::numbers::e * std::sqrt(2.0 * std::numbers::pi)) * std::abs(t);
}

EigenDensity eigen_density(FieldKind field, std::int64_t n) {
  require_n(n, 2, "eigen_density");
  const double nm1 = static_cast<double>(n - 1);
  const double lb = log_beta(nm1, nm1);
  const double log_mn = field == FieldKind::Real ? kLog2 - std::log(nm1) + lb
                                                 : -std::log(8.0 * static_cast<double>(n) - 4.0) + 2.0 * lb;
  return {field, n, log_mn};
}

double eigen_density_eval(const EigenDensity& density, double x, double y) {
  require_n(density.n, 2, "eigen_density_eval");
  if (!(y >= 0.0 && y <= x && x <= 1.0)) return 0.0;
  if (x == y) return 0.0;
  const double b = beta(density.field);
  const double exponent = b * static_cast<double>(density.n - 1) - 1.0;
  const double boundary = x * (1.0 - x) * y * (1.0 - y);
  double log_value = -density.log_mn + 2.0 * b * std::log(x - y);
  if (exponent != 0.0) {
    if (boundary == 0.0) return exponent < 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    log_value += exponent * std::log(boundary);
  }
  return std::exp(log_value);
}

double dsep_probability(FieldKind field, std::int64_t n) {
  require_n(n, 2, "dsep_probability");
  const double nd = static_cast<double>(n);
  const double nm1 = nd - 1.0;
  if (field == FieldKind::Real) {
    return std::exp(log_beta(nm1 / 2.0, nm1 / 2.0) - nd * kLog2 - log_beta(nm1, nm1));
  }
  return 0.5 + std::exp(std::log(8.0 * nd - 4.0) - 2.0 * std::log(nm1) - (4.0 * nd - 3.0) * kLog2 -
                        2.0 * log_beta(nm1, nm1));
}

double noisy_error_bound(FieldKind field, std::int64_t n, double delta, double tau) {
  if (!(delta > 0.0)) throw InvalidInput("noisy_error_bound: delta must be positive");
  if (!(tau >= 0.0 && tau < 1.0)) throw InvalidInput("noisy_error_bound: tau must lie in [0, 1)");
  return delta + 2.0 * tau / positive_gap(field, n, "noisy_error_bound");
}

}  // namespace bitretrieve::theory
