#ifndef BITRETRIEVE_THEORY_HPP
#define BITRETRIEVE_THEORY_HPP

#include <cstdint>
#include <optional>

#include "bitretrieve/core_types.hpp"

namespace bitretrieve::theory {

/// log B(a, b) through log-gamma.
double log_beta(double a, double b);

struct MuPair {
  double mu1;
  double mu2;
};

/// Eigenvalues of E[Q] = mu1 X + mu2 (I - X) for Haar rank-n projections on F^(2n):
///   mu1 = 1/2 + 1/(bn 4^bn B(bn, bn)),  mu2 = 1/2 - 1/(bn (2n-1) 4^bn B(bn, bn)),  bn = beta*n.
MuPair mu_pair(FieldKind field, std::int64_t n);

struct SpectralGap {
  double gap;
  /// Stirling sandwich, reported only when beta*n >= 2.
  std::optional<double> lower;
  std::optional<double> upper;
};

/// gap = 2(n-1) / (bn (2n-1) 4^bn B(bn, bn)), the closed form used for mu1 - mu2 by every bound.
/// mu_pair gives mu1 - mu2 = 2n / (bn (2n-1) 4^bn B(bn, bn)), larger by n/(n-1); the
/// smaller value is kept since every bound that divides by the gap stays valid.
SpectralGap spectral_gap(FieldKind field, std::int64_t n);

struct TheoryConstants {
  FieldKind field;
  std::int64_t n;
  double mu1;
  double mu2;
  double gap;
  std::optional<double> gap_lower;
  std::optional<double> gap_upper;
};

TheoryConstants theory_constants(FieldKind field, std::int64_t n);

/// Number of projections for pointwise accuracy delta with failure probability e^-D:
/// ceil((14/3) gap^-2 delta^-2 (log(4n) + D)).
std::int64_t pointwise_m(FieldKind field, std::int64_t n, double delta, double bound_d);

/// The accuracy guaranteed pointwise by m projections, i.e. pointwise_m solved for delta.
double pointwise_delta(FieldKind field, std::int64_t n, double m, double bound_d);

/// Real-valued right-hand side of the uniform recovery condition, with eps = gap*delta/8:
/// 2 eps^-2 (8 bn log(1 + 128 sqrt(2bn-1) / (2 sqrt(2 pi)) eps^-1) + 2 log 2 + D).
double uniform_m_bound(FieldKind field, std::int64_t n, double delta, double bound_d);
std::int64_t uniform_m(FieldKind field, std::int64_t n, double delta, double bound_d);

/// Smallest delta with uniform_m_bound(delta) <= m, by bisection to `tolerance`.
double uniform_delta(FieldKind field, std::int64_t n, double m, double bound_d, double tolerance = 1e-6);

/// Uniform Hamming concentration: 2 delta^-2 (8 bn log(1 + c delta^-1) + log 2 + D).
double hamming_conc_m_bound(FieldKind field, std::int64_t n, double delta, double bound_d);
std::int64_t hamming_conc_m(FieldKind field, std::int64_t n, double delta, double bound_d);

/// Upper bound 4 bn log(1 + 2/eps) on the log-cardinality of an eps-net of rank-one
/// projections on F^(2n).
double net_log_cardinality(FieldKind field, std::int64_t n, double eps);

/// Bound on |E d^t - E d| from the Beta density near 1/2: 32 sqrt(2bn-1)/(e sqrt(2 pi)) |t|.
double soft_expectation_drift(FieldKind field, std::int64_t n, double t);

/// Joint density of the ordered eigenvalues (x >= y) of the top-left 2x2 block of a
/// Haar rank-n projection on F^(2n), n >= 2.
struct EigenDensity {
  FieldKind field;
  std::int64_t n;
  double log_mn;
};

EigenDensity eigen_density(FieldKind field, std::int64_t n);

/// M^-1 (x-y)^(2 beta) [x(1-x)y(1-y)]^(beta(n-1)-1) on {0 <= y <= x <= 1}, zero elsewhere.
/// Returns +inf on the boundary where the exponent is negative.
double eigen_density_eval(const EigenDensity& density, double x, double y);

/// P(lambda_2 < 1/2 < lambda_1) for the 2x2 compression, n >= 2.
double dsep_probability(FieldKind field, std::int64_t n);

/// delta + 2 tau / gap.
double noisy_error_bound(FieldKind field, std::int64_t n, double delta, double tau);

}  // namespace bitretrieve::theory

#endif  // BITRETRIEVE_THEORY_HPP
