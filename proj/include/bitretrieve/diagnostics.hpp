#ifndef BITRETRIEVE_DIAGNOSTICS_HPP
#define BITRETRIEVE_DIAGNOSTICS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bitretrieve/core_types.hpp"
#include "bitretrieve/experiments.hpp"
#include "bitretrieve/random.hpp"

namespace bitretrieve::diagnostics {

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

struct BetaLawStats {
  double ks;
  double mean;
  double variance;
  /// 1/(4(2 beta n + 1)), the variance of Beta(bn, bn).
  double expected_variance;
  std::size_t samples;
};

/// Samples tr(PX) for Haar P (stream.child({0, i})) and a fixed X (stream.child(1)).
BetaLawStats beta_law(FieldKind field, std::int64_t n, std::size_t samples, const SeedStream& stream,
                      unsigned threads = 1);

struct SpectrumStats {
  std::vector<double> eigenvalues;  // descending
  double mu1;
  double mu2;
  double top_deviation;   // |lambda_1 - mu1|
  double rest_deviation;  // max_i>1 |lambda_i - mu2|
  double alignment;       // tr(X E_1)
};

/// Spectrum of the empirical average for one ensemble of size m.
SpectrumStats expected_average_spectrum(FieldKind field, std::int64_t n, std::size_t m, const SeedStream& stream,
                                        unsigned threads = 1);

struct HammingStats {
  double max_excess;  // max over pairs of d_P(X, Y) - ||X - Y||
  double mean_excess;
  std::size_t pairs;
};

HammingStats hamming_vs_opnorm(FieldKind field, std::int64_t n, std::size_t m, std::size_t pairs,
                               const SeedStream& stream, unsigned threads = 1);

struct CompressionSample {
  std::vector<double> top;     // lambda_1 of the 2x2 compression on span{e1, e2}
  std::vector<double> bottom;  // lambda_2
};

CompressionSample sample_compression_eigenvalues(FieldKind field, std::int64_t n, std::size_t samples,
                                                 const SeedStream& stream, unsigned threads = 1);

struct DsepStats {
  double estimate;
  double standard_error;
  double closed_form;
};

DsepStats dsep_monte_carlo(const CompressionSample& sample, FieldKind field, std::int64_t n);

struct DensityFit {
  double chi2;
  double dof;
  double pvalue;
  /// Total model probability over the bins; 1 up to quadrature error.
  double mass;
};

/// Chi-squared fit of the eigenvalue sample against the closed-form density on a
/// grid x grid partition of {y <= x}; cells expecting fewer than 5 hits are pooled.
DensityFit eigen_density_fit(const CompressionSample& sample, FieldKind field, std::int64_t n, int grid = 10);

struct SandwichStats {
  std::size_t comparisons;
  std::size_t violations;
};

/// Checks d^(t+eps)(X, Y) <= d^t(X0, Y0) <= d^(t-eps)(X, Y) for random X0, Y0 and
/// perturbations within eps, for t in {-eps, 0, eps}.
SandwichStats soft_hamming_sandwich(FieldKind field, std::int64_t n, std::size_t m, std::size_t instances,
                                    double eps, const SeedStream& stream);

/// Runs every check for cfg.field / cfg.n with fixed sample sizes.
std::vector<Check> run_diagnostics(const ExperimentConfig& cfg);

std::string format_report(const std::vector<Check>& checks);

}  // namespace bitretrieve::diagnostics

#endif  // BITRETRIEVE_DIAGNOSTICS_HPP
