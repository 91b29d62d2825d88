#include <cmath>
#include <numbers>

#include "bitretrieve/diagnostics.hpp"
#include "bitretrieve/theory.hpp"
#include "test_util.hpp"

namespace bitretrieve::diagnostics {
namespace {

constexpr auto R = FieldKind::Real;
constexpr auto C = FieldKind::Complex;

TEST(Diagnostics, FormatReport) {
  const std::vector<Check> checks = {{"a", true, "x=1"}, {"b", false, "y=2"}};
  EXPECT_EQ(format_report(checks), "PASS a: x=1\nFAIL b: y=2\n");
  EXPECT_EQ(format_report({}), "");
}

TEST(Diagnostics, BetaLawMoments) {
  const auto s = beta_law(C, 2, 5000, SeedStream(3), 2);
  EXPECT_EQ(s.samples, 5000U);
  EXPECT_DOUBLE_EQ(s.expected_variance, 1.0 / 20.0);
  EXPECT_LT(s.ks, 1.36 / std::sqrt(5000.0) + 0.005);
  EXPECT_NEAR(s.mean, 0.5, 0.01);
}

TEST(Diagnostics, BetaLawIndependentOfThreads) {
  const auto a = beta_law(R, 3, 2000, SeedStream(4), 1);
  const auto b = beta_law(R, 3, 2000, SeedStream(4), 4);
  EXPECT_EQ(a.ks, b.ks);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.variance, b.variance);
}

TEST(Diagnostics, SpectrumIsDescendingWithUnitTraceSum) {
  const auto s = expected_average_spectrum(R, 3, 5000, SeedStream(5));
  ASSERT_EQ(s.eigenvalues.size(), 6U);
  for (std::size_t i = 1; i < s.eigenvalues.size(); ++i) EXPECT_GE(s.eigenvalues[i - 1], s.eigenvalues[i]);
  double sum = 0.0;
  for (double v : s.eigenvalues) sum += v;
  EXPECT_NEAR(sum, 3.0, 1e-9);
  const auto mu = theory::mu_pair(R, 3);
  EXPECT_EQ(s.mu1, mu.mu1);
  EXPECT_EQ(s.mu2, mu.mu2);
  EXPECT_GE(s.alignment, 0.0);
  EXPECT_LE(s.alignment, 1.0 + 1e-12);
}

TEST(Diagnostics, HammingExcessSmall) {
  const auto s = hamming_vs_opnorm(C, 2, 4000, 200, SeedStream(6));
  EXPECT_EQ(s.pairs, 200U);
  EXPECT_LE(s.mean_excess, s.max_excess);
  EXPECT_LE(s.max_excess, 0.05);
}

TEST(Diagnostics, CompressionEigenvaluesOrdered) {
  const auto sample = sample_compression_eigenvalues(R, 3, 2000, SeedStream(7));
  ASSERT_EQ(sample.top.size(), 2000U);
  ASSERT_EQ(sample.bottom.size(), 2000U);
  for (std::size_t i = 0; i < sample.top.size(); ++i) {
    ASSERT_GE(sample.top[i], sample.bottom[i]);
    ASSERT_GE(sample.bottom[i], -1e-12);
    ASSERT_LE(sample.top[i], 1.0 + 1e-12);
  }
}

TEST(Diagnostics, DsepMonteCarloRealTwo) {
  // For Real n=2 the closed form is pi/4.
  const auto sample = sample_compression_eigenvalues(R, 2, 40000, SeedStream(8), 0);
  const auto d = dsep_monte_carlo(sample, R, 2);
  EXPECT_NEAR(d.closed_form, std::numbers::pi / 4.0, 1e-12);
  EXPECT_NEAR(d.estimate, d.closed_form, 3.0 * d.standard_error);
}

TEST(Diagnostics, DensityFitComplexTwo) {
  const auto sample = sample_compression_eigenvalues(C, 2, 40000, SeedStream(9), 0);
  const auto fit = eigen_density_fit(sample, C, 2);
  EXPECT_NEAR(fit.mass, 1.0, 1e-6);
  EXPECT_GT(fit.dof, 0.0);
  EXPECT_GT(fit.pvalue, 0.01);
}

TEST(Diagnostics, SandwichHasNoViolations) {
  for (auto field : {R, C}) {
    const auto s = soft_hamming_sandwich(field, 2, 500, 200, 0.05, SeedStream(10));
    EXPECT_GT(s.comparisons, 0U);
    EXPECT_EQ(s.violations, 0U) << to_string(field);
  }
}

TEST(Diagnostics, RunAllChecksPass) {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::Diagnostics;
  cfg.field = C;
  cfg.n = 2;
  cfg.master_seed = 11;
  const auto checks = run_diagnostics(cfg);
  ASSERT_EQ(checks.size(), 6U);
  for (const auto& c : checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

TEST(Diagnostics, NEqualOneSkipsCompressionChecks) {
  ExperimentConfig cfg;
  cfg.field = R;
  cfg.n = 1;
  cfg.master_seed = 12;
  const auto checks = run_diagnostics(cfg);
  EXPECT_EQ(checks.size(), 4U);
  for (const auto& c : checks) {
    EXPECT_NE(c.name, "dsep_probability");
    EXPECT_NE(c.name, "eigen_density_fit");
  }
}

TEST(Diagnostics, RejectsBadN) {
  ExperimentConfig cfg;
  cfg.n = 0;
  EXPECT_THROW(run_diagnostics(cfg), ConfigError);
}

}  // namespace
}  // namespace bitretrieve::diagnostics
