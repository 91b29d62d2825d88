#include "bitretrieve/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "bitretrieve/parallel.hpp"
#include "bitretrieve/recovery.hpp"
#include "bitretrieve/sampler.hpp"
#include "bitretrieve/stats.hpp"
#include "bitretrieve/theory.hpp"

namespace bitretrieve::diagnostics {

namespace {

template <typename Fn>
decltype(auto) dispatch(FieldKind field, Fn&& fn) {
  if (field == FieldKind::Real) return fn(double{});
  return fn(std::complex<double>{});
}

/// Unit vector within distance eps of x0 (strictly), in a random direction.
template <typename Scalar>
RankOneProjection<Scalar> perturb(const RankOneProjection<Scalar>& x0, double eps, Rng& rng) {
  const Eigen::Index d = x0.dim();
  const Vector<Scalar> g = gaussian_matrix<Scalar>(d, 1, rng);
  double scale = rng.uniform() * eps / std::max(g.norm(), 1e-300);
  for (;;) {
    RankOneProjection<Scalar> x(UnitVector<Scalar>(x0.vector().entries() + scale * g));
    if (rank_one_distance(x, x0) < eps) return x;
    scale *= 0.5;
  }
}

std::string fmt(double v) { return format_double(v); }

}  // namespace

BetaLawStats beta_law(FieldKind field, std::int64_t n, std::size_t samples, const SeedStream& stream,
                      unsigned threads) {
  if (samples < 2) throw InvalidInput("beta_law: need at least two samples");
  std::vector<double> traces(samples);
  dispatch(field, [&](auto tag) {
    using Scalar = decltype(tag);
    const auto x = sample_rank_one<Scalar>(2 * n, stream.child(1));
    parallel_for(samples, threads, [&](std::size_t i) {
      traces[i] = sample_haar_projection<Scalar>(n, 2 * n, stream.child({0, static_cast<std::uint64_t>(i)}))
                      .trace_with(x);
    });
    return 0;
  });
  const double bn = beta(field) * static_cast<double>(n);
  const auto summary = stats::summarize(traces);
  const double ks = stats::ks_statistic(traces, [bn](double t) { return stats::beta_cdf(bn, bn, t); });
  return {ks, summary.mean, summary.variance, 1.0 / (4.0 * (2.0 * bn + 1.0)), samples};
}

SpectrumStats expected_average_spectrum(FieldKind field, std::int64_t n, std::size_t m, const SeedStream& stream,
                                        unsigned threads) {
  return dispatch(field, [&](auto tag) {
    using Scalar = decltype(tag);
    const auto x = sample_rank_one<Scalar>(2 * n, stream.child(1));
    const auto ens = sample_ensemble<Scalar>(n, m, stream.child(0), threads);
    const auto q = empirical_average(ens, measure(ens, x), threads);
    Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(q.matrix());
    const auto mu = theory::mu_pair(field, n);
    SpectrumStats out{{}, mu.mu1, mu.mu2, 0.0, 0.0, 0.0};
    const Eigen::Index d = 2 * n;
    for (Eigen::Index i = d - 1; i >= 0; --i) out.eigenvalues.push_back(solver.eigenvalues()(i));
    out.top_deviation = std::abs(out.eigenvalues[0] - mu.mu1);
    for (std::size_t i = 1; i < out.eigenvalues.size(); ++i)
      out.rest_deviation = std::max(out.rest_deviation, std::abs(out.eigenvalues[i] - mu.mu2));
    out.alignment = std::norm(x.vector().entries().dot(solver.eigenvectors().col(d - 1)));
    return out;
  });
}

HammingStats hamming_vs_opnorm(FieldKind field, std::int64_t n, std::size_t m, std::size_t pairs,
                               const SeedStream& stream, unsigned threads) {
  if (pairs == 0) throw InvalidInput("hamming_vs_opnorm: need at least one pair");
  std::vector<double> excess(pairs);
  dispatch(field, [&](auto tag) {
    using Scalar = decltype(tag);
    const auto ens = sample_ensemble<Scalar>(n, m, stream.child(0), threads);
    parallel_for(pairs, threads, [&](std::size_t i) {
      const auto ui = static_cast<std::uint64_t>(i);
      const auto x = sample_rank_one<Scalar>(2 * n, stream.child({1, ui}));
      const auto y = sample_rank_one<Scalar>(2 * n, stream.child({2, ui}));
      excess[i] = measurement_hamming(ens, x, y) - rank_one_distance(x, y);
    });
    return 0;
  });
  double sum = 0.0;
  for (double e : excess) sum += e;
  return {*std::max_element(excess.begin(), excess.end()), sum / static_cast<double>(pairs), pairs};
}

CompressionSample sample_compression_eigenvalues(FieldKind field, std::int64_t n, std::size_t samples,
                                                 const SeedStream& stream, unsigned threads) {
  if (n < 1) throw InvalidInput("sample_compression_eigenvalues: n must be positive");
  CompressionSample out{std::vector<double>(samples), std::vector<double>(samples)};
  dispatch(field, [&](auto tag) {
    using Scalar = decltype(tag);
    parallel_for(samples, threads, [&](std::size_t i) {
      const auto p = sample_haar_projection<Scalar>(n, 2 * n, stream.child(static_cast<std::uint64_t>(i)));
      const Matrix<Scalar> block = p.matrix().topLeftCorner(2, 2);
      Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(block, Eigen::EigenvaluesOnly);
      out.top[i] = solver.eigenvalues()(1);
      out.bottom[i] = solver.eigenvalues()(0);
    });
    return 0;
  });
  return out;
}

DsepStats dsep_monte_carlo(const CompressionSample& sample, FieldKind field, std::int64_t n) {
  const std::size_t count = sample.top.size();
  if (count == 0) throw InvalidInput("dsep_monte_carlo: empty sample");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < count; ++i) hits += (sample.bottom[i] < 0.5 && 0.5 < sample.top[i]) ? 1 : 0;
  const double p = static_cast<double>(hits) / static_cast<double>(count);
  return {p, stats::proportion_se(p, count), theory::dsep_probability(field, n)};
}

// Abscissas can round onto the boundary, where the density is +inf for real n = 2;
// that set has measure zero.
double finite_density(const theory::EigenDensity& density, double x, double y) {
  const double v = theory::eigen_density_eval(density, x, y);
  return std::isfinite(v) ? v : 0.0;
}

DensityFit eigen_density_fit(const CompressionSample& sample, FieldKind field, std::int64_t n, int grid) {
  if (grid < 1) throw InvalidInput("eigen_density_fit: grid must be positive");
  const std::size_t count = sample.top.size();
  if (count == 0) throw InvalidInput("eigen_density_fit: empty sample");
  const auto density = theory::eigen_density(field, n);
  const double h = 1.0 / grid;
  auto bin = [&](double v) { return std::clamp(static_cast<int>(v / h), 0, grid - 1); };

  // Cells (i, j) with j <= i: x in bin i, y in bin j, clipped to y <= x.
  std::vector<double> observed(static_cast<std::size_t>(grid * grid), 0.0);
  for (std::size_t s = 0; s < count; ++s)
    observed[static_cast<std::size_t>(bin(sample.top[s]) * grid + bin(sample.bottom[s]))] += 1.0;

  boost::math::quadrature::tanh_sinh<double> quad;
  struct Cell {
    double expected;
    double observed;
  };
  std::vector<Cell> cells;
  double mass = 0.0;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double x0 = i * h;
      const double y0 = j * h;
      auto inner = [&](double x) {
        const double y1 = std::min(y0 + h, x);
        if (!(y1 > y0)) return 0.0;
        return quad.integrate([&](double y) { return finite_density(density, x, y); }, y0, y1);
      };
      const double prob = quad.integrate(inner, x0, x0 + h);
      mass += prob;
      cells.push_back({prob * static_cast<double>(count), observed[static_cast<std::size_t>(i * grid + j)]});
    }
  }

  // Pool sparse cells, smallest expectation first, until each pool expects at least 5.
  std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.expected < b.expected; });
  std::vector<Cell> bins;
  Cell pool{0.0, 0.0};
  for (const auto& c : cells) {
    if (c.expected >= 5.0 && pool.expected == 0.0) {
      bins.push_back(c);
      continue;
    }
    pool.expected += c.expected;
    pool.observed += c.observed;
    if (pool.expected >= 5.0) {
      bins.push_back(pool);
      pool = {0.0, 0.0};
    }
  }
  if (pool.expected > 0.0) {
    if (bins.empty()) bins.push_back(pool);
    else {
      bins.front().expected += pool.expected;
      bins.front().observed += pool.observed;
    }
  }
  double chi2 = 0.0;
  for (const auto& b : bins) chi2 += (b.observed - b.expected) * (b.observed - b.expected) / b.expected;
  const double dof = static_cast<double>(bins.size()) - 1.0;
  const double pvalue = dof > 0.0 ? stats::chi_squared_pvalue(chi2, dof) : 1.0;
  return {chi2, dof, pvalue, mass};
}

SandwichStats soft_hamming_sandwich(FieldKind field, std::int64_t n, std::size_t m, std::size_t instances,
                                    double eps, const SeedStream& stream) {
  if (!(eps > 0.0)) throw InvalidInput("soft_hamming_sandwich: eps must be positive");
  SandwichStats out{0, 0};
  dispatch(field, [&](auto tag) {
    using Scalar = decltype(tag);
    const auto ens = sample_ensemble<Scalar>(n, m, stream.child(0));
    for (std::size_t i = 0; i < instances; ++i) {
      const auto ui = static_cast<std::uint64_t>(i);
      const auto x0 = sample_rank_one<Scalar>(2 * n, stream.child({1, ui}));
      const auto y0 = sample_rank_one<Scalar>(2 * n, stream.child({2, ui}));
      Rng rng(stream.child({3, ui}));
      const auto x = perturb(x0, eps, rng);
      const auto y = perturb(y0, eps, rng);
      for (double t : {-eps, 0.0, eps}) {
        const double centre = soft_hamming(ens, x0, y0, t);
        out.comparisons += 2;
        if (soft_hamming(ens, x, y, t + eps) > centre) ++out.violations;
        if (centre > soft_hamming(ens, x, y, t - eps)) ++out.violations;
      }
    }
    return 0;
  });
  return out;
}

std::vector<Check> run_diagnostics(const ExperimentConfig& cfg) {
  const FieldKind field = cfg.field;
  const std::int64_t n = cfg.n;
  if (n < 1) throw ConfigError("n", "must be >= 1");
  const SeedStream root(cfg.master_seed);
  const unsigned threads = cfg.threads;
  std::vector<Check> checks;

  {
    constexpr std::size_t kSamples = 20000;
    const auto s = beta_law(field, n, kSamples, root.child(0), threads);
    const double ks_limit = 1.36 / std::sqrt(static_cast<double>(kSamples)) + 0.005;
    const bool ok = s.ks < ks_limit && std::abs(s.mean - 0.5) <= 0.01 &&
                    std::abs(s.variance - s.expected_variance) <= 0.1 * s.expected_variance;
    checks.push_back({"beta_law", ok,
                      "ks=" + fmt(s.ks) + " (<" + fmt(ks_limit) + ") mean=" + fmt(s.mean) +
                          " variance=" + fmt(s.variance) + " expected=" + fmt(s.expected_variance)});
  }
  {
    constexpr std::size_t kM = 50000;
    const auto s = expected_average_spectrum(field, n, kM, root.child(1), threads);
    const double tol = std::max(0.01, 2.0 * std::sqrt(std::log(4.0 * static_cast<double>(n)) / (2.0 * kM)));
    const double gap = theory::spectral_gap(field, n).gap;
    bool ok = s.top_deviation <= tol && s.rest_deviation <= tol;
    std::string detail = "lambda1=" + fmt(s.eigenvalues.front()) + " mu1=" + fmt(s.mu1) +
                         " max|lambda_i-mu2|=" + fmt(s.rest_deviation) + " tol=" + fmt(tol);
    if (gap > 0.0) {
      // sin(angle) <= 2 ||Q - Q(X)|| / gap.
      const double sine = std::min(1.0, 2.0 * tol / gap);
      const double min_alignment = 1.0 - sine * sine;
      ok = ok && s.alignment >= min_alignment;
      detail += " alignment=" + fmt(s.alignment) + " (>=" + fmt(min_alignment) + ")";
    }
    checks.push_back({"expected_average_spectrum", ok, detail});
  }
  {
    constexpr double kMargin = 0.05;
    const auto s = hamming_vs_opnorm(field, n, 20000, 1000, root.child(2), threads);
    checks.push_back({"hamming_vs_opnorm", s.max_excess <= kMargin,
                      "max(d_P - ||X-Y||)=" + fmt(s.max_excess) + " mean=" + fmt(s.mean_excess) +
                          " margin=" + fmt(kMargin)});
  }
  if (n >= 2) {
    const auto sample = sample_compression_eigenvalues(field, n, 100000, root.child(3), threads);
    const auto d = dsep_monte_carlo(sample, field, n);
    checks.push_back({"dsep_probability", std::abs(d.estimate - d.closed_form) <= 3.0 * d.standard_error,
                      "estimate=" + fmt(d.estimate) + " closed_form=" + fmt(d.closed_form) +
                          " se=" + fmt(d.standard_error)});
    const auto fit = eigen_density_fit(sample, field, n);
    checks.push_back({"eigen_density_fit", fit.pvalue > 0.01 && std::abs(fit.mass - 1.0) <= 1e-6,
                      "chi2=" + fmt(fit.chi2) + " dof=" + fmt(fit.dof) + " p=" + fmt(fit.pvalue) +
                          " mass=" + fmt(fit.mass)});
  }
  {
    const auto s = soft_hamming_sandwich(field, n, 1000, 1000, 0.05, root.child(4));
    checks.push_back({"soft_hamming_sandwich", s.violations == 0,
                      "violations=" + std::to_string(s.violations) + "/" + std::to_string(s.comparisons)});
  }
  return checks;
}

std::string format_report(const std::vector<Check>& checks) {
  std::ostringstream out;
  for (const auto& c : checks) out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  return out.str();
}

}  // namespace bitretrieve::diagnostics
