#include "bitretrieve/experiments.hpp"

#include <algorithm>
#include <complex>
#include <limits>

#include "bitretrieve/parallel.hpp"
#include "bitretrieve/recovery.hpp"
#include "bitretrieve/sampler.hpp"
#include "bitretrieve/stats.hpp"
#include "bitretrieve/theory.hpp"

namespace bitretrieve {

namespace {

/// Path index reserved for the corruption stream of a noise unit, [t, m, kCorruptionIndex].
constexpr std::uint64_t kCorruptionIndex = std::numeric_limits<std::uint64_t>::max();

ExperimentConfig checked(const ExperimentConfig& cfg) {
  ExperimentConfig out = cfg;
  out.validate();
  return out;
}

std::string unit_path(std::int64_t t, std::int64_t m) { return std::to_string(t) + "/" + std::to_string(m); }

void sort_records(std::vector<TrialRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const TrialRecord& a, const TrialRecord& b) {
    return a.trial != b.trial ? a.trial < b.trial : a.m < b.m;
  });
}

template <typename Scalar>
struct Recovered {
  RecoveryResult<Scalar> result;
  double error;
  double qdev;
};

template <typename Scalar>
Recovered<Scalar> recover_and_score(const HermitianMatrix<Scalar>& q, const RankOneProjection<Scalar>& x,
                                    const theory::MuPair& mu) {
  auto result = pep_recover(q);
  const double error = rank_one_distance(result.estimate, x);
  const double qdev = average_deviation(q, x, mu.mu1, mu.mu2);
  return {std::move(result), error, qdev};
}

template <typename Scalar>
PointwiseResult pointwise_impl(const ExperimentConfig& cfg) {
  const SeedStream root(cfg.master_seed);
  const auto x = sample_rank_one<Scalar>(2 * cfg.n, root.child(0));
  const auto mu = theory::mu_pair(cfg.field, cfg.n);
  const std::size_t grid = cfg.m_grid.size();
  const std::size_t units = static_cast<std::size_t>(cfg.trials) * grid;

  std::vector<TrialRecord> records(units);
  parallel_for(units, cfg.threads, [&](std::size_t u) {
    const auto t = static_cast<std::int64_t>(u / grid);
    const std::int64_t m = cfg.m_grid[u % grid];
    const SeedStream stream = root.child({static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(m)});
    // Stream the ensemble instead of materializing it; projection j still comes
    // from stream.child(j), so this equals sample_ensemble + measure + pep_recover.
    AverageAccumulator<Scalar> acc(2 * cfg.n);
    for (std::int64_t j = 0; j < m; ++j) {
      const auto p = sample_haar_projection<Scalar>(cfg.n, 2 * cfg.n, stream.child(static_cast<std::uint64_t>(j)));
      acc.add(p, binary_question(p, x));
    }
    const auto scored = recover_and_score(acc.average(), x, mu);
    records[u] = {t, m, scored.error, scored.qdev, std::nullopt, scored.result.degenerate, unit_path(t, m)};
  });
  sort_records(records);

  PointwiseResult out{std::move(records), {}};
  if (theory::spectral_gap(cfg.field, cfg.n).gap > 0.0) {
    for (const auto m : cfg.m_grid)
      out.bound.push_back({m, theory::pointwise_delta(cfg.field, cfg.n, static_cast<double>(m), cfg.bound_D)});
  }
  return out;
}

template <typename Scalar>
UniformResult uniform_impl(const ExperimentConfig& cfg) {
  const SeedStream root(cfg.master_seed);
  const auto mu = theory::mu_pair(cfg.field, cfg.n);
  const auto inputs = static_cast<std::size_t>(cfg.inputs);
  const std::size_t grid = cfg.m_grid.size();

  std::vector<RankOneProjection<Scalar>> signals;
  signals.reserve(inputs);
  for (std::size_t i = 0; i < inputs; ++i)
    signals.push_back(sample_rank_one<Scalar>(2 * cfg.n, root.child({1, static_cast<std::uint64_t>(i)})));

  std::vector<TrialRecord> records(inputs * grid);
  for (std::size_t g = 0; g < grid; ++g) {
    const std::int64_t m = cfg.m_grid[g];
    const auto ens = sample_ensemble<Scalar>(cfg.n, static_cast<std::size_t>(m),
                                             root.child({0, static_cast<std::uint64_t>(m)}), cfg.threads);
    std::vector<BitString> bits(inputs);
    parallel_for(inputs, cfg.threads, [&](std::size_t i) { bits[i] = measure(ens, signals[i]); });
    parallel_for(inputs, cfg.threads, [&](std::size_t i) {
      const auto scored = recover_and_score(empirical_average(ens, bits[i]), signals[i], mu);
      std::optional<double> gap;
      if (i > 0)
        gap = hamming_distance(bits[i], bits[i - 1]) - rank_one_distance(signals[i], signals[i - 1]);
      records[i * grid + g] = {static_cast<std::int64_t>(i), m, scored.error, scored.qdev, gap,
                               scored.result.degenerate,
                               "ens=0/" + std::to_string(m) + ";x=1/" + std::to_string(i)};
    });
  }
  // Index i * grid + g is already (trial, m) order.

  UniformResult out;
  out.running_max.resize(records.size());
  std::vector<double> current(grid, 0.0);
  for (std::size_t k = 0; k < records.size(); ++k) {
    const std::size_t g = k % grid;
    current[g] = std::max(current[g], records[k].error);
    out.running_max[k] = current[g];
  }
  const bool has_gap = theory::spectral_gap(cfg.field, cfg.n).gap > 0.0;
  for (std::size_t g = 0; g < grid; ++g) {
    std::vector<double> errors(inputs);
    for (std::size_t i = 0; i < inputs; ++i) errors[i] = records[i * grid + g].error;
    const double bound = has_gap ? theory::uniform_delta(cfg.field, cfg.n, static_cast<double>(cfg.m_grid[g]),
                                                         cfg.bound_D)
                                 : std::numeric_limits<double>::quiet_NaN();
    out.summary.push_back({cfg.m_grid[g], current[g], stats::median(errors), bound});
  }
  out.records = std::move(records);
  return out;
}

template <typename Scalar>
NoiseResult noise_impl(const ExperimentConfig& cfg) {
  const SeedStream root(cfg.master_seed);
  const auto x = sample_rank_one<Scalar>(2 * cfg.n, root.child(0));
  const auto mu = theory::mu_pair(cfg.field, cfg.n);
  const double gap = theory::spectral_gap(cfg.field, cfg.n).gap;
  const double bound = theory::noisy_error_bound(cfg.field, cfg.n, cfg.delta, cfg.tau);
  const std::size_t grid = cfg.m_grid.size();
  const std::size_t units = static_cast<std::size_t>(cfg.trials) * grid;

  NoiseResult out;
  out.records.resize(units);
  out.details.resize(units);
  parallel_for(units, cfg.threads, [&](std::size_t u) {
    const auto t = static_cast<std::int64_t>(u / grid);
    const std::int64_t m = cfg.m_grid[u % grid];
    const auto ut = static_cast<std::uint64_t>(t);
    const auto um = static_cast<std::uint64_t>(m);
    const auto ens = sample_ensemble<Scalar>(cfg.n, static_cast<std::size_t>(m), root.child({ut, um}));
    const BitString bits = measure(ens, x);
    const BitString noisy_bits = corrupt_bits<Scalar>(bits, cfg.tau, cfg.flip_mode, root.child({ut, um, kCorruptionIndex}),
                                                      FlipContext<Scalar>{&ens, &x});
    const auto clean = recover_and_score(empirical_average(ens, bits), x, mu);
    const auto noisy = recover_and_score(empirical_average(ens, noisy_bits), x, mu);
    const bool applicable = clean.qdev <= 0.5 * gap * cfg.delta;
    const bool holds = noisy.error <= bound + 1e-9;
    out.records[u] = {t, m, noisy.error, noisy.qdev, std::nullopt, noisy.result.degenerate, unit_path(t, m)};
    out.details[u] = {t, m, clean.error, noisy.error, clean.qdev, noisy.qdev, bound, applicable, holds};
  });
  // Units are numbered t * grid + g, which is already (trial, m) order.
  for (const auto& d : out.details)
    if (d.applicable && !d.holds) out.all_hold = false;
  return out;
}

}  // namespace

PointwiseResult run_pointwise(const ExperimentConfig& cfg) {
  const auto c = checked(cfg);
  return c.field == FieldKind::Real ? pointwise_impl<double>(c) : pointwise_impl<std::complex<double>>(c);
}

UniformResult run_uniform(const ExperimentConfig& cfg) {
  const auto c = checked(cfg);
  return c.field == FieldKind::Real ? uniform_impl<double>(c) : uniform_impl<std::complex<double>>(c);
}

NoiseResult run_noise(const ExperimentConfig& cfg) {
  const auto c = checked(cfg);
  if (!(theory::spectral_gap(c.field, c.n).gap > 0.0))
    throw ConfigError("n", "noise bound needs a positive spectral gap (real n = 1 has none)");
  return c.field == FieldKind::Real ? noise_impl<double>(c) : noise_impl<std::complex<double>>(c);
}

}  // namespace bitretrieve
