#ifndef BITRETRIEVE_EXPERIMENTS_HPP
#define BITRETRIEVE_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bitretrieve/core_types.hpp"
#include "bitretrieve/measurement.hpp"
#include "bitretrieve/random.hpp"

namespace bitretrieve {

/// Invalid configuration; key() names the offending setting.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

enum class ExperimentKind { Pointwise, Uniform, Noise, Diagnostics, Theory };

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment(std::string_view text);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Pointwise;
  FieldKind field = FieldKind::Real;
  std::int64_t n = 8;
  std::vector<std::int64_t> m_grid = {100, 1000, 10000};
  /// Set by `m_grid = auto`: the grid becomes {pointwise_m(field, n, delta, bound_D)}.
  bool m_grid_auto = false;
  std::int64_t trials = 50;
  std::int64_t inputs = 1000;
  double delta = 0.3;
  double bound_D = 2.0;
  double tau = 0.0;
  FlipMode flip_mode = FlipMode::Random;
  std::uint64_t master_seed = 1;
  /// Empty writes CSV to standard output.
  std::string output_path;
  /// Worker threads, 0 = hardware concurrency. Does not affect any output.
  unsigned threads = 0;

  /// Assigns one `key = value` setting; unknown keys and bad values raise ConfigError.
  void set(std::string_view key, std::string_view value);
  /// Checks invariants; resolves `m_grid = auto`.
  void validate();
};

/// Line-oriented `key = value`, '#' starts a comment.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct TrialRecord {
  std::int64_t trial = 0;
  std::int64_t m = 0;
  double error = 0.0;
  double qdev = 0.0;
  std::optional<double> hamming_gap;
  bool degenerate = false;
  std::string seed_path;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

inline constexpr std::string_view kCsvHeader = "trial,m,error,qdev,hamming_gap,degenerate,seed_path";

/// Shortest decimal that parses back to the same double.
std::string format_double(double value);

std::string format_csv(const std::vector<TrialRecord>& records);
std::vector<TrialRecord> parse_csv(std::string_view text);
void emit_csv(const std::vector<TrialRecord>& records, const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

struct BoundPoint {
  std::int64_t m;
  double delta;
};

struct PointwiseResult {
  std::vector<TrialRecord> records;
  /// Theorem bound delta(m) at the configured D; empty when the spectral gap is zero.
  std::vector<BoundPoint> bound;
};

struct UniformSummary {
  std::int64_t m;
  double max_error;
  double median_error;
  double delta_bound;
};

struct UniformResult {
  /// One record per (m, input); `trial` is the input index.
  std::vector<TrialRecord> records;
  /// running_max[k] is the maximum error over records[0..k] of the same m.
  std::vector<double> running_max;
  std::vector<UniformSummary> summary;
};

struct NoiseRecord {
  std::int64_t trial;
  std::int64_t m;
  double clean_error;
  double noisy_error;
  double clean_qdev;
  double noisy_qdev;
  double bound;
  /// clean_qdev <= gap * delta / 2, the premise of the bound.
  bool applicable;
  bool holds;
};

struct NoiseResult {
  /// error/qdev columns hold the noisy recovery.
  std::vector<TrialRecord> records;
  std::vector<NoiseRecord> details;
  bool all_hold = true;
};

PointwiseResult run_pointwise(const ExperimentConfig& cfg);
UniformResult run_uniform(const ExperimentConfig& cfg);
NoiseResult run_noise(const ExperimentConfig& cfg);

std::string format_bound_csv(const std::vector<BoundPoint>& bound, double bound_d);
std::string format_uniform_summary_csv(const std::vector<UniformSummary>& summary, std::int64_t inputs,
                                       double bound_d);
std::string format_noise_csv(const std::vector<NoiseRecord>& details);

/// key=value lines for every theory constant plus the sufficient-m values and the
/// noisy error bound.
std::string print_theory(FieldKind field, std::int64_t n, double delta, double bound_d, double tau);

}  // namespace bitretrieve

#endif  // BITRETRIEVE_EXPERIMENTS_HPP
