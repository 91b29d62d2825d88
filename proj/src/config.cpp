#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "bitretrieve/experiments.hpp"
#include "bitretrieve/theory.hpp"

namespace bitretrieve {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty())
    throw ConfigError(std::string(key), "cannot parse '" + std::string(text) + "' as a number");
  return value;
}

std::vector<std::int64_t> parse_grid(std::string_view key, std::string_view text) {
  std::vector<std::int64_t> grid;
  while (true) {
    const auto comma = text.find(',');
    grid.push_back(parse_number<std::int64_t>(key, text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return grid;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Pointwise: return "pointwise";
    case ExperimentKind::Uniform: return "uniform";
    case ExperimentKind::Noise: return "noise";
    case ExperimentKind::Diagnostics: return "diagnostics";
    case ExperimentKind::Theory: return "theory";
  }
  return "pointwise";
}

ExperimentKind parse_experiment(std::string_view text) {
  for (auto kind : {ExperimentKind::Pointwise, ExperimentKind::Uniform, ExperimentKind::Noise,
                    ExperimentKind::Diagnostics, ExperimentKind::Theory})
    if (text == to_string(kind)) return kind;
  throw ConfigError("experiment", "unknown experiment '" + std::string(text) + "'");
}

void ExperimentConfig::set(std::string_view key, std::string_view value) {
  value = trim(value);
  const std::string k(key);
  try {
    if (key == "experiment") {
      experiment = parse_experiment(value);
    } else if (key == "field") {
      field = parse_field(value);
    } else if (key == "n") {
      n = parse_number<std::int64_t>(key, value);
    } else if (key == "m_grid") {
      m_grid_auto = value == "auto";
      m_grid = m_grid_auto ? std::vector<std::int64_t>{} : parse_grid(key, value);
    } else if (key == "trials") {
      trials = parse_number<std::int64_t>(key, value);
    } else if (key == "inputs") {
      inputs = parse_number<std::int64_t>(key, value);
    } else if (key == "delta") {
      delta = parse_number<double>(key, value);
    } else if (key == "bound_D") {
      bound_D = parse_number<double>(key, value);
    } else if (key == "tau") {
      tau = parse_number<double>(key, value);
    } else if (key == "flip_mode") {
      flip_mode = parse_flip_mode(value);
    } else if (key == "master_seed") {
      master_seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "output_path") {
      output_path = std::string(value);
    } else if (key == "threads") {
      threads = parse_number<unsigned>(key, value);
    } else {
      throw ConfigError(k, "unknown configuration key");
    }
  } catch (const InvalidInput& e) {
    throw ConfigError(k, e.what());
  }
}

void ExperimentConfig::validate() {
  if (n < 1) throw ConfigError("n", "must be >= 1");
  if (trials < 1) throw ConfigError("trials", "must be >= 1");
  if (inputs < 1) throw ConfigError("inputs", "must be >= 1");
  if (!(delta > 0.0)) throw ConfigError("delta", "must be > 0");
  if (!(bound_D >= 0.0)) throw ConfigError("bound_D", "must be >= 0");
  if (!(tau >= 0.0 && tau < 1.0)) throw ConfigError("tau", "must lie in [0, 1)");
  if (m_grid_auto) {
    try {
      m_grid = {theory::pointwise_m(field, n, delta, bound_D)};
    } catch (const InvalidInput& e) {
      throw ConfigError("m_grid", std::string("auto: ") + e.what());
    }
  }
  if (m_grid.empty()) throw ConfigError("m_grid", "must not be empty");
  for (std::size_t i = 0; i < m_grid.size(); ++i) {
    if (m_grid[i] < 1) throw ConfigError("m_grid", "entries must be positive");
    if (i > 0 && m_grid[i] <= m_grid[i - 1]) throw ConfigError("m_grid", "must be strictly increasing");
  }
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace bitretrieve
