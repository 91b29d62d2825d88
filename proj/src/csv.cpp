#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "bitretrieve/experiments.hpp"
#include "bitretrieve/theory.hpp"

namespace bitretrieve {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = line.find(sep);
    out.push_back(line.substr(0, pos));
    if (pos == std::string_view::npos) break;
    line.remove_prefix(pos + 1);
  }
  return out;
}

template <typename T>
T parse_field_value(std::string_view text, std::size_t line_no) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw InvalidInput("csv line " + std::to_string(line_no) + ": bad value '" + std::string(text) + "'");
  return value;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw InvalidInput("format_double: conversion failed");
  return std::string(buf.data(), ptr);
}

std::string format_csv(const std::vector<TrialRecord>& records) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : records) {
    out += std::to_string(r.trial);
    out += ',';
    out += std::to_string(r.m);
    out += ',';
    out += format_double(r.error);
    out += ',';
    out += format_double(r.qdev);
    out += ',';
    if (r.hamming_gap) out += format_double(*r.hamming_gap);
    out += ',';
    out += r.degenerate ? '1' : '0';
    out += ',';
    out += r.seed_path;
    out += '\n';
  }
  return out;
}

std::vector<TrialRecord> parse_csv(std::string_view text) {
  std::vector<TrialRecord> records;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++line_no;
    if (line_no == 1) {
      if (line != kCsvHeader) throw InvalidInput("csv: unexpected header");
      continue;
    }
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 7) throw InvalidInput("csv line " + std::to_string(line_no) + ": expected 7 columns");
    TrialRecord r;
    r.trial = parse_field_value<std::int64_t>(cells[0], line_no);
    r.m = parse_field_value<std::int64_t>(cells[1], line_no);
    r.error = parse_field_value<double>(cells[2], line_no);
    r.qdev = parse_field_value<double>(cells[3], line_no);
    if (!cells[4].empty()) r.hamming_gap = parse_field_value<double>(cells[4], line_no);
    if (cells[5] != "0" && cells[5] != "1")
      throw InvalidInput("csv line " + std::to_string(line_no) + ": degenerate must be 0 or 1");
    r.degenerate = cells[5] == "1";
    r.seed_path = std::string(cells[6]);
    records.push_back(std::move(r));
  }
  if (line_no == 0) throw InvalidInput("csv: missing header");
  return records;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

void emit_csv(const std::vector<TrialRecord>& records, const std::filesystem::path& path) {
  write_text_file(path, format_csv(records));
}

std::string format_bound_csv(const std::vector<BoundPoint>& bound, double bound_d) {
  std::string out = "m,delta_bound,D\n";
  for (const auto& b : bound)
    out += std::to_string(b.m) + ',' + format_double(b.delta) + ',' + format_double(bound_d) + '\n';
  return out;
}

std::string format_uniform_summary_csv(const std::vector<UniformSummary>& summary, std::int64_t inputs,
                                       double bound_d) {
  std::string out = "m,inputs,max_error,median_error,delta_bound,D\n";
  for (const auto& s : summary)
    out += std::to_string(s.m) + ',' + std::to_string(inputs) + ',' + format_double(s.max_error) + ',' +
           format_double(s.median_error) + ',' + format_double(s.delta_bound) + ',' + format_double(bound_d) + '\n';
  return out;
}

std::string format_noise_csv(const std::vector<NoiseRecord>& details) {
  std::string out = "trial,m,clean_error,noisy_error,clean_qdev,noisy_qdev,bound,applicable,holds\n";
  for (const auto& d : details)
    out += std::to_string(d.trial) + ',' + std::to_string(d.m) + ',' + format_double(d.clean_error) + ',' +
           format_double(d.noisy_error) + ',' + format_double(d.clean_qdev) + ',' + format_double(d.noisy_qdev) +
           ',' + format_double(d.bound) + ',' + (d.applicable ? '1' : '0') + ',' + (d.holds ? '1' : '0') + '\n';
  return out;
}

std::string print_theory(FieldKind field, std::int64_t n, double delta, double bound_d, double tau) {
  std::ostringstream out;
  auto line = [&](std::string_view key, const std::string& value) { out << key << '=' << value << '\n'; };
  const auto tc = theory::theory_constants(field, n);
  line("field", std::string(to_string(field)));
  line("n", std::to_string(n));
  line("beta", format_double(beta(field)));
  line("mu1", format_double(tc.mu1));
  line("mu2", format_double(tc.mu2));
  line("gap", format_double(tc.gap));
  if (tc.gap_lower) line("gap_lower", format_double(*tc.gap_lower));
  if (tc.gap_upper) line("gap_upper", format_double(*tc.gap_upper));
  line("delta", format_double(delta));
  line("D", format_double(bound_d));
  line("tau", format_double(tau));
  if (tc.gap > 0.0) {
    line("pointwise_m", std::to_string(theory::pointwise_m(field, n, delta, bound_d)));
    line("uniform_m", std::to_string(theory::uniform_m(field, n, delta, bound_d)));
    line("noisy_error_bound", format_double(theory::noisy_error_bound(field, n, delta, tau)));
  }
  line("hamming_conc_m", std::to_string(theory::hamming_conc_m(field, n, delta, bound_d)));
  if (n >= 2) line("dsep_probability", format_double(theory::dsep_probability(field, n)));
  return out.str();
}

}  // namespace bitretrieve
