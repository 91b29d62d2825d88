#include "bitretrieve/measurement.hpp"

#include <string>

namespace bitretrieve {

double hamming_distance(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) throw InvalidInput("hamming_distance: length mismatch");
  if (a.empty()) throw InvalidInput("hamming_distance: empty bit strings");
  std::size_t differ = 0;
  for (std::size_t j = 0; j < a.size(); ++j) differ += a[j] != b[j] ? 1 : 0;
  return static_cast<double>(differ) / static_cast<double>(a.size());
}

std::string_view to_string(FlipMode mode) { return mode == FlipMode::Random ? "random" : "greedy"; }

FlipMode parse_flip_mode(std::string_view text) {
  if (text == "random") return FlipMode::Random;
  if (text == "greedy") return FlipMode::Greedy;
  throw InvalidInput("unknown flip mode '" + std::string(text) + "' (expected random or greedy)");
}

std::size_t flip_count(double tau, std::size_t m) {
  if (!(tau >= 0.0 && tau < 1.0)) throw InvalidInput("flip_count: tau must lie in [0, 1)");
  const auto count = static_cast<std::size_t>(std::floor(tau * static_cast<double>(m)));
  return std::min(count, m);
}

BitString corrupt_bits_random(const BitString& bits, double tau, const SeedStream& stream) {
  const std::size_t m = bits.size();
  const std::size_t count = flip_count(tau, m);
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(stream);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t pick = i + static_cast<std::size_t>(rng.below(m - i));
    std::swap(order[i], order[pick]);
  }
  BitString out = bits;
  for (std::size_t i = 0; i < count; ++i) out.flip(order[i]);
  return out;
}

std::vector<std::size_t> top_indices(const std::vector<double>& scores, std::size_t count) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  count = std::min(count, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (scores[a] != scores[b]) return scores[a] > scores[b];
                      return a < b;
                    });
  order.resize(count);
  return order;
}

}  // namespace bitretrieve
