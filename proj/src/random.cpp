#include "bitretrieve/random.hpp"

#include <cmath>
#include <numbers>

namespace bitretrieve {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SeedStream SeedStream::child(std::uint64_t index) const {
  auto path = path_;
  path.push_back(index);
  return SeedStream(master_seed_, std::move(path));
}

SeedStream SeedStream::child(std::initializer_list<std::uint64_t> indices) const {
  auto path = path_;
  path.insert(path.end(), indices);
  return SeedStream(master_seed_, std::move(path));
}

std::uint64_t SeedStream::key() const {
  std::uint64_t h = splitmix64_mix(master_seed_ + kGolden);
  for (std::uint64_t index : path_) {
    h = splitmix64_mix(h + kGolden);
    h = splitmix64_mix(h ^ splitmix64_mix(index + 2 * kGolden));
  }
  return splitmix64_mix(h ^ static_cast<std::uint64_t>(path_.size()));
}

std::string SeedStream::path_string() const {
  std::string out;
  for (std::size_t i = 0; i < path_.size(); ++i) {
    if (i != 0) out += '/';
    out += std::to_string(path_[i]);
  }
  return out;
}

Rng::Rng(const SeedStream& stream) : Rng(stream.key()) {}

Rng::Rng(std::uint64_t key) {
  std::uint64_t z = key;
  for (auto& word : s_) {
    z += kGolden;
    word = splitmix64_mix(z);
  }
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t bound) {
  // Lemire's nearly divisionless method.
  unsigned __int128 product = static_cast<unsigned __int128>(next_u64()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      product = static_cast<unsigned __int128>(next_u64()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

double Rng::gaussian() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = r * std::sin(angle);
  has_cached_ = true;
  return r * std::cos(angle);
}

}  // namespace bitretrieve
