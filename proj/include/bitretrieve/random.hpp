#ifndef BITRETRIEVE_RANDOM_HPP
#define BITRETRIEVE_RANDOM_HPP

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace bitretrieve {

/// Addresses an independent random stream as (master seed, index path).
///
/// The stream key is derived by folding every path index into the master seed with
/// the SplitMix64 finalizer, so the key depends on the whole path (order and length)
/// and nothing else. Two SeedStreams with equal seed and path replay bit-identically.
class SeedStream {
 public:
  explicit SeedStream(std::uint64_t master_seed, std::vector<std::uint64_t> path = {})
      : master_seed_(master_seed), path_(std::move(path)) {}

  std::uint64_t master_seed() const { return master_seed_; }
  const std::vector<std::uint64_t>& path() const { return path_; }

  /// path ++ [index]
  SeedStream child(std::uint64_t index) const;
  SeedStream child(std::initializer_list<std::uint64_t> indices) const;

  std::uint64_t key() const;
  /// "a/b/c"; empty path gives "".
  std::string path_string() const;

 private:
  std::uint64_t master_seed_;
  std::vector<std::uint64_t> path_;
};

/// xoshiro256** seeded from a stream key through SplitMix64.
///
/// Doubles: top 53 bits scaled by 2^-53. Gaussians: basic Box-Muller on
/// (u1, u2) with u1 in (0, 1], producing the cosine branch first and caching the
/// sine branch for the next call. These choices are fixed so streams replay exactly.
class Rng {
 public:
  explicit Rng(const SeedStream& stream);
  explicit Rng(std::uint64_t key);

  std::uint64_t next_u64();
  /// Uniform on [0, 1).
  double uniform();
  /// Uniform integer in [0, bound); bound > 0. Multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound);
  double gaussian();

 private:
  std::array<std::uint64_t, 4> s_{};
  double cached_ = 0.0;
  bool has_cached_ = false;
};

std::uint64_t splitmix64_mix(std::uint64_t z);

}  // namespace bitretrieve

#endif  // BITRETRIEVE_RANDOM_HPP
