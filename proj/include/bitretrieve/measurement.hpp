#ifndef BITRETRIEVE_MEASUREMENT_HPP
#define BITRETRIEVE_MEASUREMENT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string_view>
#include <vector>

#include "bitretrieve/core_types.hpp"
#include "bitretrieve/random.hpp"
#include "bitretrieve/sampler.hpp"

namespace bitretrieve {

/// Threshold k/d of the binary question for a rank-k projection on F^d.
template <FieldScalar Scalar>
double question_threshold(const OrthogonalProjection<Scalar>& p) {
  return static_cast<double>(p.rank()) / static_cast<double>(p.dim());
}

/// 1 iff tr(PX) >= k/d. Ties resolve to 1 so that bit 1 selects P and bit 0 selects
/// I - P when forming proximally flipped projections.
template <FieldScalar Scalar>
std::uint8_t binary_question(const OrthogonalProjection<Scalar>& p, const RankOneProjection<Scalar>& x) {
  if (p.dim() != x.dim()) throw InvalidInput("binary_question: dimension mismatch");
  return p.trace_with(x) >= question_threshold(p) ? 1 : 0;
}

/// tr(P_j X) for every projection of the ensemble.
template <FieldScalar Scalar>
std::vector<double> ensemble_traces(const MeasurementEnsemble<Scalar>& ens, const RankOneProjection<Scalar>& x) {
  if (ens.dim() != x.dim()) throw InvalidInput("measure: dimension mismatch");
  std::vector<double> traces(ens.size());
  for (std::size_t j = 0; j < ens.size(); ++j) traces[j] = ens[j].trace_with(x);
  return traces;
}

template <FieldScalar Scalar>
BitString measure(const MeasurementEnsemble<Scalar>& ens, const RankOneProjection<Scalar>& x) {
  if (ens.dim() != x.dim()) throw InvalidInput("measure: dimension mismatch");
  std::vector<std::uint8_t> bits(ens.size());
  for (std::size_t j = 0; j < ens.size(); ++j) bits[j] = binary_question(ens[j], x);
  return BitString(std::move(bits));
}

/// Normalized Hamming distance.
double hamming_distance(const BitString& a, const BitString& b);

template <FieldScalar Scalar>
double measurement_hamming(const MeasurementEnsemble<Scalar>& ens, const RankOneProjection<Scalar>& x,
                           const RankOneProjection<Scalar>& y) {
  if (x.dim() != y.dim()) throw InvalidInput("measurement_hamming: dimension mismatch");
  return hamming_distance(measure(ens, x), measure(ens, y));
}

template <FieldScalar Scalar>
bool separates(const OrthogonalProjection<Scalar>& p, const RankOneProjection<Scalar>& x,
               const RankOneProjection<Scalar>& y) {
  return binary_question(p, x) != binary_question(p, y);
}

/// The t-separation predicate on already computed traces a = tr(PX), b = tr(PY):
/// (a + t < 1/2 <= b - t) or (b + t < 1/2 <= a - t).
inline bool t_separates_traces(double a, double b, double t) {
  return (a + t < 0.5 && 0.5 <= b - t) || (b + t < 0.5 && 0.5 <= a - t);
}

template <FieldScalar Scalar>
bool t_separates(const OrthogonalProjection<Scalar>& p, const RankOneProjection<Scalar>& x,
                 const RankOneProjection<Scalar>& y, double t) {
  if (p.dim() != x.dim() || p.dim() != y.dim()) throw InvalidInput("t_separates: dimension mismatch");
  if (2 * p.rank() != p.dim()) throw InvalidInput("t_separates: requires a half-dimensional projection");
  return t_separates_traces(p.trace_with(x), p.trace_with(y), t);
}

/// t-soft Hamming distance: fraction of projections that t-separate X and Y.
template <FieldScalar Scalar>
double soft_hamming(const MeasurementEnsemble<Scalar>& ens, const RankOneProjection<Scalar>& x,
                    const RankOneProjection<Scalar>& y, double t) {
  if (ens.size() == 0) throw InvalidInput("soft_hamming: empty ensemble");
  std::size_t count = 0;
  for (std::size_t j = 0; j < ens.size(); ++j) count += t_separates(ens[j], x, y, t) ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(ens.size());
}

enum class FlipMode { Random, Greedy };

std::string_view to_string(FlipMode mode);
FlipMode parse_flip_mode(std::string_view text);

/// Number of flips for rate tau on m bits: floor(tau * m).
std::size_t flip_count(double tau, std::size_t m);

/// Random-mode corruption: flips a uniformly chosen subset of exactly floor(tau*m)
/// positions (partial Fisher-Yates driven by `stream`).
BitString corrupt_bits_random(const BitString& bits, double tau, const SeedStream& stream);

/// Indices of the `count` largest scores, ties broken by lower index.
std::vector<std::size_t> top_indices(const std::vector<double>& scores, std::size_t count);

template <FieldScalar Scalar>
struct FlipContext {
  const MeasurementEnsemble<Scalar>* ensemble = nullptr;
  const RankOneProjection<Scalar>* signal = nullptr;
};

/// Flips exactly floor(tau * m) bits. Greedy mode needs the ensemble and signal and
/// flips the bits with the largest |1 - 2 tr(P_j X)|; each such flip moves
/// tr(Q X) by the largest amount, (1 - 2 tr(P_j X)) / m in modulus.
template <FieldScalar Scalar>
BitString corrupt_bits(const BitString& bits, double tau, FlipMode mode, const SeedStream& stream,
                       std::optional<FlipContext<Scalar>> context = std::nullopt) {
  if (!(tau >= 0.0 && tau < 1.0)) throw InvalidInput("corrupt_bits: tau must lie in [0, 1)");
  if (mode == FlipMode::Random) return corrupt_bits_random(bits, tau, stream);
  if (!context || context->ensemble == nullptr || context->signal == nullptr)
    throw InvalidInput("corrupt_bits: greedy mode requires the ensemble and signal");
  const auto& ens = *context->ensemble;
  if (ens.size() != bits.size()) throw InvalidInput("corrupt_bits: bit string length does not match ensemble");
  const std::vector<double> traces = ensemble_traces(ens, *context->signal);
  std::vector<double> damage(traces.size());
  std::transform(traces.begin(), traces.end(), damage.begin(), [](double a) { return std::abs(1.0 - 2.0 * a); });
  BitString out = bits;
  for (std::size_t j : top_indices(damage, flip_count(tau, bits.size()))) out.flip(j);
  return out;
}

}  // namespace bitretrieve

#endif  // BITRETRIEVE_MEASUREMENT_HPP
