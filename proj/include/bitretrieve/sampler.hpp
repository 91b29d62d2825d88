#ifndef BITRETRIEVE_SAMPLER_HPP
#define BITRETRIEVE_SAMPLER_HPP

#include <complex>
#include <vector>

#include "bitretrieve/core_types.hpp"
#include "bitretrieve/parallel.hpp"
#include "bitretrieve/random.hpp"

namespace bitretrieve {

/// Standard Gaussian scalar. Over C both the real and imaginary parts are N(0, 1).
template <FieldScalar Scalar>
Scalar gaussian_scalar(Rng& rng) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return rng.gaussian();
  } else {
    const double re = rng.gaussian();
    const double im = rng.gaussian();
    return {re, im};
  }
}

/// d-by-k matrix of i.i.d. standard Gaussians, filled column-major.
template <FieldScalar Scalar>
Matrix<Scalar> gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix<Scalar> g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = gaussian_scalar<Scalar>(rng);
  return g;
}

/// Uniform point on the unit sphere of F^d, as g/||g|| for Gaussian g.
template <FieldScalar Scalar>
UnitVector<Scalar> sample_unit_vector(Eigen::Index d, const SeedStream& stream) {
  if (d < 1) throw InvalidInput("sample_unit_vector: dimension must be positive");
  Rng rng(stream);
  for (;;) {
    Vector<Scalar> g = gaussian_matrix<Scalar>(d, 1, rng);
    if (g.norm() > 0.0) return UnitVector<Scalar>(std::move(g));
  }
}

template <FieldScalar Scalar>
RankOneProjection<Scalar> sample_rank_one(Eigen::Index d, const SeedStream& stream) {
  return RankOneProjection<Scalar>(sample_unit_vector<Scalar>(d, stream));
}

/// Haar-distributed d-by-k matrix with orthonormal columns: Householder QR of a
/// Gaussian matrix, with the phase of each diagonal entry of R moved into Q.
template <FieldScalar Scalar>
Matrix<Scalar> haar_orthonormal_basis(Eigen::Index k, Eigen::Index d, Rng& rng) {
  const Matrix<Scalar> g = gaussian_matrix<Scalar>(d, k, rng);
  Eigen::HouseholderQR<Matrix<Scalar>> qr(g);
  Matrix<Scalar> q = qr.householderQ() * Matrix<Scalar>::Identity(d, k);
  const auto& packed = qr.matrixQR();
  for (Eigen::Index j = 0; j < k; ++j) {
    const Scalar r = packed(j, j);
    const double modulus = std::abs(r);
    if (modulus > 0.0) q.col(j) *= r / modulus;
  }
  return q;
}

/// Uniformly distributed rank-k orthogonal projection on F^d.
template <FieldScalar Scalar>
OrthogonalProjection<Scalar> sample_haar_projection(Eigen::Index k, Eigen::Index d, const SeedStream& stream) {
  if (k < 1 || k > d) throw InvalidInput("sample_haar_projection: need 1 <= k <= d");
  if (k == d) return OrthogonalProjection<Scalar>::identity(d);
  Rng rng(stream);
  return OrthogonalProjection<Scalar>::from_orthonormal_basis(haar_orthonormal_basis<Scalar>(k, d, rng));
}

/// m rank-n projections on F^(2n).
template <FieldScalar Scalar>
struct MeasurementEnsemble {
  Eigen::Index n = 0;
  std::vector<OrthogonalProjection<Scalar>> projections;

  static constexpr FieldKind field() { return field_of<Scalar>(); }
  Eigen::Index dim() const { return 2 * n; }
  std::size_t size() const { return projections.size(); }
  const OrthogonalProjection<Scalar>& operator[](std::size_t j) const { return projections[j]; }
};

/// Projection j is drawn from stream.child(j), so the ensemble does not depend on
/// `threads`.
template <FieldScalar Scalar>
MeasurementEnsemble<Scalar> sample_ensemble(Eigen::Index n, std::size_t m, const SeedStream& stream,
                                            unsigned threads = 1) {
  if (n < 1) throw InvalidInput("sample_ensemble: n must be positive");
  if (m < 1) throw InvalidInput("sample_ensemble: m must be positive");
  std::vector<OrthogonalProjection<Scalar>> projections(m, OrthogonalProjection<Scalar>::zero(2 * n));
  parallel_for(m, threads, [&](std::size_t j) {
    projections[j] = sample_haar_projection<Scalar>(n, 2 * n, stream.child(j));
  });
  return {n, std::move(projections)};
}

}  // namespace bitretrieve

#endif  // BITRETRIEVE_SAMPLER_HPP
