#ifndef BITRETRIEVE_RECOVERY_HPP
#define BITRETRIEVE_RECOVERY_HPP

#include <cstddef>
#include <limits>
#include <vector>

#include "bitretrieve/core_types.hpp"
#include "bitretrieve/measurement.hpp"
#include "bitretrieve/parallel.hpp"
#include "bitretrieve/sampler.hpp"

namespace bitretrieve {

inline constexpr double kDegeneracyTolerance = 1e-9;

/// Proximally flipped projection: P for bit 1, I - P for bit 0.
template <FieldScalar Scalar>
OrthogonalProjection<Scalar> flipped_projection(const OrthogonalProjection<Scalar>& p, std::uint8_t bit) {
  if (bit > 1) throw InvalidInput("flipped_projection: bit must be 0 or 1");
  return bit ? p : p.complement();
}

/// Streaming sum of flipped projections.
///
/// Terms are added into fixed blocks of kBlock consecutive indices, and block sums
/// are folded into the total in index order. Any partition of the index range into
/// whole blocks therefore reproduces the same bits, which lets empirical_average
/// split work across threads without changing the result.
template <FieldScalar Scalar>
class AverageAccumulator {
 public:
  static constexpr std::size_t kBlock = 1024;

  explicit AverageAccumulator(Eigen::Index dim)
      : dim_(dim), total_(Matrix<Scalar>::Zero(dim, dim)), block_(Matrix<Scalar>::Zero(dim, dim)) {}

  void add(const OrthogonalProjection<Scalar>& p, std::uint8_t bit) {
    if (p.dim() != dim_) throw InvalidInput("empirical_average: dimension mismatch");
    if (bit) {
      block_ += p.matrix();
    } else {
      block_ -= p.matrix();
      block_.diagonal().array() += Scalar(1);
    }
    if (++in_block_ == kBlock) flush();
  }

  /// Appends a finished block sum (as produced by block_sum) in index order.
  void add_block(const Matrix<Scalar>& sum, std::size_t terms) {
    if (in_block_ != 0) throw InvalidInput("AverageAccumulator: blocks must be aligned");
    total_ += sum;
    count_ += terms;
  }

  std::size_t count() const { return count_ + in_block_; }

  /// (1/m) * sum of the added terms.
  HermitianMatrix<Scalar> average() {
    flush();
    if (count_ == 0) throw InvalidInput("empirical_average: no terms");
    Matrix<Scalar> q = total_ / static_cast<double>(count_);
    q.template triangularView<Eigen::StrictlyUpper>() = q.adjoint();
    for (Eigen::Index i = 0; i < dim_; ++i) q(i, i) = std::real(q(i, i));
    return HermitianMatrix<Scalar>(std::move(q));
  }

  /// Sum of flipped projections over one block [begin, end).
  static Matrix<Scalar> block_sum(const MeasurementEnsemble<Scalar>& ens, const BitString& bits, std::size_t begin,
                                  std::size_t end) {
    AverageAccumulator acc(ens.dim());
    for (std::size_t j = begin; j < end; ++j) acc.add(ens[j], bits[j]);
    return acc.in_block_ == 0 ? acc.total_ : acc.block_;
  }

 private:
  void flush() {
    if (in_block_ == 0) return;
    total_ += block_;
    block_.setZero();
    count_ += in_block_;
    in_block_ = 0;
  }

  Eigen::Index dim_;
  Matrix<Scalar> total_;
  Matrix<Scalar> block_;
  std::size_t count_ = 0;
  std::size_t in_block_ = 0;
};

/// Q = (1/m) sum_j flipped_projection(P_j, b_j).
template <FieldScalar Scalar>
HermitianMatrix<Scalar> empirical_average(const MeasurementEnsemble<Scalar>& ens, const BitString& bits,
                                          unsigned threads = 1) {
  if (bits.size() != ens.size()) throw InvalidInput("empirical_average: bit string length does not match ensemble");
  if (ens.size() == 0) throw InvalidInput("empirical_average: empty ensemble");
  constexpr std::size_t block = AverageAccumulator<Scalar>::kBlock;
  const std::size_t blocks = (ens.size() + block - 1) / block;
  std::vector<Matrix<Scalar>> partial(blocks);
  parallel_for(blocks, threads, [&](std::size_t b) {
    partial[b] = AverageAccumulator<Scalar>::block_sum(ens, bits, b * block, std::min(ens.size(), (b + 1) * block));
  });
  AverageAccumulator<Scalar> acc(ens.dim());
  for (std::size_t b = 0; b < blocks; ++b)
    acc.add_block(partial[b], std::min(ens.size(), (b + 1) * block) - b * block);
  return acc.average();
}

template <FieldScalar Scalar>
struct Eigenpair {
  double value = 0.0;
  UnitVector<Scalar> vector;
  /// lambda_1 - lambda_2; infinite in dimension one.
  double margin = 0.0;
};

/// Largest eigenvalue, an eigenvector for it, and its separation from the next one.
/// When the top eigenvalue is repeated the solver's last-reported column is used.
template <FieldScalar Scalar>
Eigenpair<Scalar> principal_eigenpair(const HermitianMatrix<Scalar>& h) {
  const Eigen::Index d = h.dim();
  if (d == 0) throw InvalidInput("principal_eigenpair: empty matrix");
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(h.matrix());
  if (solver.info() != Eigen::Success) throw InvalidInput("principal_eigenpair: eigensolver failed");
  const auto& values = solver.eigenvalues();
  const double top = values(d - 1);
  const double margin = d > 1 ? top - values(d - 2) : std::numeric_limits<double>::infinity();
  return {top, UnitVector<Scalar>(solver.eigenvectors().col(d - 1)), std::max(0.0, margin)};
}

template <FieldScalar Scalar>
struct RecoveryResult {
  RankOneProjection<Scalar> estimate;
  double top_eigenvalue = 0.0;
  double spectral_margin = 0.0;
  bool degenerate = false;
};

/// Solves max tr(QY) over Y >= 0, tr Y <= 1 by taking the principal eigenvector of Q.
template <FieldScalar Scalar>
RecoveryResult<Scalar> pep_recover(const HermitianMatrix<Scalar>& average) {
  auto pair = principal_eigenpair(average);
  return {RankOneProjection<Scalar>(std::move(pair.vector)), pair.value, pair.margin,
          pair.margin < kDegeneracyTolerance};
}

template <FieldScalar Scalar>
RecoveryResult<Scalar> pep_recover(const MeasurementEnsemble<Scalar>& ens, const BitString& bits,
                                   unsigned threads = 1) {
  return pep_recover(empirical_average(ens, bits, threads));
}

/// Q(X) = mu1 X + mu2 (I - X).
template <FieldScalar Scalar>
HermitianMatrix<Scalar> expected_average(const RankOneProjection<Scalar>& x, double mu1, double mu2) {
  Matrix<Scalar> q = (mu1 - mu2) * x.matrix();
  q.diagonal().array() += Scalar(mu2);
  q.template triangularView<Eigen::StrictlyUpper>() = q.adjoint();
  for (Eigen::Index i = 0; i < q.rows(); ++i) q(i, i) = std::real(q(i, i));
  return HermitianMatrix<Scalar>(std::move(q));
}

/// ||Q - Q(X)||.
template <FieldScalar Scalar>
double average_deviation(const HermitianMatrix<Scalar>& average, const RankOneProjection<Scalar>& x, double mu1,
                         double mu2) {
  return operator_norm(HermitianMatrix<Scalar>(average.matrix() - expected_average(x, mu1, mu2).matrix()));
}

}  // namespace bitretrieve

#endif  // BITRETRIEVE_RECOVERY_HPP
