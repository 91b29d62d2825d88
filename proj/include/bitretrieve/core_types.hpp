#ifndef BITRETRIEVE_CORE_TYPES_HPP
#define BITRETRIEVE_CORE_TYPES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

namespace bitretrieve {

/// Thrown when an argument violates an operation's precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class FieldKind { Real, Complex };

/// beta = 1/2 over R and 1 over C. Every closed form is written in terms of it.
constexpr double beta(FieldKind field) { return field == FieldKind::Real ? 0.5 : 1.0; }

std::string_view to_string(FieldKind field);
FieldKind parse_field(std::string_view text);

template <typename Scalar>
struct FieldTraits;

template <>
struct FieldTraits<double> {
  static constexpr FieldKind kind = FieldKind::Real;
};

template <>
struct FieldTraits<std::complex<double>> {
  static constexpr FieldKind kind = FieldKind::Complex;
};

template <typename Scalar>
concept FieldScalar = std::is_same_v<Scalar, double> || std::is_same_v<Scalar, std::complex<double>>;

template <FieldScalar Scalar>
constexpr FieldKind field_of() {
  return FieldTraits<Scalar>::kind;
}

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

namespace tolerance {
inline constexpr double kNormalization = 1e-12;
inline constexpr double kHermitian = 1e-10;
inline constexpr double kIdempotent = 1e-8;
inline constexpr double kTrace = 1e-8;
}  // namespace tolerance

/// Largest entrywise modulus of H - H*.
template <typename Derived>
double hermitian_defect(const Eigen::MatrixBase<Derived>& h) {
  if (h.rows() != h.cols()) return std::numeric_limits<double>::infinity();
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

template <FieldScalar Scalar>
class UnitVector {
 public:
  /// Normalizes `entries`; the zero vector is rejected.
  explicit UnitVector(Vector<Scalar> entries) : entries_(std::move(entries)) {
    if (entries_.size() == 0) throw InvalidInput("unit vector: dimension must be positive");
    const double norm = entries_.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw InvalidInput("unit vector: zero or non-finite input");
    entries_ /= norm;
  }

  static constexpr FieldKind field() { return field_of<Scalar>(); }
  Eigen::Index dim() const { return entries_.size(); }
  const Vector<Scalar>& entries() const { return entries_; }
  Scalar operator[](Eigen::Index i) const { return entries_(i); }

 private:
  Vector<Scalar> entries_;
};

/// X = xx*, kept as its unit representative. The global phase of x is arbitrary.
template <FieldScalar Scalar>
class RankOneProjection {
 public:
  explicit RankOneProjection(UnitVector<Scalar> x) : x_(std::move(x)) {}

  static constexpr FieldKind field() { return field_of<Scalar>(); }
  Eigen::Index dim() const { return x_.dim(); }
  const UnitVector<Scalar>& vector() const { return x_; }

  Matrix<Scalar> matrix() const { return x_.entries() * x_.entries().adjoint(); }

 private:
  UnitVector<Scalar> x_;
};

template <FieldScalar Scalar>
RankOneProjection<Scalar> rank_one_from_vector(const Vector<Scalar>& x) {
  return RankOneProjection<Scalar>(UnitVector<Scalar>(x));
}

template <FieldScalar Scalar>
RankOneProjection<Scalar> rank_one_from_vector(const UnitVector<Scalar>& x) {
  return RankOneProjection<Scalar>(x);
}

template <FieldScalar Scalar>
class HermitianMatrix {
 public:
  explicit HermitianMatrix(Matrix<Scalar> m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw InvalidInput("hermitian matrix: not square");
    if (hermitian_defect(m_) > tolerance::kHermitian) throw InvalidInput("hermitian matrix: not self-adjoint");
  }

  static constexpr FieldKind field() { return field_of<Scalar>(); }
  Eigen::Index dim() const { return m_.rows(); }
  const Matrix<Scalar>& matrix() const { return m_; }

 private:
  Matrix<Scalar> m_;
};

/// Rank-k orthogonal projection on F^d, stored densely.
template <FieldScalar Scalar>
class OrthogonalProjection {
 public:
  /// Validates Hermitian, idempotent and trace invariants.
  OrthogonalProjection(Matrix<Scalar> p, Eigen::Index rank) : p_(std::move(p)), rank_(rank) {
    if (p_.rows() != p_.cols()) throw InvalidInput("projection: not square");
    if (rank_ < 0 || rank_ > p_.rows()) throw InvalidInput("projection: rank out of range");
    if (hermitian_defect(p_) > tolerance::kHermitian) throw InvalidInput("projection: not self-adjoint");
    if ((p_ * p_ - p_).cwiseAbs().maxCoeff() > tolerance::kIdempotent)
      throw InvalidInput("projection: not idempotent");
    if (std::abs(std::real(p_.trace()) - static_cast<double>(rank_)) > tolerance::kTrace)
      throw InvalidInput("projection: trace does not match rank");
  }

  /// P = QQ* for a d-by-k matrix Q with orthonormal columns. The lower triangle is
  /// mirrored so P is exactly self-adjoint.
  static OrthogonalProjection from_orthonormal_basis(const Matrix<Scalar>& basis) {
    const Eigen::Index d = basis.rows();
    Matrix<Scalar> p = Matrix<Scalar>::Zero(d, d);
    p.template selfadjointView<Eigen::Lower>().rankUpdate(basis);
    p.template triangularView<Eigen::StrictlyUpper>() = p.adjoint();
    for (Eigen::Index i = 0; i < d; ++i) p(i, i) = std::real(p(i, i));
    return OrthogonalProjection(std::move(p), basis.cols(), Unchecked{});
  }

  static OrthogonalProjection identity(Eigen::Index d) {
    return OrthogonalProjection(Matrix<Scalar>::Identity(d, d), d, Unchecked{});
  }

  static OrthogonalProjection zero(Eigen::Index d) {
    return OrthogonalProjection(Matrix<Scalar>::Zero(d, d), 0, Unchecked{});
  }

  /// I - P.
  OrthogonalProjection complement() const {
    Matrix<Scalar> q = -p_;
    q.diagonal().array() += Scalar(1);
    return OrthogonalProjection(std::move(q), dim() - rank_, Unchecked{});
  }

  static constexpr FieldKind field() { return field_of<Scalar>(); }
  Eigen::Index dim() const { return p_.rows(); }
  Eigen::Index rank() const { return rank_; }
  const Matrix<Scalar>& matrix() const { return p_; }

  /// tr(PX) = x*Px.
  double trace_with(const RankOneProjection<Scalar>& x) const {
    const auto& v = x.vector().entries();
    return std::real(v.dot(p_ * v));
  }

 private:
  struct Unchecked {};
  OrthogonalProjection(Matrix<Scalar> p, Eigen::Index rank, Unchecked) : p_(std::move(p)), rank_(rank) {}

  Matrix<Scalar> p_;
  Eigen::Index rank_;
};

/// One-bit measurement outcome, one 0/1 entry per projection.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::vector<std::uint8_t> bits);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  void flip(std::size_t i) { bits_[i] ^= 1U; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  /// ASCII '0'/'1' characters, no separators, newline-terminated.
  std::string serialize() const;
  /// Inverse of serialize(); a single trailing newline is optional.
  static BitString parse(std::string_view text);

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// max |eigenvalue| of a self-adjoint matrix.
template <FieldScalar Scalar>
double operator_norm(const HermitianMatrix<Scalar>& h) {
  if (h.dim() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(h.matrix(), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

template <typename Derived>
double operator_norm(const Eigen::MatrixBase<Derived>& h) {
  using Scalar = typename Derived::Scalar;
  return operator_norm(HermitianMatrix<Scalar>(Matrix<Scalar>(h)));
}

/// ||X - Y|| = sin of the principal angle between the ranges.
///
/// Evaluated as the norm of the component of x orthogonal to y, which equals
/// sqrt(1 - tr(XY)) but keeps full relative accuracy for nearby inputs.
template <FieldScalar Scalar>
double rank_one_distance(const RankOneProjection<Scalar>& x, const RankOneProjection<Scalar>& y) {
  if (x.dim() != y.dim()) throw InvalidInput("rank_one_distance: dimension mismatch");
  const auto& u = x.vector().entries();
  const auto& v = y.vector().entries();
  const Scalar overlap = v.dot(u);
  const double s = (u - overlap * v).norm();
  return std::min(1.0, s);
}

/// tr(XY) = |<x, y>|^2.
template <FieldScalar Scalar>
double trace_product(const RankOneProjection<Scalar>& x, const RankOneProjection<Scalar>& y) {
  if (x.dim() != y.dim()) throw InvalidInput("trace_product: dimension mismatch");
  return std::norm(x.vector().entries().dot(y.vector().entries()));
}

}  // namespace bitretrieve

#endif  // BITRETRIEVE_CORE_TYPES_HPP
