#include <cmath>
#include <numbers>

#include "bitretrieve/core_types.hpp"
#include "test_util.hpp"

namespace bitretrieve {
namespace {

using test::Complex;

TEST(FieldKind, BetaMatchesField) {
  EXPECT_EQ(beta(FieldKind::Real), 0.5);
  EXPECT_EQ(beta(FieldKind::Complex), 1.0);
  EXPECT_EQ(field_of<double>(), FieldKind::Real);
  EXPECT_EQ(field_of<Complex>(), FieldKind::Complex);
}

TEST(FieldKind, ParseRoundTrip) {
  for (auto f : {FieldKind::Real, FieldKind::Complex}) EXPECT_EQ(parse_field(to_string(f)), f);
  EXPECT_EQ(parse_field("R"), FieldKind::Real);
  EXPECT_EQ(parse_field("Complex"), FieldKind::Complex);
  EXPECT_THROW(parse_field("quaternion"), InvalidInput);
}

template <typename Scalar>
class CoreTypesTyped : public ::testing::Test {};
TYPED_TEST_SUITE(CoreTypesTyped, test::Scalars);

TYPED_TEST(CoreTypesTyped, UnitVectorNormalizes) {
  Vector<TypeParam> v(3);
  v << TypeParam(3), TypeParam(0), TypeParam(4);
  const UnitVector<TypeParam> u(v);
  EXPECT_NEAR(u.entries().norm(), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(u[0]), 0.6, 1e-15);
}

TYPED_TEST(CoreTypesTyped, UnitVectorRejectsZeroAndEmpty) {
  EXPECT_THROW(UnitVector<TypeParam>(Vector<TypeParam>::Zero(4)), InvalidInput);
  EXPECT_THROW(UnitVector<TypeParam>(Vector<TypeParam>(0)), InvalidInput);
}

TYPED_TEST(CoreTypesTyped, RankOneFromBasisVector) {
  const auto x = test::basis_projection<TypeParam>(4, 0);
  Matrix<TypeParam> expected = Matrix<TypeParam>::Zero(4, 4);
  expected(0, 0) = TypeParam(1);
  EXPECT_EQ(x.matrix(), expected);
}

TYPED_TEST(CoreTypesTyped, RankOneHalfBlock) {
  Vector<TypeParam> v = Vector<TypeParam>::Zero(4);
  v(0) = v(1) = TypeParam(1);
  const auto x = rank_one_from_vector<TypeParam>(v);
  Matrix<TypeParam> expected = Matrix<TypeParam>::Zero(4, 4);
  expected.topLeftCorner(2, 2).setConstant(TypeParam(0.5));
  EXPECT_LT((x.matrix() - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TYPED_TEST(CoreTypesTyped, RankOneIsPhaseInvariant) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = test::random_rank_one<TypeParam>(6, 3, static_cast<std::uint64_t>(trial));
    const TypeParam alpha = test::random_phase<TypeParam>(rng);
    const auto y = rank_one_from_vector<TypeParam>(Vector<TypeParam>(alpha * x.vector().entries()));
    EXPECT_LT((x.matrix() - y.matrix()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TYPED_TEST(CoreTypesTyped, RankOneInvariants) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto x = test::random_rank_one<TypeParam>(8, 11, i);
    const Matrix<TypeParam> m = x.matrix();
    EXPECT_LE(hermitian_defect(m), 1e-10);
    EXPECT_LE((m * m - m).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_NEAR(std::real(m.trace()), 1.0, 1e-12);
  }
}

TYPED_TEST(CoreTypesTyped, OperatorNormExamples) {
  EXPECT_EQ(operator_norm(HermitianMatrix<TypeParam>(Matrix<TypeParam>::Zero(3, 3))), 0.0);
  for (std::uint64_t i = 0; i < 10; ++i) {
    const auto p = sample_haar_projection<TypeParam>(3, 6, SeedStream(5, {i}));
    EXPECT_NEAR(operator_norm(p.matrix()), 1.0, 1e-10);
  }
  Vector<TypeParam> y = test::basis<TypeParam>(2, 0) + test::basis<TypeParam>(2, 1);
  const auto x = test::basis_projection<TypeParam>(2, 0);
  const auto yy = rank_one_from_vector<TypeParam>(y);
  const double expected = std::sin(std::numbers::pi / 4.0);
  EXPECT_NEAR(operator_norm(Matrix<TypeParam>(x.matrix() - yy.matrix())), expected, 1e-12);
}

TYPED_TEST(CoreTypesTyped, OperatorNormRejectsNonHermitian) {
  Matrix<TypeParam> m = Matrix<TypeParam>::Zero(2, 2);
  m(0, 1) = TypeParam(1);
  EXPECT_THROW(operator_norm(m), InvalidInput);
  EXPECT_THROW(HermitianMatrix<TypeParam>{m}, InvalidInput);
}

TYPED_TEST(CoreTypesTyped, RankOneDistanceExamples) {
  const auto x = test::basis_projection<TypeParam>(3, 0);
  EXPECT_EQ(rank_one_distance(x, x), 0.0);
  EXPECT_EQ(rank_one_distance(x, test::basis_projection<TypeParam>(3, 1)), 1.0);
  Vector<TypeParam> y(3);
  y << TypeParam(std::cos(std::numbers::pi / 6.0)), TypeParam(std::sin(std::numbers::pi / 6.0)), TypeParam(0);
  const auto yy = rank_one_from_vector<TypeParam>(y);
  EXPECT_NEAR(rank_one_distance(x, yy), 0.5, 1e-15);
  // Independent route: largest |eigenvalue| of X - Y from a dense eigensolve.
  Eigen::SelfAdjointEigenSolver<Matrix<TypeParam>> solver(Matrix<TypeParam>(x.matrix() - yy.matrix()));
  EXPECT_NEAR(solver.eigenvalues().cwiseAbs().maxCoeff(), 0.5, 1e-12);
}

TYPED_TEST(CoreTypesTyped, RankOneDistanceRejectsMismatch) {
  EXPECT_THROW(rank_one_distance(test::basis_projection<TypeParam>(3, 0), test::basis_projection<TypeParam>(4, 0)),
               InvalidInput);
}

TYPED_TEST(CoreTypesTyped, RankOneDistanceMatchesOperatorNorm) {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto x = test::random_rank_one<TypeParam>(6, 21, 2 * i);
    const auto y = test::random_rank_one<TypeParam>(6, 21, 2 * i + 1);
    const double direct = operator_norm(Matrix<TypeParam>(x.matrix() - y.matrix()));
    ASSERT_NEAR(rank_one_distance(x, y), direct, 1e-9);
    ASSERT_NEAR(rank_one_distance(x, y), std::sqrt(std::max(0.0, 1.0 - trace_product(x, y))), 1e-9);
  }
}

TYPED_TEST(CoreTypesTyped, NormInequality) {
  // ||xx* - yy*|| <= ||x - y|| for unit x, y, over raw (unphased) representatives.
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto x = sample_unit_vector<TypeParam>(5, SeedStream(31, {0, i}));
    const auto y = sample_unit_vector<TypeParam>(5, SeedStream(31, {1, i}));
    const double lhs = rank_one_distance(RankOneProjection<TypeParam>(x), RankOneProjection<TypeParam>(y));
    ASSERT_LE(lhs, (x.entries() - y.entries()).norm() + 1e-15);
  }
}

TYPED_TEST(CoreTypesTyped, RankOneDistanceAccurateForNearbyInputs) {
  Vector<TypeParam> y = test::basis<TypeParam>(2, 0) + 1e-10 * test::basis<TypeParam>(2, 1);
  const double d = rank_one_distance(test::basis_projection<TypeParam>(2, 0), rank_one_from_vector<TypeParam>(y));
  EXPECT_NEAR(d, 1e-10, 1e-20);
}

TYPED_TEST(CoreTypesTyped, ProjectionConstructorChecksInvariants) {
  Matrix<TypeParam> p = Matrix<TypeParam>::Zero(2, 2);
  p(0, 0) = TypeParam(1);
  EXPECT_NO_THROW(OrthogonalProjection<TypeParam>(p, 1));
  EXPECT_THROW(OrthogonalProjection<TypeParam>(p, 2), InvalidInput);
  Matrix<TypeParam> q = p;
  q(1, 1) = TypeParam(0.5);
  EXPECT_THROW(OrthogonalProjection<TypeParam>(q, 1), InvalidInput);
  Matrix<TypeParam> r = p;
  r(0, 1) = TypeParam(0.1);
  EXPECT_THROW(OrthogonalProjection<TypeParam>(r, 1), InvalidInput);
}

TYPED_TEST(CoreTypesTyped, ComplementAndTrace) {
  const auto p = sample_haar_projection<TypeParam>(2, 5, SeedStream(8));
  const auto q = p.complement();
  EXPECT_EQ(q.rank(), 3);
  EXPECT_LT((p.matrix() + q.matrix() - Matrix<TypeParam>::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-15);
  const auto x = test::random_rank_one<TypeParam>(5, 9, 0);
  EXPECT_NEAR(p.trace_with(x) + q.trace_with(x), 1.0, 1e-12);
  EXPECT_NEAR(p.trace_with(x), std::real((p.matrix() * x.matrix()).trace()), 1e-12);
}

TEST(BitString, SerializeParseRoundTrip) {
  const BitString bits({0, 1, 1, 0, 1});
  EXPECT_EQ(bits.serialize(), "01101\n");
  EXPECT_EQ(BitString::parse(bits.serialize()), bits);
  EXPECT_EQ(BitString::parse("01101"), bits);
}

TEST(BitString, RejectsInvalidContent) {
  EXPECT_THROW(BitString({0, 2}), InvalidInput);
  EXPECT_THROW(BitString::parse("01x"), InvalidInput);
}

TEST(BitString, Flip) {
  BitString bits({0, 1});
  bits.flip(0);
  bits.flip(1);
  EXPECT_EQ(bits, BitString({1, 0}));
}

}  // namespace
}  // namespace bitretrieve
