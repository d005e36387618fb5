#include <gtest/gtest.h>

#include <cmath>

#include "curvlab/space.hpp"
#include "oracle.hpp"

using namespace curvlab;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected curvlab::Error";
  return ErrorCode::IoError;
}

}  // namespace

TEST(ComplexStructure, StandardBlockIsValid) {
  const auto j = ComplexStructure::standard(4);
  EXPECT_NO_THROW(ComplexStructure::validate(j.matrix(), 0.0));
  EXPECT_EQ(j.matrix()(1, 0), 1.0);
  EXPECT_EQ(j.matrix()(0, 1), -1.0);
}

TEST(ComplexStructure, RejectsBadMatrices) {
  EXPECT_EQ(code_of([] { ComplexStructure::validate(Matrix::Identity(4, 4)); }),
            ErrorCode::NotAntiInvolution);
  EXPECT_EQ(code_of([] { ComplexStructure::validate(2.0 * ComplexStructure::standard(4).matrix()); }),
            ErrorCode::NotOrthogonal);
  EXPECT_EQ(code_of([] { ComplexStructure::validate(Matrix::Zero(4, 3)); }), ErrorCode::NotSquare);
  EXPECT_EQ(code_of([] { ComplexStructure::validate(Matrix::Identity(3, 3)); }),
            ErrorCode::OddDimension);
}

TEST(ComplexStructure, ToleranceIsConfigurable) {
  Matrix j = ComplexStructure::standard(4).matrix();
  j(0, 0) = 1e-9;
  EXPECT_THROW(ComplexStructure::validate(j), Error);
  EXPECT_NO_THROW(ComplexStructure::validate(j, 1e-6));
}

TEST(QuaternionTriple, RelationsHoldExactly) {
  for (int m : {4, 8, 12}) {
    const auto q = build_quaternion_triple(m);
    const Matrix id = Matrix::Identity(m, m);
    const Matrix* js[] = {&q.j1.matrix(), &q.j2.matrix(), &q.j3.matrix()};
    for (int a = 0; a < 3; ++a) {
      EXPECT_EQ(oracle::max_abs(*js[a] * *js[a] + id), 0.0);
      for (int b = a + 1; b < 3; ++b) {
        EXPECT_EQ(oracle::max_abs(*js[a] * *js[b] + *js[b] * *js[a]), 0.0) << a << b;
      }
    }
    EXPECT_EQ(oracle::max_abs(q.j1.matrix() * q.j2.matrix() - q.j3.matrix()), 0.0);
  }
}

TEST(QuaternionTriple, FourDimensionalIsLeftMultiplication) {
  // On H with basis (1, i, j, k): i*1 = i, j*1 = j, k*1 = k, i*j = k.
  const auto q = build_quaternion_triple(4);
  EXPECT_EQ(q.j1.apply(oracle::e(4, 0)), oracle::e(4, 1));
  EXPECT_EQ(q.j2.apply(oracle::e(4, 0)), oracle::e(4, 2));
  EXPECT_EQ(q.j3.apply(oracle::e(4, 0)), oracle::e(4, 3));
  EXPECT_EQ(q.j1.apply(oracle::e(4, 2)), oracle::e(4, 3));
}

TEST(QuaternionTriple, EightIsBlockDiagonal) {
  const auto q4 = build_quaternion_triple(4);
  const auto q8 = build_quaternion_triple(8);
  EXPECT_EQ(q8.j2.matrix().block(4, 4, 4, 4), q4.j2.matrix());
  EXPECT_EQ(oracle::max_abs(q8.j2.matrix().block(0, 4, 4, 4)), 0.0);
}

TEST(QuaternionTriple, NeedsMultipleOfFour) {
  EXPECT_EQ(code_of([] { build_quaternion_triple(6); }), ErrorCode::DimensionNotMultipleOf4);
}

TEST(ThetaMap, IsComplexIsometrySwappingJ1AndJ3) {
  for (int m : {4, 8}) {
    const auto q = build_quaternion_triple(m);
    const Matrix t = theta_map(q).matrix();
    const Matrix expected = (Matrix::Identity(m, m) + q.j2.matrix()) / std::sqrt(2.0);
    EXPECT_LT(oracle::max_abs(t - expected), 1e-15);
    EXPECT_LT(oracle::max_abs(t.transpose() * t - Matrix::Identity(m, m)), 1e-12);
    EXPECT_LT(oracle::max_abs(t * q.j2.matrix() - q.j2.matrix() * t), 1e-12);
    EXPECT_LT(oracle::max_abs(t * q.j1.matrix() + q.j3.matrix() * t), 1e-12);
    EXPECT_LT(oracle::max_abs(t * q.j3.matrix() - q.j1.matrix() * t), 1e-12);
    // Conjugation form: Theta J1 Theta^-1 = -J3.
    EXPECT_LT(oracle::max_abs(t * q.j1.matrix() * t.transpose() + q.j3.matrix()), 1e-12);
    // ((I + J2)/sqrt2)^2 = (I + 2 J2 + J2^2)/2 = J2.
    EXPECT_LT(oracle::max_abs(t * t - q.j2.matrix()), 1e-12);
  }
}

TEST(ComplexIsometry, RejectsNonCommutingMaps) {
  const auto q = build_quaternion_triple(4);
  EXPECT_EQ(code_of([&] { ComplexIsometry::validate(q.j1.matrix(), q.j2); }),
            ErrorCode::NotComplexIsometry);
  EXPECT_EQ(code_of([&] { ComplexIsometry::validate(2.0 * Matrix::Identity(4, 4), q.j2); }),
            ErrorCode::NotOrthogonal);
}

TEST(ComplexLine, RepresentativeIsUnitAndCanonical) {
  const auto j = ComplexStructure::standard(4);
  Rng rng(3);
  for (int n = 0; n < 20; ++n) {
    const Vector x = 3.0 * rng.unit_vector(4);
    const double t = rng.uniform(0.0, 6.28);
    const Vector u = x.normalized();
    const Vector rotated = std::cos(t) * u + std::sin(t) * j.apply(u);
    const auto a = ComplexLine::through(j, x);
    const auto b = ComplexLine::through(j, rotated);
    EXPECT_NEAR(a.representative().norm(), 1.0, 1e-14);
    EXPECT_TRUE(a.same_as(b));
    EXPECT_LT((a.representative() - b.representative()).cwiseAbs().maxCoeff(), 1e-10);
    // First nonzero coordinate positive.
    for (int k = 0; k < 4; ++k) {
      if (std::abs(a.representative()(k)) > 1e-8) {
        EXPECT_GT(a.representative()(k), 0.0);
        break;
      }
    }
  }
}

TEST(ComplexLine, CoincidingLinesForStandardJ) {
  const auto j = ComplexStructure::standard(4);
  EXPECT_TRUE(ComplexLine::through(j, oracle::e(4, 0)).same_as(ComplexLine::through(j, oracle::e(4, 1))));
  EXPECT_FALSE(ComplexLine::through(j, oracle::e(4, 0)).same_as(ComplexLine::through(j, oracle::e(4, 2))));
  EXPECT_THROW(ComplexLine::through(j, Vector::Zero(4)), Error);
}

namespace {

// Distinct planes among the polarization vectors, compared by explicit projectors.
int distinct_plane_count(const Matrix& jm, bool count_candidates_only) {
  const int m = static_cast<int>(jm.rows());
  std::vector<Vector> xs;
  for (int i = 0; i < m; ++i) xs.push_back(oracle::e(m, i));
  for (int i = 0; i < m; ++i)
    for (int k = i + 1; k < m; ++k) xs.push_back(oracle::e(m, i) + oracle::e(m, k));
  for (int i = 0; i < m; ++i)
    for (int k = i + 1; k < m; ++k) xs.push_back(oracle::e(m, i) + jm * oracle::e(m, k));
  std::vector<Matrix> planes;
  int candidates = 0;
  for (const auto& x : xs) {
    if (x.norm() < 1e-12) continue;
    ++candidates;
    const Vector u = x.normalized();
    const Vector ju = jm * u;
    const Matrix p = u * u.transpose() + ju * ju.transpose();
    bool seen = false;
    for (const auto& q : planes) seen = seen || oracle::max_abs(p - q) < 1e-10;
    if (!seen) planes.push_back(p);
  }
  return count_candidates_only ? candidates : static_cast<int>(planes.size());
}

}  // namespace

TEST(SpanningLines, CountsMatchProjectorEnumeration) {
  // Generic J: 4 + 6 + 6 = 16 candidates, none vanishing.
  Rng rng(11);
  const auto generic = rng.complex_structure(4);
  EXPECT_EQ(spanning_line_candidates(generic).size(), 16u);
  EXPECT_EQ(static_cast<int>(spanning_lines(generic).size()),
            distinct_plane_count(generic.matrix(), false));

  // Standard J: e_0 + J e_1 and e_2 + J e_3 vanish.
  const auto j0 = ComplexStructure::standard(4);
  EXPECT_EQ(static_cast<int>(spanning_line_candidates(j0).size()),
            distinct_plane_count(j0.matrix(), true));
  EXPECT_EQ(spanning_line_candidates(j0).size(), 14u);
  EXPECT_EQ(static_cast<int>(spanning_lines(j0).size()), distinct_plane_count(j0.matrix(), false));

  for (const auto& line : spanning_lines(generic)) {
    EXPECT_NEAR(line.representative().norm(), 1.0, 1e-14);
  }
}

TEST(SpanningLines, TwoDimensionalSpaceHasOneLine) {
  EXPECT_EQ(spanning_lines(ComplexStructure::standard(2)).size(), 1u);
}

TEST(Rng, IsReproducible) {
  Rng a(42), b(42);
  EXPECT_EQ(a.unit_vector(6), b.unit_vector(6));
  const Matrix q = a.orthogonal(5);
  EXPECT_EQ(q, b.orthogonal(5));
  EXPECT_LT(oracle::max_abs(q.transpose() * q - Matrix::Identity(5, 5)), 1e-12);
  const auto j = a.complex_structure(6);
  EXPECT_NO_THROW(ComplexStructure::validate(j.matrix(), 1e-12));
}
