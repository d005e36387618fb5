#include <gtest/gtest.h>

#include <cmath>

#include "curvlab/basis.hpp"
#include "curvlab/tensor.hpp"
#include "oracle.hpp"

using namespace curvlab;

namespace {

double form_gap(const CurvatureTensor& a, const oracle::Form4& f, std::uint64_t seed, int samples) {
  Rng rng(seed);
  const int m = a.dim();
  double worst = 0.0;
  for (int n = 0; n < samples; ++n) {
    const Vector x = rng.normal_vector(m), y = rng.normal_vector(m), z = rng.normal_vector(m),
                 w = rng.normal_vector(m);
    worst = std::max(worst, std::abs(a.evaluate(x, y, z, w) - f(x, y, z, w)));
  }
  return worst;
}

}  // namespace

TEST(Tensor4, EvaluateIsMultilinearContraction) {
  Tensor4 t(3);
  t(0, 1, 2, 0) = 2.0;
  t(2, 2, 1, 1) = -1.0;
  Vector x(3), y(3), z(3), w(3);
  x << 1, 2, 3;
  y << 0, 1, 1;
  z << 1, 1, 2;
  w << 2, 0, 1;
  // 2 x0 y1 z2 w0 - x2 y2 z1 w1
  EXPECT_DOUBLE_EQ(t.evaluate(x, y, z, w), 2.0 * 1 * 1 * 2 * 2 - 3.0 * 1 * 1 * 0);
}

TEST(Tensor4, TwistAndPermuteMatchDirectEvaluation) {
  Rng rng(5);
  const int m = 4;
  Tensor4 t(m);
  for (auto& v : t.entries()) v = rng.normal();
  const Matrix j = ComplexStructure::standard(m).matrix();
  const Vector x = rng.normal_vector(m), y = rng.normal_vector(m), z = rng.normal_vector(m),
               w = rng.normal_vector(m);
  const Tensor4 tw = twist(t, j, {true, false, true, false});
  EXPECT_NEAR(tw.evaluate(x, y, z, w), t.evaluate(j * x, y, j * z, w), 1e-12);
  const Tensor4 p = permute_slots(t, {2, 0, 3, 1});
  EXPECT_NEAR(p.evaluate(x, y, z, w), t.evaluate(z, x, w, y), 1e-12);
}

TEST(CurvatureTensor, A0MatchesClosedForm) {
  for (int m : {2, 3, 4, 6}) {
    EXPECT_LT(form_gap(build_A0(m), oracle::a0_form(), 7, 20), 1e-12);
  }
}

TEST(CurvatureTensor, APhiMatchesClosedForm) {
  Rng rng(9);
  for (int m : {2, 4, 6}) {
    const auto j = rng.complex_structure(m);
    EXPECT_LT(form_gap(build_APhi(j), oracle::aphi_form(j.matrix()), 8, 20), 1e-11);
  }
}

TEST(CurvatureTensor, ClosedFormsSatisfySymmetries) {
  const auto q = build_quaternion_triple(8);
  for (const auto* j : {&q.j1, &q.j2, &q.j3}) {
    EXPECT_LT(symmetry_residual(build_APhi(*j).tensor()).residual, 1e-14);
  }
  EXPECT_EQ(symmetry_residual(build_A0(5).tensor()).residual, 0.0);
}

TEST(CurvatureTensor, A0NormMatchesBruteForce) {
  // <A0, A0> = 2 m (m - 1).
  for (int m : {2, 3, 4}) {
    const double brute = oracle::inner(oracle::a0_form(), oracle::a0_form(), m);
    EXPECT_NEAR(inner_product(build_A0(m), build_A0(m)), brute, 1e-12);
    EXPECT_NEAR(brute, 2.0 * m * (m - 1), 1e-12);
  }
}

TEST(CurvatureTensor, HolomorphicQuarticOfAJ) {
  // A_J(x, Jx, Jx, x) = 3 |x|^4.
  const auto j = ComplexStructure::standard(4);
  const auto a = build_APhi(j);
  Rng rng(1);
  const Vector x = rng.unit_vector(4);
  EXPECT_NEAR(a.evaluate(x, j.apply(x), j.apply(x), x), 3.0, 1e-12);
}

TEST(CurvatureTensor, StrictValidationReportsWorstQuadruple) {
  Tensor4 t(4);
  t(0, 1, 1, 0) = 1.0;  // missing its antisymmetric partners
  try {
    CurvatureTensor::validate(t);
    FAIL() << "expected SymmetryViolation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SymmetryViolation);
  }
  const auto r = symmetry_residual(t);
  EXPECT_GT(r.residual, 0.5);
  EXPECT_FALSE(r.family.empty());

  EXPECT_NO_THROW(CurvatureTensor::validate(build_A0(4).tensor()));
}

TEST(CurvatureTensor, ProjectionIsIdempotentAndOrthogonal) {
  Rng rng(21);
  Tensor4 t(4);
  for (auto& v : t.entries()) v = rng.normal();
  const CurvatureTensor p = validate_or_project(t, ValidationMode::Project);
  EXPECT_LT(symmetry_residual(p.tensor()).residual, 1e-12);
  const CurvatureTensor pp = validate_or_project(p.tensor(), ValidationMode::Project);
  EXPECT_LT((p.tensor() - pp.tensor()).max_abs(), 1e-12);
  // t - p is orthogonal to every curvature tensor.
  const Tensor4 rest = t - p.tensor();
  for (const auto& b : curvature_space_basis(4)->elements()) {
    EXPECT_NEAR(inner_product(rest, b.tensor()), 0.0, 1e-12);
  }
  EXPECT_THROW(validate_or_project(t, ValidationMode::Strict), Error);
}

TEST(CurvatureBasis, DimensionsMatchFullConstraintSystem) {
  for (int m = 2; m <= 6; ++m) {
    const auto basis = curvature_space_basis(m);
    EXPECT_EQ(basis->size(), oracle::curvature_space_dimension(m)) << "m = " << m;
    EXPECT_EQ(basis->size(), m * m * (m * m - 1) / 12);
  }
  EXPECT_EQ(curvature_space_basis(2)->size(), 1);
  EXPECT_EQ(curvature_space_basis(4)->size(), 20);
  EXPECT_EQ(curvature_space_basis(6)->size(), 105);
}

TEST(CurvatureBasis, ElementsAreOrthonormalCurvatureTensors) {
  const auto basis = curvature_space_basis(4);
  const auto el = basis->elements();
  for (std::size_t a = 0; a < el.size(); ++a) {
    EXPECT_LT(symmetry_residual(el[a].tensor()).residual, 1e-12);
    for (std::size_t b = a; b < el.size(); ++b) {
      EXPECT_NEAR(inner_product(el[a], el[b]), a == b ? 1.0 : 0.0, 1e-12);
    }
  }
}

TEST(CurvatureBasis, CoordinatesRoundTrip) {
  const auto basis = curvature_space_basis(5);
  const auto a = random_curvature_tensor(5, 4);
  const auto back = basis->from_coordinates(basis->coordinates(a.tensor()));
  EXPECT_LT((a.tensor() - back.tensor()).max_abs(), 1e-12);
}

TEST(CurvatureBasis, RejectsTinyDimensions) {
  EXPECT_THROW(curvature_space_basis(1), Error);
}

TEST(Pullback, MatchesDirectEvaluation) {
  Rng rng(17);
  const int m = 4;
  const Matrix theta = rng.orthogonal(m);
  const auto a = random_curvature_tensor(m, 3);
  const auto pb = pullback(theta, a);
  const Vector x = rng.normal_vector(m), y = rng.normal_vector(m), z = rng.normal_vector(m),
               w = rng.normal_vector(m);
  EXPECT_NEAR(pb.evaluate(x, y, z, w), a.evaluate(theta * x, theta * y, theta * z, theta * w), 1e-11);
  // A0 is invariant under every isometry.
  EXPECT_LT((pullback(theta, build_A0(m)).tensor() - build_A0(m).tensor()).max_abs(), 1e-12);
}

TEST(Pullback, RejectsBadMaps) {
  const auto a = build_A0(4);
  try {
    pullback(2.0 * Matrix::Identity(4, 4), a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotOrthogonal);
  }
  try {
    pullback(Matrix::Identity(3, 3), a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(RandomTensor, ReproducibleForEachMix) {
  for (auto mix : {GeneratorMix::Basis, GeneratorMix::A0Only, GeneratorMix::Canonical}) {
    const auto a = random_curvature_tensor(4, 99, mix);
    const auto b = random_curvature_tensor(4, 99, mix);
    EXPECT_EQ(a.tensor(), b.tensor());
    EXPECT_LT(symmetry_residual(a.tensor()).residual, 1e-12 * (1.0 + a.max_abs()));
    EXPECT_GT(a.max_abs(), 0.0);
  }
  EXPECT_NE(random_curvature_tensor(4, 1).tensor(), random_curvature_tensor(4, 2).tensor());
}

TEST(ComplexModel, RejectsDimensionMismatch) {
  EXPECT_THROW(ComplexModel(ComplexStructure::standard(4), build_A0(6)), Error);
}
