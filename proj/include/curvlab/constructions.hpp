#pragma once

// Explicit complex models and reconstruction of curvature tensors from
// Jacobi-operator data.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "curvlab/identities.hpp"

namespace curvlab {

/// (m, J, A_K - A_{JK}) with J = J1, K = J2 of build_quaternion_triple(m).
/// A != 0 while its complex Jacobi and complex curvature operators vanish on
/// every complex line. Throws DimensionNotMultipleOf4.
ComplexModel counterexample_model(int m);

/// Model with line structure J2 and curvature A_0 + A_{J1}, together with
/// Theta = (I + J2)/sqrt2, plus the measured facts that make it interesting.
struct TwistorPoint {
  QuaternionTriple triple;
  ComplexModel model;
  ComplexIsometry theta;
  CurvatureTensor pulled_back;  // Theta^* A
  /// max |Theta^* A - (A_0 + A_{J3})|
  double pullback_error = 0.0;
  /// |Theta^* A - A| in the tensor norm
  double tensor_gap = 0.0;
  /// max over spanning lines of |J_{Theta^*A}(pi) - J_A(pi)|
  double jacobi_gap = 0.0;
  /// max over spanning lines of |R_{Theta^*A}(pi) - R_A(pi)|
  double curvature_gap = 0.0;
};

/// Throws DimensionNotMultipleOf4; throws std::logic_error if the measured
/// facts do not come out as expected.
TwistorPoint twistor_point_model(int m);

/// x -> J(x), an m x m symmetric matrix with J(x) x = 0.
struct JacobiOracle {
  int dim;
  std::function<Matrix(const Vector&)> evaluate;
};

/// pi -> J(pi) for complex lines of j.
struct ComplexJacobiOracle {
  ComplexStructure j;
  std::function<Matrix(const ComplexLine&)> evaluate;
};

JacobiOracle jacobi_oracle(const CurvatureTensor& a);
ComplexJacobiOracle complex_jacobi_oracle(const ComplexModel& model);

struct Reconstruction {
  CurvatureTensor tensor;
  /// max |fitted - observed| / (1 + max |observed|) over the query set
  double residual;
  int equations;
  int unknowns;
};

/// The queries x in {e_i} and {e_i + e_j} determine J(.) because it is
/// quadratic in x. Solves A(y,x,x,z) = <J(x)y, z> by least squares over the
/// coordinates of curvature_space_basis(m). Throws InconsistentOracle if the
/// fitted residual exceeds tol, NonUniqueSolution on rank deficiency.
Reconstruction reconstruct_from_jacobi(const JacobiOracle& oracle, double tol = 1e-8);

/// Same fit for complex Jacobi data over spanning_lines(J), with unknowns
/// restricted to the tensors satisfying the Gray-Yano identity for J; the
/// solution is unique there. For oracles of tensors outside that subspace
/// the fit is the best Gray-Yano approximation, or fails with
/// InconsistentOracle.
Reconstruction reconstruct_from_complex_jacobi(const ComplexJacobiOracle& oracle,
                                               double tol = 1e-8);

struct EquivalenceReport {
  /// D = A_1 - theta^* A_2
  CurvatureTensor difference;
  double difference_norm = 0.0;
  bool tensors_equal = false;
  Lemma23Report battery{};  // on (J_1, D)
  IdentityReport gray_yano_first{};
  IdentityReport gray_yano_second{};
  /// Both models satisfy the Gray-Yano identity, so a passing battery must
  /// force D = 0.
  bool uniqueness_applies = false;
  std::string verdict{};
};

/// theta must be orthogonal with theta J_1 = J_2 theta (NotComplexIsometry).
/// Throws EquivalenceViolation if uniqueness applies, the battery passes and
/// D != 0.
EquivalenceReport jacobi_equivalence_check(const ComplexModel& first, const ComplexModel& second,
                                           const Matrix& theta, double tol = kDefaultTolerance);

/// Brute-force values of two quantities whose commonly quoted values differ
/// from direct computation.
struct DiscrepancyEntry {
  std::string quantity;
  double computed;
  double reference_value;
};

/// 1. twistor model: <J_A(pi_x) v, v> for unit v in Span{x, J2 x};
/// 2. counterexample model: the coefficient c in J(x) Kx = c Kx for unit x.
/// Both are evaluated at a seeded random unit x.
std::vector<DiscrepancyEntry> discrepancy_audit(int m = 4, std::uint64_t seed = 0);

}  // namespace curvlab
