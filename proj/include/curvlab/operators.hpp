#pragma once

// Operator- and scalar-valued contractions of a curvature tensor.
//
// Matrix convention: an operator M acts on coordinate vectors, and
// <M y, z> = z^T M y, so the bilinear form B(y, z) is stored as M(z, y).

#include <string_view>
#include <vector>

#include "curvlab/tensor.hpp"

namespace curvlab {

enum class OperatorKind { Jacobi, ComplexJacobi, CurvatureOp, ComplexCurvatureOp, Ricci, StarRicci };

std::string_view to_string(OperatorKind kind);

struct OperatorMatrix {
  Matrix matrix;
  OperatorKind kind;
};

/// Jacobi operator: <J(x) y, z> = A(y, x, x, z). Symmetric, J(x) x = 0.
OperatorMatrix jacobi(const CurvatureTensor& a, const Vector& x);

/// J(pi) = J(x) + J(Jx) for the line's unit representative x.
/// Throws LineStructureMismatch if pi was built from another structure.
OperatorMatrix complex_jacobi(const CurvatureTensor& a, const ComplexStructure& j,
                              const ComplexLine& pi);

/// Curvature operator: <R(x,y) z, w> = A(x, y, z, w). Antisymmetric.
OperatorMatrix curvature_operator(const CurvatureTensor& a, const Vector& x, const Vector& y);

/// R(pi) = R(x, Jx) for the line's unit representative.
OperatorMatrix complex_curvature_operator(const CurvatureTensor& a, const ComplexStructure& j,
                                          const ComplexLine& pi);

/// rho(x, y) = sum_i A(e_i, x, y, e_i).
OperatorMatrix ricci(const CurvatureTensor& a);

/// rho*(x, y) = sum_i A(x, J e_i, J y, e_i). Not symmetric in general.
OperatorMatrix star_ricci(const CurvatureTensor& a, const ComplexStructure& j);

/// Q(pi) = A(x, Jx, Jx, x) at the unit representative.
double holomorphic_sectional_curvature(const CurvatureTensor& a, const ComplexStructure& j,
                                       const ComplexLine& pi);

/// Q at an arbitrary nonzero vector: `value` is Q of the line through v and
/// `scale` = |v|^4, so the quartic A(v, Jv, Jv, v) equals value * scale.
struct HolomorphicCurvature {
  double value;
  double scale;
  double quartic() const { return value * scale; }
};

HolomorphicCurvature holomorphic_sectional_curvature(const CurvatureTensor& a,
                                                     const ComplexStructure& j, const Vector& v);

/// The quartic form v -> A(v, Jv, Jv, v), defined on all of V.
double holomorphic_quartic(const CurvatureTensor& a, const ComplexStructure& j, const Vector& v);

/// lambda(x, y) = A(x, y, y, x) - A(x, y, Jy, Jx).
double lambda_tensor(const CurvatureTensor& a, const ComplexStructure& j, const Vector& x,
                     const Vector& y);

struct ScalarReport {
  double tau = 0.0;
  double tau_star = 0.0;
  /// Q over the spanning lines of J, in spanning_lines order.
  std::vector<std::pair<ComplexLine, double>> q_values;
};

ScalarReport scalars(const CurvatureTensor& a, const ComplexStructure& j);

double trace(const OperatorMatrix& op);

struct Eigenvalue {
  double value;
  int multiplicity;
};

/// Sorted ascending eigenvalues of a symmetric operator, merged when within
/// `merge_tol` of the first member of a cluster. Throws NotSymmetricOperator
/// for curvature-operator kinds or a visibly asymmetric matrix.
std::vector<Eigenvalue> spectrum(const OperatorMatrix& op, double merge_tol = 1e-8);

}  // namespace curvlab
