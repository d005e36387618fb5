#pragma once

// Predicates for the curvature identities of complex models.
//
// Each check evaluates a defect over a finite certifying set (all basis
// quadruples, or the spanning complex lines of J) and reports the worst
// violation scaled by 1 + max|A|. Every predicate is linear in A and of
// degree at most 4 in the vector arguments, so vanishing on the certifying
// set is equivalent to vanishing everywhere.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "curvlab/operators.hpp"
#include "curvlab/tensor.hpp"

namespace curvlab {

/// Arguments at which the worst residual was observed.
struct Witness {
  std::string label;  // e.g. "quadruple", "line", "pair"
  std::vector<Vector> arguments;
};

struct IdentityReport {
  std::string name;
  bool holds = true;
  double worst_residual = 0.0;
  double tolerance = kDefaultTolerance;
  Witness witness;
  std::string detail;
};

/// Max-reduction of residuals with the arguments of the worst one.
class ResidualTracker {
 public:
  ResidualTracker(std::string name, double scale, double tol);

  void observe(double raw, const std::string& label, std::vector<Vector> args);
  /// Scans every entry of a defect tensor.
  void observe_defect(const Tensor4& defect);

  IdentityReport report() const;

 private:
  IdentityReport report_;
  double scale_;
  double worst_raw_ = -1.0;
};

/// Scale used to normalize residuals: 1 + max|A|.
double residual_scale(const Tensor4& a);

// ---------------------------------------------------------------------------
// Compatibility

enum class CompatibilityCondition { PullbackInvariant = 1, JacobiCommutes = 2, CurvatureCommutes = 3 };

/// J^*A = A on basis quadruples, or [J(pi), J] = 0, or [R(pi), J] = 0 on
/// spanning lines.
IdentityReport check_compatibility(const ComplexModel& model, CompatibilityCondition which,
                                   double tol = kDefaultTolerance);

struct CompatibilityBattery {
  IdentityReport pullback_invariant;
  IdentityReport jacobi_commutes;
  IdentityReport curvature_commutes;
  /// The three conditions are equivalent; false signals a defect.
  bool consistent = true;
  bool holds() const { return pullback_invariant.holds; }
  IdentityReport summary() const;
};

CompatibilityBattery check_compatibility(const ComplexModel& model,
                                         double tol = kDefaultTolerance);

// ---------------------------------------------------------------------------
// Vanhecke and Sato

/// 32 A(x,y,y,x) = 3Q(x+Jy) + 3Q(x-Jy) - Q(x+y) - Q(x-y) - 4Q(x) - 4Q(y)
///                + 4 (5 lambda(x,y) + lambda(x,Jy)),
/// with Q the quartic A(v,Jv,Jv,v). Tested on all basis pairs plus `trials`
/// random unit pairs. Throws NotCompatible on incompatible models.
IdentityReport check_vanhecke(const ComplexModel& model, int trials, std::uint64_t seed,
                              double tol = kDefaultTolerance);

enum class SatoVariant { ConstantQ = 1, ZeroQ = 2 };

/// Right-hand side (without the c term) of the constant holomorphic
/// sectional curvature identity:
/// 5A(x,y,z,w) - 3A(x,y,Jz,Jw) + A(x,z,Jw,Jy) - A(x,w,Jz,Jy)
///   - A(x,Jz,w,Jy) + A(x,Jw,z,Jy).
Tensor4 sato_combination(const Tensor4& a, const Matrix& j);

/// Variant 1: A = (c/4)(A_0 + A_J) + (1/8) sato_combination(A), with c the
/// measured constant Q (or `c` if given, which must match).
/// Variant 2: 3A(x,y,z,w) + 3A(x,y,Jz,Jw) = A(x,z,Jw,Jy) - A(x,w,Jz,Jy)
///   - A(x,Jz,w,Jy) + A(x,Jw,z,Jy), requires Q = 0.
/// Throws NotCompatible, QNotConstant or QNotZero.
IdentityReport check_sato(const ComplexModel& model, SatoVariant variant,
                          std::optional<double> c = std::nullopt, double tol = kDefaultTolerance);

// ---------------------------------------------------------------------------
// Vanishing complex Jacobi operator

struct Lemma23Report {
  IdentityReport jacobi_vanishes;          // (a) J(pi) = 0 on every line
  IdentityReport skew_under_j;             // (b) A(x,y) = -A(Jx,Jy)
  IdentityReport curvature_vanishes;       // (c) R(pi) = 0 on every line
  IdentityReport j_moves_freely;           // (d) A(Jx,y)z = A(x,Jy)z = A(x,y)Jz
  bool all_hold = false;
  /// Present when all four hold.
  std::optional<IdentityReport> ricci_flat;
  std::optional<IdentityReport> star_ricci_flat;
  std::optional<IdentityReport> compatible;

  IdentityReport summary() const;
};

/// Evaluates the four equivalent vanishing conditions independently.
/// Throws EquivalenceViolation if they disagree, or if they hold while the
/// model fails to be Ricci flat, star-Ricci flat or compatible.
Lemma23Report lemma23_battery(const ComplexModel& model, double tol = kDefaultTolerance);

// ---------------------------------------------------------------------------
// Gray classes

struct GrayClassification {
  bool in_a1 = false;
  bool in_a2 = false;
  bool in_a3 = false;
  bool in_a2perp = false;
  double residual_a1 = 0.0;
  double residual_a2 = 0.0;
  double residual_a3 = 0.0;
  double residual_a2perp = 0.0;
  /// in_a1 => in_a2 => in_a3 and in_a2perp => in_a3.
  bool chain_consistent() const;
};

/// A - A(Jx,Jy,z,w): vanishes on A_1 (the Kahler identity).
Tensor4 a1_defect(const Tensor4& a, const Matrix& j);
/// A - A(Jx,Jy,z,w) - A(Jx,y,Jz,w) - A(Jx,y,z,Jw): vanishes on A_2.
Tensor4 a2_defect(const Tensor4& a, const Matrix& j);
/// A - A(Jx,Jy,Jz,Jw): vanishes on A_3, the compatible tensors.
Tensor4 a3_defect(const Tensor4& a, const Matrix& j);
/// A + A(Jx,Jy,z,w): vanishes on the orthogonal complement of A_2 in A_3.
Tensor4 a2perp_defect(const Tensor4& a, const Matrix& j);
/// R + R(Jx,Jy,Jz,Jw) - R(Jx,Jy,z,w) - R(x,y,Jz,Jw) - R(Jx,y,Jz,w)
///   - R(x,Jy,z,Jw) - R(Jx,y,z,Jw) - R(x,Jy,Jz,w).
Tensor4 gray_yano_defect(const Tensor4& a, const Matrix& j);

GrayClassification gray_classify(const ComplexModel& model, double tol = kDefaultTolerance);

/// P2(A) = 1/2 {A + A(Jx,Jy,z,w) + A(Jx,y,Jz,w) + A(Jx,y,z,Jw)}.
/// Defined on A_3; throws NotInA3 otherwise.
CurvatureTensor p2_map(const ComplexModel& model, double tol = kDefaultTolerance);

/// The eight-term identity shared by Hermitian and nearly Kahler curvature.
IdentityReport check_gray_yano_identity(const Tensor4& a, const ComplexStructure& j,
                                        double tol = kDefaultTolerance);

// ---------------------------------------------------------------------------
// Linear subspaces of the curvature tensor space

enum class LinearConstraint { GrayYano, A1, A2, A3, A2Perp };

/// Accepts "gray-yano", "a1", "a2", "a3" (alias "compatibility"), "a2perp".
/// Throws UnknownConstraintTag.
LinearConstraint parse_constraint(std::string_view tag);
std::string_view to_string(LinearConstraint c);

class CurvatureBasis;

/// A subspace of the curvature tensor space, as orthonormal columns in the
/// coordinates of curvature_space_basis(m).
class CurvatureSubspace {
 public:
  CurvatureSubspace(std::shared_ptr<const CurvatureBasis> basis, Matrix span);

  int dim() const;
  int dimension() const { return static_cast<int>(span_.cols()); }
  const Matrix& span() const { return span_; }
  const CurvatureBasis& basis() const { return *basis_; }

  CurvatureTensor element(int k) const;
  std::vector<CurvatureTensor> elements() const;
  CurvatureTensor from_coordinates(const Vector& c) const;
  Vector coordinates(const CurvatureTensor& a) const;
  /// Orthogonal projection onto the subspace.
  CurvatureTensor project(const CurvatureTensor& a) const;
  /// Distance from a to the subspace, relative to 1 + |a|.
  double distance(const CurvatureTensor& a) const;
  CurvatureTensor random_element(std::uint64_t seed) const;

 private:
  std::shared_ptr<const CurvatureBasis> basis_;
  Matrix span_;
};

/// Tensors satisfying every listed constraint for J. Rank decisions use
/// singular values at 1e-8. Results are cached per (constraints, J).
std::shared_ptr<const CurvatureSubspace> constraint_subspace(
    const std::vector<LinearConstraint>& constraints, const ComplexStructure& j);

/// Subspace cut out by an arbitrary linear map on tensors.
CurvatureSubspace kernel_subspace(int m,
                                  const std::function<Tensor4(const Tensor4&)>& linear_map);

int subspace_dimension(const std::vector<LinearConstraint>& constraints, int m,
                       const ComplexStructure& j);
int subspace_dimension(const std::vector<std::string>& tags, int m, const ComplexStructure& j);

/// Subspaces U, W are equal iff dim U = dim W and each spanning set lies in
/// the other subspace (distance below tol).
bool same_subspace(const CurvatureSubspace& u, const CurvatureSubspace& w, double tol = 1e-8);

}  // namespace curvlab
