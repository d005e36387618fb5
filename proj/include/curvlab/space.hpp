#pragma once

// Inner product spaces with complex and quaternionic structures.
//
// All vectors are coordinates in a fixed orthonormal basis e_0..e_{m-1}; the
// inner product is the standard dot product.

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "curvlab/error.hpp"

namespace curvlab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Largest absolute entry, 0 for empty matrices.
double max_abs(const Matrix& m);

/// Orthogonal anti-involution J (J^2 = -I, J^T J = I) on R^m, m even.
class ComplexStructure {
 public:
  /// Checks the residuals ||M^2 + I|| and ||M^T M - I|| (max-entry norm)
  /// against `tol`. A tolerance of 0 demands exact integer-style equality.
  static ComplexStructure validate(const Matrix& m, double tol = kDefaultTolerance);

  /// Block-diagonal J_0 with 2x2 blocks [[0,-1],[1,0]]: J e_{2k} = e_{2k+1}.
  static ComplexStructure standard(int m);

  const Matrix& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  Vector apply(const Vector& v) const { return matrix_ * v; }

  bool same_as(const ComplexStructure& other, double tol = 1e-12) const;

 private:
  explicit ComplexStructure(Matrix m) : matrix_(std::move(m)) {}
  Matrix matrix_;
};

/// J1, J2, J3 = J1 J2 satisfying the quaternion relations.
struct QuaternionTriple {
  ComplexStructure j1;
  ComplexStructure j2;
  ComplexStructure j3;
};

/// Left multiplication by i, j, k on R^4 = H (basis 1, i, j, k), repeated
/// block-diagonally m/4 times. Throws DimensionNotMultipleOf4.
QuaternionTriple build_quaternion_triple(int m);

/// Orthogonal map commuting with a complex structure.
class ComplexIsometry {
 public:
  static ComplexIsometry validate(const Matrix& theta, const ComplexStructure& j,
                                  double tol = kDefaultTolerance);

  const Matrix& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

 private:
  explicit ComplexIsometry(Matrix m) : matrix_(std::move(m)) {}
  Matrix matrix_;
};

/// Theta = (I + J2)/sqrt(2). Commutes with J2, Theta J1 = -J3 Theta and
/// Theta J3 = J1 Theta.
ComplexIsometry theta_map(const QuaternionTriple& triple);

/// A J-invariant 2-plane pi = Span{x, Jx}.
///
/// Lines are identified by their orthogonal projector P = x x^T + Jx (Jx)^T.
/// The stored representative is canonical: P e_k / |P e_k| for the first k
/// with P e_k != 0, so equal planes give the same representative.
class ComplexLine {
 public:
  /// The line through x (any nonzero vector). Throws DegenerateVector.
  static ComplexLine through(const ComplexStructure& j, const Vector& x);

  const Vector& representative() const { return representative_; }
  const Matrix& projector() const { return projector_; }
  const ComplexStructure& structure() const { return structure_; }
  int dim() const { return structure_.dim(); }

  bool same_as(const ComplexLine& other, double tol = 1e-10) const;

 private:
  ComplexLine(ComplexStructure j, Vector x, Matrix p)
      : structure_(std::move(j)), representative_(std::move(x)), projector_(std::move(p)) {}

  ComplexStructure structure_;
  Vector representative_;
  Matrix projector_;
};

/// Lines through e_i, (e_i + e_j)/sqrt2 and (e_i + J e_j)/sqrt2 for i < j,
/// with vanishing candidates skipped. Not deduplicated.
std::vector<ComplexLine> spanning_line_candidates(const ComplexStructure& j);

/// spanning_line_candidates with coinciding planes removed. Any predicate
/// quadratic in the line representative that vanishes on this set vanishes
/// on every complex line.
std::vector<ComplexLine> spanning_lines(const ComplexStructure& j);

/// Seeded source of Gaussian vectors, unit vectors and orthogonal matrices.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi);
  Vector normal_vector(int m);
  Vector unit_vector(int m);
  /// Haar-distributed orthogonal matrix (QR of a Gaussian matrix, sign fixed).
  Matrix orthogonal(int m);
  /// theta J_0 theta^T for a random orthogonal theta.
  ComplexStructure complex_structure(int m);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace curvlab
