#include "curvlab/space.hpp"

#include <cmath>
#include <string>

namespace curvlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::NotAntiInvolution: return "NotAntiInvolution";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::NotComplexIsometry: return "NotComplexIsometry";
    case ErrorCode::DimensionNotMultipleOf4: return "DimensionNotMultipleOf4";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::SymmetryViolation: return "SymmetryViolation";
    case ErrorCode::LineStructureMismatch: return "LineStructureMismatch";
    case ErrorCode::DegenerateVector: return "DegenerateVector";
    case ErrorCode::NotCompatible: return "NotCompatible";
    case ErrorCode::QNotConstant: return "QNotConstant";
    case ErrorCode::QNotZero: return "QNotZero";
    case ErrorCode::EquivalenceViolation: return "EquivalenceViolation";
    case ErrorCode::NotInA3: return "NotInA3";
    case ErrorCode::UnknownConstraintTag: return "UnknownConstraintTag";
    case ErrorCode::InconsistentOracle: return "InconsistentOracle";
    case ErrorCode::NonUniqueSolution: return "NonUniqueSolution";
    case ErrorCode::NotSymmetricOperator: return "NotSymmetricOperator";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

ComplexStructure ComplexStructure::validate(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::NotSquare, "matrix is " + std::to_string(m.rows()) + "x" +
                                          std::to_string(m.cols()));
  }
  const auto n = m.rows();
  if (n == 0 || n % 2 != 0) {
    throw Error(ErrorCode::OddDimension, "complex structure needs even m >= 2, got " +
                                             std::to_string(n));
  }
  const Matrix id = Matrix::Identity(n, n);
  const double orth = max_abs(m.transpose() * m - id);
  if (orth > tol) {
    throw Error(ErrorCode::NotOrthogonal, "|J^T J - I| = " + std::to_string(orth));
  }
  const double anti = max_abs(m * m + id);
  if (anti > tol) {
    throw Error(ErrorCode::NotAntiInvolution, "|J^2 + I| = " + std::to_string(anti));
  }
  return ComplexStructure(m);
}

ComplexStructure ComplexStructure::standard(int m) {
  if (m < 2 || m % 2 != 0) {
    throw Error(ErrorCode::OddDimension, "standard complex structure needs even m >= 2");
  }
  Matrix j = Matrix::Zero(m, m);
  for (int b = 0; b < m; b += 2) {
    j(b + 1, b) = 1.0;
    j(b, b + 1) = -1.0;
  }
  return ComplexStructure(std::move(j));
}

bool ComplexStructure::same_as(const ComplexStructure& other, double tol) const {
  return dim() == other.dim() && max_abs(matrix_ - other.matrix_) <= tol;
}

QuaternionTriple build_quaternion_triple(int m) {
  if (m <= 0 || m % 4 != 0) {
    throw Error(ErrorCode::DimensionNotMultipleOf4, "m = " + std::to_string(m));
  }
  // Left multiplication by i and j on the basis (1, i, j, k).
  Eigen::Matrix4d left_i;
  left_i << 0, -1, 0, 0,
            1, 0, 0, 0,
            0, 0, 0, -1,
            0, 0, 1, 0;
  Eigen::Matrix4d left_j;
  left_j << 0, 0, -1, 0,
            0, 0, 0, 1,
            1, 0, 0, 0,
            0, -1, 0, 0;
  Matrix j1 = Matrix::Zero(m, m);
  Matrix j2 = Matrix::Zero(m, m);
  for (int b = 0; b < m; b += 4) {
    j1.block<4, 4>(b, b) = left_i;
    j2.block<4, 4>(b, b) = left_j;
  }
  Matrix j3 = j1 * j2;
  return QuaternionTriple{ComplexStructure::validate(j1, 0.0), ComplexStructure::validate(j2, 0.0),
                          ComplexStructure::validate(j3, 0.0)};
}

ComplexIsometry ComplexIsometry::validate(const Matrix& theta, const ComplexStructure& j,
                                          double tol) {
  if (theta.rows() != theta.cols()) {
    throw Error(ErrorCode::NotSquare, "isometry must be square");
  }
  if (theta.rows() != j.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "isometry and complex structure dimensions differ");
  }
  const double orth = max_abs(theta.transpose() * theta - Matrix::Identity(j.dim(), j.dim()));
  if (orth > tol) {
    throw Error(ErrorCode::NotOrthogonal, "|theta^T theta - I| = " + std::to_string(orth));
  }
  const double comm = max_abs(theta * j.matrix() - j.matrix() * theta);
  if (comm > tol) {
    throw Error(ErrorCode::NotComplexIsometry, "|theta J - J theta| = " + std::to_string(comm));
  }
  return ComplexIsometry(theta);
}

ComplexIsometry theta_map(const QuaternionTriple& triple) {
  const int m = triple.j2.dim();
  Matrix theta = (Matrix::Identity(m, m) + triple.j2.matrix()) / std::sqrt(2.0);
  return ComplexIsometry::validate(theta, triple.j2, 1e-12);
}

ComplexLine ComplexLine::through(const ComplexStructure& j, const Vector& x) {
  if (x.size() != j.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "vector and complex structure dimensions differ");
  }
  const double norm = x.norm();
  if (!(norm > 1e-14)) {
    throw Error(ErrorCode::DegenerateVector, "complex line through the zero vector");
  }
  const Vector u = x / norm;
  const Vector ju = j.apply(u);
  Matrix p = u * u.transpose() + ju * ju.transpose();

  // Canonical representative: normalized projection of the first basis vector
  // not orthogonal to the plane.
  Vector rep = u;
  for (int k = 0; k < j.dim(); ++k) {
    const Vector col = p.col(k);
    const double len = col.norm();
    if (len > 1e-8) {
      rep = col / len;
      break;
    }
  }
  return ComplexLine(j, std::move(rep), std::move(p));
}

bool ComplexLine::same_as(const ComplexLine& other, double tol) const {
  return dim() == other.dim() && max_abs(projector_ - other.projector_) <= tol;
}

std::vector<ComplexLine> spanning_line_candidates(const ComplexStructure& j) {
  const int m = j.dim();
  const Matrix id = Matrix::Identity(m, m);
  std::vector<ComplexLine> out;
  for (int i = 0; i < m; ++i) out.push_back(ComplexLine::through(j, id.col(i)));
  for (int i = 0; i < m; ++i) {
    for (int k = i + 1; k < m; ++k) {
      out.push_back(ComplexLine::through(j, (id.col(i) + id.col(k)) / std::sqrt(2.0)));
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int k = i + 1; k < m; ++k) {
      const Vector v = (id.col(i) + j.matrix().col(k)) / std::sqrt(2.0);
      if (v.norm() > 1e-12) out.push_back(ComplexLine::through(j, v));
    }
  }
  return out;
}

std::vector<ComplexLine> spanning_lines(const ComplexStructure& j) {
  std::vector<ComplexLine> out;
  for (auto& line : spanning_line_candidates(j)) {
    bool seen = false;
    for (const auto& kept : out) {
      if (kept.same_as(line)) {
        seen = true;
        break;
      }
    }
    if (!seen) out.push_back(std::move(line));
  }
  return out;
}

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

Vector Rng::normal_vector(int m) {
  Vector v(m);
  for (int i = 0; i < m; ++i) v(i) = normal();
  return v;
}

Vector Rng::unit_vector(int m) {
  Vector v = normal_vector(m);
  // A standard normal sample is zero with probability 0; redraw to be exact.
  while (v.norm() == 0.0) v = normal_vector(m);
  return v / v.norm();
}

Matrix Rng::orthogonal(int m) {
  Matrix g(m, m);
  for (int c = 0; c < m; ++c) g.col(c) = normal_vector(m);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < m; ++c) {
    if (r(c, c) < 0) q.col(c) *= -1.0;
  }
  return q;
}

ComplexStructure Rng::complex_structure(int m) {
  const Matrix theta = orthogonal(m);
  const Matrix j = theta * ComplexStructure::standard(m).matrix() * theta.transpose();
  return ComplexStructure::validate(j, 1e-10);
}

}  // namespace curvlab
