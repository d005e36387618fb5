#include "curvlab/operators.hpp"

#include <algorithm>
#include <cmath>

namespace curvlab {

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::Jacobi: return "jacobi";
    case OperatorKind::ComplexJacobi: return "complexJacobi";
    case OperatorKind::CurvatureOp: return "curvatureOp";
    case OperatorKind::ComplexCurvatureOp: return "complexCurvatureOp";
    case OperatorKind::Ricci: return "ricci";
    case OperatorKind::StarRicci: return "starRicci";
  }
  return "unknown";
}

namespace {

void require_dim(const CurvatureTensor& a, const Vector& v) {
  if (v.size() != a.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "vector length " + std::to_string(v.size()) +
                                                  " vs tensor dimension " +
                                                  std::to_string(a.dim()));
  }
}

void require_line(const CurvatureTensor& a, const ComplexStructure& j, const ComplexLine& pi) {
  if (j.dim() != a.dim() || pi.dim() != a.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "line, structure and tensor dimensions differ");
  }
  if (!pi.structure().same_as(j)) {
    throw Error(ErrorCode::LineStructureMismatch, "line was built from a different J");
  }
}

}  // namespace

OperatorMatrix jacobi(const CurvatureTensor& a, const Vector& x) {
  require_dim(a, x);
  const int m = a.dim();
  Matrix out = Matrix::Zero(m, m);
  for (int y = 0; y < m; ++y) {
    for (int p = 0; p < m; ++p) {
      if (x(p) == 0.0) continue;
      for (int q = 0; q < m; ++q) {
        const double xx = x(p) * x(q);
        if (xx == 0.0) continue;
        for (int z = 0; z < m; ++z) out(z, y) += a(y, p, q, z) * xx;
      }
    }
  }
  return {std::move(out), OperatorKind::Jacobi};
}

OperatorMatrix complex_jacobi(const CurvatureTensor& a, const ComplexStructure& j,
                              const ComplexLine& pi) {
  require_line(a, j, pi);
  const Vector& x = pi.representative();
  Matrix out = jacobi(a, x).matrix + jacobi(a, j.apply(x)).matrix;
  return {std::move(out), OperatorKind::ComplexJacobi};
}

OperatorMatrix curvature_operator(const CurvatureTensor& a, const Vector& x, const Vector& y) {
  require_dim(a, x);
  require_dim(a, y);
  const int m = a.dim();
  Matrix out = Matrix::Zero(m, m);
  for (int p = 0; p < m; ++p) {
    for (int q = 0; q < m; ++q) {
      const double xy = x(p) * y(q);
      if (xy == 0.0) continue;
      for (int z = 0; z < m; ++z) {
        for (int w = 0; w < m; ++w) out(w, z) += a(p, q, z, w) * xy;
      }
    }
  }
  return {std::move(out), OperatorKind::CurvatureOp};
}

OperatorMatrix complex_curvature_operator(const CurvatureTensor& a, const ComplexStructure& j,
                                          const ComplexLine& pi) {
  require_line(a, j, pi);
  const Vector& x = pi.representative();
  return {curvature_operator(a, x, j.apply(x)).matrix, OperatorKind::ComplexCurvatureOp};
}

OperatorMatrix ricci(const CurvatureTensor& a) {
  const int m = a.dim();
  Matrix out = Matrix::Zero(m, m);
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      double sum = 0.0;
      for (int i = 0; i < m; ++i) sum += a(i, x, y, i);
      out(y, x) = sum;
    }
  }
  return {std::move(out), OperatorKind::Ricci};
}

OperatorMatrix star_ricci(const CurvatureTensor& a, const ComplexStructure& j) {
  const int m = a.dim();
  if (j.dim() != m) throw Error(ErrorCode::DimensionMismatch, "star Ricci");
  // A(x, J e_i, J y, e_i) with slots 2 and 3 twisted.
  const Tensor4 t = twist(a.tensor(), j.matrix(), {false, true, true, false});
  Matrix out = Matrix::Zero(m, m);
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      double sum = 0.0;
      for (int i = 0; i < m; ++i) sum += t(x, i, y, i);
      out(y, x) = sum;
    }
  }
  return {std::move(out), OperatorKind::StarRicci};
}

double holomorphic_quartic(const CurvatureTensor& a, const ComplexStructure& j, const Vector& v) {
  require_dim(a, v);
  const Vector jv = j.apply(v);
  return a.evaluate(v, jv, jv, v);
}

double holomorphic_sectional_curvature(const CurvatureTensor& a, const ComplexStructure& j,
                                       const ComplexLine& pi) {
  require_line(a, j, pi);
  return holomorphic_quartic(a, j, pi.representative());
}

HolomorphicCurvature holomorphic_sectional_curvature(const CurvatureTensor& a,
                                                     const ComplexStructure& j, const Vector& v) {
  require_dim(a, v);
  const double len = v.norm();
  if (!(len > 1e-14)) throw Error(ErrorCode::DegenerateVector, "Q at the zero vector");
  const double scale = std::pow(len, 4);
  return {holomorphic_quartic(a, j, v / len), scale};
}

double lambda_tensor(const CurvatureTensor& a, const ComplexStructure& j, const Vector& x,
                     const Vector& y) {
  require_dim(a, x);
  require_dim(a, y);
  return a.evaluate(x, y, y, x) - a.evaluate(x, y, j.apply(y), j.apply(x));
}

double trace(const OperatorMatrix& op) { return op.matrix.trace(); }

ScalarReport scalars(const CurvatureTensor& a, const ComplexStructure& j) {
  ScalarReport out;
  out.tau = trace(ricci(a));
  out.tau_star = trace(star_ricci(a, j));
  for (auto& line : spanning_lines(j)) {
    const double q = holomorphic_sectional_curvature(a, j, line);
    out.q_values.emplace_back(std::move(line), q);
  }
  return out;
}

std::vector<Eigenvalue> spectrum(const OperatorMatrix& op, double merge_tol) {
  if (op.kind == OperatorKind::CurvatureOp || op.kind == OperatorKind::ComplexCurvatureOp) {
    throw Error(ErrorCode::NotSymmetricOperator, "curvature operators are skew-symmetric");
  }
  const Matrix& m = op.matrix;
  const double asym = max_abs(m - m.transpose());
  if (asym > 1e-8 * (1.0 + max_abs(m))) {
    throw Error(ErrorCode::NotSymmetricOperator,
                "asymmetry " + std::to_string(asym) + " in " + std::string(to_string(op.kind)));
  }
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  Vector values = solver.eigenvalues();
  std::sort(values.data(), values.data() + values.size());
  std::vector<Eigenvalue> out;
  double anchor = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double v = values(i);
    if (!out.empty() && std::abs(v - anchor) <= merge_tol) {
      ++out.back().multiplicity;
      continue;
    }
    anchor = v;
    out.push_back({v, 1});
  }
  return out;
}

}  // namespace curvlab
