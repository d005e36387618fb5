#include "curvlab/constructions.hpp"

#include <cmath>
#include <stdexcept>

#include "curvlab/basis.hpp"

namespace curvlab {

ComplexModel counterexample_model(int m) {
  const auto q = build_quaternion_triple(m);
  const ComplexStructure jk = ComplexStructure::validate(q.j1.matrix() * q.j2.matrix(), 0.0);
  ComplexModel model(q.j1, build_APhi(q.j2) - build_APhi(jk));
  if (!(inner_product(model.a(), model.a()) > 0.0)) {
    throw std::logic_error("counterexample tensor vanished");
  }
  return model;
}

TwistorPoint twistor_point_model(int m) {
  auto triple = build_quaternion_triple(m);
  const CurvatureTensor a0 = build_A0(m);
  ComplexModel model(triple.j2, a0 + build_APhi(triple.j1));
  ComplexIsometry theta = theta_map(triple);
  CurvatureTensor pulled = pullback(theta.matrix(), model.a());

  TwistorPoint out{triple, model, theta, pulled};
  out.pullback_error = (pulled - (a0 + build_APhi(triple.j3))).max_abs();
  out.tensor_gap = norm(pulled - model.a());
  for (const auto& line : spanning_lines(triple.j2)) {
    out.jacobi_gap = std::max(out.jacobi_gap, max_abs(complex_jacobi(pulled, triple.j2, line).matrix -
                                                      complex_jacobi(model.a(), triple.j2, line).matrix));
    out.curvature_gap = std::max(
        out.curvature_gap, max_abs(complex_curvature_operator(pulled, triple.j2, line).matrix -
                                   complex_curvature_operator(model.a(), triple.j2, line).matrix));
  }
  if (out.pullback_error > 1e-12 || out.tensor_gap <= 0.1 || out.jacobi_gap > 1e-10 ||
      out.curvature_gap > 1e-10) {
    throw std::logic_error("twistor point model failed its construction checks");
  }
  return out;
}

JacobiOracle jacobi_oracle(const CurvatureTensor& a) {
  return JacobiOracle{a.dim(), [a](const Vector& x) { return jacobi(a, x).matrix; }};
}

ComplexJacobiOracle complex_jacobi_oracle(const ComplexModel& model) {
  return ComplexJacobiOracle{model.j(), [model](const ComplexLine& pi) {
                               return complex_jacobi(model.a(), model.j(), pi).matrix;
                             }};
}

namespace {

void append_matrix(Vector& rhs, Eigen::Index row, const Matrix& m) {
  rhs.segment(row, m.size()) = Eigen::Map<const Vector>(m.data(), m.size());
}

struct Fit {
  Vector coefficients;
  double residual;
};

Fit least_squares(const Matrix& design, const Vector& observed, double tol) {
  Eigen::ColPivHouseholderQR<Matrix> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < design.cols()) {
    throw Error(ErrorCode::NonUniqueSolution,
                "design rank " + std::to_string(qr.rank()) + " < " + std::to_string(design.cols()));
  }
  Fit fit{qr.solve(observed), 0.0};
  const double scale = 1.0 + (observed.size() ? observed.cwiseAbs().maxCoeff() : 0.0);
  const Vector misfit = design * fit.coefficients - observed;
  fit.residual = (misfit.size() ? misfit.cwiseAbs().maxCoeff() : 0.0) / scale;
  if (!(fit.residual <= tol)) {
    throw Error(ErrorCode::InconsistentOracle,
                "fitted residual " + std::to_string(fit.residual) + " exceeds " + std::to_string(tol));
  }
  return fit;
}

}  // namespace

Reconstruction reconstruct_from_jacobi(const JacobiOracle& oracle, double tol) {
  const int m = oracle.dim;
  if (m < 2) throw Error(ErrorCode::InvalidDimension, "oracle dimension must be >= 2");
  const auto basis = curvature_space_basis(m);
  const Matrix id = Matrix::Identity(m, m);

  std::vector<Vector> queries;
  for (int i = 0; i < m; ++i) queries.push_back(id.col(i));
  for (int i = 0; i < m; ++i)
    for (int k = i + 1; k < m; ++k) queries.push_back(id.col(i) + id.col(k));

  const auto block = static_cast<Eigen::Index>(m) * m;
  const auto rows = block * static_cast<Eigen::Index>(queries.size());
  Matrix design(rows, basis->size());
  Vector observed(rows);
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const Matrix value = oracle.evaluate(queries[q]);
    if (value.rows() != m || value.cols() != m) {
      throw Error(ErrorCode::DimensionMismatch, "oracle returned a wrongly sized matrix");
    }
    append_matrix(observed, block * static_cast<Eigen::Index>(q), value);
  }
  for (int b = 0; b < basis->size(); ++b) {
    const CurvatureTensor e = basis->element(b);
    Vector column(rows);
    for (std::size_t q = 0; q < queries.size(); ++q) {
      append_matrix(column, block * static_cast<Eigen::Index>(q), jacobi(e, queries[q]).matrix);
    }
    design.col(b) = column;
  }
  const Fit fit = least_squares(design, observed, tol);
  return Reconstruction{basis->from_coordinates(fit.coefficients), fit.residual,
                        static_cast<int>(rows), basis->size()};
}

Reconstruction reconstruct_from_complex_jacobi(const ComplexJacobiOracle& oracle, double tol) {
  const ComplexStructure& j = oracle.j;
  const int m = j.dim();
  const auto gray = constraint_subspace({LinearConstraint::GrayYano}, j);
  const auto lines = spanning_lines(j);

  const auto block = static_cast<Eigen::Index>(m) * m;
  const auto rows = block * static_cast<Eigen::Index>(lines.size());
  Matrix design(rows, gray->dimension());
  Vector observed(rows);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const Matrix value = oracle.evaluate(lines[n]);
    if (value.rows() != m || value.cols() != m) {
      throw Error(ErrorCode::DimensionMismatch, "oracle returned a wrongly sized matrix");
    }
    append_matrix(observed, block * static_cast<Eigen::Index>(n), value);
  }
  for (int k = 0; k < gray->dimension(); ++k) {
    const CurvatureTensor e = gray->element(k);
    Vector column(rows);
    for (std::size_t n = 0; n < lines.size(); ++n) {
      append_matrix(column, block * static_cast<Eigen::Index>(n), complex_jacobi(e, j, lines[n]).matrix);
    }
    design.col(k) = column;
  }
  if (gray->dimension() == 0) {
    const double scale = 1.0 + (observed.size() ? observed.cwiseAbs().maxCoeff() : 0.0);
    const double r = (observed.size() ? observed.cwiseAbs().maxCoeff() : 0.0) / scale;
    if (r > tol) throw Error(ErrorCode::InconsistentOracle, "empty Gray-Yano subspace");
    return Reconstruction{CurvatureTensor(m), r, static_cast<int>(rows), 0};
  }
  const Fit fit = least_squares(design, observed, tol);
  return Reconstruction{gray->from_coordinates(fit.coefficients), fit.residual,
                        static_cast<int>(rows), gray->dimension()};
}

EquivalenceReport jacobi_equivalence_check(const ComplexModel& first, const ComplexModel& second,
                                           const Matrix& theta, double tol) {
  if (first.dim() != second.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "models have different dimensions");
  }
  const int m = first.dim();
  if (theta.rows() != m || theta.cols() != m) {
    throw Error(ErrorCode::DimensionMismatch, "theta dimension");
  }
  const double comm = max_abs(theta * first.j().matrix() - second.j().matrix() * theta);
  if (comm > tol) {
    throw Error(ErrorCode::NotComplexIsometry, "|theta J_1 - J_2 theta| = " + std::to_string(comm));
  }

  CurvatureTensor d = first.a() - pullback(theta, second.a(), tol);
  const double scale = 1.0 + std::max(first.a().max_abs(), second.a().max_abs());
  EquivalenceReport out{d};
  out.difference_norm = norm(d);
  out.tensors_equal = d.max_abs() / scale <= tol;
  out.battery = lemma23_battery(ComplexModel(first.j(), d), tol);
  out.gray_yano_first = check_gray_yano_identity(first.a().tensor(), first.j(), tol);
  out.gray_yano_second = check_gray_yano_identity(second.a().tensor(), second.j(), tol);
  out.uniqueness_applies = out.gray_yano_first.holds && out.gray_yano_second.holds;

  if (out.uniqueness_applies && out.battery.all_hold && !out.tensors_equal) {
    throw Error(ErrorCode::EquivalenceViolation,
                "Gray-Yano models with equal complex Jacobi data have different curvature");
  }
  const bool cj = out.battery.all_hold;
  out.verdict = std::string("complex-Jacobi-equivalent: ") + (cj ? "yes" : "no") +
                "; tensors equal: " + (out.tensors_equal ? "yes" : "no");
  if (cj && !out.tensors_equal) {
    out.verdict += "; Gray-Yano identity fails for at least one model, so equal complex Jacobi "
                   "data does not force equal curvature";
  }
  return out;
}

std::vector<DiscrepancyEntry> discrepancy_audit(int m, std::uint64_t seed) {
  Rng rng(seed);
  const Vector x = rng.unit_vector(m);
  std::vector<DiscrepancyEntry> out;

  {
    const auto q = build_quaternion_triple(m);
    const CurvatureTensor a = build_A0(m) + build_APhi(q.j1);
    const Matrix op = complex_jacobi(a, q.j2, ComplexLine::through(q.j2, x)).matrix;
    const Vector j2x = q.j2.apply(x);
    // Both Rayleigh quotients agree; report their mean.
    const double value = 0.5 * (x.dot(op * x) + j2x.dot(op * j2x));
    out.push_back({"twistor model: complex Jacobi eigenvalue on Span{x, J2 x}", value, 4.0});
  }
  {
    const auto model = counterexample_model(m);
    const auto q = build_quaternion_triple(m);
    const Vector kx = q.j2.apply(x);
    const Vector image = jacobi(model.a(), x).matrix * kx;
    out.push_back({"counterexample model: c in J(x) Kx = c Kx", image.dot(kx), 1.0});
  }
  return out;
}

}  // namespace curvlab
