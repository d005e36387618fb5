#pragma once

// Test-only brute-force oracles. Nothing here calls into the library's
// contraction, basis or subspace code; formulas are evaluated on vectors
// straight from their defining expressions.

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseQR>
#include <Eigen/OrderingMethods>

#include <functional>
#include <vector>

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Form4 = std::function<double(const Vector&, const Vector&, const Vector&, const Vector&)>;

inline Vector e(int m, int i) {
  Vector v = Vector::Zero(m);
  v(i) = 1.0;
  return v;
}

/// <x,w><y,z> - <x,z><y,w>
inline double a0(const Vector& x, const Vector& y, const Vector& z, const Vector& w) {
  return x.dot(w) * y.dot(z) - x.dot(z) * y.dot(w);
}

/// <x,Pw><y,Pz> - <x,Pz><y,Pw> - 2<x,Py><z,Pw>
inline double aphi(const Matrix& p, const Vector& x, const Vector& y, const Vector& z,
                   const Vector& w) {
  return x.dot(p * w) * y.dot(p * z) - x.dot(p * z) * y.dot(p * w) -
         2.0 * x.dot(p * y) * z.dot(p * w);
}

inline Form4 a0_form() { return a0; }

inline Form4 aphi_form(const Matrix& p) {
  return [p](const Vector& x, const Vector& y, const Vector& z, const Vector& w) {
    return aphi(p, x, y, z, w);
  };
}

inline Form4 sum(Form4 f, Form4 g, double a = 1.0, double b = 1.0) {
  return [=](const Vector& x, const Vector& y, const Vector& z, const Vector& w) {
    return a * f(x, y, z, w) + b * g(x, y, z, w);
  };
}

/// Matrix with <M y, z> = F(y, x, x, z), built entry by entry.
inline Matrix jacobi(const Form4& f, const Vector& x) {
  const int m = static_cast<int>(x.size());
  Matrix out(m, m);
  for (int y = 0; y < m; ++y)
    for (int z = 0; z < m; ++z) out(z, y) = f(e(m, y), x, x, e(m, z));
  return out;
}

/// Matrix with <M z, w> = F(x, y, z, w).
inline Matrix curvature_op(const Form4& f, const Vector& x, const Vector& y) {
  const int m = static_cast<int>(x.size());
  Matrix out(m, m);
  for (int z = 0; z < m; ++z)
    for (int w = 0; w < m; ++w) out(w, z) = f(x, y, e(m, z), e(m, w));
  return out;
}

/// Full contraction over basis quadruples.
inline double inner(const Form4& f, const Form4& g, int m) {
  double s = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          s += f(e(m, i), e(m, j), e(m, k), e(m, l)) * g(e(m, i), e(m, j), e(m, k), e(m, l));
        }
  return s;
}

/// Dimension of the solution space of the three symmetry families written
/// out over all m^4 unknowns, by sparse QR rank.
inline int curvature_space_dimension(int m) {
  const int n = m * m * m * m;
  auto at = [m](int i, int j, int k, int l) { return ((i * m + j) * m + k) * m + l; };
  std::vector<Eigen::Triplet<double>> trip;
  int row = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          // A(x,y,z,w) + A(y,x,z,w) = 0
          trip.emplace_back(row, at(i, j, k, l), 1.0);
          trip.emplace_back(row++, at(j, i, k, l), 1.0);
          // A(x,y,z,w) - A(z,w,x,y) = 0
          trip.emplace_back(row, at(i, j, k, l), 1.0);
          trip.emplace_back(row++, at(k, l, i, j), -1.0);
          // A(x,y,z,w) + A(y,z,x,w) + A(z,x,y,w) = 0
          trip.emplace_back(row, at(i, j, k, l), 1.0);
          trip.emplace_back(row, at(j, k, i, l), 1.0);
          trip.emplace_back(row++, at(k, i, j, l), 1.0);
        }
  Eigen::SparseMatrix<double> c(row, n);
  c.setFromTriplets(trip.begin(), trip.end());
  c.makeCompressed();
  Eigen::SparseQR<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> qr;
  qr.setPivotThreshold(1e-10);
  qr.compute(c);
  return n - static_cast<int>(qr.rank());
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracle
