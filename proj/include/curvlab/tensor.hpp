#pragma once

// Rank-4 tensors on R^m and the space of algebraic curvature tensors.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "curvlab/space.hpp"

namespace curvlab {

/// Dense rank-4 array T[i][j][k][l] with no symmetry assumptions.
/// Entry (i,j,k,l) is T(e_i, e_j, e_k, e_l).
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int dim);
  Tensor4(int dim, std::vector<double> entries);

  int dim() const { return dim_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(int i, int j, int k, int l) { return data_[index(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const { return data_[index(i, j, k, l)]; }

  std::span<const double> entries() const { return data_; }
  std::span<double> entries() { return data_; }

  std::size_t index(int i, int j, int k, int l) const {
    const auto m = static_cast<std::size_t>(dim_);
    return ((static_cast<std::size_t>(i) * m + j) * m + k) * m + l;
  }

  double max_abs() const;
  /// Value of the multilinear form at four vectors.
  double evaluate(const Vector& x, const Vector& y, const Vector& z, const Vector& w) const;

  Tensor4& operator+=(const Tensor4& other);
  Tensor4& operator-=(const Tensor4& other);
  Tensor4& operator*=(double s);

  friend Tensor4 operator+(Tensor4 a, const Tensor4& b) { return a += b; }
  friend Tensor4 operator-(Tensor4 a, const Tensor4& b) { return a -= b; }
  friend Tensor4 operator*(double s, Tensor4 a) { return a *= s; }
  friend bool operator==(const Tensor4&, const Tensor4&) = default;

 private:
  int dim_ = 0;
  std::vector<double> data_;
};

/// Which of the four slots a linear map is inserted into.
using SlotMask = std::array<bool, 4>;

/// T'(x1,x2,x3,x4) = T(y1,y2,y3,y4) where y_s = M x_s for masked slots and
/// y_s = x_s otherwise. With M = J this produces terms like T(Jx, Jy, z, w).
Tensor4 twist(const Tensor4& t, const Matrix& m, SlotMask slots);

/// T'(x_0,x_1,x_2,x_3) = T(x_{p[0]}, x_{p[1]}, x_{p[2]}, x_{p[3]}).
Tensor4 permute_slots(const Tensor4& t, std::array<int, 4> p);

/// Full contraction sum T1[ijkl] T2[ijkl], summed in index order.
double inner_product(const Tensor4& a, const Tensor4& b);

/// Worst violation of the curvature symmetries.
struct SymmetryResidual {
  double residual = 0.0;
  std::array<int, 4> where{};
  std::string family;  // "antisymmetry", "pair-swap" or "bianchi"
};

SymmetryResidual symmetry_residual(const Tensor4& t);

/// A rank-4 tensor with A(x,y,z,w) = -A(y,x,z,w) = A(z,w,x,y) and the first
/// Bianchi identity. Linear combinations stay in the space.
class CurvatureTensor {
 public:
  explicit CurvatureTensor(int dim) : tensor_(dim) {}

  /// Strict validation against all three symmetry families.
  static CurvatureTensor validate(Tensor4 t, double tol = kDefaultTolerance);

  const Tensor4& tensor() const { return tensor_; }
  int dim() const { return tensor_.dim(); }
  double operator()(int i, int j, int k, int l) const { return tensor_(i, j, k, l); }
  double max_abs() const { return tensor_.max_abs(); }
  double evaluate(const Vector& x, const Vector& y, const Vector& z, const Vector& w) const {
    return tensor_.evaluate(x, y, z, w);
  }

  CurvatureTensor& operator+=(const CurvatureTensor& other);
  CurvatureTensor& operator-=(const CurvatureTensor& other);
  CurvatureTensor& operator*=(double s);

  friend CurvatureTensor operator+(CurvatureTensor a, const CurvatureTensor& b) { return a += b; }
  friend CurvatureTensor operator-(CurvatureTensor a, const CurvatureTensor& b) { return a -= b; }
  friend CurvatureTensor operator*(double s, CurvatureTensor a) { return a *= s; }

 private:
  explicit CurvatureTensor(Tensor4 t) : tensor_(std::move(t)) {}

  friend class CurvatureBasis;
  friend CurvatureTensor trusted_curvature_tensor(Tensor4 t);

  Tensor4 tensor_;
};

/// Wraps a tensor known to satisfy the symmetries up to rounding, checking
/// at 1e-12 relative to its size. Used by constructions with closed forms.
CurvatureTensor trusted_curvature_tensor(Tensor4 t);

double inner_product(const CurvatureTensor& a, const CurvatureTensor& b);
double norm(const CurvatureTensor& a);

enum class ValidationMode { Strict, Project };

/// Strict: returns T if all symmetries hold within tol, else throws
/// SymmetryViolation naming the worst quadruple. Project: returns the
/// orthogonal projection of T onto the curvature tensor space.
CurvatureTensor validate_or_project(const Tensor4& t, ValidationMode mode,
                                    double tol = kDefaultTolerance);

/// A_0(x,y,z,w) = <x,w><y,z> - <x,z><y,w>; constant sectional curvature +1.
CurvatureTensor build_A0(int m);

/// A_Phi(x,y,z,w) = <x,Phi w><y,Phi z> - <x,Phi z><y,Phi w> - 2<x,Phi y><z,Phi w>.
CurvatureTensor build_APhi(const ComplexStructure& phi);

/// (theta^* A)(x,y,z,w) = A(theta x, theta y, theta z, theta w).
/// Throws NotOrthogonal or DimensionMismatch.
CurvatureTensor pullback(const Matrix& theta, const CurvatureTensor& a,
                         double tol = kDefaultTolerance);

enum class GeneratorMix {
  Basis,      // Gaussian coordinates in an orthonormal basis of the space
  A0Only,     // c * A_0
  Canonical,  // c_0 A_0 + sum c_k A_{J_k} over random complex structures J_k
};

/// Reproducible random element of the curvature tensor space.
CurvatureTensor random_curvature_tensor(int m, std::uint64_t seed,
                                        GeneratorMix mix = GeneratorMix::Basis);

/// A complex model (V, <.,.>, J, A).
class ComplexModel {
 public:
  ComplexModel(ComplexStructure j, CurvatureTensor a);

  const ComplexStructure& j() const { return j_; }
  const CurvatureTensor& a() const { return a_; }
  int dim() const { return a_.dim(); }

 private:
  ComplexStructure j_;
  CurvatureTensor a_;
};

}  // namespace curvlab
