#include "curvlab/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "curvlab/basis.hpp"

namespace curvlab {

Tensor4::Tensor4(int dim) : dim_(dim) {
  if (dim < 1) throw Error(ErrorCode::InvalidDimension, "tensor dimension must be positive");
  const auto m = static_cast<std::size_t>(dim);
  data_.assign(m * m * m * m, 0.0);
}

Tensor4::Tensor4(int dim, std::vector<double> entries) : dim_(dim), data_(std::move(entries)) {
  const auto m = static_cast<std::size_t>(dim);
  if (dim < 1 || data_.size() != m * m * m * m) {
    throw Error(ErrorCode::DimensionMismatch, "tensor needs m^4 entries");
  }
}

double Tensor4::max_abs() const {
  double out = 0.0;
  for (double v : data_) out = std::max(out, std::abs(v));
  return out;
}

double Tensor4::evaluate(const Vector& x, const Vector& y, const Vector& z,
                         const Vector& w) const {
  const int m = dim_;
  if (x.size() != m || y.size() != m || z.size() != m || w.size() != m) {
    throw Error(ErrorCode::DimensionMismatch, "vector length differs from tensor dimension");
  }
  double total = 0.0;
  std::size_t n = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double xy = x(i) * y(j);
      for (int k = 0; k < m; ++k) {
        const double xyz = xy * z(k);
        for (int l = 0; l < m; ++l) total += data_[n++] * xyz * w(l);
      }
    }
  }
  return total;
}

Tensor4& Tensor4::operator+=(const Tensor4& other) {
  if (other.dim_ != dim_) throw Error(ErrorCode::DimensionMismatch, "tensor sum");
  for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += other.data_[n];
  return *this;
}

Tensor4& Tensor4::operator-=(const Tensor4& other) {
  if (other.dim_ != dim_) throw Error(ErrorCode::DimensionMismatch, "tensor difference");
  for (std::size_t n = 0; n < data_.size(); ++n) data_[n] -= other.data_[n];
  return *this;
}

Tensor4& Tensor4::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

namespace {

// T'(.., x_s, ..) = T(.., M x_s, ..) for a single slot s.
Tensor4 twist_slot(const Tensor4& t, const Matrix& mat, int slot) {
  const int m = t.dim();
  Tensor4 out(m);
  std::array<int, 4> idx{};
  for (idx[0] = 0; idx[0] < m; ++idx[0]) {
    for (idx[1] = 0; idx[1] < m; ++idx[1]) {
      for (idx[2] = 0; idx[2] < m; ++idx[2]) {
        for (idx[3] = 0; idx[3] < m; ++idx[3]) {
          std::array<int, 4> src = idx;
          const int target = idx[slot];
          double sum = 0.0;
          for (int a = 0; a < m; ++a) {
            const double coeff = mat(a, target);
            if (coeff == 0.0) continue;
            src[slot] = a;
            sum += coeff * t(src[0], src[1], src[2], src[3]);
          }
          out(idx[0], idx[1], idx[2], idx[3]) = sum;
        }
      }
    }
  }
  return out;
}

}  // namespace

Tensor4 twist(const Tensor4& t, const Matrix& m, SlotMask slots) {
  if (m.rows() != t.dim() || m.cols() != t.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "twist matrix dimension");
  }
  Tensor4 out = t;
  for (int s = 0; s < 4; ++s) {
    if (slots[s]) out = twist_slot(out, m, s);
  }
  return out;
}

Tensor4 permute_slots(const Tensor4& t, std::array<int, 4> p) {
  const int m = t.dim();
  Tensor4 out(m);
  std::array<int, 4> idx{};
  for (idx[0] = 0; idx[0] < m; ++idx[0]) {
    for (idx[1] = 0; idx[1] < m; ++idx[1]) {
      for (idx[2] = 0; idx[2] < m; ++idx[2]) {
        for (idx[3] = 0; idx[3] < m; ++idx[3]) {
          out(idx[0], idx[1], idx[2], idx[3]) = t(idx[p[0]], idx[p[1]], idx[p[2]], idx[p[3]]);
        }
      }
    }
  }
  return out;
}

double inner_product(const Tensor4& a, const Tensor4& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "inner product");
  const auto ea = a.entries();
  const auto eb = b.entries();
  double total = 0.0;
  for (std::size_t n = 0; n < ea.size(); ++n) total += ea[n] * eb[n];
  return total;
}

SymmetryResidual symmetry_residual(const Tensor4& t) {
  const int m = t.dim();
  SymmetryResidual worst;
  auto consider = [&](double r, int i, int j, int k, int l, const char* family) {
    if (r > worst.residual) worst = SymmetryResidual{r, {i, j, k, l}, family};
  };
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        for (int l = 0; l < m; ++l) {
          const double v = t(i, j, k, l);
          consider(std::abs(v + t(j, i, k, l)), i, j, k, l, "antisymmetry");
          consider(std::abs(v - t(k, l, i, j)), i, j, k, l, "pair-swap");
          consider(std::abs(v + t(j, k, i, l) + t(k, i, j, l)), i, j, k, l, "bianchi");
        }
      }
    }
  }
  if (worst.family.empty()) worst.family = "none";
  return worst;
}

CurvatureTensor CurvatureTensor::validate(Tensor4 t, double tol) {
  const auto r = symmetry_residual(t);
  const double scaled = r.residual / (1.0 + t.max_abs());
  if (scaled > tol) {
    const auto& w = r.where;
    throw Error(ErrorCode::SymmetryViolation,
                r.family + " fails at (" + std::to_string(w[0]) + "," + std::to_string(w[1]) +
                    "," + std::to_string(w[2]) + "," + std::to_string(w[3]) +
                    "), residual " + std::to_string(r.residual));
  }
  return CurvatureTensor(std::move(t));
}

CurvatureTensor trusted_curvature_tensor(Tensor4 t) {
  const auto r = symmetry_residual(t);
  if (r.residual > 1e-12 * (1.0 + t.max_abs())) {
    throw std::logic_error("construction produced a non-curvature tensor (" + r.family + ")");
  }
  return CurvatureTensor(std::move(t));
}

CurvatureTensor& CurvatureTensor::operator+=(const CurvatureTensor& other) {
  tensor_ += other.tensor_;
  return *this;
}

CurvatureTensor& CurvatureTensor::operator-=(const CurvatureTensor& other) {
  tensor_ -= other.tensor_;
  return *this;
}

CurvatureTensor& CurvatureTensor::operator*=(double s) {
  tensor_ *= s;
  return *this;
}

double inner_product(const CurvatureTensor& a, const CurvatureTensor& b) {
  return inner_product(a.tensor(), b.tensor());
}

double norm(const CurvatureTensor& a) { return std::sqrt(inner_product(a, a)); }

CurvatureTensor validate_or_project(const Tensor4& t, ValidationMode mode, double tol) {
  if (mode == ValidationMode::Strict) return CurvatureTensor::validate(t, tol);
  return curvature_space_basis(t.dim())->project(t);
}

CurvatureTensor build_A0(int m) {
  if (m < 2) throw Error(ErrorCode::InvalidDimension, "A_0 needs m >= 2");
  Tensor4 t(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      t(i, j, j, i) = 1.0;
      t(i, j, i, j) = -1.0;
    }
  }
  return trusted_curvature_tensor(std::move(t));
}

CurvatureTensor build_APhi(const ComplexStructure& phi) {
  const Matrix& p = phi.matrix();
  const int m = phi.dim();
  // <e_a, Phi e_b> = Phi(a, b)
  Tensor4 t(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        for (int l = 0; l < m; ++l) {
          t(i, j, k, l) = p(i, l) * p(j, k) - p(i, k) * p(j, l) - 2.0 * p(i, j) * p(k, l);
        }
      }
    }
  }
  return trusted_curvature_tensor(std::move(t));
}

CurvatureTensor pullback(const Matrix& theta, const CurvatureTensor& a, double tol) {
  if (theta.rows() != a.dim() || theta.cols() != a.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "pullback map dimension");
  }
  const double orth = max_abs(theta.transpose() * theta - Matrix::Identity(a.dim(), a.dim()));
  if (orth > tol) {
    throw Error(ErrorCode::NotOrthogonal, "|theta^T theta - I| = " + std::to_string(orth));
  }
  return trusted_curvature_tensor(twist(a.tensor(), theta, {true, true, true, true}));
}

CurvatureTensor random_curvature_tensor(int m, std::uint64_t seed, GeneratorMix mix) {
  if (m < 2) throw Error(ErrorCode::InvalidDimension, "random tensor needs m >= 2");
  Rng rng(seed);
  switch (mix) {
    case GeneratorMix::Basis: {
      const auto basis = curvature_space_basis(m);
      return basis->from_coordinates(rng.normal_vector(basis->size()));
    }
    case GeneratorMix::A0Only:
      return rng.normal() * build_A0(m);
    case GeneratorMix::Canonical: {
      CurvatureTensor out = rng.normal() * build_A0(m);
      for (int k = 0; k < 3; ++k) {
        const double c = rng.normal();
        out += c * build_APhi(rng.complex_structure(m));
      }
      return out;
    }
  }
  throw std::logic_error("unhandled generator mix");
}

ComplexModel::ComplexModel(ComplexStructure j, CurvatureTensor a)
    : j_(std::move(j)), a_(std::move(a)) {
  if (j_.dim() != a_.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "complex structure is " + std::to_string(j_.dim()) +
                                                  "-dimensional, tensor " +
                                                  std::to_string(a_.dim()) + "-dimensional");
  }
}

}  // namespace curvlab
