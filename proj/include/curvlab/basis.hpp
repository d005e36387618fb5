#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "curvlab/tensor.hpp"

namespace curvlab {

/// Orthonormal basis (for the tensor inner product) of the space of algebraic
/// curvature tensors on R^m, of size m^2 (m^2 - 1) / 12.
///
/// Built in two stages. Tensors antisymmetric in each pair and symmetric under
/// pair swap are spanned by disjointly supported elements E_pq, one per
/// unordered pair {p, q} of index pairs p = (i<j), q = (k<l). The Bianchi
/// constraints are then imposed as a nullspace in those coordinates.
class CurvatureBasis {
 public:
  explicit CurvatureBasis(int m);

  int dim() const { return dim_; }
  /// Number of basis elements.
  int size() const { return static_cast<int>(kernel_.cols()); }

  CurvatureTensor element(int b) const;
  std::vector<CurvatureTensor> elements() const;

  /// Coordinates of the orthogonal projection of t onto the space.
  Vector coordinates(const Tensor4& t) const;
  CurvatureTensor from_coordinates(const Vector& c) const;
  CurvatureTensor project(const Tensor4& t) const;

  /// Size of the pair-symmetric parametrization before Bianchi.
  int pair_coordinate_count() const { return static_cast<int>(blocks_.size()); }

 private:
  struct Block {
    int i, j, k, l;  // p = (i,j), q = (k,l), p <= q
    double scale;    // 1/sqrt(8) off the diagonal, 1/2 for p == q
  };

  Vector pair_coordinates(const Tensor4& t) const;
  Tensor4 from_pair_coordinates(const Vector& u) const;

  int dim_;
  std::vector<Block> blocks_;
  Matrix kernel_;  // pair coordinates x basis size, orthonormal columns
};

/// Shared, cached basis for dimension m (m >= 2).
std::shared_ptr<const CurvatureBasis> curvature_space_basis(int m);

}  // namespace curvlab
