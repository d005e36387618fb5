#include "curvlab/basis.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace curvlab {

namespace {

struct SupportEntry {
  std::array<int, 4> idx;
  double sign;
};

// Nonzero entries of the pair-symmetric element for p = (i,j), q = (k,l).
std::vector<SupportEntry> block_support(int i, int j, int k, int l) {
  std::vector<SupportEntry> out = {
      {{i, j, k, l}, 1.0},  {{j, i, k, l}, -1.0}, {{i, j, l, k}, -1.0}, {{j, i, l, k}, 1.0},
      {{k, l, i, j}, 1.0},  {{l, k, i, j}, -1.0}, {{k, l, j, i}, -1.0}, {{l, k, j, i}, 1.0},
  };
  if (i == k && j == l) out.resize(4);
  return out;
}

}  // namespace

CurvatureBasis::CurvatureBasis(int m) : dim_(m) {
  if (m < 2) throw Error(ErrorCode::InvalidDimension, "curvature space needs m >= 2");

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
  }
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    for (std::size_t q = p; q < pairs.size(); ++q) {
      const double scale = p == q ? 0.5 : 1.0 / std::sqrt(8.0);
      blocks_.push_back({pairs[p].first, pairs[p].second, pairs[q].first, pairs[q].second, scale});
    }
  }
  const int n = static_cast<int>(blocks_.size());

  // Entry -> (block, signed weight) for the normalized pair-symmetric elements.
  const Tensor4 shape(m);
  std::vector<int> owner(shape.size(), -1);
  std::vector<double> weight(shape.size(), 0.0);
  for (int b = 0; b < n; ++b) {
    const auto& blk = blocks_[b];
    for (const auto& e : block_support(blk.i, blk.j, blk.k, blk.l)) {
      const auto at = shape.index(e.idx[0], e.idx[1], e.idx[2], e.idx[3]);
      owner[at] = b;
      weight[at] = e.sign * blk.scale;
    }
  }

  // On pair-symmetric tensors the Bianchi sum is totally antisymmetric, so
  // one constraint per 4-subset i<j<k<l is enough.
  std::vector<std::array<int, 4>> subsets;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k)
        for (int l = k + 1; l < m; ++l) subsets.push_back({i, j, k, l});

  const int r = static_cast<int>(subsets.size());
  if (r == 0) {
    kernel_ = Matrix::Identity(n, n);
    return;
  }
  Matrix constraints_t = Matrix::Zero(n, r);
  for (int row = 0; row < r; ++row) {
    const auto [i, j, k, l] = subsets[row];
    for (const auto& idx : {std::array{i, j, k, l}, std::array{j, k, i, l},
                            std::array{k, i, j, l}}) {
      const auto at = shape.index(idx[0], idx[1], idx[2], idx[3]);
      constraints_t(owner[at], row) += weight[at];
    }
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(constraints_t);
  qr.setThreshold(1e-10);
  const int rank = static_cast<int>(qr.rank());
  const Matrix q = qr.householderQ();
  kernel_ = q.rightCols(n - rank);
}

Vector CurvatureBasis::pair_coordinates(const Tensor4& t) const {
  if (t.dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "basis dimension");
  Vector u(static_cast<Eigen::Index>(blocks_.size()));
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto& blk = blocks_[b];
    double sum = 0.0;
    for (const auto& e : block_support(blk.i, blk.j, blk.k, blk.l)) {
      sum += e.sign * t(e.idx[0], e.idx[1], e.idx[2], e.idx[3]);
    }
    u(static_cast<Eigen::Index>(b)) = sum * blk.scale;
  }
  return u;
}

Tensor4 CurvatureBasis::from_pair_coordinates(const Vector& u) const {
  Tensor4 t(dim_);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto& blk = blocks_[b];
    const double v = u(static_cast<Eigen::Index>(b)) * blk.scale;
    for (const auto& e : block_support(blk.i, blk.j, blk.k, blk.l)) {
      t(e.idx[0], e.idx[1], e.idx[2], e.idx[3]) = e.sign * v;
    }
  }
  return t;
}

CurvatureTensor CurvatureBasis::element(int b) const {
  if (b < 0 || b >= size()) throw Error(ErrorCode::InvalidDimension, "basis index out of range");
  return CurvatureTensor(from_pair_coordinates(kernel_.col(b)));
}

std::vector<CurvatureTensor> CurvatureBasis::elements() const {
  std::vector<CurvatureTensor> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (int b = 0; b < size(); ++b) out.push_back(element(b));
  return out;
}

Vector CurvatureBasis::coordinates(const Tensor4& t) const {
  return kernel_.transpose() * pair_coordinates(t);
}

CurvatureTensor CurvatureBasis::from_coordinates(const Vector& c) const {
  if (c.size() != size()) throw Error(ErrorCode::DimensionMismatch, "coordinate vector length");
  return CurvatureTensor(from_pair_coordinates(kernel_ * c));
}

CurvatureTensor CurvatureBasis::project(const Tensor4& t) const {
  return from_coordinates(coordinates(t));
}

std::shared_ptr<const CurvatureBasis> curvature_space_basis(int m) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const CurvatureBasis>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[m];
  if (!slot) slot = std::make_shared<const CurvatureBasis>(m);
  return slot;
}

}  // namespace curvlab
