#include <algorithm>
#include <map>
#include <mutex>

#include "curvlab/basis.hpp"
#include "curvlab/identities.hpp"

namespace curvlab {

LinearConstraint parse_constraint(std::string_view tag) {
  if (tag == "gray-yano") return LinearConstraint::GrayYano;
  if (tag == "a1") return LinearConstraint::A1;
  if (tag == "a2") return LinearConstraint::A2;
  if (tag == "a3" || tag == "compatibility") return LinearConstraint::A3;
  if (tag == "a2perp") return LinearConstraint::A2Perp;
  throw Error(ErrorCode::UnknownConstraintTag, "'" + std::string(tag) + "'");
}

std::string_view to_string(LinearConstraint c) {
  switch (c) {
    case LinearConstraint::GrayYano: return "gray-yano";
    case LinearConstraint::A1: return "a1";
    case LinearConstraint::A2: return "a2";
    case LinearConstraint::A3: return "a3";
    case LinearConstraint::A2Perp: return "a2perp";
  }
  return "unknown";
}

CurvatureSubspace::CurvatureSubspace(std::shared_ptr<const CurvatureBasis> basis, Matrix span)
    : basis_(std::move(basis)), span_(std::move(span)) {
  if (span_.rows() != basis_->size()) {
    throw Error(ErrorCode::DimensionMismatch, "subspace span rows must match basis size");
  }
}

int CurvatureSubspace::dim() const { return basis_->dim(); }

CurvatureTensor CurvatureSubspace::element(int k) const {
  return basis_->from_coordinates(span_.col(k));
}

std::vector<CurvatureTensor> CurvatureSubspace::elements() const {
  std::vector<CurvatureTensor> out;
  for (int k = 0; k < dimension(); ++k) out.push_back(element(k));
  return out;
}

CurvatureTensor CurvatureSubspace::from_coordinates(const Vector& c) const {
  if (c.size() != dimension()) throw Error(ErrorCode::DimensionMismatch, "subspace coordinates");
  return basis_->from_coordinates(span_ * c);
}

Vector CurvatureSubspace::coordinates(const CurvatureTensor& a) const {
  return span_.transpose() * basis_->coordinates(a.tensor());
}

CurvatureTensor CurvatureSubspace::project(const CurvatureTensor& a) const {
  return from_coordinates(coordinates(a));
}

double CurvatureSubspace::distance(const CurvatureTensor& a) const {
  const Vector c = basis_->coordinates(a.tensor());
  const Vector off = c - span_ * (span_.transpose() * c);
  return off.norm() / (1.0 + c.norm());
}

CurvatureTensor CurvatureSubspace::random_element(std::uint64_t seed) const {
  Rng rng(seed);
  return from_coordinates(rng.normal_vector(dimension()));
}

namespace {

Matrix kernel_of(const Matrix& images) {
  const auto d = images.cols();
  if (images.rows() == 0) return Matrix::Identity(d, d);
  Eigen::BDCSVD<Matrix> svd(images, Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  const double cutoff = 1e-8 * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cutoff) ++rank;
  return svd.matrixV().rightCols(d - rank);
}

Matrix images_of(const CurvatureBasis& basis,
                 const std::vector<std::function<Tensor4(const Tensor4&)>>& maps) {
  const int d = basis.size();
  const auto per_map = static_cast<Eigen::Index>(Tensor4(basis.dim()).size());
  Matrix images(per_map * static_cast<Eigen::Index>(maps.size()), d);
  for (int b = 0; b < d; ++b) {
    const CurvatureTensor e = basis.element(b);
    for (std::size_t k = 0; k < maps.size(); ++k) {
      const Tensor4 img = maps[k](e.tensor());
      const auto entries = img.entries();
      images.col(b).segment(per_map * static_cast<Eigen::Index>(k), per_map) =
          Eigen::Map<const Vector>(entries.data(), per_map);
    }
  }
  return images;
}

std::function<Tensor4(const Tensor4&)> defect_map(LinearConstraint c, const Matrix& j) {
  switch (c) {
    case LinearConstraint::GrayYano: return [j](const Tensor4& a) { return gray_yano_defect(a, j); };
    case LinearConstraint::A1: return [j](const Tensor4& a) { return a1_defect(a, j); };
    case LinearConstraint::A2: return [j](const Tensor4& a) { return a2_defect(a, j); };
    case LinearConstraint::A3: return [j](const Tensor4& a) { return a3_defect(a, j); };
    case LinearConstraint::A2Perp: return [j](const Tensor4& a) { return a2perp_defect(a, j); };
  }
  throw std::logic_error("unhandled constraint");
}

}  // namespace

CurvatureSubspace kernel_subspace(int m,
                                  const std::function<Tensor4(const Tensor4&)>& linear_map) {
  auto basis = curvature_space_basis(m);
  return CurvatureSubspace(basis, kernel_of(images_of(*basis, {linear_map})));
}

std::shared_ptr<const CurvatureSubspace> constraint_subspace(
    const std::vector<LinearConstraint>& constraints, const ComplexStructure& j) {
  std::vector<int> tags;
  for (auto c : constraints) tags.push_back(static_cast<int>(c));
  std::sort(tags.begin(), tags.end());
  tags.erase(std::unique(tags.begin(), tags.end()), tags.end());

  const Matrix& jm = j.matrix();
  using Key = std::pair<std::vector<int>, std::vector<double>>;
  Key key{tags, std::vector<double>(jm.data(), jm.data() + jm.size())};

  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const CurvatureSubspace>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }

  auto basis = curvature_space_basis(j.dim());
  std::vector<std::function<Tensor4(const Tensor4&)>> maps;
  for (int t : tags) maps.push_back(defect_map(static_cast<LinearConstraint>(t), jm));
  auto subspace = std::make_shared<const CurvatureSubspace>(basis, kernel_of(images_of(*basis, maps)));

  std::lock_guard lock(mutex);
  return cache.emplace(std::move(key), std::move(subspace)).first->second;
}

int subspace_dimension(const std::vector<LinearConstraint>& constraints, int m,
                       const ComplexStructure& j) {
  if (j.dim() != m) throw Error(ErrorCode::DimensionMismatch, "subspace dimension");
  return constraint_subspace(constraints, j)->dimension();
}

int subspace_dimension(const std::vector<std::string>& tags, int m, const ComplexStructure& j) {
  std::vector<LinearConstraint> constraints;
  for (const auto& t : tags) constraints.push_back(parse_constraint(t));
  return subspace_dimension(constraints, m, j);
}

bool same_subspace(const CurvatureSubspace& u, const CurvatureSubspace& w, double tol) {
  if (u.dim() != w.dim() || u.dimension() != w.dimension()) return false;
  for (const auto& e : u.elements()) {
    if (w.distance(e) > tol) return false;
  }
  for (const auto& e : w.elements()) {
    if (u.distance(e) > tol) return false;
  }
  return true;
}

}  // namespace curvlab
