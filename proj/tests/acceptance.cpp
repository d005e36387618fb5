// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "curvlab/basis.hpp"
#include "curvlab/constructions.hpp"
#include "oracle.hpp"

using namespace curvlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

// 1. Curvature-space dimension.
Outcome dimensions() {
  Outcome o;
  const int expected[] = {1, 20, 105};
  const int ms[] = {2, 4, 6};
  for (int k = 0; k < 3; ++k) {
    const int got = curvature_space_basis(ms[k])->size();
    const int brute = oracle::curvature_space_dimension(ms[k]);
    o.pass = o.pass && got == expected[k] && brute == expected[k];
    o.detail += "m=" + std::to_string(ms[k]) + ": " + std::to_string(got) + " (nullspace " +
                std::to_string(brute) + ") ";
  }
  return o;
}

// 2. Counterexample model.
Outcome counterexample() {
  Outcome o;
  for (int m : {4, 8}) {
    const auto model = counterexample_model(m);
    const double sq = inner_product(model.a(), model.a());
    const auto battery = lemma23_battery(model, 1e-12);
    const double worst = battery.summary().worst_residual;
    const double rho = max_abs(ricci(model.a()).matrix);
    const double rho_star = max_abs(star_ricci(model.a(), model.j()).matrix);
    o.pass = o.pass && sq > 0.0 && battery.all_hold && worst < 1e-12 && rho < 1e-12 && rho_star < 1e-12;
    o.detail += "m=" + std::to_string(m) + ": |A|^2=" + sci(sq) + " battery " + sci(worst) +
                " rho " + sci(rho) + " rho* " + sci(rho_star) + "; ";
  }
  return o;
}

// 3. Twistor model.
Outcome twistor() {
  Outcome o;
  try {
    const auto t = twistor_point_model(4);
    o.pass = t.tensor_gap > 0.1 && t.jacobi_gap < 1e-10 && t.curvature_gap < 1e-10 &&
             t.pullback_error < 1e-12;
    o.detail = "|Theta*A - A| = " + sci(t.tensor_gap) + ", Jacobi gap " + sci(t.jacobi_gap) +
               ", curvature gap " + sci(t.curvature_gap) + ", pullback error " + sci(t.pullback_error);
  } catch (const std::exception& e) {
    o = {false, e.what()};
  }
  return o;
}

// 4. Fubini-Study Jacobi spectrum.
Outcome fubini_study_spectrum() {
  Outcome o;
  int points = 0;
  for (int m : {4, 8}) {
    const auto q = build_quaternion_triple(m);
    const auto a = build_A0(m) + build_APhi(q.j1);
    Rng rng(1000 + m);
    for (int n = 0; n < 20; ++n) {
      const auto spec = spectrum(jacobi(a, rng.unit_vector(m)), 1e-8);
      const bool ok = spec.size() == 3 && std::abs(spec[0].value) < 1e-8 && spec[0].multiplicity == 1 &&
                      std::abs(spec[1].value - 1.0) < 1e-8 && spec[1].multiplicity == m - 2 &&
                      std::abs(spec[2].value - 4.0) < 1e-8 && spec[2].multiplicity == 1;
      o.pass = o.pass && ok;
      ++points;
    }
  }
  o.detail = std::to_string(points) + " random unit vectors, m in {4, 8}: {0 x1, 1 x(m-2), 4 x1}";
  return o;
}

// 5. Equivalence batteries.
Outcome batteries() {
  Outcome o;
  int runs = 0, compatible = 0, vanishing = 0, disagreements = 0;
  for (int m : {4, 6}) {
    const auto j = ComplexStructure::standard(m);
    const auto a3 = constraint_subspace({LinearConstraint::A3}, j);
    const auto a2perp = constraint_subspace({LinearConstraint::A2Perp}, j);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto raw = random_curvature_tensor(m, seed);
      for (const auto& a : {raw, a3->project(raw), a2perp->project(raw)}) {
        const ComplexModel model(j, a);
        ++runs;
        const auto c = check_compatibility(model);
        if (!c.consistent) ++disagreements;
        if (c.holds()) ++compatible;
        try {
          const auto l = lemma23_battery(model);
          if (l.all_hold) ++vanishing;
        } catch (const Error&) {
          ++disagreements;
        }
      }
    }
  }
  o.pass = disagreements == 0 && compatible > 0 && vanishing > 0;
  o.detail = std::to_string(runs) + " models, " + std::to_string(compatible) + " compatible, " +
             std::to_string(vanishing) + " with vanishing complex Jacobi, " +
             std::to_string(disagreements) + " disagreements";
  return o;
}

// 6. Vanhecke.
Outcome vanhecke() {
  Outcome o;
  double worst = 0.0;
  for (int m : {4, 6}) {
    const auto j = ComplexStructure::standard(m);
    const auto a3 = constraint_subspace({LinearConstraint::A3}, j);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto r = check_vanhecke(ComplexModel(j, a3->random_element(seed)), 100, seed, 1e-10);
      o.pass = o.pass && r.holds;
      worst = std::max(worst, r.worst_residual);
    }
  }
  o.detail = "50 compatible models x 100 pairs, m in {4, 6}: worst residual " + sci(worst);
  return o;
}

// 7. Sato.
Outcome sato() {
  Outcome o;
  double worst = 0.0;
  for (int m : {4, 6}) {
    const auto j = ComplexStructure::standard(m);
    for (double c : {-2.0, 0.0, 4.0}) {
      const ComplexModel model(j, (c / 4.0) * (build_A0(m) + build_APhi(j)));
      const auto r = check_sato(model, SatoVariant::ConstantQ, c, 1e-10);
      o.pass = o.pass && r.holds;
      worst = std::max(worst, r.worst_residual);
    }
  }
  for (int m : {4, 8}) {
    const auto r = check_sato(counterexample_model(m), SatoVariant::ZeroQ, std::nullopt, 1e-10);
    o.pass = o.pass && r.holds;
    worst = std::max(worst, r.worst_residual);
  }
  o.detail = "variant 1 at c in {-2, 0, 4}, variant 2 on the counterexample: worst residual " + sci(worst);
  return o;
}

// 8. P2 on A3.
Outcome p2() {
  Outcome o;
  const auto j = ComplexStructure::standard(4);
  const auto a3 = constraint_subspace({LinearConstraint::A3}, j);
  const auto el = a3->elements();
  const int n = static_cast<int>(el.size());
  std::vector<CurvatureTensor> images;
  double involution = 0.0;
  for (const auto& e : el) {
    images.push_back(p2_map(ComplexModel(j, e)));
    const auto twice = p2_map(ComplexModel(j, images.back()));
    involution = std::max(involution, (twice.tensor() - e.tensor()).max_abs());
  }
  double isometry = 0.0;
  Matrix gram(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      isometry = std::max(isometry, std::abs(inner_product(images[a], images[b]) -
                                             inner_product(el[a], el[b])));
      gram(a, b) = inner_product(el[a], images[b]);
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (gram + gram.transpose()));
  std::vector<int> minus;
  for (int k = 0; k < n; ++k) {
    if (std::abs(eig.eigenvalues()(k) + 1.0) < 1e-8) minus.push_back(k);
  }
  Matrix v(n, static_cast<Eigen::Index>(minus.size()));
  for (std::size_t k = 0; k < minus.size(); ++k) v.col(static_cast<Eigen::Index>(k)) = eig.eigenvectors().col(minus[k]);
  const CurvatureSubspace minus_space(curvature_space_basis(4), a3->span() * v);
  const auto a2perp = constraint_subspace({LinearConstraint::A2Perp}, j);
  const bool same = same_subspace(minus_space, *a2perp, 1e-8);
  o.pass = involution < 1e-10 && isometry < 1e-10 && same;
  o.detail = "dim A3 = " + std::to_string(n) + ", P2^2 - id " + sci(involution) + ", isometry " +
             sci(isometry) + ", (-1)-eigenspace dim " + std::to_string(minus.size()) + " vs A2perp dim " +
             std::to_string(a2perp->dimension()) + (same ? ", equal" : ", DIFFERENT");
  return o;
}

// 9. Uniqueness on the Gray-Yano subspace.
Outcome gray_uniqueness() {
  Outcome o;
  const auto j = ComplexStructure::standard(4);
  const int dim0 = subspace_dimension({LinearConstraint::GrayYano, LinearConstraint::A2Perp}, 4, j);
  double worst = 0.0;
  auto round_trip = [&](const CurvatureTensor& a) {
    const auto r = reconstruct_from_complex_jacobi(complex_jacobi_oracle(ComplexModel(j, a)));
    worst = std::max(worst, norm(r.tensor - a) / norm(a));
  };
  round_trip(build_A0(4) + build_APhi(j));
  const auto gray = constraint_subspace({LinearConstraint::GrayYano}, j);
  for (std::uint64_t seed = 0; seed < 20; ++seed) round_trip(gray->random_element(seed));
  o.pass = dim0 == 0 && worst < 1e-8;
  o.detail = "dim(gray-yano and a2perp) = " + std::to_string(dim0) + ", 21 round trips, worst relative error " +
             sci(worst);
  return o;
}

// 10. Reconstruction from Jacobi data.
Outcome jacobi_reconstruction() {
  Outcome o;
  double worst = 0.0, worst_eq = 0.0;
  for (int m : {4, 6}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto a = random_curvature_tensor(m, seed);
      const auto r = reconstruct_from_jacobi(jacobi_oracle(a));
      worst = std::max(worst, norm(r.tensor - a) / norm(a));
    }
    Rng rng(77 + m);
    for (int k = 0; k < 10; ++k) {
      const Matrix theta = rng.orthogonal(m);
      const auto base = jacobi_oracle(random_curvature_tensor(m, 500 + k));
      const JacobiOracle moved{m, [&](const Vector& x) {
                                 return Matrix(theta.transpose() * base.evaluate(theta * x) * theta);
                               }};
      const auto lhs = reconstruct_from_jacobi(moved).tensor;
      const auto rhs = pullback(theta, reconstruct_from_jacobi(base).tensor);
      worst_eq = std::max(worst_eq, norm(lhs - rhs) / norm(rhs));
    }
  }
  o.pass = worst < 1e-8 && worst_eq < 1e-8;
  o.detail = "100 round trips, worst relative error " + sci(worst) + "; 20 equivariance checks, worst " +
             sci(worst_eq);
  return o;
}

// 11. Discrepancy audit (a report, not a failure).
Outcome audit() {
  Outcome o;
  for (const auto& e : discrepancy_audit(4, 0)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, ": computed %.12g, quoted %.12g; ", e.computed, e.reference_value);
    o.detail += e.quantity + buf;
  }
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"curvature-space dimension", dimensions},
      {"counterexample model", counterexample},
      {"twistor model", twistor},
      {"Fubini-Study Jacobi spectrum", fubini_study_spectrum},
      {"equivalence batteries", batteries},
      {"Vanhecke identity", vanhecke},
      {"Sato identities", sato},
      {"P2 on A3", p2},
      {"Gray-Yano uniqueness", gray_uniqueness},
      {"Jacobi reconstruction", jacobi_reconstruction},
      {"discrepancy audit", audit},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += o.pass ? 0 : 1;
    std::printf("criterion %2d %s  %s (%.2fs): %s\n", index, o.pass ? "PASS" : "FAIL", name, secs,
                o.detail.c_str());
  }
  std::printf("%d of %d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
