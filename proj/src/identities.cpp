#include "curvlab/identities.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace curvlab {

namespace {

Vector basis_vector(int m, int i) {
  Vector e = Vector::Zero(m);
  e(i) = 1.0;
  return e;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

const IdentityReport& worst_of(std::initializer_list<const IdentityReport*> reports) {
  const IdentityReport* worst = *reports.begin();
  for (const auto* r : reports) {
    if (r->worst_residual > worst->worst_residual) worst = r;
  }
  return *worst;
}

}  // namespace

double residual_scale(const Tensor4& a) { return 1.0 + a.max_abs(); }

ResidualTracker::ResidualTracker(std::string name, double scale, double tol) : scale_(scale) {
  report_.name = std::move(name);
  report_.tolerance = tol;
}

void ResidualTracker::observe(double raw, const std::string& label, std::vector<Vector> args) {
  if (raw > worst_raw_ || !std::isfinite(raw)) {
    worst_raw_ = std::isfinite(raw) ? raw : std::numeric_limits<double>::infinity();
    report_.witness = Witness{label, std::move(args)};
  }
}

void ResidualTracker::observe_defect(const Tensor4& defect) {
  const int m = defect.dim();
  double best = -1.0;
  std::array<int, 4> at{};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          const double v = std::abs(defect(i, j, k, l));
          if (v > best) {
            best = v;
            at = {i, j, k, l};
          }
        }
  observe(best, "quadruple",
          {basis_vector(m, at[0]), basis_vector(m, at[1]), basis_vector(m, at[2]),
           basis_vector(m, at[3])});
}

IdentityReport ResidualTracker::report() const {
  IdentityReport out = report_;
  out.worst_residual = std::max(worst_raw_, 0.0) / scale_;
  out.holds = out.worst_residual <= out.tolerance;
  return out;
}

// ---------------------------------------------------------------------------
// Defect tensors

Tensor4 a1_defect(const Tensor4& a, const Matrix& j) {
  return a - twist(a, j, {true, true, false, false});
}

Tensor4 a2_defect(const Tensor4& a, const Matrix& j) {
  return a - twist(a, j, {true, true, false, false}) - twist(a, j, {true, false, true, false}) -
         twist(a, j, {true, false, false, true});
}

Tensor4 a3_defect(const Tensor4& a, const Matrix& j) {
  return a - twist(a, j, {true, true, true, true});
}

Tensor4 a2perp_defect(const Tensor4& a, const Matrix& j) {
  return a + twist(a, j, {true, true, false, false});
}

Tensor4 gray_yano_defect(const Tensor4& a, const Matrix& j) {
  Tensor4 d = a + twist(a, j, {true, true, true, true});
  for (const SlotMask& mask : {SlotMask{true, true, false, false}, SlotMask{false, false, true, true},
                               SlotMask{true, false, true, false}, SlotMask{false, true, false, true},
                               SlotMask{true, false, false, true}, SlotMask{false, true, true, false}}) {
    d -= twist(a, j, mask);
  }
  return d;
}

Tensor4 sato_combination(const Tensor4& a, const Matrix& j) {
  const Tensor4 s23 = twist(a, j, {false, false, true, true});  // A(x,y,Jz,Jw)
  const Tensor4 s13 = twist(a, j, {false, true, false, true});  // A(x,Jy,z,Jw)
  constexpr std::array<int, 4> xzwy{0, 2, 3, 1};
  constexpr std::array<int, 4> xwzy{0, 3, 2, 1};
  return 5.0 * a - 3.0 * s23 + permute_slots(s23, xzwy) - permute_slots(s23, xwzy) -
         permute_slots(s13, xzwy) + permute_slots(s13, xwzy);
}

// ---------------------------------------------------------------------------
// Compatibility

IdentityReport check_compatibility(const ComplexModel& model, CompatibilityCondition which,
                                   double tol) {
  const auto& a = model.a();
  const auto& j = model.j();
  const double scale = residual_scale(a.tensor());
  switch (which) {
    case CompatibilityCondition::PullbackInvariant: {
      ResidualTracker t("compatibility(1): J*A = A", scale, tol);
      t.observe_defect(a3_defect(a.tensor(), j.matrix()));
      return t.report();
    }
    case CompatibilityCondition::JacobiCommutes: {
      ResidualTracker t("compatibility(2): J(pi) J = J J(pi)", scale, tol);
      for (const auto& line : spanning_lines(j)) {
        const Matrix op = complex_jacobi(a, j, line).matrix;
        t.observe(max_abs(op * j.matrix() - j.matrix() * op), "line", {line.representative()});
      }
      return t.report();
    }
    case CompatibilityCondition::CurvatureCommutes: {
      ResidualTracker t("compatibility(3): R(pi) J = J R(pi)", scale, tol);
      for (const auto& line : spanning_lines(j)) {
        const Matrix op = complex_curvature_operator(a, j, line).matrix;
        t.observe(max_abs(op * j.matrix() - j.matrix() * op), "line", {line.representative()});
      }
      return t.report();
    }
  }
  throw std::logic_error("unhandled compatibility condition");
}

CompatibilityBattery check_compatibility(const ComplexModel& model, double tol) {
  CompatibilityBattery out;
  out.pullback_invariant = check_compatibility(model, CompatibilityCondition::PullbackInvariant, tol);
  out.jacobi_commutes = check_compatibility(model, CompatibilityCondition::JacobiCommutes, tol);
  out.curvature_commutes =
      check_compatibility(model, CompatibilityCondition::CurvatureCommutes, tol);
  out.consistent = out.pullback_invariant.holds == out.jacobi_commutes.holds &&
                   out.pullback_invariant.holds == out.curvature_commutes.holds;
  return out;
}

IdentityReport CompatibilityBattery::summary() const {
  IdentityReport out = worst_of({&pullback_invariant, &jacobi_commutes, &curvature_commutes});
  out.name = "compatibility";
  out.holds = pullback_invariant.holds && jacobi_commutes.holds && curvature_commutes.holds;
  out.detail = "conditions (1)/(2)/(3): " + fmt(pullback_invariant.worst_residual) + " / " +
               fmt(jacobi_commutes.worst_residual) + " / " +
               fmt(curvature_commutes.worst_residual) +
               (consistent ? "" : "; INCONSISTENT equivalent conditions");
  return out;
}

// ---------------------------------------------------------------------------
// Vanhecke and Sato

namespace {

void require_compatible(const ComplexModel& model, double tol, const char* what) {
  const auto r = check_compatibility(model, CompatibilityCondition::PullbackInvariant, tol);
  if (!r.holds) {
    throw Error(ErrorCode::NotCompatible, std::string(what) + " needs a compatible model; |J*A - A| = " +
                                              fmt(r.worst_residual));
  }
}

double vanhecke_defect(const ComplexModel& model, const Vector& x, const Vector& y) {
  const auto& a = model.a();
  const auto& j = model.j();
  const Vector jy = j.apply(y);
  auto q = [&](const Vector& v) { return holomorphic_quartic(a, j, v); };
  const double lhs = 32.0 * a.evaluate(x, y, y, x);
  const double rhs = 3.0 * q(x + jy) + 3.0 * q(x - jy) - q(x + y) - q(x - y) - 4.0 * q(x) -
                     4.0 * q(y) +
                     4.0 * (5.0 * lambda_tensor(a, j, x, y) + lambda_tensor(a, j, x, jy));
  return std::abs(lhs - rhs);
}

}  // namespace

IdentityReport check_vanhecke(const ComplexModel& model, int trials, std::uint64_t seed,
                              double tol) {
  require_compatible(model, tol, "Vanhecke identity");
  const int m = model.dim();
  ResidualTracker t("vanhecke", residual_scale(model.a().tensor()), tol);
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < m; ++k) {
      const Vector x = basis_vector(m, i);
      const Vector y = basis_vector(m, k);
      t.observe(vanhecke_defect(model, x, y), "pair", {x, y});
    }
  }
  Rng rng(seed);
  for (int n = 0; n < trials; ++n) {
    const Vector x = rng.unit_vector(m);
    const Vector y = rng.unit_vector(m);
    t.observe(vanhecke_defect(model, x, y), "pair", {x, y});
  }
  return t.report();
}

IdentityReport check_sato(const ComplexModel& model, SatoVariant variant, std::optional<double> c,
                          double tol) {
  require_compatible(model, tol, "Sato identity");
  const auto& a = model.a();
  const auto& j = model.j();
  const double scale = residual_scale(a.tensor());

  double q_min = std::numeric_limits<double>::infinity();
  double q_max = -q_min;
  double q_abs = 0.0;
  for (const auto& line : spanning_lines(j)) {
    const double q = holomorphic_sectional_curvature(a, j, line);
    q_min = std::min(q_min, q);
    q_max = std::max(q_max, q);
    q_abs = std::max(q_abs, std::abs(q));
    if (c && std::abs(q - *c) > tol * scale) {
      throw Error(ErrorCode::QNotConstant, "Q = " + fmt(q) + " differs from c = " + fmt(*c));
    }
  }

  if (variant == SatoVariant::ConstantQ) {
    if ((q_max - q_min) > tol * scale) {
      throw Error(ErrorCode::QNotConstant, "Q ranges over [" + fmt(q_min) + ", " + fmt(q_max) + "]");
    }
    const double cc = c ? *c : 0.5 * (q_min + q_max);
    const int m = model.dim();
    const Tensor4 kahler = (build_A0(m) + build_APhi(j)).tensor();
    const Tensor4 defect =
        a.tensor() - (cc / 4.0) * kahler - 0.125 * sato_combination(a.tensor(), j.matrix());
    ResidualTracker t("sato1", scale, tol);
    t.observe_defect(defect);
    auto r = t.report();
    r.detail = "c = " + fmt(cc);
    return r;
  }

  if (q_abs > tol * scale) {
    throw Error(ErrorCode::QNotZero, "max |Q| = " + fmt(q_abs));
  }
  const Tensor4 s23 = twist(a.tensor(), j.matrix(), {false, false, true, true});
  // Right-hand side = sato_combination - 5A + 3A(x,y,Jz,Jw).
  const Tensor4 rhs = sato_combination(a.tensor(), j.matrix()) - 5.0 * a.tensor() + 3.0 * s23;
  const Tensor4 defect = 3.0 * a.tensor() + 3.0 * s23 - rhs;
  ResidualTracker t("sato2", scale, tol);
  t.observe_defect(defect);
  return t.report();
}

// ---------------------------------------------------------------------------
// Vanishing complex Jacobi operator

Lemma23Report lemma23_battery(const ComplexModel& model, double tol) {
  const auto& a = model.a();
  const auto& j = model.j();
  const double scale = residual_scale(a.tensor());
  const auto lines = spanning_lines(j);
  Lemma23Report out;

  {
    ResidualTracker t("lemma23(a): J(pi) = 0", scale, tol);
    for (const auto& line : lines) {
      t.observe(max_abs(complex_jacobi(a, j, line).matrix), "line", {line.representative()});
    }
    out.jacobi_vanishes = t.report();
  }
  {
    ResidualTracker t("lemma23(b): A(x,y) = -A(Jx,Jy)", scale, tol);
    t.observe_defect(a2perp_defect(a.tensor(), j.matrix()));
    out.skew_under_j = t.report();
  }
  {
    ResidualTracker t("lemma23(c): R(pi) = 0", scale, tol);
    for (const auto& line : lines) {
      t.observe(max_abs(complex_curvature_operator(a, j, line).matrix), "line",
                {line.representative()});
    }
    out.curvature_vanishes = t.report();
  }
  {
    ResidualTracker t("lemma23(d): A(Jx,y)z = A(x,Jy)z = A(x,y)Jz", scale, tol);
    const Tensor4 first = twist(a.tensor(), j.matrix(), {true, false, false, false});
    t.observe_defect(first - twist(a.tensor(), j.matrix(), {false, true, false, false}));
    t.observe_defect(first - twist(a.tensor(), j.matrix(), {false, false, true, false}));
    out.j_moves_freely = t.report();
  }

  const bool a_ = out.jacobi_vanishes.holds;
  const bool agree = a_ == out.skew_under_j.holds && a_ == out.curvature_vanishes.holds &&
                     a_ == out.j_moves_freely.holds;
  if (!agree) {
    throw Error(ErrorCode::EquivalenceViolation,
                "vanishing conditions disagree: (a) " + fmt(out.jacobi_vanishes.worst_residual) +
                    " (b) " + fmt(out.skew_under_j.worst_residual) + " (c) " +
                    fmt(out.curvature_vanishes.worst_residual) + " (d) " +
                    fmt(out.j_moves_freely.worst_residual));
  }
  out.all_hold = a_;
  if (out.all_hold) {
    ResidualTracker rho("ricci flat", scale, tol);
    rho.observe(max_abs(ricci(a).matrix), "tensor", {});
    ResidualTracker star("star-ricci flat", scale, tol);
    star.observe(max_abs(star_ricci(a, j).matrix), "tensor", {});
    out.ricci_flat = rho.report();
    out.star_ricci_flat = star.report();
    out.compatible = check_compatibility(model, CompatibilityCondition::PullbackInvariant, tol);
    if (!out.ricci_flat->holds || !out.star_ricci_flat->holds || !out.compatible->holds) {
      throw Error(ErrorCode::EquivalenceViolation,
                  "vanishing complex Jacobi operator without Ricci/star-Ricci flatness or "
                  "compatibility");
    }
  }
  return out;
}

IdentityReport Lemma23Report::summary() const {
  IdentityReport out =
      worst_of({&jacobi_vanishes, &skew_under_j, &curvature_vanishes, &j_moves_freely});
  out.name = "lemma23";
  out.holds = all_hold;
  out.detail = "(a)/(b)/(c)/(d): " + fmt(jacobi_vanishes.worst_residual) + " / " +
               fmt(skew_under_j.worst_residual) + " / " + fmt(curvature_vanishes.worst_residual) +
               " / " + fmt(j_moves_freely.worst_residual);
  if (all_hold) out.detail += "; ricci and star-ricci flat, compatible";
  return out;
}

// ---------------------------------------------------------------------------
// Gray classes

bool GrayClassification::chain_consistent() const {
  return (!in_a1 || in_a2) && (!in_a2 || in_a3) && (!in_a2perp || in_a3);
}

GrayClassification gray_classify(const ComplexModel& model, double tol) {
  const Tensor4& a = model.a().tensor();
  const Matrix& j = model.j().matrix();
  const double scale = residual_scale(a);
  GrayClassification out;
  out.residual_a1 = a1_defect(a, j).max_abs() / scale;
  out.residual_a2 = a2_defect(a, j).max_abs() / scale;
  out.residual_a3 = a3_defect(a, j).max_abs() / scale;
  out.residual_a2perp = std::max(a2perp_defect(a, j).max_abs() / scale, out.residual_a3);
  out.in_a1 = out.residual_a1 <= tol;
  out.in_a2 = out.residual_a2 <= tol;
  out.in_a3 = out.residual_a3 <= tol;
  out.in_a2perp = out.residual_a2perp <= tol;
  return out;
}

CurvatureTensor p2_map(const ComplexModel& model, double tol) {
  const Tensor4& a = model.a().tensor();
  const Matrix& j = model.j().matrix();
  const double r = a3_defect(a, j).max_abs() / residual_scale(a);
  if (r > tol) throw Error(ErrorCode::NotInA3, "|J*A - A| = " + fmt(r));
  Tensor4 out = a + twist(a, j, {true, true, false, false}) + twist(a, j, {true, false, true, false}) +
                twist(a, j, {true, false, false, true});
  out *= 0.5;
  return CurvatureTensor::validate(std::move(out), std::max(tol, 1e-12));
}

IdentityReport check_gray_yano_identity(const Tensor4& a, const ComplexStructure& j, double tol) {
  if (a.dim() != j.dim()) throw Error(ErrorCode::DimensionMismatch, "gray-yano");
  ResidualTracker t("gray-yano", residual_scale(a), tol);
  t.observe_defect(gray_yano_defect(a, j.matrix()));
  return t.report();
}

}  // namespace curvlab
