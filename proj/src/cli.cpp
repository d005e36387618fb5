#include "curvlab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "curvlab/constructions.hpp"
#include "curvlab/model_io.hpp"
#include "json.hpp"

namespace curvlab {

namespace {

using nlohmann::ordered_json;

struct Result {
  std::string name;
  bool holds = true;
  std::optional<double> residual;
  std::optional<Witness> witness;
  std::string detail;
  /// Informational rows do not affect the exit status.
  bool counted = true;
  ordered_json extra = ordered_json::object();
};

struct Report {
  std::string command;
  std::vector<Result> results;
  /// Replaces the table in text mode (e.g. a bare dimension).
  std::optional<std::string> plain;

  int status() const {
    for (const auto& r : results) {
      if (r.counted && !r.holds) return kExitFail;
    }
    return kExitPass;
  }
};

struct Globals {
  double tol = kDefaultTolerance;
  std::uint64_t seed = 0;
  int samples = 0;
  std::string output = "text";
};

/// Thrown for bad arguments detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

std::string fmt(const Vector& v) {
  std::ostringstream s;
  s << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) s << (i ? ", " : "") << fmt(v(i));
  s << ')';
  return s.str();
}

Result from_identity(const IdentityReport& r) {
  Result out;
  out.name = r.name;
  out.holds = r.holds;
  out.residual = r.worst_residual;
  out.detail = r.detail;
  if (!r.witness.arguments.empty()) out.witness = r.witness;
  return out;
}

Result failure(const std::string& name, const Error& e) {
  Result out;
  out.name = name;
  out.holds = false;
  out.detail = e.what();
  return out;
}

ordered_json to_json(const Vector& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

ordered_json to_json(const std::vector<Eigenvalue>& spec) {
  ordered_json a = ordered_json::array();
  for (const auto& e : spec) a.push_back({{"value", e.value}, {"multiplicity", e.multiplicity}});
  return a;
}

std::string describe(const std::vector<Eigenvalue>& spec) {
  std::string s;
  for (const auto& e : spec) {
    s += (s.empty() ? "" : ", ") + fmt(std::abs(e.value) < 1e-12 ? 0.0 : e.value) + " (x" +
         std::to_string(e.multiplicity) + ")";
  }
  return s;
}

void emit(const Report& report, const Globals& g, std::ostream& out) {
  if (g.output == "json") {
    ordered_json doc;
    doc["command"] = report.command;
    doc["tolerance"] = g.tol;
    doc["seed"] = g.seed;
    ordered_json rows = ordered_json::array();
    for (const auto& r : report.results) {
      ordered_json row;
      row["name"] = r.name;
      row["holds"] = r.holds;
      row["residual"] = r.residual ? ordered_json(*r.residual) : ordered_json(nullptr);
      if (r.witness) {
        ordered_json args = ordered_json::array();
        for (const auto& v : r.witness->arguments) args.push_back(to_json(v));
        row["witness"] = {{"label", r.witness->label}, {"arguments", args}};
      } else {
        row["witness"] = nullptr;
      }
      row["detail"] = r.detail;
      for (const auto& [k, v] : r.extra.items()) row[k] = v;
      rows.push_back(std::move(row));
    }
    doc["results"] = std::move(rows);
    doc["status"] = report.status();
    out << doc.dump(2) << '\n';
    return;
  }
  if (report.plain) {
    out << *report.plain << '\n';
    return;
  }
  std::size_t width = 4;
  for (const auto& r : report.results) width = std::max(width, r.name.size());
  out << "command: " << report.command << '\n';
  for (const auto& r : report.results) {
    out << "  " << std::left << std::setw(static_cast<int>(width)) << r.name << "  "
        << (r.counted ? (r.holds ? "PASS" : "FAIL") : "info") << "  ";
    out << std::setw(12) << (r.residual ? fmt(*r.residual) : "-");
    if (!r.detail.empty()) out << "  " << r.detail;
    out << '\n';
    if (r.witness && !r.holds) {
      out << "    witness " << r.witness->label << ':';
      for (const auto& v : r.witness->arguments) out << ' ' << fmt(v);
      out << '\n';
    }
  }
  out << "status: " << report.status() << '\n';
}

std::string join(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) s += (s.empty() ? "" : " ") + a;
  return s;
}

// ---------------------------------------------------------------------------
// build

ModelFile build_model(const std::string& kind, int m, const Globals& g, const std::string& mix,
                      const std::string& theta_out) {
  if (m < 2) throw UsageError("--m must be at least 2");
  if (!theta_out.empty() && kind != "twistor") throw UsageError("--theta-out only applies to twistor");
  std::map<std::string, std::string> meta{{"name", kind}};
  auto make = [&]() -> ComplexModel {
    if (kind == "a0") {
      meta["construction"] = "A0 with the standard complex structure";
      return ComplexModel(ComplexStructure::standard(m), build_A0(m));
    }
    if (kind == "fubini-study") {
      meta["construction"] = "A0 + A_J with the standard complex structure";
      const auto j = ComplexStructure::standard(m);
      return ComplexModel(j, build_A0(m) + build_APhi(j));
    }
    if (kind == "counterexample") {
      meta["construction"] = "A_{J2} - A_{J1 J2} with line structure J1";
      return counterexample_model(m);
    }
    if (kind == "twistor") {
      meta["construction"] = "A0 + A_{J1} with line structure J2";
      const auto t = twistor_point_model(m);
      if (!theta_out.empty()) save_matrix(theta_out, t.theta.matrix());
      return t.model;
    }
    GeneratorMix gm = GeneratorMix::Basis;
    if (mix == "a0") gm = GeneratorMix::A0Only;
    if (mix == "canonical") gm = GeneratorMix::Canonical;
    meta["construction"] = "random curvature tensor (" + mix + ")";
    meta["seed"] = std::to_string(g.seed);
    return ComplexModel(ComplexStructure::standard(m), random_curvature_tensor(m, g.seed, gm));
  };
  ComplexModel model = make();
  return ModelFile{std::move(model), std::move(meta)};
}

// ---------------------------------------------------------------------------
// check

Result run_identity(const std::string& id, const ComplexModel& model, const Globals& g) {
  try {
    if (id == "symmetries") {
      const auto sr = symmetry_residual(model.a().tensor());
      Result r;
      r.name = id;
      r.residual = sr.residual / residual_scale(model.a().tensor());
      r.holds = *r.residual <= g.tol;
      r.detail = "worst family: " + sr.family;
      if (sr.residual > 0.0) {
        const Matrix id_m = Matrix::Identity(model.dim(), model.dim());
        r.witness = Witness{"quadruple", {id_m.col(sr.where[0]), id_m.col(sr.where[1]),
                                          id_m.col(sr.where[2]), id_m.col(sr.where[3])}};
      }
      return r;
    }
    if (id == "compatibility") {
      const auto battery = check_compatibility(model, g.tol);
      Result r = from_identity(battery.summary());
      r.extra["consistent"] = battery.consistent;
      if (!battery.consistent) r.holds = false;
      return r;
    }
    if (id == "vanhecke") {
      return from_identity(check_vanhecke(model, 20 + g.samples, g.seed, g.tol));
    }
    if (id == "sato1") {
      Result r = from_identity(check_sato(model, SatoVariant::ConstantQ, std::nullopt, g.tol));
      r.name = id;
      return r;
    }
    if (id == "sato2") {
      Result r = from_identity(check_sato(model, SatoVariant::ZeroQ, std::nullopt, g.tol));
      r.name = id;
      return r;
    }
    if (id == "lemma23") {
      return from_identity(lemma23_battery(model, g.tol).summary());
    }
    if (id == "gray-classify") {
      const auto c = gray_classify(model, g.tol);
      Result r;
      r.name = id;
      r.holds = c.chain_consistent();
      double certified = 0.0;
      if (c.in_a1) certified = std::max(certified, c.residual_a1);
      if (c.in_a2) certified = std::max(certified, c.residual_a2);
      if (c.in_a3) certified = std::max(certified, c.residual_a3);
      if (c.in_a2perp) certified = std::max(certified, c.residual_a2perp);
      r.residual = certified;
      auto b = [](bool v) { return v ? "true" : "false"; };
      r.detail = std::string("inA1=") + b(c.in_a1) + " inA2=" + b(c.in_a2) + " inA3=" + b(c.in_a3) +
                 " inA2perp=" + b(c.in_a2perp);
      r.extra["classification"] = {
          {"inA1", c.in_a1},
          {"inA2", c.in_a2},
          {"inA3", c.in_a3},
          {"inA2perp", c.in_a2perp},
          {"residuals",
           {{"a1", c.residual_a1}, {"a2", c.residual_a2}, {"a3", c.residual_a3}, {"a2perp", c.residual_a2perp}}}};
      return r;
    }
    Result r = from_identity(check_gray_yano_identity(model.a().tensor(), model.j(), g.tol));
    r.name = id;
    return r;
  } catch (const Error& e) {
    return failure(id, e);
  }
}

// ---------------------------------------------------------------------------
// spectra

Result spectrum_row(const std::string& name, const OperatorMatrix& op, const Vector* at) {
  Result r;
  r.name = name;
  r.counted = false;
  try {
    const auto spec = spectrum(op);
    r.detail = describe(spec);
    r.extra["spectrum"] = to_json(spec);
  } catch (const Error& e) {
    r.detail = std::string("no real spectrum: ") + e.what();
    r.extra["spectrum"] = nullptr;
  }
  if (at) r.extra["at"] = to_json(*at);
  return r;
}

Vector parse_vector(const std::string& text, int m) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--at: cannot parse '" + item + "' as a number");
    }
  }
  if (static_cast<int>(values.size()) != m) {
    throw UsageError("--at: expected " + std::to_string(m) + " comma-separated numbers");
  }
  Vector v = Eigen::Map<Vector>(values.data(), m);
  if (!(v.norm() > 0.0)) throw UsageError("--at: the vector must be nonzero");
  return v;
}

Report spectra_report(const ComplexModel& model, const std::string& at, Report report) {
  const auto& a = model.a();
  const auto& j = model.j();
  auto add_point = [&](const std::string& suffix, const Vector& x) {
    const Vector u = x.normalized();
    report.results.push_back(spectrum_row("jacobi" + suffix, jacobi(a, u), &u));
    const auto pi = ComplexLine::through(j, u);
    report.results.push_back(
        spectrum_row("complex-jacobi" + suffix, complex_jacobi(a, j, pi), &pi.representative()));
  };
  if (at == "sweep") {
    const auto lines = spanning_lines(j);
    for (std::size_t k = 0; k < lines.size(); ++k) {
      add_point("@line" + std::to_string(k), lines[k].representative());
    }
  } else {
    add_point("", parse_vector(at, model.dim()));
  }
  report.results.push_back(spectrum_row("ricci", ricci(a), nullptr));
  report.results.push_back(spectrum_row("star-ricci", star_ricci(a, j), nullptr));

  const auto s = scalars(a, j);
  Result sc;
  sc.name = "scalars";
  sc.counted = false;
  double q_min = 0.0, q_max = 0.0;
  ordered_json qs = ordered_json::array();
  for (std::size_t k = 0; k < s.q_values.size(); ++k) {
    const double q = s.q_values[k].second;
    q_min = k ? std::min(q_min, q) : q;
    q_max = k ? std::max(q_max, q) : q;
    qs.push_back(q);
  }
  sc.detail = "tau=" + fmt(s.tau) + " tau*=" + fmt(s.tau_star) + " Q on spanning lines in [" +
              fmt(q_min) + ", " + fmt(q_max) + "]";
  sc.extra["tau"] = s.tau;
  sc.extra["tauStar"] = s.tau_star;
  sc.extra["q"] = qs;
  report.results.push_back(std::move(sc));
  return report;
}

// ---------------------------------------------------------------------------
// reconstruct

Report reconstruct_report(const ModelFile& input, const std::string& path, const std::string& mode,
                          const std::string& out_path, const Globals& g, Report report) {
  const auto& model = input.model;
  Result fit;
  fit.name = "fit";
  std::optional<Reconstruction> rec;
  try {
    if (mode == "jacobi") {
      rec = reconstruct_from_jacobi(jacobi_oracle(model.a()), std::max(g.tol, 1e-8));
    } else {
      rec = reconstruct_from_complex_jacobi(complex_jacobi_oracle(model), std::max(g.tol, 1e-8));
    }
  } catch (const Error& e) {
    report.results.push_back(failure("fit", e));
    return report;
  }
  fit.residual = rec->residual;
  fit.holds = rec->residual <= g.tol;
  fit.detail = std::to_string(rec->equations) + " equations, " + std::to_string(rec->unknowns) +
               " unknowns";
  report.results.push_back(std::move(fit));

  Result trip;
  trip.name = "round-trip";
  trip.residual = (rec->tensor.tensor() - model.a().tensor()).max_abs() / residual_scale(model.a().tensor());
  trip.holds = *trip.residual <= std::max(g.tol, 1e-8);
  trip.detail = trip.holds ? "reconstruction equals the input tensor"
                           : "input tensor is not determined by " + mode + " data";
  report.results.push_back(std::move(trip));

  if (!out_path.empty()) {
    ModelFile out{ComplexModel(model.j(), rec->tensor), input.metadata};
    out.metadata["construction"] = "reconstructed from " + mode + " data of " + path;
    save_model(out_path, out);
  }
  return report;
}

// ---------------------------------------------------------------------------
// diff

Report diff_report(const ModelFile& first, const ModelFile& second, const Matrix& theta,
                   const Globals& g, Report report) {
  std::optional<EquivalenceReport> found;
  try {
    found = jacobi_equivalence_check(first.model, second.model, theta, g.tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EquivalenceViolation) throw;
    report.results.push_back(failure("equivalence", e));
    return report;
  }
  const EquivalenceReport& eq = *found;
  Result d;
  d.name = "tensors-equal";
  d.holds = eq.tensors_equal;
  d.residual = eq.difference.max_abs() /
               (1.0 + std::max(first.model.a().max_abs(), second.model.a().max_abs()));
  d.detail = "|A1 - theta^* A2| = " + fmt(eq.difference_norm);
  d.extra["differenceNorm"] = eq.difference_norm;
  report.results.push_back(std::move(d));

  Result battery = from_identity(eq.battery.summary());
  battery.name = "lemma23(difference)";
  battery.counted = false;
  report.results.push_back(std::move(battery));
  for (auto [label, r] : {std::pair{"gray-yano(first)", &eq.gray_yano_first},
                          std::pair{"gray-yano(second)", &eq.gray_yano_second}}) {
    Result row = from_identity(*r);
    row.name = label;
    row.counted = false;
    report.results.push_back(std::move(row));
  }
  Result verdict;
  verdict.name = "verdict";
  verdict.counted = false;
  verdict.detail = eq.verdict;
  verdict.extra["complexJacobiEquivalent"] = eq.battery.all_hold;
  verdict.extra["uniquenessApplies"] = eq.uniqueness_applies;
  report.results.push_back(std::move(verdict));
  return report;
}

double default_tolerance() {
  const char* env = std::getenv("CURVLAB_TOL");
  if (!env || !*env) return kDefaultTolerance;
  try {
    std::size_t used = 0;
    const double v = std::stod(env, &used);
    if (used == std::string(env).size() && v >= 0.0) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(std::string("CURVLAB_TOL is not a non-negative number: ") + env);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Globals g;
  try {
    g.tol = default_tolerance();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App app{"Algebraic curvature models of almost Hermitian type", "curvlab"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--tol", g.tol, "Residual tolerance (default 1e-10, or $CURVLAB_TOL)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--samples", g.samples, "Extra random spot checks")->check(CLI::NonNegativeNumber);
  app.add_option("--output", g.output, "Report format")->check(CLI::IsMember({"text", "json"}));

  std::function<int()> action;
  const std::string command = join(args);

  // build
  std::string kind, out_path, storage = "dense", theta_out, mix = "basis";
  int m = 4;
  auto* build = app.add_subcommand("build", "Write a model file");
  build->add_option("kind", kind)
      ->required()
      ->check(CLI::IsMember({"a0", "fubini-study", "counterexample", "twistor", "random"}));
  build->add_option("--m", m, "Dimension");
  build->add_option("--out", out_path, "Output path (default: stdout)");
  build->add_option("--storage", storage)->check(CLI::IsMember({"dense", "sparse"}));
  build->add_option("--theta-out", theta_out, "Write Theta for the twistor model");
  build->add_option("--mix", mix, "Generator for random")
      ->check(CLI::IsMember({"basis", "a0", "canonical"}));
  build->callback([&] {
    action = [&] {
      const ModelFile file = build_model(kind, m, g, mix, theta_out);
      const Storage st = storage == "dense" ? Storage::Dense : Storage::Sparse;
      if (out_path.empty()) {
        write_model(out, file, st);
        return static_cast<int>(kExitPass);
      }
      save_model(out_path, file, st);
      Report report{command, {}, std::nullopt};
      Result r;
      r.name = "build";
      r.detail = "wrote " + out_path;
      report.results.push_back(std::move(r));
      emit(report, g, out);
      return report.status();
    };
  });

  // check
  std::string model_path;
  std::vector<std::string> identities;
  auto* check = app.add_subcommand("check", "Verify identities on a model");
  check->add_option("model", model_path)->required();
  check->add_option("identities", identities)
      ->required()
      ->check(CLI::IsMember({"symmetries", "compatibility", "vanhecke", "sato1", "sato2", "lemma23",
                             "gray-classify", "gray-yano"}));
  check->callback([&] {
    action = [&] {
      const ModelFile file = load_model(model_path, g.tol);
      Report report{command, {}, std::nullopt};
      for (const auto& id : identities) report.results.push_back(run_identity(id, file.model, g));
      emit(report, g, out);
      return report.status();
    };
  });

  // spectra
  std::string at = "sweep";
  auto* spectra = app.add_subcommand("spectra", "Operator spectra of a model");
  spectra->add_option("model", model_path)->required();
  spectra->add_option("--at", at, "Comma-separated vector, or 'sweep' over spanning lines");
  spectra->callback([&] {
    action = [&] {
      const ModelFile file = load_model(model_path, g.tol);
      const Report report = spectra_report(file.model, at, Report{command, {}, std::nullopt});
      emit(report, g, out);
      return report.status();
    };
  });

  // reconstruct
  std::string mode = "jacobi";
  auto* reconstruct = app.add_subcommand("reconstruct", "Recover a tensor from Jacobi data");
  reconstruct->add_option("model", model_path)->required();
  reconstruct->add_option("--mode", mode)->check(CLI::IsMember({"jacobi", "complex-jacobi"}));
  reconstruct->add_option("--out", out_path, "Write the reconstructed model");
  reconstruct->callback([&] {
    action = [&] {
      const ModelFile file = load_model(model_path, g.tol);
      const Report report =
          reconstruct_report(file, model_path, mode, out_path, g, Report{command, {}, std::nullopt});
      emit(report, g, out);
      return report.status();
    };
  });

  // diff
  std::string second_path, theta_path;
  auto* diff = app.add_subcommand("diff", "Compare A1 with theta^* A2");
  diff->add_option("first", model_path)->required();
  diff->add_option("second", second_path)->required();
  diff->add_option("--theta", theta_path, "Matrix file (default: identity)");
  diff->callback([&] {
    action = [&] {
      const ModelFile first = load_model(model_path, g.tol);
      const ModelFile second = load_model(second_path, g.tol);
      const int dim = first.model.dim();
      const Matrix theta = theta_path.empty() ? Matrix(Matrix::Identity(dim, dim)) : load_matrix(theta_path);
      const Report report = diff_report(first, second, theta, g, Report{command, {}, std::nullopt});
      emit(report, g, out);
      return report.status();
    };
  });

  // subspace-dim
  std::string j_source = "standard";
  std::vector<std::string> constraints;
  auto* subspace = app.add_subcommand("subspace-dim", "Dimension of a constrained subspace");
  subspace->add_option("--m", m, "Dimension");
  subspace->add_option("--j", j_source, "'standard' or a matrix file");
  subspace->add_option("--constraints", constraints)->delimiter(',');
  subspace->callback([&] {
    action = [&] {
      std::vector<LinearConstraint> parsed;
      for (const auto& c : constraints) parsed.push_back(parse_constraint(c));
      const ComplexStructure j = j_source == "standard"
                                     ? ComplexStructure::standard(m)
                                     : ComplexStructure::validate(load_matrix(j_source), g.tol);
      if (j.dim() != m) throw UsageError("--j has dimension " + std::to_string(j.dim()));
      const int dimension = subspace_dimension(parsed, m, j);
      Report report{command, {}, std::to_string(dimension)};
      Result r;
      r.name = "subspace-dim";
      r.detail = std::to_string(dimension);
      r.extra["dimension"] = dimension;
      report.results.push_back(std::move(r));
      emit(report, g, out);
      return report.status();
    };
  });

  // audit
  auto* audit = app.add_subcommand("audit", "Brute-force values of commonly misquoted quantities");
  audit->add_option("--m", m, "Dimension");
  audit->callback([&] {
    action = [&] {
      Report report{command, {}, std::nullopt};
      for (const auto& e : discrepancy_audit(m, g.seed)) {
        Result r;
        r.name = e.quantity;
        r.counted = false;
        r.residual = std::abs(e.computed - e.reference_value);
        r.detail = "computed " + fmt(e.computed) + ", quoted " + fmt(e.reference_value);
        r.extra["computed"] = e.computed;
        r.extra["quoted"] = e.reference_value;
        report.results.push_back(std::move(r));
      }
      emit(report, g, out);
      return report.status();
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}

}  // namespace curvlab
