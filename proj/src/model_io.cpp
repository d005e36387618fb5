#include "curvlab/model_io.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace curvlab {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) parse_error(where + ": expected a number");
  return j.get<double>();
}

int index_at(const json& j, int m, const std::string& where) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) parse_error(where + ": expected an integer index");
  const auto v = j.get<long long>();
  if (v < 0 || v >= m) parse_error(where + ": index " + std::to_string(v) + " out of range");
  return static_cast<int>(v);
}

Matrix parse_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) parse_error(where + ": expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = j[0].is_array() ? static_cast<Eigen::Index>(j[0].size()) : Eigen::Index{-1};
  if (cols <= 0) parse_error(where + ": rows must be non-empty arrays");
  Matrix out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      parse_error(where + ": ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      out(r, c) = number_at(row[static_cast<std::size_t>(c)], where);
    }
  }
  return out;
}

struct OrbitMember {
  std::array<int, 4> idx;
  double sign;
};

// Images of (i,j,k,l) under the 8 index symmetries.
std::array<OrbitMember, 8> orbit(int i, int j, int k, int l) {
  std::array<OrbitMember, 8> out{};
  int n = 0;
  for (int exchange = 0; exchange < 2; ++exchange) {
    for (int first = 0; first < 2; ++first) {
      for (int second = 0; second < 2; ++second) {
        std::array<int, 2> p = first ? std::array<int, 2>{j, i} : std::array<int, 2>{i, j};
        std::array<int, 2> q = second ? std::array<int, 2>{l, k} : std::array<int, 2>{k, l};
        if (exchange) std::swap(p, q);
        out[n++] = {{p[0], p[1], q[0], q[1]}, (first ^ second) ? -1.0 : 1.0};
      }
    }
  }
  return out;
}

Tensor4 parse_dense(const json& entries, int m) {
  Tensor4 t(m);
  const auto sz = static_cast<std::size_t>(m);
  auto check = [sz](const json& a, const char* level) {
    if (!a.is_array() || a.size() != sz) {
      parse_error(std::string("A.entries: ") + level + " must be an array of length " +
                  std::to_string(sz));
    }
  };
  check(entries, "outer level");
  for (int i = 0; i < m; ++i) {
    const json& a = entries[i];
    check(a, "second level");
    for (int j = 0; j < m; ++j) {
      const json& b = a[j];
      check(b, "third level");
      for (int k = 0; k < m; ++k) {
        const json& c = b[k];
        check(c, "innermost level");
        for (int l = 0; l < m; ++l) t(i, j, k, l) = number_at(c[l], "A.entries");
      }
    }
  }
  return t;
}

Tensor4 parse_sparse(const json& entries, int m) {
  if (!entries.is_array()) parse_error("A.entries: expected a list of [i, j, k, l, value]");
  Tensor4 t(m);
  std::vector<char> assigned(t.size(), 0);
  for (const json& e : entries) {
    if (!e.is_array() || e.size() != 5) parse_error("A.entries: each entry is [i, j, k, l, value]");
    const int i = index_at(e[0], m, "A.entries"), j = index_at(e[1], m, "A.entries"),
              k = index_at(e[2], m, "A.entries"), l = index_at(e[3], m, "A.entries");
    const double v = number_at(e[4], "A.entries");
    for (const auto& member : orbit(i, j, k, l)) {
      const auto& x = member.idx;
      const std::size_t at = t.index(x[0], x[1], x[2], x[3]);
      const double value = member.sign * v;
      if (assigned[at] && std::abs(t.entries()[at] - value) > 1e-12) {
        std::ostringstream msg;
        msg << "A.entries: conflicting values in the symmetry orbit of (" << i << "," << j << ","
            << k << "," << l << ")";
        parse_error(msg.str());
      }
      t.entries()[at] = value;
      assigned[at] = 1;
    }
  }
  return t;
}

std::string num(double v) { return json(v).dump(); }

void write_row(std::ostream& out, const double* begin, int n) {
  out << '[';
  for (int c = 0; c < n; ++c) out << (c ? ", " : "") << num(begin[c]);
  out << ']';
}

}  // namespace

ModelFile read_model(std::istream& in, double tol) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) parse_error("model file must be a JSON object");
  for (const char* key : {"dim", "J", "A"}) {
    if (!doc.contains(key)) parse_error(std::string("missing field '") + key + "'");
  }
  const json& dim = doc["dim"];
  if (!dim.is_number_integer() && !dim.is_number_unsigned()) parse_error("dim must be an integer");
  const auto mm = dim.get<long long>();
  if (mm < 2 || mm > 64) parse_error("dim out of range: " + std::to_string(mm));
  const int m = static_cast<int>(mm);

  const Matrix jm = parse_matrix(doc["J"], "J");
  if (jm.rows() != m || jm.cols() != m) {
    throw Error(ErrorCode::DimensionMismatch, "J is not " + std::to_string(m) + "x" + std::to_string(m));
  }
  ComplexStructure j = ComplexStructure::validate(jm, tol);

  const json& a = doc["A"];
  if (!a.is_object() || !a.contains("storage") || !a.contains("entries")) {
    parse_error("A must be an object with 'storage' and 'entries'");
  }
  const json& storage = a["storage"];
  Tensor4 t;
  if (storage == "dense") {
    t = parse_dense(a["entries"], m);
  } else if (storage == "sparse") {
    t = parse_sparse(a["entries"], m);
  } else {
    parse_error("A.storage must be \"dense\" or \"sparse\"");
  }

  ModelFile out{ComplexModel(std::move(j), CurvatureTensor::validate(std::move(t), tol)), {}};
  if (doc.contains("metadata")) {
    const json& meta = doc["metadata"];
    if (!meta.is_object()) parse_error("metadata must be an object");
    for (const auto& [key, value] : meta.items()) {
      out.metadata[key] = value.is_string() ? value.get<std::string>() : value.dump();
    }
  }
  return out;
}

ModelFile load_model(const std::string& path, double tol) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return read_model(in, tol);
}

void write_model(std::ostream& out, const ModelFile& file, Storage storage) {
  const int m = file.model.dim();
  const Matrix& j = file.model.j().matrix();
  const Tensor4& t = file.model.a().tensor();

  out << "{\n  \"dim\": " << m << ",\n  \"J\": [\n";
  for (int r = 0; r < m; ++r) {
    out << "    [";
    for (int c = 0; c < m; ++c) out << (c ? ", " : "") << num(j(r, c));
    out << (r + 1 < m ? "],\n" : "]\n");
  }
  out << "  ],\n  \"A\": {\n";
  if (storage == Storage::Dense) {
    out << "    \"storage\": \"dense\",\n    \"entries\": [\n";
    for (int i = 0; i < m; ++i) {
      out << "      [\n";
      for (int k = 0; k < m; ++k) {
        out << "        [";
        for (int l = 0; l < m; ++l) {
          out << (l ? ", " : "");
          write_row(out, &t.entries()[t.index(i, k, l, 0)], m);
        }
        out << (k + 1 < m ? "],\n" : "]\n");
      }
      out << (i + 1 < m ? "      ],\n" : "      ]\n");
    }
    out << "    ]\n";
  } else {
    out << "    \"storage\": \"sparse\",\n    \"entries\": [";
    bool first = true;
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          for (int p = 0; p < m; ++p) {
            const std::size_t at = t.index(i, k, l, p);
            const double v = t.entries()[at];
            if (v == 0.0) continue;
            bool representative = true;
            for (const auto& member : orbit(i, k, l, p)) {
              const auto& x = member.idx;
              representative = representative && t.index(x[0], x[1], x[2], x[3]) >= at;
            }
            if (!representative) continue;
            out << (first ? "\n      " : ",\n      ") << '[' << i << ", " << k << ", " << l << ", "
                << p << ", " << num(v) << ']';
            first = false;
          }
    out << (first ? "]\n" : "\n    ]\n");
  }
  out << "  },\n  \"metadata\": ";
  out << json(file.metadata).dump() << "\n}\n";
}

void save_model(const std::string& path, const ModelFile& file, Storage storage) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  write_model(out, file, storage);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

Matrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
  if (doc.is_object()) {
    if (doc.size() != 1) parse_error(path + ": expected a single matrix field");
    return parse_matrix(doc.begin().value(), doc.begin().key());
  }
  return parse_matrix(doc, path);
}

void save_matrix(const std::string& path, const Matrix& m, const std::string& key) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << "{\n  \"" << key << "\": [\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << "    [";
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? ", " : "") << num(m(r, c));
    out << (r + 1 < m.rows() ? "],\n" : "]\n");
  }
  out << "  ]\n}\n";
}

}  // namespace curvlab
