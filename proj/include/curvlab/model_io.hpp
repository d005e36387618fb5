#pragma once

// JSON model files:
//
//   {"dim": m, "J": [[...], ...],
//    "A": {"storage": "dense", "entries": [[[[...]]]]}        nested m^4
//      or {"storage": "sparse", "entries": [[i, j, k, l, v], ...]},
//    "metadata": {"name": "...", ...}}
//
// Sparse entries hold one value per orbit of the index symmetries; the rest
// of the orbit is filled in on load.

#include <iosfwd>
#include <map>
#include <string>

#include "curvlab/tensor.hpp"

namespace curvlab {

enum class Storage { Dense, Sparse };

struct ModelFile {
  ComplexModel model;
  std::map<std::string, std::string> metadata;
};

/// Parses and strictly validates a model. Throws ParseError on malformed
/// input or conflicting sparse orbits, and the validation errors of
/// ComplexStructure / CurvatureTensor otherwise.
ModelFile read_model(std::istream& in, double tol = kDefaultTolerance);
ModelFile load_model(const std::string& path, double tol = kDefaultTolerance);

/// Dense output reloads bit-exactly.
void write_model(std::ostream& out, const ModelFile& file, Storage storage = Storage::Dense);
void save_model(const std::string& path, const ModelFile& file, Storage storage = Storage::Dense);

/// {"theta": [[...], ...]} or a bare nested array.
Matrix load_matrix(const std::string& path);
void save_matrix(const std::string& path, const Matrix& m, const std::string& key = "theta");

}  // namespace curvlab
