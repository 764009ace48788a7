#include "cslrank/io.hpp"

#include <fstream>
#include <sstream>

namespace cslrank {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw InputError(field + ": " + what);
}

const Json& require(const Json& doc, const char* key, const std::string& field) {
  if (!doc.is_object()) fail(field, "expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) fail(field, std::string("missing field '") + key + "'");
  return *it;
}

std::size_t to_size(const Json& v, const std::string& field) {
  if (!v.is_number_integer() || v.get<long long>() < 0) fail(field, "expected a non-negative integer");
  return v.get<std::size_t>();
}

// 1-based coordinate in [1, n] -> 0-based.
std::size_t coordinate(const Json& v, std::size_t n, const std::string& field) {
  const std::size_t k = to_size(v, field);
  if (k < 1 || k > n) fail(field, "coordinate " + std::to_string(k) + " outside 1.." + std::to_string(n));
  return k - 1;
}

CoordSet coords_from_json(const Json& v, std::size_t n, const std::string& field) {
  if (!v.is_array()) fail(field, "expected an array of coordinates");
  std::vector<std::size_t> members;
  for (std::size_t k = 0; k < v.size(); ++k) members.push_back(coordinate(v[k], n, field + "[" + std::to_string(k) + "]"));
  return CoordSet(n, std::move(members));
}

Json coords_to_json(const CoordSet& s) {
  Json out = Json::array();
  for (std::size_t k : s.members()) out.push_back(k + 1);
  return out;
}

Scalar scalar_from_json(const Json& v, const std::string& field) {
  if (v.is_number_integer()) return Scalar(v.get<long>());
  if (!v.is_string()) fail(field, "expected a scalar string");
  try {
    return Scalar::parse(v.get<std::string>());
  } catch (const InputError& e) {
    fail(field, e.what());
  }
}

}  // namespace

SubspaceLattice lattice_from_json(const Json& doc) {
  const std::size_t n = to_size(require(doc, "n", "lattice"), "lattice.n");
  if (n == 0) fail("lattice.n", "dimension must be positive");
  const Json& gens = require(doc, "generators", "lattice");
  if (!gens.is_array()) fail("lattice.generators", "expected an array");
  std::vector<CoordSet> generators;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    generators.push_back(coords_from_json(gens[k], n, "lattice.generators[" + std::to_string(k) + "]"));
  }
  return closure(n, generators);
}

Json lattice_to_json(const SubspaceLattice& lattice) {
  Json gens = Json::array();
  for (const auto& e : lattice.elements()) {
    if (!e.is_empty() && !e.is_full()) gens.push_back(coords_to_json(e));
  }
  return Json{{"n", lattice.ambient_dim()}, {"generators", gens}};
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    out.push_back(row);
  }
  return out;
}

Matrix matrix_from_json(const Json& doc, const std::string& field) {
  if (!doc.is_array()) fail(field, "expected an array of rows");
  const std::size_t rows = doc.size();
  const std::size_t cols = rows == 0 ? 0 : (doc[0].is_array() ? doc[0].size() : 0);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string rf = field + "[" + std::to_string(i) + "]";
    if (!doc[i].is_array()) fail(rf, "expected a row array");
    if (doc[i].size() != cols) {
      fail(rf, "row has " + std::to_string(doc[i].size()) + " entries, expected " + std::to_string(cols));
    }
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = scalar_from_json(doc[i][j], rf + "[" + std::to_string(j) + "]");
  }
  return m;
}

MapSpec map_from_json(const Json& doc) {
  SubspaceLattice source, target;
  try {
    source = lattice_from_json(require(doc, "source", "map"));
  } catch (const InputError& e) {
    throw InputError(std::string("map.source: ") + e.what());
  }
  try {
    target = lattice_from_json(require(doc, "target", "map"));
  } catch (const InputError& e) {
    throw InputError(std::string("map.target: ") + e.what());
  }
  MapSpec spec(mask(source), mask(target));
  const std::size_t n1 = spec.source_dim(), n2 = spec.target_dim();
  const Json& images = require(doc, "images", "map");
  if (!images.is_array()) fail("map.images", "expected an array");
  for (std::size_t k = 0; k < images.size(); ++k) {
    const std::string field = "images[" + std::to_string(k) + "]";
    const Json& from = require(images[k], "from", field);
    if (!from.is_array() || from.size() != 2) fail(field + ".from", "expected [i, j]");
    const std::size_t i = coordinate(from[0], n1, field + ".from[0]");
    const std::size_t j = coordinate(from[1], n1, field + ".from[1]");
    Matrix m = matrix_from_json(require(images[k], "to", field), field + ".to");
    if (m.rows() != n2 || m.cols() != n2) {
      fail(field + ".to", "expected " + std::to_string(n2) + "x" + std::to_string(n2) + " matrix");
    }
    if (spec.images().count({i, j})) fail(field, "duplicate image for " + unit_label({i, j}));
    try {
      spec.set_image(i, j, std::move(m));
    } catch (const Error& e) {
      fail(field, e.what());
    }
  }
  return spec;
}

Json map_to_json(const MapSpec& spec) {
  Json images = Json::array();
  for (const auto& [unit, m] : spec.images()) {
    images.push_back(Json{{"from", {unit.first + 1, unit.second + 1}}, {"to", matrix_to_json(m)}});
  }
  return Json{{"source", lattice_to_json(spec.source().lattice())},
              {"target", lattice_to_json(spec.target().lattice())},
              {"images", images}};
}

Implementation implementation_from_json(const Json& doc, std::size_t source_dim, std::size_t target_dim) {
  Implementation impl;
  impl.source_dim = source_dim;
  impl.target_dim = target_dim;
  const Json& blocks = require(doc, "blocks", "implementation");
  if (!blocks.is_array()) fail("implementation.blocks", "expected an array");
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const std::string field = "blocks[" + std::to_string(k) + "]";
    Block b;
    b.g = coords_from_json(require(blocks[k], "coords_G", field), source_dim, field + ".coords_G");
    b.f = coords_from_json(require(blocks[k], "coords_F", field), source_dim, field + ".coords_F");
    const Json& mode = require(blocks[k], "mode", field);
    if (mode == "consistent") {
      b.mode = Mode::consistent;
    } else if (mode == "twisted") {
      b.mode = Mode::twisted;
    } else {
      fail(field + ".mode", "expected \"consistent\" or \"twisted\"");
    }
    b.u = matrix_from_json(require(blocks[k], "U", field), field + ".U");
    b.v = matrix_from_json(require(blocks[k], "V", field), field + ".V");
    // An empty domain serializes as rows of nothing; restore the row count.
    if (b.u_domain().is_empty() && b.u.rows() == 0) b.u = Matrix(target_dim, 0);
    if (b.v_domain().is_empty() && b.v.rows() == 0) b.v = Matrix(target_dim, 0);
    if (b.u.rows() != target_dim || b.u.cols() != b.u_domain().size()) {
      fail(field + ".U", "expected " + std::to_string(target_dim) + "x" + std::to_string(b.u_domain().size()));
    }
    if (b.v.rows() != target_dim || b.v.cols() != b.v_domain().size()) {
      fail(field + ".V", "expected " + std::to_string(target_dim) + "x" + std::to_string(b.v_domain().size()));
    }
    impl.blocks.push_back(std::move(b));
  }
  if (auto it = doc.find("certificate"); it != doc.end()) {
    if (!it->is_string()) fail("implementation.certificate", "expected a string");
    impl.certificate = it->get<std::string>();
  }
  if (auto it = doc.find("flags"); it != doc.end()) {
    if (!it->is_array()) fail("implementation.flags", "expected an array");
    for (const auto& f : *it) {
      if (!f.is_string()) fail("implementation.flags", "expected strings");
      impl.flags.push_back(f.get<std::string>());
    }
  }
  return impl;
}

Json implementation_to_json(const Implementation& impl) {
  Json blocks = Json::array();
  for (const auto& b : impl.blocks) {
    blocks.push_back(Json{{"coords_G", coords_to_json(b.g)},
                          {"coords_F", coords_to_json(b.f)},
                          {"mode", to_string(b.mode)},
                          {"U", matrix_to_json(b.u)},
                          {"V", matrix_to_json(b.v)}});
  }
  return Json{{"blocks", blocks}, {"certificate", impl.certificate}, {"flags", impl.flags}};
}

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_json(text.str(), path);
}

void write_json_file(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot write");
  out << doc.dump(2) << '\n';
}

}  // namespace cslrank
