#ifndef CSLRANK_IO_HPP
#define CSLRANK_IO_HPP

#include <string>

#include <json.hpp>

#include "cslrank/lattice.hpp"
#include "cslrank/reconstruct.hpp"
#include "cslrank/rankmap.hpp"

namespace cslrank {

// JSON documents for lattices, maps and implementations. Coordinates are
// 1-based in files; scalars use the Scalar text format (integers may also
// be given as JSON numbers). Every parse failure is an InputError naming
// the offending field, e.g. "images[2].to[0][1]: malformed scalar 'x'".

using Json = nlohmann::json;

// { "n": 4, "generators": [[1],[3],[1,2,3],[1,3,4]] }, closed on load.
SubspaceLattice lattice_from_json(const Json& doc);
// Writes every proper nontrivial element as a generator.
Json lattice_to_json(const SubspaceLattice& lattice);

MapSpec map_from_json(const Json& doc);
Json map_to_json(const MapSpec& spec);

// Block shapes are checked against the given dimensions.
Implementation implementation_from_json(const Json& doc, std::size_t source_dim, std::size_t target_dim);
Json implementation_to_json(const Implementation& impl);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& doc, const std::string& field);

// Parses text, reporting syntax errors with line and column.
Json parse_json(const std::string& text, const std::string& origin);
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& doc);

}  // namespace cslrank

#endif  // CSLRANK_IO_HPP
