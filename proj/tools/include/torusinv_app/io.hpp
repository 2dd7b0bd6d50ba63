#pragma once

#include "torusinv/pgl2.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace torusinv::app {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";

// Reads and parses a JSON file; errors carry "path:line:col".
Json load_json_file(const std::string& path);

// Matrices are row-major arrays of "p/q" strings (integers also accepted),
// optionally wrapped as {"matrix": [...]}.
RatMatrix parse_matrix(const Json& j, const std::string& where);
std::vector<std::vector<std::int64_t>> parse_int_matrix(const Json& j, const std::string& where);
Rational parse_rational_json(const Json& j, const std::string& where);

// {"f": [c0, ..., 1], "galois": [...], "order_basis": [matrix, ...]}
TorusFixture parse_fixture(const Json& j, const std::string& where);

Json matrix_to_json(const RatMatrix& m);

// RFC 4180 field quoting.
std::string csv_field(const std::string& s);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);
std::string csv_header_comment(std::uint64_t seed);

std::string format_double(double x);

}  // namespace torusinv::app
