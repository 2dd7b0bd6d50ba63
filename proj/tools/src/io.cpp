#include "torusinv_app/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace torusinv::app {

namespace {

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

[[noreturn]] void schema(const std::string& where, const std::string& why) {
  throw Error(ErrorCode::SchemaMismatch, where + ": " + why);
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InputParseError, path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::string msg = e.what();
    auto pos = msg.find("parse error");
    throw Error(ErrorCode::InputParseError,
                path + ":" + line_col(text, e.byte) + ": " + (pos == std::string::npos ? msg : msg.substr(pos)));
  }
}

Rational parse_rational_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (!j.is_string()) schema(where, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    schema(where, e.what());
  }
}

RatMatrix parse_matrix(const Json& j0, const std::string& where) {
  const Json& j = j0.is_object() && j0.contains("matrix") ? j0.at("matrix") : j0;
  std::string base = j0.is_object() ? where + "/matrix" : where;
  if (!j.is_array() || j.empty()) schema(base, "expected a non-empty array of rows");
  const std::size_t n = j.size();
  RatMatrix m(n, n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    std::string rowAt = base + "/" + std::to_string(i);
    if (!j[i].is_array() || j[i].size() != n) schema(rowAt, "expected a row of length " + std::to_string(n));
    for (std::size_t k = 0; k < n; ++k) m(i, k) = parse_rational_json(j[i][k], rowAt + "/" + std::to_string(k));
  }
  return m;
}

std::vector<std::vector<std::int64_t>> parse_int_matrix(const Json& j0, const std::string& where) {
  const Json& j = j0.is_object() && j0.contains("matrix") ? j0.at("matrix") : j0;
  if (!j.is_array()) schema(where, "expected an array of rows");
  std::vector<std::vector<std::int64_t>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string rowAt = where + "/" + std::to_string(i);
    if (!j[i].is_array()) schema(rowAt, "expected an array");
    std::vector<std::int64_t> row;
    for (std::size_t k = 0; k < j[i].size(); ++k) {
      const Json& x = j[i][k];
      if (x.is_number_integer()) {
        row.push_back(x.get<std::int64_t>());
      } else {
        Rational r = parse_rational_json(x, rowAt + "/" + std::to_string(k));
        if (!is_integer(r) || !r.get_num().fits_slong_p()) schema(rowAt + "/" + std::to_string(k), "expected an integer");
        row.push_back(r.get_num().get_si());
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

TorusFixture parse_fixture(const Json& j, const std::string& where) {
  if (!j.is_object()) schema(where, "fixture must be an object");
  if (!j.contains("f")) schema(where, "missing key \"f\"");
  const Json& f = j.at("f");
  if (!f.is_array() || f.size() < 2) schema(where + "/f", "expected a coefficient list of length >= 2");
  IntPoly poly;
  for (std::size_t k = 0; k < f.size(); ++k) {
    Rational c = parse_rational_json(f[k], where + "/f/" + std::to_string(k));
    if (!is_integer(c)) schema(where + "/f/" + std::to_string(k), "coefficients must be integers");
    poly.push_back(c.get_num());
  }
  std::optional<std::vector<std::string>> galois;
  if (j.contains("galois")) {
    const Json& g = j.at("galois");
    if (!g.is_array()) schema(where + "/galois", "expected an array of cycle strings");
    galois.emplace();
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (!g[k].is_string()) schema(where + "/galois/" + std::to_string(k), "expected a cycle string");
      galois->push_back(g[k].get<std::string>());
    }
  }
  std::optional<std::vector<RatMatrix>> order;
  if (j.contains("order_basis")) {
    const Json& o = j.at("order_basis");
    if (!o.is_array()) schema(where + "/order_basis", "expected an array of matrices");
    order.emplace();
    for (std::size_t k = 0; k < o.size(); ++k)
      order->push_back(parse_matrix(o[k], where + "/order_basis/" + std::to_string(k)));
  }
  return build_fixture(poly, galois, order);
}

Json matrix_to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_string(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k) out << ',';
    out << csv_field(fields[k]);
  }
  out << "\r\n";
}

std::string csv_header_comment(std::uint64_t seed) {
  return std::string("# torusinv ") + kToolVersion + " seed=" + std::to_string(seed);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace torusinv::app
