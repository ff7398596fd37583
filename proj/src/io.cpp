#include "reflexive/io.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

#include "reflexive/error.hpp"
#include "reflexive/invariants.hpp"
#include "reflexive/pairs.hpp"

namespace reflexive {

using Json = nlohmann::ordered_json;

namespace {

struct Token {
  std::string text;
  std::size_t line = 0, column = 0;
};

[[noreturn]] void parse_error(const std::string& source, std::size_t line, std::size_t column, const std::string& msg) {
  fail(ErrorKind::ParseError, source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + msg);
}

Integer parse_integer(const Token& t, const std::string& source) {
  Integer x;
  const std::string& s = t.text;
  const std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size() || s.find_first_not_of("0123456789", start) != std::string::npos)
    parse_error(source, t.line, t.column, "expected an integer, found '" + s + "'");
  x.set_str(s[0] == '+' ? s.substr(1) : s, 10);
  return x;
}

std::vector<std::vector<Token>> token_lines(std::istream& in) {
  std::vector<std::vector<Token>> lines;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::vector<Token> toks;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i >= line.size()) break;
      if (line[i] == '#' && toks.empty()) break;
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      toks.push_back({line.substr(start, i - start), number, start + 1});
    }
    if (!toks.empty()) lines.push_back(std::move(toks));
  }
  return lines;
}

Json integer_json(const Integer& x) { return x.get_str(); }

Integer integer_from(const Json& j) {
  if (!j.is_string()) fail(ErrorKind::ParseError, "expected a decimal string");
  Integer x;
  if (x.set_str(j.get<std::string>(), 10) != 0) fail(ErrorKind::ParseError, "malformed integer " + j.dump());
  return x;
}

Json vector_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(integer_json(x));
  return a;
}

IntVector vector_from(const Json& j) {
  IntVector v;
  for (const auto& x : j) v.push_back(integer_from(x));
  return v;
}

Json rows_json(const std::vector<IntVector>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) a.push_back(vector_json(r));
  return a;
}

std::vector<IntVector> rows_from(const Json& j) {
  std::vector<IntVector> out;
  for (const auto& r : j) out.push_back(vector_from(r));
  return out;
}

Json optional_json(const std::optional<Integer>& x) { return x ? integer_json(*x) : Json(nullptr); }

std::optional<Integer> optional_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return integer_from(j);
}

}  // namespace

std::vector<IntVector> parse_points(std::istream& in, bool transpose, const std::string& source) {
  const auto lines = token_lines(in);
  if (lines.empty()) parse_error(source, 1, 1, "missing header 'n v'");
  const auto& header = lines.front();
  if (header.size() != 2)
    parse_error(source, header.front().line, header.front().column, "header must be 'n v' (dimension, point count)");
  const Integer n = parse_integer(header[0], source), v = parse_integer(header[1], source);
  if (n <= 0 || !n.fits_uint_p()) parse_error(source, header[0].line, header[0].column, "dimension must be positive");
  if (v <= 0 || !v.fits_uint_p()) parse_error(source, header[1].line, header[1].column, "point count must be positive");
  const std::size_t dim = n.get_ui(), count = v.get_ui();
  const std::size_t rows = transpose ? dim : count, cols = transpose ? count : dim;

  if (lines.size() - 1 != rows) {
    const auto& where = lines.size() - 1 > rows ? lines[rows + 1].front() : lines.back().back();
    parse_error(source, where.line, where.column,
                "header announces " + std::to_string(rows) + " rows, found " + std::to_string(lines.size() - 1));
  }
  std::vector<IntVector> table;
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& toks = lines[r + 1];
    if (toks.size() != cols)
      parse_error(source, toks.front().line, toks.front().column,
                  "expected " + std::to_string(cols) + " integers, found " + std::to_string(toks.size()));
    IntVector row;
    for (const auto& t : toks) row.push_back(parse_integer(t, source));
    table.push_back(std::move(row));
  }
  if (!transpose) return table;
  std::vector<IntVector> points(count, IntVector(dim));
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < count; ++c) points[c][r] = table[r][c];
  return points;
}

LatticePolytope parse_polytope(std::istream& in, bool transpose, const std::string& source) {
  return hull(parse_points(in, transpose, source));
}

LatticePolytope read_polytope_file(const std::string& path, bool transpose) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, path + ": cannot open file");
  return parse_polytope(in, transpose, path);
}

std::string format_points(const std::vector<IntVector>& points, std::size_t dim) {
  std::ostringstream os;
  os << dim << ' ' << points.size() << '\n';
  for (const auto& p : points) {
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << p[i];
    os << '\n';
  }
  return os.str();
}

std::string format_polytope(const LatticePolytope& p) { return format_points(p.vertices(), p.dim()); }

InvariantReport build_report(const LatticePolytope& p) {
  InvariantReport r;
  r.dim = p.dim();
  r.vertices = p.vertices();
  r.reflexive = is_reflexive(p).reflexive;
  const auto& lp = p.lattice_points();
  r.l = lp.count();
  r.l_star = lp.interior;
  r.volume = p.volume();
  for (auto id : p.face_lattice().of_dim(p.dim() - 1)) r.facet_degrees.push_back(p.face_volume(id));
  r.normal_form = p.normal_form();
  if (!r.reflexive) return r;
  r.picard_toric = picard_toric(p);
  r.pi1 = polytope_fundamental_group(p).group;
  r.dual_vertices = reflexive_dual(p).vertices();
  if (r.dim >= 4) {
    const auto h = hodge_report(p);
    r.h11 = h.h11;
    r.h21 = h.h_n21;
    r.h_n20 = h.h_n20;
    r.euler_cy3 = h.euler_cy3;
  }
  return r;
}

std::string report_to_json(const InvariantReport& r, int indent) {
  Json j;
  j["schema"] = "reflexive-report/1";
  j["dim"] = std::to_string(r.dim);
  j["vertices"] = rows_json(r.vertices);
  j["reflexive"] = r.reflexive;
  j["l"] = std::to_string(r.l);
  j["l_star"] = std::to_string(r.l_star);
  j["volume"] = integer_json(r.volume);
  Json degrees = Json::array();
  for (const auto& d : r.facet_degrees) degrees.push_back(integer_json(d));
  j["facet_degrees"] = degrees;
  j["h11"] = optional_json(r.h11);
  j["h21"] = optional_json(r.h21);
  j["h_n20"] = optional_json(r.h_n20);
  j["picard_toric"] = optional_json(r.picard_toric);
  j["euler_cy3"] = optional_json(r.euler_cy3);
  if (r.pi1) {
    Json factors = Json::array();
    for (const auto& f : r.pi1->invariant_factors) factors.push_back(integer_json(f));
    j["pi1"] = Json{{"factors", factors}, {"order", integer_json(r.pi1->order())}};
  } else {
    j["pi1"] = nullptr;
  }
  j["dual_vertices"] = rows_json(r.dual_vertices);
  j["normal_form"] = rows_json(r.normal_form.row_vectors());
  return j.dump(indent);
}

namespace {

std::size_t count_from(const Json& j) {
  const auto x = integer_from(j);
  if (sgn(x) < 0 || !x.fits_ulong_p()) fail(ErrorKind::ParseError, "count out of range: " + x.get_str());
  return x.get_ui();
}

}  // namespace

InvariantReport report_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("report is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("schema") != "reflexive-report/1") fail(ErrorKind::ParseError, "unknown report schema");
    InvariantReport r;
    r.dim = count_from(j.at("dim"));
    r.vertices = rows_from(j.at("vertices"));
    r.reflexive = j.at("reflexive").get<bool>();
    r.l = count_from(j.at("l"));
    r.l_star = count_from(j.at("l_star"));
    r.volume = integer_from(j.at("volume"));
    for (const auto& d : j.at("facet_degrees")) r.facet_degrees.push_back(integer_from(d));
    r.h11 = optional_from(j.at("h11"));
    r.h21 = optional_from(j.at("h21"));
    r.h_n20 = optional_from(j.at("h_n20"));
    r.picard_toric = optional_from(j.at("picard_toric"));
    r.euler_cy3 = optional_from(j.at("euler_cy3"));
    if (!j.at("pi1").is_null()) {
      AbelianQuotient q;
      for (const auto& f : j.at("pi1").at("factors")) q.invariant_factors.push_back(integer_from(f));
      r.pi1 = q;
    }
    r.dual_vertices = rows_from(j.at("dual_vertices"));
    const auto nf = rows_from(j.at("normal_form"));
    r.normal_form = IntMatrix::from_rows(nf, nf.empty() ? 0 : nf.front().size());
    return r;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("malformed report: ") + e.what());
  }
}

std::string format_report(const InvariantReport& r) {
  std::ostringstream os;
  auto row = [&](const std::string& key, const std::string& value) {
    os << std::left << std::setw(15) << key << value << '\n';
  };
  auto opt = [](const std::optional<Integer>& x) { return x ? x->get_str() : std::string("-"); };
  row("dim", std::to_string(r.dim));
  row("vertices", std::to_string(r.vertices.size()));
  row("reflexive", r.reflexive ? "yes" : "no");
  row("l", std::to_string(r.l));
  row("l*", std::to_string(r.l_star));
  row("volume", r.volume.get_str());
  std::string degrees;
  for (const auto& d : r.facet_degrees) degrees += (degrees.empty() ? "" : " ") + d.get_str();
  row("facet degrees", degrees);
  row("h11", opt(r.h11));
  row("h21", opt(r.h21));
  row("h_n20", opt(r.h_n20));
  row("picard toric", opt(r.picard_toric));
  row("euler cy3", opt(r.euler_cy3));
  row("pi1", r.pi1 ? r.pi1->to_string() + " (order " + r.pi1->order().get_str() + ")" : "-");
  return os.str();
}

}  // namespace reflexive
