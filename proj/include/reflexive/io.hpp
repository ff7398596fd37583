#pragma once

// Vertex matrix files and invariant reports.
//
// A vertex matrix file starts with a header "n v" followed by v rows of n
// integers (or, transposed, n rows of v integers). Lines whose first
// non-blank character is '#' are comments.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "reflexive/polytope.hpp"

namespace reflexive {

// Throws ParseError with "source:line:column: message".
std::vector<IntVector> parse_points(std::istream& in, bool transpose = false, const std::string& source = "<input>");
// Hull of the listed points. Throws ParseError or NotFullDimensional.
LatticePolytope parse_polytope(std::istream& in, bool transpose = false, const std::string& source = "<input>");
LatticePolytope read_polytope_file(const std::string& path, bool transpose = false);

std::string format_points(const std::vector<IntVector>& points, std::size_t dim);
std::string format_polytope(const LatticePolytope& p);

struct InvariantReport {
  std::size_t dim = 0;
  std::vector<IntVector> vertices;
  bool reflexive = false;
  std::size_t l = 0;
  std::size_t l_star = 0;
  Integer volume;
  std::vector<Integer> facet_degrees;  // normalized volume of each facet
  std::optional<Integer> h11;
  std::optional<Integer> h21;
  std::optional<Integer> h_n20;
  std::optional<Integer> picard_toric;
  std::optional<Integer> euler_cy3;
  std::optional<AbelianQuotient> pi1;  // fundamental group of the polytope
  std::vector<IntVector> dual_vertices;
  IntMatrix normal_form;

  friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

InvariantReport build_report(const LatticePolytope& p);

// JSON text; integers of unbounded size are decimal strings. Throws ParseError.
std::string report_to_json(const InvariantReport& r, int indent = 2);
InvariantReport report_from_json(const std::string& text);

// Aligned key/value table for terminals.
std::string format_report(const InvariantReport& r);

}  // namespace reflexive
