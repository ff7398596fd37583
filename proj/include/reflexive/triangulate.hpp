#pragma once

// Regular fine triangulations of point configurations and MPCP refinements of
// the face fans of reflexive polytopes.

#include <cstddef>
#include <optional>
#include <vector>

#include "reflexive/fan.hpp"
#include "reflexive/polytope.hpp"

namespace reflexive {

struct PointConfig {
  std::vector<IntVector> points;  // distinct, lexicographic order
  bool admissible = true;         // contains every vertex of the target polytope

  static PointConfig from_points(std::vector<IntVector> points);
  // Admissible iff every vertex of target is listed and every point lies in target.
  static PointConfig for_polytope(std::vector<IntVector> points, const LatticePolytope& target);
  static PointConfig all_lattice_points(const LatticePolytope& p);

  std::size_t index_of(std::span<const Integer> x) const;  // throws if absent
};

struct Triangulation {
  PointConfig config;
  std::vector<std::vector<std::size_t>> simplices;  // sorted point indices
  std::optional<std::vector<Rational>> heights;     // lifting certificate

  std::size_t dim() const { return simplices.empty() ? 0 : simplices.front().size() - 1; }
};

// Placing triangulation in lexicographic order; every point is used. Heights
// t^i (point i in insertion order) certify regularity. Throws NotAdmissible.
Triangulation regular_fine_triangulation(const PointConfig& cfg);

// Throws MalformedTriangulation on overlaps, gaps or degenerate simplices.
void check_well_formed(const Triangulation& t);

// Strict convexity of the lift across every interior wall, in exact arithmetic.
bool check_heights(const Triangulation& t, std::span<const Rational> heights);

struct RegularityResult {
  bool regular = false;
  std::optional<std::vector<Rational>> heights;
};

// Uses the attached heights when they certify; otherwise solves the exact LP
// maximizing the wall margin. Throws MalformedTriangulation.
RegularityResult verify_regularity(const Triangulation& t);

// Normalized volume of each simplex, relative to the lattice of the affine span.
std::vector<Integer> simplex_volumes(const Triangulation& t);

struct MpcpResult {
  Fan fan;
  std::vector<SingularityReport> reports;  // per maximal cone, in fan order
  Triangulation triangulation;             // of all lattice points of p
};

// Simplicial refinement of face_fan(p) with rays the boundary lattice points of p.
// Throws NotReflexive.
MpcpResult mpcp_fan(const LatticePolytope& p);

// Elementary simplices in a maximal triangulation of a face of dimension <= 2.
// Throws DimensionTooHigh.
std::size_t count_elementary(const LatticePolytope& p, std::size_t face_id);

}  // namespace reflexive
