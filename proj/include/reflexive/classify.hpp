#pragma once

// Classification of reflexive polytopes of small dimension up to GL(n, Z).

#include <cstddef>
#include <vector>

#include "reflexive/polytope.hpp"

namespace reflexive {

struct ReflexiveClass {
  IntMatrix normal_form;
  LatticePolytope polytope;  // vertices read back from the normal form
  std::size_t points = 0;
  std::size_t interior_points = 0;
  std::size_t boundary_points = 0;
  Integer volume;
  std::size_t dual = 0;  // index of the class of the polar dual
};

struct ClassificationResult {
  std::size_t dim = 0;
  std::vector<ReflexiveClass> classes;  // sorted by normal form
};

struct EnumerateOptions {
  // Dimension 3 is a heuristic search that takes a long time; off by default.
  bool allow_long_running = false;
  long box = 0;  // coordinate bound of the search box; 0 picks the default for the dimension
};

// Throws UnsupportedDimension.
ClassificationResult enumerate_reflexive(std::size_t dim, const EnumerateOptions& options = {});

// Classes from an explicit list of reflexive polytopes, deduplicated and closed
// under duality checks. Throws NotReflexive or InvariantViolation.
ClassificationResult classify_polytopes(const std::vector<LatticePolytope>& polytopes);

struct CatalogRow {
  std::size_t index = 0;
  std::size_t points = 0;
  std::size_t interior_points = 0;
  std::size_t boundary_points = 0;
  Integer volume;
  Integer facet_volume_sum;  // equals volume for reflexive input
  Integer pi1_order;
  std::size_t dual = 0;
  bool self_dual = false;
};

std::vector<CatalogRow> catalog_invariants(const ClassificationResult& result);

}  // namespace reflexive
