#pragma once

// Hot loops with an OpenMP variant and a serial reference variant.
// The serial variants are the oracles for the parallel ones in the tests.

#include <cstddef>
#include <span>
#include <vector>

#include "reflexive/lattice.hpp"

namespace reflexive {

struct Facet;
class LatticePolytope;

namespace kernels {

enum class Mode { serial, parallel };

// 0 means the OpenMP default.
void set_thread_cap(int threads);
int thread_cap();

void set_default_mode(Mode mode);
Mode default_mode();

// Lattice points by fibre slicing along coordinate projections, lexicographic order.
std::vector<IntVector> enumerate_lattice_points(const LatticePolytope& p, Mode mode);

// Reference: bounding-box scan with facet rejection. Lexicographic order.
std::vector<IntVector> enumerate_lattice_points_bbox(const LatticePolytope& p);

// For every point the sorted list of facets it lies on.
std::vector<std::vector<std::size_t>> tight_facet_sets(std::span<const IntVector> points,
                                                       std::span<const Facet> facets, Mode mode);

}  // namespace kernels
}  // namespace reflexive
