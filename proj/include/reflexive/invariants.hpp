#pragma once

// Hodge numbers, Picard numbers and Euler characteristics of Calabi-Yau
// hypersurfaces, read off the face lattices of a reflexive polytope and its dual.

#include <cstddef>
#include <optional>

#include "reflexive/polytope.hpp"

namespace reflexive {

struct HodgeReport {
  std::size_t n = 0;
  Integer h11;
  Integer h_n21;  // h^{n-2,1}
  Integer h_n20;  // h^{n-2,0}
  Integer picard_toric;
  Integer affine_euler;
  Integer affine_h21;
  std::optional<Integer> euler_cy3;  // n = 4 only
};

// All of these throw NotReflexive where reflexivity is required, and
// DimensionBelowFour where the formula needs n >= 4.
Integer hodge_h21(const LatticePolytope& p);
Integer hodge_h11(const LatticePolytope& p);
Integer picard_toric(const LatticePolytope& p);
Integer hodge_h_n20(const LatticePolytope& p);

struct AffineInvariants {
  Integer euler;
  std::optional<Integer> h21;  // reflexive and n >= 4 only
};
AffineInvariants affine_invariants(const LatticePolytope& p);

// Alternating sum over edges and 2-faces, cross-checked against 2 (h11 - h21).
// Throws DimensionNotFour.
Integer euler_cy3(const LatticePolytope& p);

HodgeReport hodge_report(const LatticePolytope& p);

struct MirrorReport {
  HodgeReport primal;
  HodgeReport dual;
};
// Both sides computed independently; mirror relations are asserted.
MirrorReport mirror_report(const LatticePolytope& p);

}  // namespace reflexive
