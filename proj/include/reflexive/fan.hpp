#pragma once

// Rational polyhedral cones and fans, and per-cone singularity classification.

#include <cstddef>
#include <optional>
#include <vector>

#include "reflexive/kernels.hpp"
#include "reflexive/lattice.hpp"
#include "reflexive/polytope.hpp"

namespace reflexive {

struct Cone {
  std::vector<IntVector> rays;  // primitive generators
  std::size_t dim = 0;

  // Rays are reduced to primitive vectors; duplicates removed.
  static Cone from_rays(std::vector<IntVector> rays);
};

struct SingularityReport {
  std::size_t dim = 0;
  std::vector<IntVector> rays;  // extreme rays, primitive
  bool simplicial = false;
  bool q_gorenstein = false;  // a rational k with <k, ray> = 1 exists
  bool gorenstein = false;
  bool terminal = false;
  bool canonical = false;
  bool smooth = false;
  std::optional<IntVector> k_sigma;  // integral, ambient coordinates
};

// Throws NotStronglyConvex.
SingularityReport classify_cone(const Cone& c);

struct FanCone {
  std::vector<std::size_t> rays;  // sorted indices into Fan::rays()
  std::size_t dim = 0;
};

class Fan {
 public:
  Fan() = default;
  // Closes the maximal cones under taking faces and tests completeness.
  static Fan from_maximal_cones(std::size_t rank, std::vector<IntVector> rays,
                                std::vector<std::vector<std::size_t>> maximal);

  std::size_t rank() const { return rank_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  const std::vector<FanCone>& cones() const { return cones_; }
  // Indices into cones() of the given dimension (1 .. rank).
  const std::vector<std::size_t>& cones_of_dim(std::size_t k) const { return by_dim_.at(k); }
  std::vector<std::size_t> maximal_cones() const;
  Cone cone(std::size_t index) const;
  bool complete() const { return complete_; }

 private:
  std::size_t rank_ = 0;
  std::vector<IntVector> rays_;
  std::vector<FanCone> cones_;
  std::vector<std::vector<std::size_t>> by_dim_;
  std::vector<std::size_t> maximal_;
  bool complete_ = false;
};

// Cones over the proper faces of p. Throws OriginNotInterior.
Fan face_fan(const LatticePolytope& p);
// Inner normal cones of the faces of p.
Fan normal_fan(const LatticePolytope& p);

// Reports for the maximal cones, in cone order.
std::vector<SingularityReport> classify_fan(const Fan& f, kernels::Mode mode = kernels::default_mode());

// N / span(rays). Throws FanNotComplete.
AbelianQuotient fan_fundamental_group(const Fan& f);

// Throws FanNotComplete or NotGorenstein.
bool is_fano_gorenstein(const Fan& f);

// Pairwise facet sharing plus a deterministic random-direction test.
bool check_complete(std::size_t rank, const std::vector<IntVector>& rays,
                    const std::vector<std::vector<std::size_t>>& maximal);

}  // namespace reflexive
