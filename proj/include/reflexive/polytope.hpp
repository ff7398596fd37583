#pragma once

// Full-dimensional lattice polytopes with exact V- and H-representations,
// polar duality, face lattices, lattice points, volumes and normal forms.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "reflexive/lattice.hpp"

namespace reflexive {

// Inequality <x, normal> >= -offset with a primitive normal.
struct Facet {
  IntVector normal;
  Integer offset;
  friend bool operator==(const Facet&, const Facet&) = default;
};

struct Face {
  std::size_t id = 0;
  std::size_t dim = 0;
  std::vector<std::size_t> vertices;  // sorted indices into the polytope's vertices
  std::vector<std::size_t> facets;    // sorted indices of the facets containing the face
  std::vector<std::size_t> children;  // faces of dimension dim - 1
  std::vector<std::size_t> parents;   // faces of dimension dim + 1
};

class FaceLattice {
 public:
  FaceLattice() = default;
  FaceLattice(std::vector<Face> faces, std::size_t dim);

  std::size_t dim() const { return dim_; }
  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(std::size_t id) const { return faces_.at(id); }
  const std::vector<std::size_t>& of_dim(std::size_t k) const { return by_dim_.at(k); }
  // Number of faces in dimensions 0 .. dim-1.
  std::vector<std::size_t> f_vector() const;
  // The polytope itself.
  std::size_t top() const { return by_dim_.at(dim_).front(); }
  std::optional<std::size_t> find_by_vertices(const std::vector<std::size_t>& vertices) const;
  std::optional<std::size_t> find_by_facets(const std::vector<std::size_t>& facets) const;

 private:
  std::vector<Face> faces_;
  std::vector<std::vector<std::size_t>> by_dim_;
  std::map<std::vector<std::size_t>, std::size_t> by_vertices_;
  std::map<std::vector<std::size_t>, std::size_t> by_facets_;
  std::size_t dim_ = 0;
};

struct LatticePoints {
  std::vector<IntVector> points;        // lexicographic order
  std::vector<std::size_t> carrier;     // smallest face containing each point
  std::vector<std::size_t> face_interior;  // per face id: lattice points in its relative interior
  std::size_t interior = 0;             // points strictly inside every facet

  std::size_t count() const { return points.size(); }
};

class LatticePolytope {
 public:
  LatticePolytope() = default;

  // Irredundant convex hull. Throws NotFullDimensional.
  static LatticePolytope hull(std::span<const IntVector> points);
  // Builds from both representations; they are cross-checked.
  static LatticePolytope from_representations(std::vector<IntVector> vertices, std::vector<Facet> facets);

  std::size_t dim() const { return dim_; }
  const std::vector<IntVector>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  IntMatrix vertex_matrix() const { return IntMatrix::from_rows(vertices_, dim_); }

  bool contains(std::span<const Integer> x) const;
  bool has_interior_origin() const;
  // Indices of facets with <x, normal> = -offset.
  std::vector<std::size_t> tight_facets(std::span<const Integer> x) const;

  // Cached, computed at most once; safe to call concurrently.
  const FaceLattice& face_lattice() const;
  const LatticePoints& lattice_points() const;
  const Integer& volume() const;
  const IntMatrix& normal_form() const;

  // Normalized volume of a face relative to the lattice of its affine span.
  Integer face_volume(std::size_t face_id) const;
  // Lattice points lying on a face (relative interior and boundary).
  std::vector<IntVector> face_points(std::size_t face_id) const;
  std::size_t face_point_count(std::size_t face_id) const;
  // Simplices (vertex index lists) of the pulling triangulation of a face.
  std::vector<std::vector<std::size_t>> pulling_triangulation(std::size_t face_id) const;

  friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) {
    return a.vertices_ == b.vertices_;
  }

 private:
  struct Cache;

  std::size_t dim_ = 0;
  std::vector<IntVector> vertices_;
  std::vector<Facet> facets_;
  std::shared_ptr<Cache> cache_;
};

struct RationalPolytope {
  std::size_t dim = 0;
  std::vector<RatVector> vertices;
  // Inequalities <y, normals[i]> >= -offsets[i].
  std::vector<IntVector> normals;
  std::vector<Rational> offsets;
};

LatticePolytope hull(std::span<const IntVector> points);

// Extreme rays of the pointed cone { y : <c, y> >= 0 for every constraint c }.
// The constraints must span Q^dim. Rays are primitive and sorted.
std::vector<IntVector> cone_extreme_rays(std::span<const IntVector> constraints, std::size_t dim);

// Throws OriginNotInterior. Returns a LatticePolytope exactly when p is reflexive;
// its vertex i is then facet normal i of p, and its facet j comes from vertex j of p.
std::variant<LatticePolytope, RationalPolytope> polar_dual(const LatticePolytope& p);
// Polar dual of a reflexive polytope; throws NotReflexive otherwise.
LatticePolytope reflexive_dual(const LatticePolytope& p);

struct ReflexivityCheck {
  bool reflexive = false;
  std::optional<std::size_t> witness_facet;  // a facet at distance != 1
  std::string reason;
};
ReflexivityCheck is_reflexive(const LatticePolytope& p);

// |c - <point, normal>| for the hyperplane <x, normal> = c. Throws NonPrimitiveNormal.
Integer integral_distance(std::span<const Integer> normal, const Integer& c, std::span<const Integer> point);

const LatticePoints& lattice_points(const LatticePolytope& p);
const Integer& normalized_volume(const LatticePolytope& p);
Integer normalized_volume(const LatticePolytope& p, std::size_t face_id);
const FaceLattice& face_lattice(const LatticePolytope& p);

// For reflexive p with dual q = reflexive_dual(p): the face of q dual to each face of p
// (the top face maps to nothing).
std::vector<std::optional<std::size_t>> dual_faces(const LatticePolytope& p, const LatticePolytope& q);

// Lexicographically minimal column-major Hermite form of the n x v vertex matrix
// over all vertex orderings: equal iff the polytopes are GL(n,Z)-equivalent.
const IntMatrix& normal_form(const LatticePolytope& p);
IntMatrix compute_normal_form(std::span<const IntVector> vertices, std::size_t dim);
// Vertices read back from a normal form (its columns).
std::vector<IntVector> normal_form_vertices(const IntMatrix& nf);

// Total order on matrices: shape first, then entries row-major.
bool matrix_less(const IntMatrix& a, const IntMatrix& b);

// Normalized volume of the simplex with the given vertices relative to the lattice
// of its affine span.
Integer simplex_volume(std::span<const IntVector> vertices);

}  // namespace reflexive
