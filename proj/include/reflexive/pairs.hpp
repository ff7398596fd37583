#pragma once

// Reflexive pairs (polytope, lattice), their minimal and maximal lattices,
// finite morphisms, fundamental groups, and reflexive simplices with their
// weight systems.

#include <cstddef>
#include <vector>

#include "reflexive/lattice.hpp"
#include "reflexive/polytope.hpp"

namespace reflexive {

// Full-rank lattice spanned by the rows of basis / denominator in ambient Q^n.
struct Lattice {
  IntMatrix basis;
  Integer denominator = 1;

  static Lattice standard(std::size_t n);
  // Hermite basis with the denominator reduced; equal lattices compare equal.
  Lattice normalized() const;
  bool contains(std::span<const Integer> ambient) const;
  // Coordinates of an ambient point in the basis. Throws NotInLattice.
  IntVector coordinates(std::span<const Integer> ambient) const;
  friend bool operator==(const Lattice& a, const Lattice& b);
};

// Z^n-rank quotient outer / inner. Throws NotInLattice if inner is not contained.
AbelianQuotient lattice_index(const Lattice& outer, const Lattice& inner);

struct ReflexivePair {
  LatticePolytope polytope;  // ambient integer coordinates
  Lattice lattice;

  // Throws NotInLattice or NotReflexive.
  static ReflexivePair make(LatticePolytope polytope, Lattice lattice);
  // The polytope written in lattice coordinates.
  LatticePolytope in_lattice_coordinates() const;
};

// (polytope*, N) written in the coordinates of the dual basis of the pair's lattice.
ReflexivePair dual_pair(const ReflexivePair& pair);

struct Sublattice {
  Lattice lattice;
  Integer index;
  AbelianQuotient quotient;
};
Sublattice vertex_sublattice(const ReflexivePair& pair);

ReflexivePair minimal_pair(const ReflexivePair& pair);
ReflexivePair maximal_pair(const ReflexivePair& pair);

// N / (span of the dual vertices).
AbelianQuotient pair_fundamental_group(const ReflexivePair& pair);

struct FundamentalGroup {
  AbelianQuotient group;
  Integer order;
};
// Maximal over minimal lattice of the dual; throws NotReflexive.
FundamentalGroup polytope_fundamental_group(const LatticePolytope& p);

struct MorphismInfo {
  Integer degree;
  AbelianQuotient cokernel;  // target lattice modulo the image
};
// map takes lattice coordinates of `from` to lattice coordinates of `to` (x -> x * map).
// Throws NotAMorphism.
MorphismInfo morphism_check(const IntMatrix& map, const ReflexivePair& from, const ReflexivePair& to);

struct WeightSystem {
  std::vector<Integer> weights;
  std::vector<Integer> degrees;  // b_ii + 1
  Integer total_degree;          // sum of weights, the lcm of the degrees
  IntMatrix b;                   // <p_i, l_j>; vertex order of the polytope
};
// Throws NotASimplex or NotReflexive.
WeightSystem simplex_weights(const LatticePolytope& p);

// Simplex with vertices the rows of diag(d) - 1, in a Hermite basis of the kernel
// lattice of the weights; the lattice is the standard one of those coordinates.
// Throws DegreesNotUnit.
ReflexivePair weighted_simplex(std::span<const Integer> degrees);

// Nondecreasing (d_0, ..., d_n) with sum 1/d_i = 1.
std::vector<std::vector<Integer>> enumerate_degree_tuples(std::size_t n);

struct FermatGroup {
  AbelianQuotient group;
  Integer order;
};
// The lattice quotient on the weighted simplex and the character-kernel count are
// computed independently and must agree. Throws DegreesNotUnit.
FermatGroup fermat_group(std::span<const Integer> degrees);
// The character-kernel computation alone.
AbelianQuotient fermat_character_kernel(std::span<const Integer> degrees);

// Throws NotASimplex.
bool is_selfdual_simplex(const LatticePolytope& p);

}  // namespace reflexive
