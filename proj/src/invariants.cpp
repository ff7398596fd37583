#include "reflexive/invariants.hpp"

#include "reflexive/error.hpp"

namespace reflexive {

namespace {

void require_reflexive(const LatticePolytope& p) {
  const auto check = is_reflexive(p);
  if (!check.reflexive) fail(ErrorKind::NotReflexive, check.reason);
}

void require_four(const LatticePolytope& p) {
  if (p.dim() < 4) fail(ErrorKind::DimensionBelowFour, "dimension " + std::to_string(p.dim()));
}

Integer facet_interior_sum(const LatticePolytope& p) {
  const auto& lat = p.face_lattice();
  const auto& pts = p.lattice_points();
  Integer sum = 0;
  for (auto id : lat.of_dim(p.dim() - 1)) sum += pts.face_interior[id];
  return sum;
}

// l(p) - n - 1 - sum over facets l*(F) + sum over codim-2 faces l*(T) l*(T*).
Integer h21_formula(const LatticePolytope& p, const LatticePolytope& q) {
  const std::size_t n = p.dim();
  const auto duals = dual_faces(p, q);
  const auto& lp = p.lattice_points();
  const auto& lq = q.lattice_points();
  Integer sum = Integer(static_cast<unsigned long>(lp.count())) - static_cast<unsigned long>(n) - 1;
  sum -= facet_interior_sum(p);
  for (auto id : p.face_lattice().of_dim(n - 2))
    sum += Integer(static_cast<unsigned long>(lp.face_interior[id])) *
           static_cast<unsigned long>(lq.face_interior[*duals[id]]);
  return sum;
}

Integer euler_sum(const LatticePolytope& p, const LatticePolytope& q) {
  const auto duals = dual_faces(p, q);
  Integer sum = 0;
  for (auto id : p.face_lattice().of_dim(1)) sum += p.face_volume(id) * q.face_volume(*duals[id]);
  for (auto id : p.face_lattice().of_dim(2)) sum -= p.face_volume(id) * q.face_volume(*duals[id]);
  return sum;
}

}  // namespace

Integer hodge_h21(const LatticePolytope& p) {
  require_four(p);
  require_reflexive(p);
  return h21_formula(p, reflexive_dual(p));
}

Integer hodge_h11(const LatticePolytope& p) {
  require_four(p);
  require_reflexive(p);
  const auto q = reflexive_dual(p);
  return h21_formula(q, p);
}

Integer picard_toric(const LatticePolytope& p) {
  require_reflexive(p);
  return Integer(static_cast<unsigned long>(reflexive_dual(p).lattice_points().count())) -
         static_cast<unsigned long>(p.dim()) - 1;
}

Integer hodge_h_n20(const LatticePolytope& p) {
  require_four(p);
  require_reflexive(p);
  return facet_interior_sum(p);
}

AffineInvariants affine_invariants(const LatticePolytope& p) {
  AffineInvariants out;
  out.euler = p.dim() % 2 == 1 ? p.volume() : Integer(-p.volume());
  if (p.dim() >= 4 && is_reflexive(p).reflexive)
    out.h21 = Integer(static_cast<unsigned long>(p.lattice_points().count())) -
              static_cast<unsigned long>(p.dim()) - 1 - facet_interior_sum(p);
  return out;
}

Integer euler_cy3(const LatticePolytope& p) {
  if (p.dim() != 4) fail(ErrorKind::DimensionNotFour, "dimension " + std::to_string(p.dim()));
  require_reflexive(p);
  const auto q = reflexive_dual(p);
  const Integer e = euler_sum(p, q);
  const Integer h11 = h21_formula(q, p), h21 = h21_formula(p, q);
  if (e != 2 * (h11 - h21))
    fail(ErrorKind::InvariantViolation,
         "Euler number " + e.get_str() + " disagrees with 2 (h11 - h21) = " + Integer(2 * (h11 - h21)).get_str());
  return e;
}

HodgeReport hodge_report(const LatticePolytope& p) {
  require_four(p);
  require_reflexive(p);
  const auto q = reflexive_dual(p);
  HodgeReport r;
  r.n = p.dim();
  r.h11 = h21_formula(q, p);
  r.h_n21 = h21_formula(p, q);
  r.h_n20 = facet_interior_sum(p);
  r.picard_toric = picard_toric(p);
  const auto affine = affine_invariants(p);
  r.affine_euler = affine.euler;
  r.affine_h21 = *affine.h21;
  if (r.n == 4) r.euler_cy3 = euler_cy3(p);
  return r;
}

MirrorReport mirror_report(const LatticePolytope& p) {
  if (p.dim() != 4) fail(ErrorKind::DimensionNotFour, "dimension " + std::to_string(p.dim()));
  MirrorReport m{hodge_report(p), hodge_report(reflexive_dual(p))};
  if (m.primal.h11 != m.dual.h_n21 || m.primal.h_n21 != m.dual.h11 || *m.primal.euler_cy3 != -*m.dual.euler_cy3)
    fail(ErrorKind::InvariantViolation, "mirror relations fail");
  return m;
}

}  // namespace reflexive
