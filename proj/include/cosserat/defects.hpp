#pragma once

#include "cosserat/analytic.hpp"
#include "cosserat/strain.hpp"

namespace cosserat {

/// Dislocation density T and disclination density Omega, packaged as the
/// motor-valued incompatibility 2-form J (translational part T, rotational
/// part Omega) in the contraction basis.
struct DefectDensity {
  SmoothForm<Motor> j;

  explicit DefectDensity(const BodyGrid& g) : j(g, 2) {}
  explicit DefectDensity(SmoothForm<Motor> form) : j(std::move(form)) {
    if (j.degree() != 2) throw ValidationError("DefectDensity: expects a 2-form");
  }

  const BodyGrid& grid() const { return j.grid(); }
  double norm_inf() const { return j.norm_inf(); }

  /// Component with explicit antisymmetric form pair (a, b) and value v.
  double dislocation(int a, int b, int v, int i, int jj, int k) const {
    return component(a, b, i, jj, k).u[v];
  }
  double disclination(int a, int b, int v, int i, int jj, int k) const {
    return component(a, b, i, jj, k).phi[v];
  }

  Motor component(int a, int b, int i, int jj, int k) const {
    if (a == b) return Motor();
    const int slot = 3 - a - b;
    const auto [s1, s2] = axis_cycle(slot);
    const double sign = (a == s1 && b == s2) ? 1.0 : -1.0;
    return j.at(i, jj, k, slot) * sign;
  }
};

/// Incompatibility of a strain state, evaluated with the explicit
/// coordinate stencils. Agrees componentwise with the covariant derivative
/// of the motor-form encoding.
DefectDensity strain_incompatibility(const StrainState& e);

/// Sup-norm of D J, zero for any J in the image of the covariant derivative.
double bianchi_residual(const DefectDensity& J);

/// A Cartan connection in the identity trivialization: a motor-valued
/// 1-form whose translational block (the coframe) must be pointwise
/// invertible.
struct CartanConnection {
  SmoothForm<Motor> form;

  explicit CartanConnection(SmoothForm<Motor> f, double det_floor = 1e-8);
  static CartanConnection flat(const BodyGrid& g) {
    return CartanConnection(FlatConnection::smooth(g));
  }

  const BodyGrid& grid() const { return form.grid(); }
};

/// Curvature Theta = d eta + eta ^ eta of a Cartan connection.
SmoothForm<Motor> cartan_curvature(const CartanConnection& eta);

/// Residual of the finite compatibility identity for E = psi* omega - eta:
/// the full structure defect d(E + eta) + (E + eta) ^ (E + eta), whose
/// expansion is D_eta E + Theta plus the quadratic term E ^ E.
double finite_compatibility_residual(const StrainState& E, const CartanConnection& eta);

/// Transport of a motor to the origin frame from an anchor point (the von
/// Mises shift (u, phi) -> (u + t x phi, phi)). Circuit sums anchor each
/// edge value at the edge midpoint, which keeps the telescoping Stokes
/// identity exact and the line integral second-order accurate.
inline Motor transport_to_origin(const Vec3& base, const Motor& m) {
  return Motor(m.u + base.cross(m.phi), m.phi);
}
inline Motor transport_from_origin(const Vec3& base, const Motor& m) {
  return Motor(m.u - base.cross(m.phi), m.phi);
}

struct CircuitReport {
  Motor circuit;  ///< transported circuit integral of the strain cochain
  Motor flux;     ///< transported defect flux through the cap
};

/// Burgers/Frank motor of the defects enclosed by a loop: circuit integral
/// of the strain 1-cochain with values transported to the origin frame,
/// and the matching defect flux through a cap with boundary equal to the
/// loop. The two agree exactly by discrete Stokes.
CircuitReport burgers_circuit(const Cochain<Motor>& e, const Chain& loop, const Chain& cap);

/// Signed boundary of a 2-chain, with interior edges cancelled.
Chain chain_boundary(const BodyGrid& g, int degree, const Chain& chain);

/// Strain cochain of a straight defect line threading the grid along the
/// z axis at dual position (i0 + 1/2, j0 + 1/2), carrying the Burgers/Frank
/// motor mu per crossing. Its transported covariant coboundary is exactly
/// mu on the column of z-faces above (i0, j0) and zero elsewhere.
Cochain<Motor> defect_line(const BodyGrid& g, int i0, int j0, const Motor& mu);

/// Rectangular cap of z-normal faces at level k, spanning cells
/// [i0, i1) x [j0, j1), plus its boundary loop.
std::pair<Chain, Chain> rect_loop_and_cap(const BodyGrid& g, int k, int i0, int i1, int j0,
                                          int j1);

}  // namespace cosserat
