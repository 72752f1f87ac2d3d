#include "cosserat/defects.hpp"

#include <map>

namespace cosserat {

DefectDensity strain_incompatibility(const StrainState& e) {
  const BodyGrid& g = e.grid();
  DefectDensity out(g);

  // first derivatives of every strain component
  std::array<GridField<Mat3>, 3> deps{fd_derivative(e.eps, 0), fd_derivative(e.eps, 1),
                                      fd_derivative(e.eps, 2)};
  std::array<GridField<Mat3>, 3> dtau{fd_derivative(e.tau, 0), fd_derivative(e.tau, 1),
                                      fd_derivative(e.tau, 2)};

  for (int slot = 0; slot < 3; ++slot) {
    const auto [b, c] = axis_cycle(slot);
    for (int v = 0; v < e.eps.size(); ++v) {
      Motor m;
      for (int val = 0; val < 3; ++val) {
        // T on the dx_b ^ dx_c pair: d_b eps_cj - d_c eps_bj
        //   + eps_{c j l} tau_{b l} - eps_{b j l} tau_{c l}
        double t = deps[b][v](c, val) - deps[c][v](b, val);
        for (int l = 0; l < 3; ++l) {
          t += levi_civita(c, val, l) * e.tau[v](b, l);
          t -= levi_civita(b, val, l) * e.tau[v](c, l);
        }
        m.u[val] = t;
        m.phi[val] = dtau[b][v](c, val) - dtau[c][v](b, val);
      }
      out.j.comp(slot)[v] = m;
    }
  }
  return out;
}

double bianchi_residual(const DefectDensity& J) {
  return covariant_d(J.j, FlatConnection::smooth(J.grid())).norm_inf();
}

CartanConnection::CartanConnection(SmoothForm<Motor> f, double det_floor) : form(std::move(f)) {
  if (form.degree() != 1) throw ValidationError("CartanConnection: expects a 1-form");
  const int nv = form.grid().num_vertices();
  for (int v = 0; v < nv; ++v) {
    Mat3 coframe;
    for (int slot = 0; slot < 3; ++slot) coframe.row(slot) = form.comp(slot)[v].u.transpose();
    if (std::abs(coframe.determinant()) <= det_floor)
      throw ValidationError("CartanConnection: coframe is singular");
  }
}

SmoothForm<Motor> cartan_curvature(const CartanConnection& eta) {
  auto theta = as_aff(exterior_d(eta.form));
  theta += wedge(as_aff(eta.form), as_aff(eta.form), mul_aff);
  return as_motor(theta);
}

double finite_compatibility_residual(const StrainState& E, const CartanConnection& eta) {
  SmoothForm<Motor> total = E.as_form();
  total += eta.form;
  auto defect = as_aff(exterior_d(total));
  defect += wedge(as_aff(total), as_aff(total), mul_aff);
  return defect.norm_inf();
}

Chain chain_boundary(const BodyGrid& g, int degree, const Chain& chain) {
  std::map<int, int> count;
  for (const auto& c : chain)
    for (const auto& e : g.boundary(degree, c.cell)) count[e.cell] += c.sign * e.sign;
  Chain out;
  for (auto [cell, sgn] : count)
    if (sgn != 0) out.push_back({cell, sgn});
  return out;
}

CircuitReport burgers_circuit(const Cochain<Motor>& e, const Chain& loop, const Chain& cap) {
  const BodyGrid& g = e.grid();
  if (e.degree() != 1) throw ValidationError("burgers_circuit: strain must be a 1-cochain");

  // the loop must be a cycle
  {
    std::map<int, int> vertex_count;
    for (const auto& l : loop) {
      if (l.cell < 0 || l.cell >= g.num_edges())
        throw ValidationError("burgers_circuit: loop edge out of range");
      for (const auto& v : g.boundary(1, l.cell)) vertex_count[v.cell] += l.sign * v.sign;
    }
    for (auto [v, s] : vertex_count)
      if (s != 0) throw ValidationError("burgers_circuit: loop is not closed");
  }
  // and the cap boundary must reproduce it as a signed edge set
  {
    std::map<int, int> want;
    for (const auto& l : loop) want[l.cell] += l.sign;
    for (auto it = want.begin(); it != want.end();)
      it = (it->second == 0) ? want.erase(it) : std::next(it);
    std::map<int, int> got;
    for (const auto& b : chain_boundary(g, 2, cap)) got[b.cell] = b.sign;
    if (want != got)
      throw ValidationError("burgers_circuit: cap boundary does not match the loop");
  }

  CircuitReport out;
  for (const auto& l : loop) {
    const Motor t = transport_to_origin(g.cell_center(1, l.cell), e[l.cell]);
    out.circuit += (l.sign > 0) ? t : -t;
  }
  for (const auto& f : cap) {
    Motor face_flux;
    for (const auto& b : g.boundary(2, f.cell)) {
      const Motor t = transport_to_origin(g.cell_center(1, b.cell), e[b.cell]);
      face_flux += (b.sign > 0) ? t : -t;
    }
    out.flux += (f.sign > 0) ? face_flux : -face_flux;
  }
  return out;
}

Cochain<Motor> defect_line(const BodyGrid& g, int i0, int j0, const Motor& mu) {
  if (i0 < 0 || i0 >= g.dims()[0] - 1 || j0 < 0 || j0 >= g.dims()[1] - 1)
    throw ValidationError("defect_line: line must pierce interior faces");
  Cochain<Motor> e(g, 1);
  // branch cut: y-directed edges from (i, j0, k) with i > i0 carry the
  // transported motor; everything else is zero
  for (int k = 0; k <= g.dims()[2]; ++k)
    for (int i = i0 + 1; i <= g.dims()[0]; ++i) {
      const int id = g.edge_id(1, i, j0, k);
      e[id] = transport_from_origin(g.cell_center(1, id), mu);
    }
  return e;
}

std::pair<Chain, Chain> rect_loop_and_cap(const BodyGrid& g, int k, int i0, int i1, int j0,
                                          int j1) {
  Chain cap;
  for (int j = j0; j < j1; ++j)
    for (int i = i0; i < i1; ++i) cap.push_back({g.face_id(2, i, j, k), +1});
  return {chain_boundary(g, 2, cap), cap};
}

}  // namespace cosserat
