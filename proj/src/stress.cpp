#include "cosserat/stress.hpp"

namespace cosserat {

SmoothForm<CoMotor> StressState::as_form() const {
  SmoothForm<CoMotor> f(grid(), 2);
  for (int slot = 0; slot < 3; ++slot)
    for (int v = 0; v < sigma.size(); ++v)
      f.comp(slot)[v] = CoMotor(sigma[v].row(slot).transpose(), chi[v].row(slot).transpose());
  return f;
}

StressState StressState::from_form(const SmoothForm<CoMotor>& f) {
  if (f.degree() != 2) throw ValidationError("StressState: expects a 2-form");
  StressState s(f.grid());
  for (int slot = 0; slot < 3; ++slot)
    for (int v = 0; v < s.sigma.size(); ++v) {
      s.sigma[v].row(slot) = f.comp(slot)[v].f.transpose();
      s.chi[v].row(slot) = f.comp(slot)[v].m.transpose();
    }
  return s;
}

double BalanceResidual::interior_norm_inf(int depth) const {
  const BodyGrid& g = force.grid();
  const auto& d = g.dims();
  double r = 0;
  for (int k = depth; k <= d[2] - depth; ++k)
    for (int j = depth; j <= d[1] - depth; ++j)
      for (int i = depth; i <= d[0] - depth; ++i)
        r = std::max({r, force(i, j, k).cwiseAbs().maxCoeff(),
                      moment(i, j, k).cwiseAbs().maxCoeff()});
  return r;
}

BalanceResidual balance_residual(const StressState& S, const LoadState& L) {
  const BodyGrid& g = S.grid();
  BalanceResidual out(g);
  std::array<GridField<Mat3>, 3> dsig{fd_derivative(S.sigma, 0), fd_derivative(S.sigma, 1),
                                      fd_derivative(S.sigma, 2)};
  std::array<GridField<Mat3>, 3> dchi{fd_derivative(S.chi, 0), fd_derivative(S.chi, 1),
                                      fd_derivative(S.chi, 2)};
  for (int v = 0; v < out.force.size(); ++v) {
    Vec3 rf = L.f[v], rm = L.m[v];
    for (int i = 0; i < 3; ++i) {
      rf += dsig[i][v].row(i).transpose();
      rm += dchi[i][v].row(i).transpose();
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) rm[k] += levi_civita(k, i, j) * S.sigma[v](i, j);
    out.force[v] = rf;
    out.moment[v] = rm;
  }
  return out;
}

double virtual_work_residual(const StressState& S, const LoadState& L,
                             const DisplacementField& xi) {
  const BodyGrid& g = S.grid();
  const auto& d = g.dims();

  // bulk loads and the stress pairing with the virtual strain
  const StrainState dxi = infinitesimal_strain(xi);
  double bulk = 0;
  for (int k = 0; k <= d[2]; ++k)
    for (int j = 0; j <= d[1]; ++j)
      for (int i = 0; i <= d[0]; ++i) {
        const double w = vertex_weight(g, i, j, k);
        double density = L.f(i, j, k).dot(xi.u(i, j, k)) + L.m(i, j, k).dot(xi.phi(i, j, k));
        density -= (dxi.eps(i, j, k).cwiseProduct(S.sigma(i, j, k)).sum() +
                    dxi.tau(i, j, k).cwiseProduct(S.chi(i, j, k)).sum());
        bulk += w * density;
      }

  // boundary tractions: the trace of Sigma, outward signed
  double surface = 0;
  for (int axis = 0; axis < 3; ++axis)
    for (int side : {-1, +1}) {
      const auto [s, t] = axis_cycle(axis);
      const int fixed = (side > 0) ? d[axis] : 0;
      for (int q = 0; q <= d[t]; ++q)
        for (int p = 0; p <= d[s]; ++p) {
          std::array<int, 3> at{};
          at[axis] = fixed;
          at[s] = p;
          at[t] = q;
          auto w1 = [&](int idx, int ax) {
            const double h = g.spacing()[ax];
            return (idx == 0 || idx == d[ax]) ? 0.5 * h : h;
          };
          const double w = w1(p, s) * w1(q, t);
          const Vec3 tf = side * S.sigma(at[0], at[1], at[2]).row(axis).transpose();
          const Vec3 tm = side * S.chi(at[0], at[1], at[2]).row(axis).transpose();
          surface +=
              w * (tf.dot(xi.u(at[0], at[1], at[2])) + tm.dot(xi.phi(at[0], at[1], at[2])));
        }
    }
  return bulk + surface;
}

BoundaryTraction boundary_traction(const StressState& S, const FaceSelector& face) {
  if (face.axis < 0 || face.axis > 2 || (face.side != -1 && face.side != 1))
    throw ValidationError("boundary_traction: invalid face selector");
  const BodyGrid& g = S.grid();
  const auto& d = g.dims();
  const auto [s, t] = axis_cycle(face.axis);
  BoundaryTraction out;
  out.face = face;
  out.tangential_axes = {s, t};
  out.values.reserve((d[s] + 1) * (d[t] + 1));
  const int fixed = (face.side > 0) ? d[face.axis] : 0;
  for (int q = 0; q <= d[t]; ++q)
    for (int p = 0; p <= d[s]; ++p) {
      std::array<int, 3> at{};
      at[face.axis] = fixed;
      at[s] = p;
      at[t] = q;
      const double sgn = face.side;
      out.values.emplace_back(sgn * S.sigma(at[0], at[1], at[2]).row(face.axis).transpose(),
                              sgn * S.chi(at[0], at[1], at[2]).row(face.axis).transpose());
    }
  return out;
}

StressState stress_potential(const SmoothForm<CoMotor>& Y) {
  if (Y.degree() != 1) throw ValidationError("stress_potential: expects a 1-form");
  return StressState::from_form(covariant_d_star(Y, FlatConnection::smooth(Y.grid())));
}

SmoothForm<CoMotor> gauge_shift(const SmoothForm<CoMotor>& Y, const SmoothForm<CoMotor>& alpha) {
  if (alpha.degree() != 0) throw ValidationError("gauge_shift: alpha must be a 0-form");
  SmoothForm<CoMotor> out = Y;
  out += covariant_d_star(alpha, FlatConnection::smooth(Y.grid()));
  return out;
}

StressState pullback_stress(const StressState& S, const Configuration& cfg) {
  cfg.validate();
  const BodyGrid& g = S.grid();
  StressState out(g);
  std::array<GridField<Vec3>, 3> dy{fd_derivative(cfg.y, 0), fd_derivative(cfg.y, 1),
                                    fd_derivative(cfg.y, 2)};
  for (int v = 0; v < S.sigma.size(); ++v) {
    Mat3 jac;  // jac(r, c) = d y_r / d x_c
    for (int c = 0; c < 3; ++c) jac.col(c) = dy[c][v];
    const double det = jac.determinant();
    if (det <= 1e-12) throw ValidationError("pullback_stress: deformation gradient is singular");
    const Mat3 cof = det * jac.inverse().transpose();
    // area slots map by the cofactor, values by the microrotation
    out.sigma[v] = cof.transpose() * S.sigma[v] * cfg.Q[v];
    out.chi[v] = cof.transpose() * S.chi[v] * cfg.Q[v];
  }
  return out;
}

}  // namespace cosserat
