#include "cosserat/strain.hpp"

namespace cosserat {

void Configuration::validate(double tol) const {
  for (int v = 0; v < Q.size(); ++v) {
    if (orthogonality_defect(Q[v]) > tol)
      throw ValidationError("Configuration: microrotation is not orthogonal");
    if (Q[v].determinant() < 0.0)
      throw ValidationError("Configuration: microrotation must be proper (det +1)");
  }
}

Configuration Configuration::left_translated(const EuclideanMotion& g) const {
  Configuration out(grid());
  for (int v = 0; v < y.size(); ++v) {
    out.y[v] = g.S() * y[v] + g.x();
    out.Q[v] = g.S() * Q[v];
  }
  return out;
}

Configuration Configuration::rigid(const BodyGrid& grid, const EuclideanMotion& g) {
  Configuration out(grid);
  for (int v = 0; v < out.y.size(); ++v) {
    out.y[v] = g.act(out.y[v]);
    out.Q[v] = g.S();
  }
  return out;
}

SmoothForm<Motor> StrainState::as_form() const {
  SmoothForm<Motor> f(grid(), 1);
  for (int slot = 0; slot < 3; ++slot)
    for (int v = 0; v < eps.size(); ++v)
      f.comp(slot)[v] = Motor(eps[v].row(slot).transpose(), tau[v].row(slot).transpose());
  return f;
}

StrainState StrainState::from_form(const SmoothForm<Motor>& f) {
  if (f.degree() != 1) throw ValidationError("StrainState: expects a 1-form");
  StrainState e(f.grid());
  for (int slot = 0; slot < 3; ++slot)
    for (int v = 0; v < e.eps.size(); ++v) {
      e.eps[v].row(slot) = f.comp(slot)[v].u.transpose();
      e.tau[v].row(slot) = f.comp(slot)[v].phi.transpose();
    }
  return e;
}

StrainState finite_strain(const Configuration& cfg) {
  cfg.validate();
  const BodyGrid& g = cfg.grid();
  StrainState out(g);
  for (int a = 0; a < 3; ++a) {
    GridField<Vec3> dy = fd_derivative(cfg.y, a);
    GridField<Mat3> dQ = fd_derivative(cfg.Q, a);
    Vec3 ea = Vec3::Zero();
    ea[a] = 1.0;
    for (int v = 0; v < dy.size(); ++v) {
      out.eps[v].row(a) = (cfg.Q[v].transpose() * dy[v] - ea).transpose();
      // antisymmetrize Q^T dQ before reading off the axial vector
      const Mat3 w = cfg.Q[v].transpose() * dQ[v];
      out.tau[v].row(a) = vee(w).transpose();
    }
  }
  return out;
}

StrainState section_change(const StrainState& e, const GridField<Mat3>& S) {
  StrainState out(e.grid());
  for (int v = 0; v < S.size(); ++v) {
    if (orthogonality_defect(S[v]) > 1e-10)
      throw ValidationError("section_change: section must be orthogonal");
    const double det = S[v].determinant();
    out.eps[v] = e.eps[v] * S[v];
    out.tau[v] = det * (e.tau[v] * S[v]);
  }
  return out;
}

StrainState infinitesimal_strain(const DisplacementField& d) {
  const BodyGrid& g = d.grid();
  StrainState out(g);
  for (int a = 0; a < 3; ++a) {
    GridField<Vec3> du = fd_derivative(d.u, a);
    GridField<Vec3> dphi = fd_derivative(d.phi, a);
    for (int v = 0; v < du.size(); ++v) {
      for (int j = 0; j < 3; ++j) {
        double eps_aj = du[v][j];
        for (int k = 0; k < 3; ++k) eps_aj -= levi_civita(a, j, k) * d.phi[v][k];
        out.eps[v](a, j) = eps_aj;
        out.tau[v](a, j) = dphi[v][j];
      }
    }
  }
  return out;
}

double linearization_check(const DisplacementField& xi, double t) {
  if (!(t > 0.0)) throw ValidationError("linearization_check: t must be positive");
  const BodyGrid& g = xi.grid();
  Configuration cfg(g);
  for (int v = 0; v < cfg.y.size(); ++v) {
    cfg.y[v] += t * xi.u[v];
    cfg.Q[v] = exp_so3(t * xi.phi[v]);
  }
  const StrainState big = finite_strain(cfg);
  const StrainState lin = infinitesimal_strain(xi);
  double defect = 0.0;
  for (int v = 0; v < big.eps.size(); ++v) {
    defect = std::max(defect, (big.eps[v] / t - lin.eps[v]).cwiseAbs().maxCoeff());
    defect = std::max(defect, (big.tau[v] / t - lin.tau[v]).cwiseAbs().maxCoeff());
  }
  return defect;
}

StrainState moving_frames_strain(const Configuration& cfg) {
  cfg.validate();
  const BodyGrid& g = cfg.grid();

  // frame tuples as homogeneous matrices: E = (x, e_i), F = (y, f_i = Q e_i)
  GridField<Mat4> frameE(g), frameF(g);
  {
    const auto& d = g.dims();
    for (int k = 0; k <= d[2]; ++k)
      for (int j = 0; j <= d[1]; ++j)
        for (int i = 0; i <= d[0]; ++i) {
          Mat4 E = Mat4::Identity();
          E.block<3, 1>(1, 0) = g.position(i, j, k);
          frameE(i, j, k) = E;
          Mat4 F = Mat4::Identity();
          F.block<3, 1>(1, 0) = cfg.y(i, j, k);
          F.block<3, 3>(1, 1) = cfg.Q(i, j, k);
          frameF(i, j, k) = F;
        }
  }

  StrainState out(g);
  for (int a = 0; a < 3; ++a) {
    GridField<Mat4> dE = fd_derivative(frameE, a);
    GridField<Mat4> dF = fd_derivative(frameF, a);
    for (int v = 0; v < dE.size(); ++v) {
      const Mat4 delta = frameF[v].inverse() * dF[v] - frameE[v].inverse() * dE[v];
      out.eps[v].row(a) = delta.block<3, 1>(1, 0).transpose();
      // raw off-diagonal extraction, no antisymmetrization
      const auto& M = delta;
      out.tau[v](a, 0) = M(3, 2);
      out.tau[v](a, 1) = M(1, 3);
      out.tau[v](a, 2) = M(2, 1);
    }
  }
  return out;
}

}  // namespace cosserat
