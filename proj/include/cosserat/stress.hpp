#pragma once

#include "cosserat/strain.hpp"

namespace cosserat {

/// Stress components sigma_ij (area index i, force direction j) and moment
/// stress chi_ij. Packages a co-motor valued 2-form
/// Sigma = sigma_ij v*_j A_i + chi_ij r*_j A_i.
struct StressState {
  GridField<Mat3> sigma;
  GridField<Mat3> chi;

  explicit StressState(const BodyGrid& g) : sigma(g), chi(g) {}
  const BodyGrid& grid() const { return sigma.grid(); }

  SmoothForm<CoMotor> as_form() const;
  static StressState from_form(const SmoothForm<CoMotor>& f);

  double norm_inf() const {
    double m = 0;
    for (int v = 0; v < sigma.size(); ++v)
      m = std::max({m, sigma[v].cwiseAbs().maxCoeff(), chi[v].cwiseAbs().maxCoeff()});
    return m;
  }
};

/// Body force and torque densities.
struct LoadState {
  GridField<Vec3> f;
  GridField<Vec3> m;

  explicit LoadState(const BodyGrid& g) : f(g), m(g) {}
  const BodyGrid& grid() const { return f.grid(); }
};

/// Local balance residuals r_force_i = d_j sigma_ji + f_i and
/// r_moment_i = d_j chi_ji + eps_ijk sigma_jk + m_i.
struct BalanceResidual {
  GridField<Vec3> force;
  GridField<Vec3> moment;

  explicit BalanceResidual(const BodyGrid& g) : force(g), moment(g) {}

  double norm_inf() const {
    double r = 0;
    for (int v = 0; v < force.size(); ++v)
      r = std::max({r, force[v].cwiseAbs().maxCoeff(), moment[v].cwiseAbs().maxCoeff()});
    return r;
  }
  /// Max norm over vertices at least `depth` layers away from the boundary.
  /// Reconstructed stresses differentiate one-sided boundary stencils, so
  /// the second-order estimate applies from depth 2 inward.
  double interior_norm_inf(int depth = 1) const;
};

BalanceResidual balance_residual(const StressState& S, const LoadState& L);

/// Total virtual work of a stress state and loads against a virtual
/// displacement: bulk forces + boundary tractions (the trace of Sigma)
/// minus the stress pairing with the virtual strain. Vanishes at O(h^2)
/// when the balance laws hold.
double virtual_work_residual(const StressState& S, const LoadState& L,
                             const DisplacementField& xi);

/// Outward-oriented boundary selector.
struct FaceSelector {
  int axis = 0;   ///< 0, 1, 2
  int side = +1;  ///< -1 for the low face, +1 for the high face
};

/// Traction co-motors on a boundary face: per-area force sigma_nj and
/// couple chi_nj with n the outward axis, outward-orientation signed.
struct BoundaryTraction {
  FaceSelector face;
  std::array<int, 2> tangential_axes{};
  std::vector<CoMotor> values;  ///< lexicographic over the face vertex grid

  const CoMotor& at(int s, int t, const BodyGrid& g) const {
    return values[s + (g.dims()[tangential_axes[0]] + 1) * t];
  }
};

BoundaryTraction boundary_traction(const StressState& S, const FaceSelector& face);

/// Stress from a co-motor valued 1-form potential, Sigma = D* Y.
StressState stress_potential(const SmoothForm<CoMotor>& Y);

/// Gauge shift Y -> Y + D* alpha for a co-motor 0-form alpha; leaves the
/// induced stress unchanged.
SmoothForm<CoMotor> gauge_shift(const SmoothForm<CoMotor>& Y, const SmoothForm<CoMotor>& alpha);

/// Pullback of the stress 2-form to the reference body: the area part maps
/// by the cofactor of the deformation gradient, the value part by the
/// microrotation.
StressState pullback_stress(const StressState& S, const Configuration& cfg);

}  // namespace cosserat
