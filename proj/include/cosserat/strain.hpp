#pragma once

#include "cosserat/forms.hpp"

namespace cosserat {

/// Configuration of the oriented continuum: deformed positions y and
/// pointwise microrotations Q.
struct Configuration {
  GridField<Vec3> y;
  GridField<Mat3> Q;

  explicit Configuration(const BodyGrid& g) : y(g), Q(g) {
    y.fill([](const Vec3& p) { return p; });
    for (auto& q : Q.data()) q = Mat3::Identity();
  }

  const BodyGrid& grid() const { return y.grid(); }

  /// Pointwise orthogonality and orientation check, Q^T Q = I, det Q = +1.
  void validate(double tol = 1e-10) const;

  /// Left multiplication by a constant motion: y -> S y + x, Q -> S Q.
  Configuration left_translated(const EuclideanMotion& g) const;

  static Configuration rigid(const BodyGrid& grid, const EuclideanMotion& g);
};

/// Infinitesimal displacement and microrotation fields (u, phi).
struct DisplacementField {
  GridField<Vec3> u;
  GridField<Vec3> phi;

  explicit DisplacementField(const BodyGrid& g) : u(g), phi(g) {}
  const BodyGrid& grid() const { return u.grid(); }

  SmoothForm<Motor> as_form() const {
    SmoothForm<Motor> f(grid(), 0);
    for (int v = 0; v < u.size(); ++v) f.comp(0)[v] = Motor(u[v], phi[v]);
    return f;
  }
};

/// Strain components: eps(i,j) with form index i and value index j, and
/// the wryness tau(i,j). Packages a motor-valued 1-form.
struct StrainState {
  GridField<Mat3> eps;
  GridField<Mat3> tau;

  explicit StrainState(const BodyGrid& g) : eps(g), tau(g) {}
  const BodyGrid& grid() const { return eps.grid(); }

  SmoothForm<Motor> as_form() const;
  static StrainState from_form(const SmoothForm<Motor>& f);

  double norm_inf() const {
    double m = 0;
    for (int v = 0; v < eps.size(); ++v)
      m = std::max({m, eps[v].cwiseAbs().maxCoeff(), tau[v].cwiseAbs().maxCoeff()});
    return m;
  }
};

/// Finite strain of a configuration: translational part Q^T dy - dx,
/// rotational part the axial vector of Q^T dQ per coordinate slot.
StrainState finite_strain(const Configuration& cfg);

/// Change of section by a pointwise orthogonal field S: the translational
/// part maps by S^T, the rotational part by det(S) S^T (pseudovector).
StrainState section_change(const StrainState& e, const GridField<Mat3>& S);

/// Linear strain measures eps_ij = d_i u_j - eps_ijk phi_k, tau_ij = d_i phi_j.
StrainState infinitesimal_strain(const DisplacementField& d);

/// Defect of the linearization E(psi_t)/t vs the infinitesimal strain,
/// where psi_t = (x + t u, exp(t hat(phi))). Decays linearly in t.
double linearization_check(const DisplacementField& xi, double t);

/// Independent strain computation from moving-frame tuples (x, e_i) and
/// (y, f_i = Q e_i): the difference of the two frame derivatives
/// F^-1 dF - E^-1 dE, evaluated with plain 4x4 inverses and products.
StrainState moving_frames_strain(const Configuration& cfg);

}  // namespace cosserat
