#pragma once

#include <optional>

#include "cosserat/strain.hpp"
#include "cosserat/stress.hpp"

namespace cosserat {

using Vec18 = Eigen::Matrix<double, 18, 1>;
using Mat18 = Eigen::Matrix<double, 18, 18>;

enum class SymmetryClass { Isotropic, Hemitropic, Anisotropic, Odd };

/// Named constants of the linear constitutive classes. The isotropic law is
///   sigma_ij = lambda eps_kk d_ij + mu1 eps_ij + mu2 eps_ji
///   chi_ij   = alpha  tau_kk d_ij + beta1 tau_ij + beta2 tau_ji
/// and the hemitropic law adds the symmetric coupling
///   sigma_ij += c1 tau_kk d_ij + c2 tau_ij + c3 tau_ji   (and eps <-> tau).
struct MaterialConstants {
  double lambda = 0, mu1 = 0, mu2 = 0;   // force/area
  double alpha = 0, beta1 = 0, beta2 = 0;  // force
  double c1 = 0, c2 = 0, c3 = 0;           // force/area coupling

  struct OddEntry {
    int row = 0, col = 0;  // packed strain slots
    double k = 0;          // C(row,col) += k, C(col,row) -= k
  };
  std::vector<OddEntry> odd;

  std::optional<Mat18> matrix;  // anisotropic: explicit operator
};

/// Packing of the 18 strain/stress components: row-major eps (form index
/// first) in slots 0..8, then row-major tau in slots 9..17.
inline Vec18 pack_strain(const Mat3& eps, const Mat3& tau) {
  Vec18 v;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      v[3 * i + j] = eps(i, j);
      v[9 + 3 * i + j] = tau(i, j);
    }
  return v;
}
inline void unpack_stress(const Vec18& v, Mat3& sigma, Mat3& chi) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      sigma(i, j) = v[3 * i + j];
      chi(i, j) = v[9 + 3 * i + j];
    }
}

/// Linear map from packed strain (eps, tau) to packed stress (sigma, chi).
class StiffnessOperator {
 public:
  StiffnessOperator(Mat18 C, SymmetryClass cls) : C_(std::move(C)), class_(cls) {}

  const Mat18& matrix() const { return C_; }
  SymmetryClass symmetry_class() const { return class_; }

  /// Major symmetry, exactly as stored; equivalent to hyperelasticity.
  bool hyperelastic() const { return (C_ - C_.transpose()).cwiseAbs().maxCoeff() == 0.0; }

  /// Smallest eigenvalue of the symmetric part.
  double min_eigenvalue() const;
  bool positive_definite() const { return min_eigenvalue() > 0.0; }

  Vec18 apply(const Vec18& strain) const { return C_ * strain; }

 private:
  Mat18 C_;
  SymmetryClass class_;
};

StiffnessOperator build_stiffness(const MaterialConstants& mc, SymmetryClass cls);

/// Zero the translation-rotation coupling blocks (the centrosymmetric
/// restriction of an operator).
StiffnessOperator centrosymmetric_projection(const StiffnessOperator& C);

/// Pointwise application of the constitutive law over a strain field.
StressState apply_law(const StiffnessOperator& C, const StrainState& e);

/// Stored energy density U = <C e, e> / 2; requires major symmetry.
double stored_energy(const StiffnessOperator& C, const Mat3& eps, const Mat3& tau);
GridField<double> stored_energy(const StiffnessOperator& C, const StrainState& e);

/// Central finite-difference check of S = dU/dE in every strain slot
/// (step 1e-6), returned as a relative defect. Passes (< 1e-6) exactly when
/// the operator has major symmetry.
double energy_gradient_check(const StiffnessOperator& C, const Mat3& eps, const Mat3& tau);

/// Invariance defect of the stored energy under the material symmetry
/// candidate R: strains transform as (eps, tau) -> (R^T eps R, det R R^T tau R).
/// Maximum of |U(E) - U(E_R)| over `samples` random strains.
double material_symmetry_check(const StiffnessOperator& C, const Mat3& R, int samples = 20,
                               unsigned seed = 12345);

/// Work along a closed cycle in strain space by trapezoid quadrature;
/// requires path.front() == path.back(). Zero for hyperelastic operators,
/// and pi r^2 (C_BA - C_AB) for a circle of radius r in the slot pair (A, B).
double cycle_work(const StiffnessOperator& C, const std::vector<Vec18>& path);

}  // namespace cosserat
