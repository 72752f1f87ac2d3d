#include "cosserat/material.hpp"

#include <Eigen/Eigenvalues>
#include <random>

namespace cosserat {

namespace {

// C[(ij),(kl)] = a d_ij d_kl + b d_ik d_jl + c d_il d_jk on a 9x9 block
Eigen::Matrix<double, 9, 9> isotropic_block(double a, double b, double c) {
  Eigen::Matrix<double, 9, 9> m = Eigen::Matrix<double, 9, 9>::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          m(3 * i + j, 3 * k + l) = a * (i == j) * (k == l) + b * (i == k) * (j == l) +
                                    c * (i == l) * (j == k);
  return m;
}

}  // namespace

double StiffnessOperator::min_eigenvalue() const {
  const Mat18 sym = 0.5 * (C_ + C_.transpose());
  Eigen::SelfAdjointEigenSolver<Mat18> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

StiffnessOperator build_stiffness(const MaterialConstants& mc, SymmetryClass cls) {
  Mat18 C = Mat18::Zero();
  switch (cls) {
    case SymmetryClass::Anisotropic: {
      if (!mc.matrix) throw ValidationError("build_stiffness: anisotropic class needs a matrix");
      C = *mc.matrix;
      break;
    }
    case SymmetryClass::Odd:
    case SymmetryClass::Hemitropic:
    case SymmetryClass::Isotropic: {
      C.block<9, 9>(0, 0) = isotropic_block(mc.lambda, mc.mu1, mc.mu2);
      C.block<9, 9>(9, 9) = isotropic_block(mc.alpha, mc.beta1, mc.beta2);
      if (cls != SymmetryClass::Isotropic) {
        const auto coupling = isotropic_block(mc.c1, mc.c2, mc.c3);
        C.block<9, 9>(0, 9) = coupling;
        C.block<9, 9>(9, 0) = coupling;
      }
      break;
    }
  }
  if (cls == SymmetryClass::Odd) {
    for (const auto& o : mc.odd) {
      if (o.row < 0 || o.row >= 18 || o.col < 0 || o.col >= 18 || o.row == o.col)
        throw ValidationError("build_stiffness: bad odd entry");
      C(o.row, o.col) += o.k;
      C(o.col, o.row) -= o.k;
    }
  }
  return StiffnessOperator(C, cls);
}

StiffnessOperator centrosymmetric_projection(const StiffnessOperator& C) {
  Mat18 m = C.matrix();
  m.block<9, 9>(0, 9).setZero();
  m.block<9, 9>(9, 0).setZero();
  return StiffnessOperator(m, C.symmetry_class());
}

StressState apply_law(const StiffnessOperator& C, const StrainState& e) {
  StressState out(e.grid());
  for (int v = 0; v < e.eps.size(); ++v) {
    const Vec18 s = C.apply(pack_strain(e.eps[v], e.tau[v]));
    unpack_stress(s, out.sigma[v], out.chi[v]);
  }
  return out;
}

double stored_energy(const StiffnessOperator& C, const Mat3& eps, const Mat3& tau) {
  if (!C.hyperelastic())
    throw ValidationError("stored_energy: operator lacks major symmetry");
  const Vec18 e = pack_strain(eps, tau);
  return 0.5 * e.dot(C.apply(e));
}

GridField<double> stored_energy(const StiffnessOperator& C, const StrainState& e) {
  if (!C.hyperelastic())
    throw ValidationError("stored_energy: operator lacks major symmetry");
  GridField<double> out(e.grid());
  for (int v = 0; v < e.eps.size(); ++v) {
    const Vec18 s = pack_strain(e.eps[v], e.tau[v]);
    out[v] = 0.5 * s.dot(C.apply(s));
  }
  return out;
}

double energy_gradient_check(const StiffnessOperator& C, const Mat3& eps, const Mat3& tau) {
  const Vec18 e = pack_strain(eps, tau);
  const Vec18 stress = C.apply(e);
  auto energy = [&](const Vec18& x) { return 0.5 * x.dot(C.matrix() * x); };
  const double step = 1e-6;
  double defect = 0;
  for (int a = 0; a < 18; ++a) {
    Vec18 ep = e, em = e;
    ep[a] += step;
    em[a] -= step;
    const double grad = (energy(ep) - energy(em)) / (2 * step);
    defect = std::max(defect, std::abs(grad - stress[a]));
  }
  return defect / std::max(1.0, stress.cwiseAbs().maxCoeff());
}

double material_symmetry_check(const StiffnessOperator& C, const Mat3& R, int samples,
                               unsigned seed) {
  if (orthogonality_defect(R) > 1e-10)
    throw ValidationError("material_symmetry_check: R must be orthogonal");
  const double det = R.determinant();
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double defect = 0;
  for (int s = 0; s < samples; ++s) {
    Mat3 eps, tau;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        eps(i, j) = u(gen);
        tau(i, j) = u(gen);
      }
    const Mat3 eps_r = R.transpose() * eps * R;
    const Mat3 tau_r = det * (R.transpose() * tau * R);
    const Vec18 e0 = pack_strain(eps, tau), e1 = pack_strain(eps_r, tau_r);
    const double u0 = 0.5 * e0.dot(C.matrix() * e0);
    const double u1 = 0.5 * e1.dot(C.matrix() * e1);
    defect = std::max(defect, std::abs(u0 - u1));
  }
  return defect;
}

double cycle_work(const StiffnessOperator& C, const std::vector<Vec18>& path) {
  if (path.size() < 2 || (path.front() - path.back()).cwiseAbs().maxCoeff() != 0.0)
    throw ValidationError("cycle_work: path must be closed (first sample = last sample)");
  double w = 0;
  Vec18 stress_prev = C.apply(path.front());
  for (size_t n = 1; n < path.size(); ++n) {
    const Vec18 stress = C.apply(path[n]);
    w += 0.5 * (stress + stress_prev).dot(path[n] - path[n - 1]);
    stress_prev = stress;
  }
  return w;
}

}  // namespace cosserat
