#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cosserat/material.hpp"
#include "test_util.hpp"

using namespace cosserat;
using namespace cosserat::testing;

namespace {

MaterialConstants solid_isotropic() {
  MaterialConstants mc;
  mc.lambda = 1.0;
  mc.mu1 = 1.0;
  mc.mu2 = 0.3;
  mc.alpha = 0.8;
  mc.beta1 = 0.9;
  mc.beta2 = 0.2;
  return mc;
}

MaterialConstants solid_hemitropic() {
  MaterialConstants mc = solid_isotropic();
  mc.c1 = 0.10;
  mc.c2 = 0.15;
  mc.c3 = 0.05;
  return mc;
}

Mat3 random_mat3() {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = uniform();
  return m;
}

Mat3 reflection_z() {
  Mat3 r = Mat3::Identity();
  r(2, 2) = -1.0;
  return r;
}

}  // namespace

TEST_CASE("diagonal isotropic law") {
  MaterialConstants mc;
  mc.mu1 = 1.0;  // everything else zero
  StiffnessOperator C = build_stiffness(mc, SymmetryClass::Isotropic);
  Mat3 sigma, chi;
  unpack_stress(C.apply(pack_strain(Mat3::Identity(), Mat3::Zero())), sigma, chi);
  CHECK((sigma - Mat3::Identity()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(chi.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("isotropic operators are exactly symmetric and definite") {
  StiffnessOperator C = build_stiffness(solid_isotropic(), SymmetryClass::Isotropic);
  CHECK(C.hyperelastic());
  CHECK((C.matrix() - C.matrix().transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(C.positive_definite());
  CHECK(C.min_eigenvalue() > 0.1);
}

TEST_CASE("hemitropic coupling and the centrosymmetric projection") {
  StiffnessOperator C = build_stiffness(solid_hemitropic(), SymmetryClass::Hemitropic);
  CHECK(C.hyperelastic());
  CHECK(C.matrix().block<9, 9>(0, 9).cwiseAbs().maxCoeff() > 0.01);
  CHECK(C.positive_definite());

  StiffnessOperator iso = build_stiffness(solid_isotropic(), SymmetryClass::Isotropic);
  StiffnessOperator proj = centrosymmetric_projection(C);
  CHECK((proj.matrix() - iso.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("constitutive application against the index-summation oracle") {
  BodyGrid g({4, 4, 4}, Vec3(0.25, 0.25, 0.25));

  StrainState zero(g);
  StiffnessOperator C = build_stiffness(solid_hemitropic(), SymmetryClass::Hemitropic);
  CHECK(apply_law(C, zero).norm_inf() == 0.0);

  // identity operator copies the strain
  MaterialConstants ident;
  ident.matrix = Mat18::Identity();
  StiffnessOperator I = build_stiffness(ident, SymmetryClass::Anisotropic);
  StrainState e(g);
  for (int v = 0; v < e.eps.size(); ++v) {
    e.eps[v] = random_mat3();
    e.tau[v] = random_mat3();
  }
  StressState s = apply_law(I, e);
  for (int v = 0; v < e.eps.size(); ++v) {
    CHECK((s.sigma[v] - e.eps[v]).cwiseAbs().maxCoeff() == 0.0);
    CHECK((s.chi[v] - e.tau[v]).cwiseAbs().maxCoeff() == 0.0);
  }

  // random operator against the quadruple-loop contraction S^Ai = C^ABij E_Bj,
  // with motor index A and form index i mapped to the documented packing
  MaterialConstants rc;
  Mat18 rnd;
  for (int r = 0; r < 18; ++r)
    for (int c = 0; c < 18; ++c) rnd(r, c) = uniform();
  rc.matrix = rnd;
  StiffnessOperator R = build_stiffness(rc, SymmetryClass::Anisotropic);
  auto flat = [](int A, int i) { return (A < 3) ? 3 * i + A : 9 + 3 * i + (A - 3); };
  StressState sr = apply_law(R, e);
  for (int v = 0; v < 5; ++v) {
    for (int A = 0; A < 6; ++A)
      for (int i = 0; i < 3; ++i) {
        double acc = 0;
        for (int B = 0; B < 6; ++B)
          for (int j = 0; j < 3; ++j) {
            const double strain =
                (B < 3) ? e.eps[v](j, B) : e.tau[v](j, B - 3);  // E_{Bj}, form index j
            acc += rnd(flat(A, i), flat(B, j)) * strain;
          }
        const double got = (A < 3) ? sr.sigma[v](i, A) : sr.chi[v](i, A - 3);
        CHECK(got == doctest::Approx(acc).epsilon(1e-12));
      }
  }
}

TEST_CASE("stored energy and its gradient") {
  StiffnessOperator C = build_stiffness(solid_hemitropic(), SymmetryClass::Hemitropic);

  CHECK(stored_energy(C, Mat3::Zero(), Mat3::Zero()) == 0.0);
  CHECK(energy_gradient_check(C, Mat3::Zero(), Mat3::Zero()) < 1e-6);

  for (int n = 0; n < 20; ++n) {
    const Mat3 eps = random_mat3(), tau = random_mat3();
    CHECK(energy_gradient_check(C, eps, tau) < 1e-6);
    // quadratic scaling
    const double u1 = stored_energy(C, eps, tau);
    const double u2 = stored_energy(C, Mat3(2 * eps), Mat3(2 * tau));
    CHECK(u2 == doctest::Approx(4 * u1).epsilon(1e-12));
  }

  // a broken-symmetry operator fails the gradient check with defect
  // ~ |C - C^T| / 2 and is rejected by the energy path
  MaterialConstants odd = solid_isotropic();
  odd.odd.push_back({1, 3, 0.25});
  StiffnessOperator K = build_stiffness(odd, SymmetryClass::Odd);
  CHECK_FALSE(K.hyperelastic());
  CHECK_THROWS_AS(stored_energy(K, Mat3::Identity(), Mat3::Zero()), ValidationError);
  double worst = 0;
  for (int n = 0; n < 10; ++n) worst = std::max(worst, energy_gradient_check(K, random_mat3(), random_mat3()));
  CHECK(worst > 1e-3);
}

TEST_CASE("isotropic energy is invariant under the full orthogonal group") {
  StiffnessOperator C = build_stiffness(solid_isotropic(), SymmetryClass::Isotropic);
  for (int n = 0; n < 50; ++n) {
    Mat3 R = random_rotation();
    if (n % 2 == 1) R = Mat3(R * reflection_z());  // improper half of the samples
    CHECK(material_symmetry_check(C, R, 20, 1000 + n) < 1e-10);
  }
}

TEST_CASE("hemitropic energy is chiral") {
  StiffnessOperator C = build_stiffness(solid_hemitropic(), SymmetryClass::Hemitropic);
  for (int n = 0; n < 50; ++n)
    CHECK(material_symmetry_check(C, random_rotation(), 20, 2000 + n) < 1e-10);

  // any improper element breaks the coupling terms
  CHECK(material_symmetry_check(C, Mat3(-Mat3::Identity()), 20) > 1e-3);
  CHECK(material_symmetry_check(C, reflection_z(), 20) > 1e-3);
}

TEST_CASE("generic anisotropic operators have no orthogonal symmetry") {
  MaterialConstants rc;
  Mat18 rnd;
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int r = 0; r < 18; ++r)
    for (int c = r; c < 18; ++c) rnd(r, c) = rnd(c, r) = u(gen);
  rc.matrix = rnd;
  StiffnessOperator C = build_stiffness(rc, SymmetryClass::Anisotropic);
  CHECK(material_symmetry_check(C, random_rotation()) > 1e-3);
}

TEST_CASE("symmetry check rejects non-orthogonal probes") {
  StiffnessOperator C = build_stiffness(solid_isotropic(), SymmetryClass::Isotropic);
  CHECK_THROWS_AS(material_symmetry_check(C, Mat3(2.0 * Mat3::Identity())), ValidationError);
}

TEST_CASE("cycle work") {
  StiffnessOperator sym = build_stiffness(solid_hemitropic(), SymmetryClass::Hemitropic);

  // closed cycle through random strain space: conservative to quadrature error
  auto circle = [](int A, int B, double r, int steps) {
    std::vector<Vec18> path;
    for (int s = 0; s <= steps; ++s) {
      const double th = 2 * M_PI * s / steps;
      Vec18 e = Vec18::Zero();
      e[A] = r * std::cos(th);
      e[B] = r * std::sin(th);
      path.push_back(e);
    }
    path.back() = path.front();
    return path;
  };

  CHECK(std::abs(cycle_work(sym, circle(2, 11, 1.0, 1000))) < 1e-6);

  // odd operator: W = pi r^2 (C_BA - C_AB)
  MaterialConstants mc = solid_isotropic();
  const int A = 2, B = 11;
  const double k = 0.35;
  mc.odd.push_back({A, B, k});  // C_AB += k, C_BA -= k
  StiffnessOperator odd = build_stiffness(mc, SymmetryClass::Odd);
  const double r = 0.8;
  const double expect = M_PI * r * r * (odd.matrix()(B, A) - odd.matrix()(A, B));
  CHECK(expect == doctest::Approx(-2 * M_PI * k * r * r));
  const double got = cycle_work(odd, circle(A, B, r, 1000));
  CHECK(got == doctest::Approx(expect).epsilon(1e-4));

  // zero-radius cycle
  CHECK(cycle_work(odd, circle(A, B, 0.0, 100)) == 0.0);

  // open path rejected
  std::vector<Vec18> open_path = circle(A, B, 1.0, 64);
  open_path.pop_back();
  CHECK_THROWS_AS(cycle_work(odd, open_path), ValidationError);
}
