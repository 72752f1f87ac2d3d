#pragma once

#include <random>

#include "cosserat/fields.hpp"
#include "cosserat/se3.hpp"

namespace cosserat {

/// Sum of sinusoidal modes with closed-form derivatives of all orders.
/// Used wherever a verification case needs exact values and exact source
/// terms: incompatibility oracles, manufactured equilibrium states and
/// convergence studies.
class TrigScalar {
 public:
  struct Mode {
    double amp = 0.0;
    Vec3 wave = Vec3::Zero();
    double phase = 0.0;
  };

  TrigScalar() = default;
  explicit TrigScalar(std::vector<Mode> modes) : modes_(std::move(modes)) {}

  static TrigScalar random(std::mt19937_64& gen, int nmodes = 2, double amp = 1.0,
                           double max_freq = 2.0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> f(1, static_cast<int>(max_freq));
    std::vector<Mode> m(nmodes);
    for (auto& mode : m) {
      mode.amp = amp * u(gen);
      mode.wave = M_PI * Vec3(f(gen), f(gen), f(gen)).cast<double>();
      mode.phase = M_PI * u(gen);
    }
    return TrigScalar(std::move(m));
  }

  double value(const Vec3& p) const {
    double s = 0;
    for (const auto& m : modes_) s += m.amp * std::sin(m.wave.dot(p) + m.phase);
    return s;
  }
  Vec3 grad(const Vec3& p) const {
    Vec3 g = Vec3::Zero();
    for (const auto& m : modes_) g += m.amp * std::cos(m.wave.dot(p) + m.phase) * m.wave;
    return g;
  }
  Mat3 hess(const Vec3& p) const {
    Mat3 h = Mat3::Zero();
    for (const auto& m : modes_)
      h -= m.amp * std::sin(m.wave.dot(p) + m.phase) * (m.wave * m.wave.transpose());
    return h;
  }

 private:
  std::vector<Mode> modes_;
};

/// Six-component analytic motor field (u, phi) with first and second
/// derivatives.
class AnalyticDisplacement {
 public:
  AnalyticDisplacement() : c_(6) {}

  static AnalyticDisplacement random(unsigned seed, double amp = 1.0, double max_freq = 2.0) {
    std::mt19937_64 gen(seed);
    AnalyticDisplacement d;
    for (auto& c : d.c_) c = TrigScalar::random(gen, 2, amp, max_freq);
    return d;
  }

  Vec3 u(const Vec3& p) const { return Vec3(c_[0].value(p), c_[1].value(p), c_[2].value(p)); }
  Vec3 phi(const Vec3& p) const { return Vec3(c_[3].value(p), c_[4].value(p), c_[5].value(p)); }

  /// du(p)(a, j) = d_a u_j
  Mat3 grad_u(const Vec3& p) const {
    Mat3 g;
    for (int j = 0; j < 3; ++j) g.col(j) = c_[j].grad(p);
    return g;
  }
  Mat3 grad_phi(const Vec3& p) const {
    Mat3 g;
    for (int j = 0; j < 3; ++j) g.col(j) = c_[3 + j].grad(p);
    return g;
  }
  /// hess_u(p, j)(a, b) = d_a d_b u_j
  Mat3 hess_u(const Vec3& p, int j) const { return c_[j].hess(p); }
  Mat3 hess_phi(const Vec3& p, int j) const { return c_[3 + j].hess(p); }

  /// Exact linear strain components, eps(a, j) = d_a u_j - eps_ajk phi_k.
  Mat3 strain_eps(const Vec3& p) const {
    Mat3 e = grad_u(p);
    const Vec3 ph = phi(p);
    for (int a = 0; a < 3; ++a)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) e(a, j) -= levi_civita(a, j, k) * ph[k];
    return e;
  }
  Mat3 strain_tau(const Vec3& p) const { return grad_phi(p); }

  TrigScalar& component(int i) { return c_[i]; }
  const TrigScalar& component(int i) const { return c_[i]; }

 private:
  std::vector<TrigScalar> c_;
};

/// Analytic stress components sigma_ij, chi_ij (area index i, direction j)
/// with exact divergences, for manufactured equilibrium states.
class AnalyticStress {
 public:
  AnalyticStress() : c_(18) {}

  static AnalyticStress random(unsigned seed, double amp = 1.0, double max_freq = 2.0) {
    std::mt19937_64 gen(seed);
    AnalyticStress s;
    for (auto& c : s.c_) c = TrigScalar::random(gen, 2, amp, max_freq);
    return s;
  }

  Mat3 sigma(const Vec3& p) const { return block(p, 0); }
  Mat3 chi(const Vec3& p) const { return block(p, 9); }

  /// (div sigma)_j = d_i sigma_ij
  Vec3 div_sigma(const Vec3& p) const { return div(p, 0); }
  Vec3 div_chi(const Vec3& p) const { return div(p, 9); }

  /// Body force and torque densities that put this stress in equilibrium.
  Vec3 equilibrium_force(const Vec3& p) const { return -div_sigma(p); }
  Vec3 equilibrium_torque(const Vec3& p) const {
    Vec3 m = -div_chi(p);
    const Mat3 s = sigma(p);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) m[l] -= levi_civita(i, j, l) * s(i, j);
    return m;
  }

 private:
  Mat3 block(const Vec3& p, int base) const {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = c_[base + 3 * i + j].value(p);
    return m;
  }
  Vec3 div(const Vec3& p, int base) const {
    Vec3 d = Vec3::Zero();
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i) d[j] += c_[base + 3 * i + j].grad(p)[i];
    return d;
  }

  std::vector<TrigScalar> c_;
};

/// Analytic motor-valued 1-form: three slots of six components each, with
/// first derivatives. Deliberately not the strain of any displacement.
class AnalyticMotorOneForm {
 public:
  AnalyticMotorOneForm() : c_(18) {}

  static AnalyticMotorOneForm random(unsigned seed, double amp = 1.0) {
    std::mt19937_64 gen(seed);
    AnalyticMotorOneForm f;
    for (auto& c : f.c_) c = TrigScalar::random(gen, 2, amp, 2.0);
    return f;
  }

  Motor value(const Vec3& p, int slot) const {
    Vec6 v;
    for (int r = 0; r < 6; ++r) v[r] = c_[6 * slot + r].value(p);
    return Motor::from_packed(v);
  }
  /// d_a of component r in slot `slot`
  double deriv(const Vec3& p, int slot, int r, int a) const {
    return c_[6 * slot + r].grad(p)[a];
  }

 private:
  std::vector<TrigScalar> c_;
};

}  // namespace cosserat
