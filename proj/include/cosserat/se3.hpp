#pragma once

#include "cosserat/core.hpp"

namespace cosserat {

/// Element of se(3): an infinitesimal translation paired with an
/// infinitesimal rotation, the latter stored as the axial vector of its
/// skew-symmetric matrix. This is von Mises' "motor".
struct Motor {
  Vec3 u = Vec3::Zero();    ///< translational part
  Vec3 phi = Vec3::Zero();  ///< rotational part (axial vector)

  Motor() = default;
  Motor(const Vec3& u_, const Vec3& phi_) : u(u_), phi(phi_) {}

  /// 4x4 matrix representation [[0,0],[u, hat(phi)]].
  Mat4 matrix() const;

  Vec6 packed() const {
    Vec6 w;
    w << u, phi;
    return w;
  }
  static Motor from_packed(const Vec6& w) { return Motor(w.head<3>(), w.tail<3>()); }

  Motor operator+(const Motor& o) const { return {u + o.u, phi + o.phi}; }
  Motor operator-(const Motor& o) const { return {u - o.u, phi - o.phi}; }
  Motor operator*(double s) const { return {u * s, phi * s}; }
  Motor operator-() const { return {-u, -phi}; }
  Motor& operator+=(const Motor& o) {
    u += o.u;
    phi += o.phi;
    return *this;
  }
  double norm_inf() const { return std::max(u.cwiseAbs().maxCoeff(), phi.cwiseAbs().maxCoeff()); }
};

inline Motor operator*(double s, const Motor& w) { return w * s; }

/// Element of se(3)*: a force density paired with a moment density
/// (dual motor). Pairs with a Motor to give power.
struct CoMotor {
  Vec3 f = Vec3::Zero();  ///< force part
  Vec3 m = Vec3::Zero();  ///< moment part

  CoMotor() = default;
  CoMotor(const Vec3& f_, const Vec3& m_) : f(f_), m(m_) {}

  Vec6 packed() const {
    Vec6 w;
    w << f, m;
    return w;
  }
  static CoMotor from_packed(const Vec6& w) { return CoMotor(w.head<3>(), w.tail<3>()); }

  CoMotor operator+(const CoMotor& o) const { return {f + o.f, m + o.m}; }
  CoMotor operator-(const CoMotor& o) const { return {f - o.f, m - o.m}; }
  CoMotor operator*(double s) const { return {f * s, m * s}; }
  CoMotor operator-() const { return {-f, -m}; }
  CoMotor& operator+=(const CoMotor& o) {
    f += o.f;
    m += o.m;
    return *this;
  }
  double norm_inf() const { return std::max(f.cwiseAbs().maxCoeff(), m.cwiseAbs().maxCoeff()); }
};

inline CoMotor operator*(double s, const CoMotor& mu) { return mu * s; }

/// Nondegenerate duality pairing <mu, w> = f.u + m.phi.
inline double pair(const CoMotor& mu, const Motor& w) {
  return mu.f.dot(w.u) + mu.m.dot(w.phi);
}

/// Value of the associative matrix algebra generated by se(3) under the
/// 4x4 representation: matrices [[0,0],[t, M]] with arbitrary M. Products
/// of motor embeddings land here; the motors are the skew-M subspace.
struct AffVal {
  Vec3 t = Vec3::Zero();
  Mat3 M = Mat3::Zero();

  AffVal() = default;
  AffVal(const Vec3& t_, const Mat3& M_) : t(t_), M(M_) {}
  explicit AffVal(const Motor& w) : t(w.u), M(hat(w.phi)) {}

  AffVal operator+(const AffVal& o) const { return {t + o.t, M + o.M}; }
  AffVal operator-(const AffVal& o) const { return {t - o.t, M - o.M}; }
  AffVal operator*(double s) const { return {t * s, M * s}; }
  AffVal operator-() const { return {-t, -M}; }
  AffVal& operator+=(const AffVal& o) {
    t += o.t;
    M += o.M;
    return *this;
  }

  /// Skew part as a motor (exact when M is skew-symmetric).
  Motor skew_motor() const { return Motor(t, vee(M)); }
  double skew_defect() const { return (M + M.transpose()).cwiseAbs().maxCoeff(); }
  double norm_inf() const { return std::max(t.cwiseAbs().maxCoeff(), M.cwiseAbs().maxCoeff()); }
};

inline AffVal operator*(double s, const AffVal& v) { return v * s; }

/// Matrix product of two 4x4 embeddings, [[0,0],[a,A]]*[[0,0],[b,B]] =
/// [[0,0],[A b, A B]].
inline AffVal mul(const AffVal& a, const AffVal& b) { return {a.M * b.t, a.M * b.M}; }

/// Element of E(3) in homogeneous form: p = [[1,0],[x,S]] with S orthogonal
/// (det S = +1 or -1). Immutable value type.
class EuclideanMotion {
 public:
  static constexpr double kOrthTol = 1e-12;

  EuclideanMotion() : x_(Vec3::Zero()), S_(Mat3::Identity()) {}

  /// Validates orthogonality; re-orthonormalizes via polar projection when
  /// the drift is under tolerance, rejects otherwise.
  EuclideanMotion(const Vec3& x, const Mat3& S, double tol = 1e-9);

  static EuclideanMotion identity() { return EuclideanMotion(); }
  static EuclideanMotion translation(const Vec3& a) { return EuclideanMotion(a, Mat3::Identity()); }
  static EuclideanMotion rotation(const Mat3& R) { return EuclideanMotion(Vec3::Zero(), R); }

  const Vec3& x() const { return x_; }
  const Mat3& S() const { return S_; }
  double det() const { return S_.determinant(); }
  bool proper() const { return det() > 0.0; }

  Mat4 matrix() const;

  /// Action on a point: S p + x.
  Vec3 act(const Vec3& p) const { return S_ * p + x_; }

  EuclideanMotion inverse() const;

 private:
  Vec3 x_;
  Mat3 S_;
};

/// Group composition, agrees with the 4x4 homogeneous matrix product.
EuclideanMotion compose(const EuclideanMotion& g, const EuclideanMotion& h);

/// Exponential map se(3) -> SE(3): Rodrigues rotation block plus the
/// left-Jacobian translation block.
EuclideanMotion exp_se3(const Motor& w);

/// Principal-branch logarithm SE(3) -> se(3).
/// Throws ValidationError for det S = -1 or rotation angle >= pi - 1e-9.
Motor log_se3(const EuclideanMotion& g);

/// Adjoint action Ad_g w = g w g^-1 (4x4 conjugation).
Motor Ad(const EuclideanMotion& g, const Motor& w);

/// Lie bracket ad_w z = [w, z] (matrix commutator).
Motor ad(const Motor& w, const Motor& z);

/// Coadjoint action, <coad(w, mu), z> = -<mu, ad(w, z)> for all z.
CoMotor coad(const Motor& w, const CoMotor& mu);

/// Pullback of a co-motor along g: <coAd(g, mu), w> = <mu, Ad(g, w)>.
CoMotor coAd(const EuclideanMotion& g, const CoMotor& mu);

/// Rodrigues rotation exp(hat(phi)) with 4th-order Taylor fallback below
/// ||phi|| = 1e-6.
Mat3 exp_so3(const Vec3& phi);

/// Principal-branch rotation logarithm; throws for angle >= pi - 1e-9 or
/// det R = -1.
Vec3 log_so3(const Mat3& R);

}  // namespace cosserat
