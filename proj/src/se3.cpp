#include "cosserat/se3.hpp"

#include <Eigen/SVD>

namespace cosserat {

Mat4 Motor::matrix() const {
  Mat4 m = Mat4::Zero();
  m.block<3, 1>(1, 0) = u;
  m.block<3, 3>(1, 1) = hat(phi);
  return m;
}

EuclideanMotion::EuclideanMotion(const Vec3& x, const Mat3& S, double tol) : x_(x), S_(S) {
  const double defect = orthogonality_defect(S_);
  if (defect > tol) {
    throw ValidationError("EuclideanMotion: frame matrix is not orthogonal (defect " +
                          std::to_string(defect) + ")");
  }
  if (defect > kOrthTol) {
    // polar projection: closest orthogonal matrix in Frobenius norm
    Eigen::JacobiSVD<Mat3> svd(S_, Eigen::ComputeFullU | Eigen::ComputeFullV);
    S_ = svd.matrixU() * svd.matrixV().transpose();
  }
}

Mat4 EuclideanMotion::matrix() const {
  Mat4 m = Mat4::Identity();
  m.block<3, 1>(1, 0) = x_;
  m.block<3, 3>(1, 1) = S_;
  return m;
}

EuclideanMotion EuclideanMotion::inverse() const {
  // [[1,0],[x,S]]^-1 = [[1,0],[-S^T x, S^T]]
  return EuclideanMotion(-(S_.transpose() * x_), S_.transpose());
}

EuclideanMotion compose(const EuclideanMotion& g, const EuclideanMotion& h) {
  return EuclideanMotion(g.S() * h.x() + g.x(), g.S() * h.S());
}

namespace {

// Rodrigues coefficients c1 = sin(t)/t, c2 = (1-cos(t))/t^2, c3 = (t-sin(t))/t^3,
// with 4th-order Taylor series below the small-angle threshold.
struct RodriguesCoeffs {
  double c1, c2, c3;
};

RodriguesCoeffs rodrigues_coeffs(double theta) {
  constexpr double kSmall = 1e-6;
  const double t2 = theta * theta;
  RodriguesCoeffs c;
  if (theta < kSmall) {
    c.c1 = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    c.c2 = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
    c.c3 = 1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0;
  } else {
    c.c1 = std::sin(theta) / theta;
    c.c2 = (1.0 - std::cos(theta)) / t2;
    c.c3 = (theta - std::sin(theta)) / (t2 * theta);
  }
  return c;
}

}  // namespace

Mat3 exp_so3(const Vec3& phi) {
  const double theta = phi.norm();
  const RodriguesCoeffs c = rodrigues_coeffs(theta);
  const Mat3 K = hat(phi);
  return Mat3::Identity() + c.c1 * K + c.c2 * K * K;
}

Vec3 log_so3(const Mat3& R) {
  if (R.determinant() < 0.0) {
    throw ValidationError("log_so3: improper rotation (det = -1) has no logarithm");
  }
  const double c = std::clamp((R.trace() - 1.0) / 2.0, -1.0, 1.0);
  const double theta = std::acos(c);
  if (theta >= M_PI - 1e-9) {
    throw ValidationError("log_so3: rotation angle too close to pi (principal branch only)");
  }
  const Vec3 w = vee(R);  // = sin(theta) * axis
  if (theta < 1e-6) {
    const double t2 = theta * theta;
    return (1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0) * w;
  }
  return (theta / std::sin(theta)) * w;
}

EuclideanMotion exp_se3(const Motor& w) {
  const double theta = w.phi.norm();
  const RodriguesCoeffs c = rodrigues_coeffs(theta);
  const Mat3 K = hat(w.phi);
  const Mat3 R = Mat3::Identity() + c.c1 * K + c.c2 * K * K;
  const Mat3 V = Mat3::Identity() + c.c2 * K + c.c3 * K * K;
  return EuclideanMotion(V * w.u, R);
}

Motor log_se3(const EuclideanMotion& g) {
  if (!g.proper()) {
    throw ValidationError("log_se3: improper motion (det S = -1) has no logarithm");
  }
  const Vec3 phi = log_so3(g.S());
  const double theta = phi.norm();
  const Mat3 K = hat(phi);
  Mat3 Vinv;
  if (theta < 1e-6) {
    const double t2 = theta * theta;
    Vinv = Mat3::Identity() - 0.5 * K + (1.0 / 12.0 + t2 / 720.0 + t2 * t2 / 30240.0) * K * K;
  } else {
    const double a = 1.0 / (theta * theta) -
                     (1.0 + std::cos(theta)) / (2.0 * theta * std::sin(theta));
    Vinv = Mat3::Identity() - 0.5 * K + a * K * K;
  }
  return Motor(Vinv * g.x(), phi);
}

Motor Ad(const EuclideanMotion& g, const Motor& w) {
  const Mat4 c = g.matrix() * w.matrix() * g.inverse().matrix();
  return Motor(c.block<3, 1>(1, 0), vee(c.block<3, 3>(1, 1)));
}

Motor ad(const Motor& w, const Motor& z) {
  // [w, z]: translation hat(phi_w) u_z - hat(phi_z) u_w, rotation phi_w x phi_z
  return Motor(w.phi.cross(z.u) - z.phi.cross(w.u), w.phi.cross(z.phi));
}

CoMotor coad(const Motor& w, const CoMotor& mu) {
  return CoMotor(w.phi.cross(mu.f), w.phi.cross(mu.m) + w.u.cross(mu.f));
}

CoMotor coAd(const EuclideanMotion& g, const CoMotor& mu) {
  // <coAd(g,mu), w> = <mu, Ad(g,w)>; with Ad_(x,S)(u,phi) = (S u + x cross (det S * S phi),
  // det S * S phi) this gives (S^T f, det S * S^T (m + f cross x)).
  const double d = g.det();
  return CoMotor(g.S().transpose() * mu.f,
                 d * (g.S().transpose() * (mu.m + mu.f.cross(g.x()))));
}

}  // namespace cosserat
