#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cosserat {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

/// Input that violates a documented precondition (bad geometry, bad chain,
/// non-orthogonal rotation, non-positive-definite material, ...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Linear solver breakdown (non-convergence, singular system).
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Levi-Civita permutation symbol.
inline constexpr double levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0.0;
  // even permutations of (0,1,2)
  if ((i == 0 && j == 1) || (i == 1 && j == 2) || (i == 2 && j == 0)) return 1.0;
  return -1.0;
}

/// Skew-symmetric matrix of an axial vector: hat(v) * w == v x w.
inline Mat3 hat(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
      -v.y(), v.x(), 0.0;
  return m;
}

/// Axial vector of a skew-symmetric matrix; inverse of hat() on its image.
/// For a general matrix this extracts the skew part, vee((M - M^T)/2).
inline Vec3 vee(const Mat3& m) {
  return 0.5 * Vec3(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
}

/// Cyclic successor pair of an axis: axis_cycle(0) = {1,2}, etc.
inline constexpr std::array<int, 2> axis_cycle(int a) {
  return {(a + 1) % 3, (a + 2) % 3};
}

inline double orthogonality_defect(const Mat3& s) {
  return (s.transpose() * s - Mat3::Identity()).cwiseAbs().maxCoeff();
}

}  // namespace cosserat
