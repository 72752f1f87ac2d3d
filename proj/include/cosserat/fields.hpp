#pragma once

#include <functional>
#include <type_traits>
#include <vector>

#include "cosserat/grid.hpp"

namespace cosserat {

namespace detail {
// Eigen types default-construct uninitialized; everything we store must
// start at zero.
template <class T>
T zero_of() {
  if constexpr (requires { T::Zero(); }) {
    return T::Zero();
  } else {
    return T{};
  }
}
}  // namespace detail

/// Per-vertex storage over a BodyGrid.
template <class T>
class GridField {
 public:
  explicit GridField(const BodyGrid& g) : grid_(&g), v_(g.num_vertices(), detail::zero_of<T>()) {}

  const BodyGrid& grid() const { return *grid_; }

  T& operator()(int i, int j, int k) { return v_[grid_->vertex_id(i, j, k)]; }
  const T& operator()(int i, int j, int k) const { return v_[grid_->vertex_id(i, j, k)]; }
  T& operator[](int vid) { return v_[vid]; }
  const T& operator[](int vid) const { return v_[vid]; }

  std::vector<T>& data() { return v_; }
  const std::vector<T>& data() const { return v_; }
  int size() const { return static_cast<int>(v_.size()); }

  template <class F>
  void fill(F&& f) {
    const auto& d = grid_->dims();
    for (int k = 0; k <= d[2]; ++k)
      for (int j = 0; j <= d[1]; ++j)
        for (int i = 0; i <= d[0]; ++i)
          (*this)(i, j, k) = f(grid_->position(i, j, k));
  }

 private:
  const BodyGrid* grid_;
  std::vector<T> v_;
};

/// Second-order finite-difference derivative along an axis: central in the
/// interior, one-sided three-point at the boundary.
template <class T>
GridField<T> fd_derivative(const GridField<T>& f, int axis) {
  const BodyGrid& g = f.grid();
  GridField<T> out(g);
  const double h = g.spacing()[axis];
  const int n = g.dims()[axis];  // last vertex index along axis
  const auto& d = g.dims();
  for (int k = 0; k <= d[2]; ++k)
    for (int j = 0; j <= d[1]; ++j)
      for (int i = 0; i <= d[0]; ++i) {
        std::array<int, 3> at{i, j, k};
        const int p = at[axis];
        auto shift = [&](int dp) {
          auto s = at;
          s[axis] += dp;
          return f(s[0], s[1], s[2]);
        };
        T v;
        if (p == 0) {
          v = (shift(1) * 4.0 - shift(2) - shift(0) * 3.0) * (0.5 / h);
        } else if (p == n) {
          v = (shift(0) * 3.0 - shift(-1) * 4.0 + shift(-2)) * (0.5 / h);
        } else {
          v = (shift(1) - shift(-1)) * (0.5 / h);
        }
        out(i, j, k) = v;
      }
  return out;
}

/// Trilinear interpolation at an arbitrary point inside the box.
template <class T>
T interpolate(const GridField<T>& f, const Vec3& p) {
  const BodyGrid& g = f.grid();
  std::array<int, 3> c{};
  Vec3 w;
  for (int a = 0; a < 3; ++a) {
    const double s = (p[a] - g.origin()[a]) / g.spacing()[a];
    int i = static_cast<int>(std::floor(s));
    i = std::clamp(i, 0, g.dims()[a] - 1);
    c[a] = i;
    w[a] = s - i;
  }
  T out = detail::zero_of<T>();
  for (int dz = 0; dz < 2; ++dz)
    for (int dy = 0; dy < 2; ++dy)
      for (int dx = 0; dx < 2; ++dx) {
        const double wt = (dx ? w[0] : 1 - w[0]) * (dy ? w[1] : 1 - w[1]) * (dz ? w[2] : 1 - w[2]);
        out += f(c[0] + dx, c[1] + dy, c[2] + dz) * wt;
      }
  return out;
}

/// Trapezoid-consistent vertex weight for volume integrals (product of
/// per-axis weights h/2 at the ends, h inside).
inline double vertex_weight(const BodyGrid& g, int i, int j, int k) {
  auto w1 = [&](int p, int axis) {
    const double h = g.spacing()[axis];
    return (p == 0 || p == g.dims()[axis]) ? 0.5 * h : h;
  };
  return w1(i, 0) * w1(j, 1) * w1(k, 2);
}

}  // namespace cosserat
