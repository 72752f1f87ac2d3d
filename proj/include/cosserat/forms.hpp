#pragma once

#include <functional>

#include "cosserat/fields.hpp"
#include "cosserat/se3.hpp"

namespace cosserat {

namespace detail {
inline double value_norm_inf(double v) { return std::abs(v); }
inline double value_norm_inf(const Motor& v) { return v.norm_inf(); }
inline double value_norm_inf(const CoMotor& v) { return v.norm_inf(); }
inline double value_norm_inf(const AffVal& v) { return v.norm_inf(); }
}  // namespace detail

/// Number of independent components of a degree-k form on a 3-manifold.
inline constexpr int form_comps(int degree) {
  constexpr int c[4] = {1, 3, 3, 1};
  return c[degree];
}

/// Sampled field representation of a V-valued k-form: one GridField per
/// component. Degree-2 components are stored in the contraction basis
/// A_i = i_{d/dx_i} vol, so comp a of a 2-form multiplies A_a.
template <class V>
class SmoothForm {
 public:
  SmoothForm(const BodyGrid& g, int degree) : grid_(&g), degree_(degree) {
    if (degree < 0 || degree > 3) throw ValidationError("SmoothForm: degree must be 0..3");
    comps_.reserve(form_comps(degree));
    for (int c = 0; c < form_comps(degree); ++c) comps_.emplace_back(g);
  }

  const BodyGrid& grid() const { return *grid_; }
  int degree() const { return degree_; }
  int ncomps() const { return static_cast<int>(comps_.size()); }

  GridField<V>& comp(int c) { return comps_.at(c); }
  const GridField<V>& comp(int c) const { return comps_.at(c); }

  V& at(int i, int j, int k, int c = 0) { return comps_.at(c)(i, j, k); }
  const V& at(int i, int j, int k, int c = 0) const { return comps_.at(c)(i, j, k); }

  SmoothForm& operator+=(const SmoothForm& o) {
    for (int c = 0; c < ncomps(); ++c)
      for (int v = 0; v < comps_[c].size(); ++v) comps_[c][v] += o.comps_[c][v];
    return *this;
  }
  SmoothForm& operator-=(const SmoothForm& o) {
    for (int c = 0; c < ncomps(); ++c)
      for (int v = 0; v < comps_[c].size(); ++v)
        comps_[c][v] = comps_[c][v] - o.comps_[c][v];
    return *this;
  }

  double norm_inf() const {
    double m = 0.0;
    for (const auto& f : comps_)
      for (const auto& v : f.data()) m = std::max(m, detail::value_norm_inf(v));
    return m;
  }

  /// Populate from an analytic component function (point, component) -> V.
  template <class F>
  void fill(F&& f) {
    const auto& d = grid_->dims();
    for (int c = 0; c < ncomps(); ++c)
      for (int k = 0; k <= d[2]; ++k)
        for (int j = 0; j <= d[1]; ++j)
          for (int i = 0; i <= d[0]; ++i)
            comps_[c](i, j, k) = f(grid_->position(i, j, k), c);
  }

 private:
  const BodyGrid* grid_;
  int degree_;
  std::vector<GridField<V>> comps_;
};

/// Cochain representation of a V-valued k-form: one value per k-cell,
/// interpreted as the integral of the form over that cell.
template <class V>
class Cochain {
 public:
  Cochain(const BodyGrid& g, int degree)
      : grid_(&g), degree_(degree), v_(g.num_cells(degree), detail::zero_of<V>()) {
    if (degree < 0 || degree > 3) throw ValidationError("Cochain: degree must be 0..3");
  }

  const BodyGrid& grid() const { return *grid_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(v_.size()); }

  V& operator[](int id) { return v_.at(id); }
  const V& operator[](int id) const { return v_.at(id); }

  V& at(int axis, int i, int j, int k) { return v_[cell(axis, i, j, k)]; }
  const V& at(int axis, int i, int j, int k) const { return v_[cell(axis, i, j, k)]; }

  int cell(int axis, int i, int j, int k) const {
    CellRef c{axis, i, j, k};
    return grid_->cell_id(degree_, c);
  }

  std::vector<V>& data() { return v_; }
  const std::vector<V>& data() const { return v_; }

  Cochain& operator+=(const Cochain& o) {
    for (size_t n = 0; n < v_.size(); ++n) v_[n] += o.v_[n];
    return *this;
  }
  Cochain& operator-=(const Cochain& o) {
    for (size_t n = 0; n < v_.size(); ++n) v_[n] = v_[n] - o.v_[n];
    return *this;
  }

  double norm_inf() const {
    double m = 0.0;
    for (const auto& x : v_) m = std::max(m, detail::value_norm_inf(x));
    return m;
  }

 private:
  const BodyGrid* grid_;
  int degree_;
  std::vector<V> v_;
};

// ---------------------------------------------------------------------------
// exterior derivative
// ---------------------------------------------------------------------------

/// Finite-difference exterior derivative of a sampled form.
template <class V>
SmoothForm<V> exterior_d(const SmoothForm<V>& a) {
  const BodyGrid& g = a.grid();
  const int p = a.degree();
  if (p >= 3) throw ValidationError("exterior_d: degree-3 form has no exterior derivative");
  SmoothForm<V> out(g, p + 1);
  if (p == 0) {
    for (int ax = 0; ax < 3; ++ax) out.comp(ax) = fd_derivative(a.comp(0), ax);
  } else if (p == 1) {
    for (int ax = 0; ax < 3; ++ax) {
      const auto [b, c] = axis_cycle(ax);
      GridField<V> t1 = fd_derivative(a.comp(c), b);
      GridField<V> t2 = fd_derivative(a.comp(b), c);
      for (int v = 0; v < t1.size(); ++v) out.comp(ax)[v] = t1[v] - t2[v];
    }
  } else {
    for (int ax = 0; ax < 3; ++ax) {
      GridField<V> t = fd_derivative(a.comp(ax), ax);
      for (int v = 0; v < t.size(); ++v) out.comp(0)[v] += t[v];
    }
  }
  return out;
}

/// Coboundary of a cochain: (da)(c) = a(boundary of c). Integer-signed
/// incidence, so d(d(a)) cancels term by term.
template <class V>
Cochain<V> coboundary(const Cochain<V>& a) {
  const BodyGrid& g = a.grid();
  const int p = a.degree();
  if (p >= 3) throw ValidationError("coboundary: degree-3 cochain has no coboundary");
  Cochain<V> out(g, p + 1);
  for (int id = 0; id < out.size(); ++id) {
    V acc = detail::zero_of<V>();
    for (const ChainEntry& e : g.boundary(p + 1, id)) {
      if (e.sign > 0)
        acc += a[e.cell];
      else
        acc += -a[e.cell];
    }
    out[id] = acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// wedge / cup products
// ---------------------------------------------------------------------------

namespace detail {

template <class L, class R, class Mul>
using mul_result_t = decltype(std::declval<Mul>()(std::declval<L>(), std::declval<R>()));

}  // namespace detail

/// Pointwise graded wedge of sampled forms under an arbitrary bilinear
/// value product. Supported degree pairs: (0,q), (p,0), (1,1), (1,2), (2,1).
template <class L, class R, class Mul>
auto wedge(const SmoothForm<L>& a, const SmoothForm<R>& b, Mul mul_op)
    -> SmoothForm<detail::mul_result_t<L, R, Mul>> {
  using VO = detail::mul_result_t<L, R, Mul>;
  const BodyGrid& g = a.grid();
  const int p = a.degree(), q = b.degree();
  if (p + q > 3) throw ValidationError("wedge: degree overflow");
  SmoothForm<VO> out(g, p + q);
  const int nv = g.num_vertices();
  if (p == 0 || q == 0) {
    const int nc = out.ncomps();
    for (int c = 0; c < nc; ++c)
      for (int v = 0; v < nv; ++v)
        out.comp(c)[v] = (p == 0) ? mul_op(a.comp(0)[v], b.comp(c)[v])
                                  : mul_op(a.comp(c)[v], b.comp(0)[v]);
  } else if (p == 1 && q == 1) {
    for (int ax = 0; ax < 3; ++ax) {
      const auto [s, t] = axis_cycle(ax);
      for (int v = 0; v < nv; ++v)
        out.comp(ax)[v] = mul_op(a.comp(s)[v], b.comp(t)[v]) - mul_op(a.comp(t)[v], b.comp(s)[v]);
    }
  } else {
    // (1,2) and (2,1): dx_i ^ A_j = A_j ^ dx_i = delta_ij vol
    for (int ax = 0; ax < 3; ++ax)
      for (int v = 0; v < nv; ++v) out.comp(0)[v] += mul_op(a.comp(ax)[v], b.comp(ax)[v]);
  }
  return out;
}

/// Cubical cup product under an arbitrary bilinear value product. Satisfies
/// the Leibniz rule d(a u b) = da u b + (-1)^p a u db exactly.
template <class L, class R, class Mul>
auto cup(const Cochain<L>& a, const Cochain<R>& b, Mul mul_op)
    -> Cochain<detail::mul_result_t<L, R, Mul>> {
  using VO = detail::mul_result_t<L, R, Mul>;
  const BodyGrid& g = a.grid();
  const int p = a.degree(), q = b.degree();
  if (p + q > 3) throw ValidationError("cup: degree overflow");
  Cochain<VO> out(g, p + q);

  for (int id = 0; id < out.size(); ++id) {
    const CellRef c = g.cell_ref(p + q, id);
    std::array<int, 3> v{c.i, c.j, c.k};
    VO acc = detail::zero_of<VO>();
    if (p == 0) {
      acc = mul_op(a[g.vertex_id(v[0], v[1], v[2])], b[id]);
    } else if (q == 0) {
      const auto sp = BodyGrid::spans(p, c.axis);
      acc = mul_op(a[id], b[g.vertex_id(v[0] + sp[0], v[1] + sp[1], v[2] + sp[2])]);
    } else if (p == 1 && q == 1) {
      // front edge in direction s, back edge in direction t, minus the swap
      const auto [s, t] = axis_cycle(c.axis);
      auto vs = v, vt = v;
      vs[s] += 1;
      vt[t] += 1;
      acc = mul_op(a[g.edge_id(s, v[0], v[1], v[2])], b[g.edge_id(t, vs[0], vs[1], vs[2])]) -
            mul_op(a[g.edge_id(t, v[0], v[1], v[2])], b[g.edge_id(s, vt[0], vt[1], vt[2])]);
    } else if (p == 1 && q == 2) {
      for (int ax = 0; ax < 3; ++ax) {
        auto w = v;
        w[ax] += 1;
        acc += mul_op(a[g.edge_id(ax, v[0], v[1], v[2])], b[g.face_id(ax, w[0], w[1], w[2])]);
      }
    } else {  // p == 2 && q == 1
      for (int ax = 0; ax < 3; ++ax) {
        const auto [s, t] = axis_cycle(ax);
        auto w = v;
        w[s] += 1;
        w[t] += 1;
        acc += mul_op(a[g.face_id(ax, v[0], v[1], v[2])], b[g.edge_id(ax, w[0], w[1], w[2])]);
      }
    }
    out[id] = acc;
  }
  return out;
}

// value products
inline AffVal mul_aff(const AffVal& a, const AffVal& b) { return mul(a, b); }
inline CoMotor mul_coad(const Motor& w, const CoMotor& mu) { return coad(w, mu); }
inline double mul_pair(const CoMotor& mu, const Motor& w) { return pair(mu, w); }

// ---------------------------------------------------------------------------
// value-space conversions
// ---------------------------------------------------------------------------

template <class F, class VI, class VO>
void convert_values(const SmoothForm<VI>& in, SmoothForm<VO>& out, F&& f) {
  for (int c = 0; c < in.ncomps(); ++c)
    for (int v = 0; v < in.comp(c).size(); ++v) out.comp(c)[v] = f(in.comp(c)[v]);
}

template <class F, class VI, class VO>
void convert_values(const Cochain<VI>& in, Cochain<VO>& out, F&& f) {
  for (int v = 0; v < in.size(); ++v) out[v] = f(in[v]);
}

inline SmoothForm<AffVal> as_aff(const SmoothForm<Motor>& a) {
  SmoothForm<AffVal> out(a.grid(), a.degree());
  convert_values(a, out, [](const Motor& w) { return AffVal(w); });
  return out;
}
inline Cochain<AffVal> as_aff(const Cochain<Motor>& a) {
  Cochain<AffVal> out(a.grid(), a.degree());
  convert_values(a, out, [](const Motor& w) { return AffVal(w); });
  return out;
}
/// Skew projection back to motor values (exact on algebra-valued results).
inline SmoothForm<Motor> as_motor(const SmoothForm<AffVal>& a) {
  SmoothForm<Motor> out(a.grid(), a.degree());
  convert_values(a, out, [](const AffVal& v) { return v.skew_motor(); });
  return out;
}
inline Cochain<Motor> as_motor(const Cochain<AffVal>& a) {
  Cochain<Motor> out(a.grid(), a.degree());
  convert_values(a, out, [](const AffVal& v) { return v.skew_motor(); });
  return out;
}

// ---------------------------------------------------------------------------
// flat reference connection
// ---------------------------------------------------------------------------

/// The Maurer-Cartan form in the identity trivialization: translational
/// part dx, rotational part zero. Flat: d omega + omega ^ omega = 0.
struct FlatConnection {
  static SmoothForm<Motor> smooth(const BodyGrid& g) {
    SmoothForm<Motor> w(g, 1);
    w.fill([](const Vec3&, int c) {
      Vec3 e = Vec3::Zero();
      e[c] = 1.0;
      return Motor(e, Vec3::Zero());
    });
    return w;
  }
  static Cochain<Motor> cochain(const BodyGrid& g) {
    Cochain<Motor> w(g, 1);
    for (int id = 0; id < w.size(); ++id) {
      const CellRef c = g.cell_ref(1, id);
      Vec3 e = Vec3::Zero();
      e[c.axis] = g.spacing()[c.axis];
      w[id] = Motor(e, Vec3::Zero());
    }
    return w;
  }
};

// ---------------------------------------------------------------------------
// covariant derivatives
// ---------------------------------------------------------------------------

/// Exterior covariant derivative D a = d a + w ^ a - (-1)^p a ^ w for a
/// motor-valued p-form and motor-valued connection 1-form w.
inline SmoothForm<Motor> covariant_d(const SmoothForm<Motor>& a, const SmoothForm<Motor>& conn) {
  const int p = a.degree();
  if (p >= 3) throw ValidationError("covariant_d: degree overflow");
  if (conn.degree() != 1) throw ValidationError("covariant_d: connection must be a 1-form");
  auto acc = as_aff(exterior_d(a));
  acc += wedge(as_aff(conn), as_aff(a), mul_aff);
  auto aw = wedge(as_aff(a), as_aff(conn), mul_aff);
  const double s = (p % 2 == 0) ? -1.0 : 1.0;
  for (int c = 0; c < acc.ncomps(); ++c)
    for (int v = 0; v < acc.comp(c).size(); ++v) acc.comp(c)[v] += aw.comp(c)[v] * s;
  return as_motor(acc);
}

inline Cochain<Motor> covariant_d(const Cochain<Motor>& a, const Cochain<Motor>& conn) {
  const int p = a.degree();
  if (p >= 3) throw ValidationError("covariant_d: degree overflow");
  if (conn.degree() != 1) throw ValidationError("covariant_d: connection must be a 1-form");
  auto acc = as_aff(coboundary(a));
  acc += cup(as_aff(conn), as_aff(a), mul_aff);
  auto aw = cup(as_aff(a), as_aff(conn), mul_aff);
  const double s = (p % 2 == 0) ? -1.0 : 1.0;
  for (int v = 0; v < acc.size(); ++v) acc[v] += aw[v] * s;
  return as_motor(acc);
}

/// Dual-space covariant derivative D* P = d P + ad*_w P for a co-motor
/// valued p-form.
inline SmoothForm<CoMotor> covariant_d_star(const SmoothForm<CoMotor>& a,
                                            const SmoothForm<Motor>& conn) {
  if (a.degree() >= 3) throw ValidationError("covariant_d_star: degree overflow");
  if (conn.degree() != 1) throw ValidationError("covariant_d_star: connection must be a 1-form");
  auto out = exterior_d(a);
  out += wedge(conn, a, mul_coad);
  return out;
}

inline Cochain<CoMotor> covariant_d_star(const Cochain<CoMotor>& a, const Cochain<Motor>& conn) {
  if (a.degree() >= 3) throw ValidationError("covariant_d_star: degree overflow");
  if (conn.degree() != 1) throw ValidationError("covariant_d_star: connection must be a 1-form");
  auto out = coboundary(a);
  out += cup(conn, a, mul_coad);
  return out;
}

// ---------------------------------------------------------------------------
// pairing
// ---------------------------------------------------------------------------

/// Duality pairing of a co-motor valued p-form with a motor-valued q-form,
/// <mu (x) alpha, s (x) beta> = <mu, s> alpha ^ beta, a scalar (p+q)-form.
inline SmoothForm<double> pairing(const SmoothForm<CoMotor>& sigma, const SmoothForm<Motor>& e) {
  return wedge(sigma, e, mul_pair);
}
inline Cochain<double> pairing(const Cochain<CoMotor>& sigma, const Cochain<Motor>& e) {
  return cup(sigma, e, mul_pair);
}

// ---------------------------------------------------------------------------
// integration and sampling
// ---------------------------------------------------------------------------

/// Signed sum of cochain values over a chain of k-cells.
template <class V>
V integrate(const Cochain<V>& a, const Chain& chain) {
  V acc = detail::zero_of<V>();
  for (const ChainEntry& e : chain) {
    if (e.cell < 0 || e.cell >= a.size())
      throw ValidationError("integrate: cell index out of range");
    acc += (e.sign > 0) ? a[e.cell] : -a[e.cell];
  }
  return acc;
}

/// De Rham map: integrate an analytic k-form (given componentwise in the
/// same basis as SmoothForm) over the k-cells by degree-matched Gauss
/// quadrature (2 points per spanned axis).
template <class V>
Cochain<V> de_rham(const BodyGrid& g, int degree,
                   const std::function<V(const Vec3&, int)>& field) {
  Cochain<V> out(g, degree);
  constexpr double kGauss = 0.28867513459481287;  // 1/(2 sqrt(3))
  for (int id = 0; id < out.size(); ++id) {
    const CellRef c = g.cell_ref(degree, id);
    const auto sp = BodyGrid::spans(degree, c.axis);
    const Vec3 base = g.position(c.i, c.j, c.k);
    // tensor Gauss points over the spanned axes
    std::array<std::vector<double>, 3> offs;
    double scale = 1.0;
    for (int a = 0; a < 3; ++a) {
      const double h = g.spacing()[a];
      if (sp[a]) {
        offs[a] = {h * (0.5 - kGauss), h * (0.5 + kGauss)};
        scale *= h / 2.0;
      } else {
        offs[a] = {0.0};
      }
    }
    const int comp = (degree == 0 || degree == 3) ? 0 : c.axis;
    V acc = detail::zero_of<V>();
    for (double oz : offs[2])
      for (double oy : offs[1])
        for (double ox : offs[0]) acc += field(base + Vec3(ox, oy, oz), comp);
    out[id] = acc * scale;
  }
  return out;
}

/// De Rham map of a sampled form, with trilinear interpolation supplying
/// the quadrature values.
template <class V>
Cochain<V> de_rham(const SmoothForm<V>& f) {
  const BodyGrid& g = f.grid();
  std::function<V(const Vec3&, int)> eval = [&f](const Vec3& p, int comp) {
    return interpolate(f.comp(comp), p);
  };
  return de_rham<V>(g, f.degree(), eval);
}

}  // namespace cosserat
