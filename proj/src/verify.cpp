#include "cosserat/verify.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "cosserat/defects.hpp"
#include "cosserat/elastostatics.hpp"
#include "cosserat/presets.hpp"

namespace cosserat::verify {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

double fit_slope(const std::vector<double>& h, const std::vector<double>& err) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(h.size());
  for (int i = 0; i < n; ++i) {
    const double x = std::log(h[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// order check with an exactness floor: discretely exact identities sit at
// the roundoff floor, far below any h^2 curve, where a slope fit would be
// meaningless
std::string order_detail(const std::vector<double>& hs, const std::vector<double>& errs,
                         bool& pass, double lo = 1.8, double hi = 2.2, double floor = 1e-11) {
  double worst = 0;
  for (double e : errs) worst = std::max(worst, e);
  if (worst < floor) {
    pass = true;
    return "discretely exact (max residual " + fmt(worst) + ")";
  }
  const double slope = fit_slope(hs, errs);
  pass = slope >= lo && slope <= hi;
  std::ostringstream os;
  os.precision(3);
  os << "observed order " << slope << " (residuals";
  for (double e : errs) os << " " << fmt(e);
  os << ")";
  return os.str();
}

struct Ctx {
  Level level;
  std::mt19937_64 gen;
  std::vector<CheckResult>* out;

  void add(const std::string& name, bool pass, const std::string& detail) {
    out->push_back({name, pass, detail});
  }

  double uniform(double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(gen);
  }
  double lattice() {
    std::uniform_int_distribution<int> d(-4096, 4096);
    return d(gen) * 0x1p-12;
  }
  Vec3 rvec(double s = 1.0) { return Vec3(uniform(), uniform(), uniform()) * s; }
  Vec3 lvec() { return Vec3(lattice(), lattice(), lattice()); }
  Motor rmotor(double s = 1.0) { return Motor(rvec(s), rvec(s)); }
  CoMotor rcomotor(double s = 1.0) { return CoMotor(rvec(s), rvec(s)); }
  Mat3 rrot(double max_angle = 3.0) {
    Vec3 axis = rvec();
    if (axis.norm() < 1e-12) axis = Vec3(1, 0, 0);
    axis.normalize();
    return exp_so3(axis * uniform(0.0, max_angle));
  }

  std::vector<int> slope_grids() const { return level == Level::Full ? std::vector<int>{8, 16, 32}
                                                                     : std::vector<int>{8, 16}; }
};

BodyGrid unit_grid(int n) {
  return BodyGrid({n, n, n}, Vec3(1.0 / n, 1.0 / n, 1.0 / n));
}
BodyGrid dyadic_grid(int n) {
  return BodyGrid({n, n, n}, Vec3(0.25, 0.25, 0.25));
}

// ---- algebraic kernel ---------------------------------------

void check_kernel(Ctx& c) {
  const auto t0 = Clock::now();
  const int n = c.level == Level::Full ? 10000 : 2000;

  double rt = 0;
  for (int i = 0; i < n; ++i) {
    Motor w(c.rvec(1.5), Vec3::Zero());
    Vec3 axis = c.rvec();
    if (axis.norm() < 1e-12) axis = Vec3(0, 0, 1);
    w.phi = axis.normalized() * c.uniform(0.0, 3.0);
    const Motor back = log_se3(exp_se3(w));
    rt = std::max(rt, (back.packed() - w.packed()).cwiseAbs().maxCoeff());
  }

  double duality = 0;
  for (int i = 0; i < n; ++i) {
    const Motor x = c.rmotor(2.0), y = c.rmotor(2.0);
    const CoMotor mu = c.rcomotor(2.0);
    duality = std::max(duality, std::abs(pair(coad(x, mu), y) + pair(mu, ad(x, y))));
  }
  const double dt = seconds_since(t0);

  c.add("kernel: exp/log round trip < 1e-10", rt < 1e-10, "max defect " + fmt(rt));
  c.add("kernel: coadjoint duality < 1e-12", duality < 1e-12, "max defect " + fmt(duality));
  c.add("kernel: runtime < 5 s", dt < 5.0, fmt(dt) + " s for " + std::to_string(2 * n) + " samples");
}

// ---- discrete exactness --------------------------------------

void check_exactness(Ctx& c) {
  const std::vector<int> grids =
      c.level == Level::Full ? std::vector<int>{4, 8, 16} : std::vector<int>{4, 8};

  // coboundary^2 = 0 exactly, scalar and motor cochains
  double dd = 0;
  for (int n : grids) {
    BodyGrid g = dyadic_grid(n);
    Cochain<double> f(g, 0);
    for (int i = 0; i < f.size(); ++i) f[i] = c.lattice();
    dd = std::max(dd, coboundary(coboundary(f)).norm_inf());
    Cochain<Motor> m(g, 1);
    for (int i = 0; i < m.size(); ++i) m[i] = Motor(c.lvec(), c.lvec());
    dd = std::max(dd, coboundary(coboundary(m)).norm_inf());
  }
  c.add("exactness: coboundary^2 = 0 exactly", dd == 0.0, "max entry " + fmt(dd));

  // discrete Stokes on random lattice cochains over rectangular patches
  double stokes = 0;
  for (int n : grids) {
    BodyGrid g = dyadic_grid(n);
    Cochain<double> a(g, 1);
    for (int i = 0; i < a.size(); ++i) a[i] = c.lattice();
    const Cochain<double> da = coboundary(a);
    auto [loop, cap] = rect_loop_and_cap(g, n / 2, 0, n - 1, 1, n - 1);
    stokes = std::max(stokes, std::abs(integrate(a, loop) - integrate(da, cap)));
  }
  c.add("exactness: discrete Stokes exact", stokes == 0.0, "max defect " + fmt(stokes));

  // smooth D D and D* D* residual decay
  std::vector<double> hs, e1, e2;
  for (int n : c.slope_grids()) {
    BodyGrid g = unit_grid(n);
    auto w = FlatConnection::smooth(g);
    const AnalyticDisplacement ad = AnalyticDisplacement::random(101, 0.8);
    SmoothForm<Motor> xi(g, 0);
    xi.fill([&](const Vec3& p, int) { return Motor(ad.u(p), ad.phi(p)); });
    e1.push_back(covariant_d(covariant_d(xi, w), w).norm_inf());

    const AnalyticStress as = AnalyticStress::random(102, 0.8);
    SmoothForm<CoMotor> Pi(g, 1);
    Pi.fill([&](const Vec3& p, int slot) {
      return CoMotor(as.sigma(p).row(slot).transpose(), as.chi(p).row(slot).transpose());
    });
    e2.push_back(covariant_d_star(covariant_d_star(Pi, w), w).norm_inf());
    hs.push_back(1.0 / n);
  }
  bool p1 = false, p2 = false;
  const std::string d1 = order_detail(hs, e1, p1);
  const std::string d2 = order_detail(hs, e2, p2);
  c.add("exactness: D(D(.)) -> 0 at second order or better", p1, d1);
  c.add("exactness: D*(D*(.)) -> 0 at second order or better", p2, d2);
}

// ---- rigid nullity and invariance -----------------------------

void check_rigid(Ctx& c) {
  BodyGrid g = unit_grid(8);
  const int n = c.level == Level::Full ? 100 : 25;
  double worst = 0;
  for (int i = 0; i < n; ++i) {
    const EuclideanMotion m(c.rvec(2.0), c.rrot(2.5));
    worst = std::max(worst, finite_strain(Configuration::rigid(g, m)).norm_inf());
  }
  c.add("rigid motions: strain nullity < 1e-10", worst < 1e-10, "max strain " + fmt(worst));

  const Configuration cfg = presets::configuration_preset(g, "wavy", {{"amplitude", 0.1}});
  const StrainState e0 = finite_strain(cfg);
  double inv = 0;
  for (int i = 0; i < 20; ++i) {
    const EuclideanMotion m(c.rvec(2.0), c.rrot(2.5));
    const StrainState e1 = finite_strain(cfg.left_translated(m));
    for (int v = 0; v < e0.eps.size(); ++v) {
      inv = std::max(inv, (e0.eps[v] - e1.eps[v]).cwiseAbs().maxCoeff());
      inv = std::max(inv, (e0.tau[v] - e1.tau[v]).cwiseAbs().maxCoeff());
    }
  }
  c.add("rigid motions: left invariance < 1e-10", inv < 1e-10, "max change " + fmt(inv));
}

// ---- linearization order --------------------------------------

void check_linearization(Ctx& c) {
  BodyGrid g = unit_grid(8);
  const DisplacementField xi = presets::displacement_preset(g, "trig", {{"seed", 11}});
  std::vector<double> ts{1e-2, 1e-3, 1e-4}, defects;
  for (double t : ts) defects.push_back(linearization_check(xi, t));
  const double slope = fit_slope(ts, defects);
  std::ostringstream os;
  os.precision(3);
  os << "slope " << slope << " over t = 1e-2..1e-4";
  c.add("linearization: defect decays with slope 1.0 +- 0.1", slope > 0.9 && slope < 1.1,
        os.str());
}

// ---- moving frames cross-check --------------------------------

void check_moving_frames(Ctx& c) {
  std::vector<double> hs, errs;
  for (int n : c.slope_grids()) {
    BodyGrid g = unit_grid(n);
    const Configuration cfg = presets::configuration_preset(g, "wavy", {{"amplitude", 0.15}});
    const StrainState a = finite_strain(cfg);
    const StrainState b = moving_frames_strain(cfg);
    const auto& d = g.dims();
    double diff = 0;
    for (int k = 1; k < d[2]; ++k)
      for (int j = 1; j < d[1]; ++j)
        for (int i = 1; i < d[0]; ++i) {
          diff = std::max(diff, (a.eps(i, j, k) - b.eps(i, j, k)).cwiseAbs().maxCoeff());
          diff = std::max(diff, (a.tau(i, j, k) - b.tau(i, j, k)).cwiseAbs().maxCoeff());
        }
    hs.push_back(1.0 / n);
    errs.push_back(diff);
  }
  bool pass = false;
  const std::string detail = order_detail(hs, errs, pass);
  c.add("moving frames: agreement order 2.0 +- 0.2", pass, detail);
}

// ---- compatibility and circuits -------------------------------

void check_compatibility(Ctx& c) {
  const AnalyticDisplacement ad = AnalyticDisplacement::random(21, 0.7);
  std::vector<double> hs, errs;
  for (int n : c.slope_grids()) {
    BodyGrid g = unit_grid(n);
    StrainState e(g);
    const auto& d = g.dims();
    for (int k = 0; k <= d[2]; ++k)
      for (int j = 0; j <= d[1]; ++j)
        for (int i = 0; i <= d[0]; ++i) {
          const Vec3 p = g.position(i, j, k);
          e.eps(i, j, k) = ad.strain_eps(p);
          e.tau(i, j, k) = ad.strain_tau(p);
        }
    hs.push_back(1.0 / n);
    errs.push_back(strain_incompatibility(e).norm_inf());
  }
  bool pass = false;
  const std::string detail = order_detail(hs, errs, pass);
  c.add("compatibility: De of integrable strain, order 2.0 +- 0.2", pass, detail);

  // defect line circuits, exact identities on a dyadic grid
  BodyGrid g = dyadic_grid(10);
  const Motor mu(Vec3(0.75, -0.5, 0.25), Vec3(0.25, 0.5, -0.75));
  const auto e = defect_line(g, 4, 4, mu);
  auto [l1, c1] = rect_loop_and_cap(g, 5, 3, 6, 3, 6);
  auto [l2, c2] = rect_loop_and_cap(g, 5, 1, 9, 2, 8);
  const CircuitReport r1 = burgers_circuit(e, l1, c1);
  const CircuitReport r2 = burgers_circuit(e, l2, c2);
  const double d_flux = (r1.circuit.packed() - r1.flux.packed()).cwiseAbs().maxCoeff();
  const double d_mu = (r1.circuit.packed() - mu.packed()).cwiseAbs().maxCoeff();
  const double d_homo = (r1.circuit.packed() - r2.circuit.packed()).cwiseAbs().maxCoeff();
  c.add("compatibility: circuit equals defect flux exactly", d_flux == 0.0 && d_mu == 0.0,
        "circuit-flux " + fmt(d_flux) + ", circuit-charge " + fmt(d_mu));
  c.add("compatibility: homotopic loops agree exactly", d_homo == 0.0, "defect " + fmt(d_homo));
}

// ---- balance and virtual work ---------------------------------

void check_balance(Ctx& c) {
  const AnalyticStress as = AnalyticStress::random(31, 0.9, 1.0);

  // coordinate balance against the dual covariant derivative
  BodyGrid g = unit_grid(8);
  StressState S(g);
  LoadState L(g);
  const auto& d = g.dims();
  for (int k = 0; k <= d[2]; ++k)
    for (int j = 0; j <= d[1]; ++j)
      for (int i = 0; i <= d[0]; ++i) {
        const Vec3 p = g.position(i, j, k);
        S.sigma(i, j, k) = as.sigma(p);
        S.chi(i, j, k) = as.chi(p);
        L.f(i, j, k) = as.equilibrium_force(p);
        L.m(i, j, k) = as.equilibrium_torque(p);
      }
  const BalanceResidual direct = balance_residual(S, L);
  const auto dstar = covariant_d_star(S.as_form(), FlatConnection::smooth(g));
  double agree = 0;
  for (int v = 0; v < g.num_vertices(); ++v) {
    const CoMotor& cm = dstar.comp(0)[v];
    agree = std::max(agree, (direct.force[v] - (cm.f + L.f[v])).cwiseAbs().maxCoeff());
    agree = std::max(agree, (direct.moment[v] - (cm.m + L.m[v])).cwiseAbs().maxCoeff());
  }
  c.add("balance: coordinate laws match D* Sigma + F", agree < 1e-10, "max gap " + fmt(agree));

  // virtual work residual for 20 random virtual fields; measured on the
  // finer grids where the one-sided boundary constants stop dominating
  const int nfields = 20;
  std::vector<double> hs, errs;
  const std::vector<int> vw_grids =
      c.level == Level::Full ? std::vector<int>{16, 32, 64} : std::vector<int>{16, 32};
  for (int n : vw_grids) {
    BodyGrid gn = unit_grid(n);
    StressState Sn(gn);
    LoadState Ln(gn);
    const auto& dn = gn.dims();
    for (int k = 0; k <= dn[2]; ++k)
      for (int j = 0; j <= dn[1]; ++j)
        for (int i = 0; i <= dn[0]; ++i) {
          const Vec3 p = gn.position(i, j, k);
          Sn.sigma(i, j, k) = as.sigma(p);
          Sn.chi(i, j, k) = as.chi(p);
          Ln.f(i, j, k) = as.equilibrium_force(p);
          Ln.m(i, j, k) = as.equilibrium_torque(p);
        }
    double worst = 0;
    for (int f = 0; f < nfields; ++f) {
      const DisplacementField xi =
          presets::displacement_preset(gn, "trig", {{"seed", 500 + f}});
      worst = std::max(worst, std::abs(virtual_work_residual(Sn, Ln, xi)));
    }
    hs.push_back(1.0 / n);
    errs.push_back(worst);
  }
  const double slope = fit_slope(hs, errs);
  std::ostringstream os;
  os.precision(3);
  os << "slope " << slope << " of the max residual over " << nfields << " fields";
  c.add("balance: virtual work residual decays at second order", slope >= 1.8, os.str());
}

// ---- constitutive checks ----------------------------------------------

void check_constitutive(Ctx& c) {
  const StiffnessOperator iso =
      build_stiffness(presets::reference_isotropic(), SymmetryClass::Isotropic);
  const StiffnessOperator hemi =
      build_stiffness(presets::reference_hemitropic(), SymmetryClass::Hemitropic);

  double grad = 0;
  for (int i = 0; i < 100; ++i) {
    Mat3 eps, tau;
    for (int r = 0; r < 3; ++r)
      for (int cc = 0; cc < 3; ++cc) {
        eps(r, cc) = c.uniform();
        tau(r, cc) = c.uniform();
      }
    grad = std::max(grad, energy_gradient_check(hemi, eps, tau));
  }
  c.add("constitutive: hyperelastic gradient check < 1e-6", grad < 1e-6,
        "max relative defect " + fmt(grad));

  // odd cycle work against the analytic area formula
  MaterialConstants mc = presets::reference_isotropic();
  const int A = 2, B = 11;
  const double kk = 0.35, r = 0.8;
  mc.odd.push_back({A, B, kk});
  const StiffnessOperator odd = build_stiffness(mc, SymmetryClass::Odd);
  std::vector<Vec18> path;
  const int steps = 1000;
  for (int s = 0; s <= steps; ++s) {
    Vec18 e = Vec18::Zero();
    e[A] = r * std::cos(2 * M_PI * s / steps);
    e[B] = r * std::sin(2 * M_PI * s / steps);
    path.push_back(e);
  }
  path.back() = path.front();
  const double W = cycle_work(odd, path);
  const double expect = M_PI * r * r * (odd.matrix()(B, A) - odd.matrix()(A, B));
  const double rel = std::abs(W - expect) / std::abs(expect);
  c.add("constitutive: odd cycle work matches pi r^2 (C_BA - C_AB) to 1e-4", rel < 1e-4,
        "relative error " + fmt(rel));

  Mat3 reflect = Mat3::Identity();
  reflect(2, 2) = -1.0;
  double iso_defect = 0;
  for (int i = 0; i < 50; ++i) {
    Mat3 R = c.rrot();
    if (i % 2 == 1) R = Mat3(R * reflect);
    iso_defect = std::max(iso_defect, material_symmetry_check(iso, R, 20, 9000 + i));
  }
  c.add("constitutive: isotropic O(3) invariance < 1e-10", iso_defect < 1e-10,
        "max defect " + fmt(iso_defect));

  double hemi_proper = 0;
  for (int i = 0; i < 50; ++i)
    hemi_proper = std::max(hemi_proper, material_symmetry_check(hemi, c.rrot(), 20, 9100 + i));
  const double hemi_improper =
      std::min(material_symmetry_check(hemi, Mat3(-Mat3::Identity()), 20),
               material_symmetry_check(hemi, reflect, 20));
  c.add("constitutive: hemitropic chirality signature",
        hemi_proper < 1e-10 && hemi_improper > 1e-6,
        "proper defect " + fmt(hemi_proper) + ", improper defect " + fmt(hemi_improper));
}

// ---- solver checks ----------------------------------------------------

void check_solver(Ctx& c) {
  const AnalyticDisplacement preset = AnalyticDisplacement::random(71, 0.6, 1.0);
  const std::vector<int> grids =
      c.level == Level::Full ? std::vector<int>{8, 16, 32} : std::vector<int>{6, 12};
  const SolveMethod method =
      c.level == Level::Full ? SolveMethod::ConjugateGradient : SolveMethod::Direct;

  const MmsResult iso = mms_verify(
      build_stiffness(presets::reference_isotropic(), SymmetryClass::Isotropic), preset, grids,
      method);
  std::ostringstream os1;
  os1.precision(3);
  os1 << "order " << iso.observed_order << " (errors";
  for (double e : iso.errors) os1 << " " << fmt(e);
  os1 << ")";
  c.add("solver: isotropic convergence order 2.0 +- 0.2",
        iso.observed_order > 1.8 && iso.observed_order < 2.2, os1.str());

  const MmsResult hemi = mms_verify(
      build_stiffness(presets::reference_hemitropic(), SymmetryClass::Hemitropic), preset, grids,
      method);
  std::ostringstream os2;
  os2.precision(3);
  os2 << "order " << hemi.observed_order;
  c.add("solver: hemitropic convergence order 2.0 +- 0.2",
        hemi.observed_order > 1.8 && hemi.observed_order < 2.2, os2.str());

  // reciprocity
  BodyGrid g = unit_grid(7);
  const StiffnessOperator C =
      build_stiffness(presets::reference_hemitropic(), SymmetryClass::Hemitropic);
  const AnalyticDisplacement da = AnalyticDisplacement::random(81);
  const AnalyticDisplacement db = AnalyticDisplacement::random(82);
  ElastostaticsProblem p1(g, C), p2(g, C);
  p1.loads.f.fill([&](const Vec3& p) { return da.u(p); });
  p1.loads.m.fill([&](const Vec3& p) { return da.phi(p); });
  p2.loads.f.fill([&](const Vec3& p) { return db.u(p); });
  p2.loads.m.fill([&](const Vec3& p) { return db.phi(p); });
  const DisplacementField u1 = solve(p1, SolveMethod::Direct);
  const DisplacementField u2 = solve(p2, SolveMethod::Direct);
  double w12 = 0, w21 = 0;
  const auto& d = g.dims();
  const double cell = g.spacing().prod();
  for (int k = 1; k < d[2]; ++k)
    for (int j = 1; j < d[1]; ++j)
      for (int i = 1; i < d[0]; ++i) {
        w12 += cell * (u1.u(i, j, k).dot(p2.loads.f(i, j, k)) +
                       u1.phi(i, j, k).dot(p2.loads.m(i, j, k)));
        w21 += cell * (u2.u(i, j, k).dot(p1.loads.f(i, j, k)) +
                       u2.phi(i, j, k).dot(p1.loads.m(i, j, k)));
      }
  const double defect = std::abs(w12 - w21) / std::max(1.0, std::abs(w12));
  c.add("solver: reciprocity defect < 1e-8", defect < 1e-8, "defect " + fmt(defect));

  // post-solve residuals of the reconstructed stress decay at second order
  {
    const StiffnessOperator Ci =
        build_stiffness(presets::reference_isotropic(), SymmetryClass::Isotropic);
    std::vector<double> rh, rerr;
    for (int n : (c.level == Level::Full ? std::vector<int>{16, 32} : std::vector<int>{8, 16})) {
      BodyGrid gs = unit_grid(n);
      ElastostaticsProblem p(gs, Ci);
      p.loads = manufactured_loads(gs, Ci, preset);
      p.dirichlet.u.fill([&](const Vec3& q) { return preset.u(q); });
      p.dirichlet.phi.fill([&](const Vec3& q) { return preset.phi(q); });
      const DisplacementField sol = solve(p, SolveMethod::ConjugateGradient);
      const StressState rec = apply_law(Ci, infinitesimal_strain(sol));
      rh.push_back(1.0 / n);
      // two rings in: the boundary-adjacent ring differentiates one-sided
      // stencils and only decays at first order
      rerr.push_back(balance_residual(rec, p.loads).interior_norm_inf(2));
    }
    const double slope = fit_slope(rh, rerr);
    std::ostringstream os;
    os.precision(3);
    os << "slope " << slope << " (residuals " << fmt(rerr.front()) << " " << fmt(rerr.back())
       << ")";
    c.add("solver: post-solve balance residual is O(h^2)", slope >= 1.8, os.str());
  }
}

}  // namespace

Report run(Level level, unsigned seed) {
  const auto t0 = Clock::now();
  Report rep;
  Ctx ctx{level, std::mt19937_64(seed), &rep.checks};

  check_kernel(ctx);
  check_exactness(ctx);
  check_rigid(ctx);
  check_linearization(ctx);
  check_moving_frames(ctx);
  check_compatibility(ctx);
  check_balance(ctx);
  check_constitutive(ctx);
  check_solver(ctx);

  rep.seconds = seconds_since(t0);
  if (level == Level::Full) {
    rep.checks.push_back({"solver: full verification runtime < 10 min", rep.seconds < 600.0,
                          fmt(rep.seconds) + " s"});
  } else {
    rep.checks.push_back({"verification: quick level runtime < 60 s", rep.seconds < 60.0,
                          fmt(rep.seconds) + " s"});
  }
  return rep;
}

}  // namespace cosserat::verify
