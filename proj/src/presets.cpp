#include "cosserat/presets.hpp"

namespace cosserat::presets {

namespace {

double param(const json& p, const char* key, double fallback) {
  return p.contains(key) ? p.at(key).get<double>() : fallback;
}
unsigned uparam(const json& p, const char* key, unsigned fallback) {
  return p.contains(key) ? p.at(key).get<unsigned>() : fallback;
}
Vec3 vparam(const json& p, const char* key, const Vec3& fallback) {
  if (!p.contains(key)) return fallback;
  const auto& a = p.at(key);
  if (!a.is_array() || a.size() != 3) throw ConfigError(std::string(key) + ": expected [x,y,z]");
  return Vec3(a[0].get<double>(), a[1].get<double>(), a[2].get<double>());
}

}  // namespace

MaterialConstants reference_isotropic() {
  MaterialConstants mc;
  mc.lambda = 1.0;
  mc.mu1 = 1.0;
  mc.mu2 = 0.3;
  mc.alpha = 0.8;
  mc.beta1 = 0.9;
  mc.beta2 = 0.2;
  return mc;
}

MaterialConstants reference_hemitropic() {
  MaterialConstants mc = reference_isotropic();
  mc.c1 = 0.10;
  mc.c2 = 0.15;
  mc.c3 = 0.05;
  return mc;
}

Configuration configuration_preset(const BodyGrid& g, const std::string& name,
                                   const json& params) {
  if (name == "identity") return Configuration(g);
  if (name == "rigid") {
    Vec3 axis = vparam(params, "axis", Vec3(0, 0, 1));
    if (axis.norm() < 1e-14) throw ConfigError("rigid: axis must be nonzero");
    axis.normalize();
    const double angle = param(params, "angle", 0.5);
    const Vec3 shift = vparam(params, "shift", Vec3(0.1, -0.2, 0.3));
    return Configuration::rigid(g, EuclideanMotion(shift, exp_so3(axis * angle)));
  }
  if (name == "twist") {
    const double alpha = param(params, "alpha", 0.7);
    Configuration cfg(g);
    const auto& d = g.dims();
    for (int k = 0; k <= d[2]; ++k)
      for (int j = 0; j <= d[1]; ++j)
        for (int i = 0; i <= d[0]; ++i)
          cfg.Q(i, j, k) = exp_so3(Vec3(0, 0, alpha * g.position(i, j, k)[2]));
    return cfg;
  }
  if (name == "wavy") {
    const double amp = param(params, "amplitude", 0.2);
    const AnalyticDisplacement d = AnalyticDisplacement::random(
        uparam(params, "seed", 5), 1.0, param(params, "max_freq", 1.0));
    Configuration cfg(g);
    const auto& dm = g.dims();
    for (int k = 0; k <= dm[2]; ++k)
      for (int j = 0; j <= dm[1]; ++j)
        for (int i = 0; i <= dm[0]; ++i) {
          const Vec3 p = g.position(i, j, k);
          cfg.y(i, j, k) = p + amp * d.u(p);
          cfg.Q(i, j, k) = exp_so3(amp * d.phi(p));
        }
    return cfg;
  }
  throw ConfigError("unknown configuration preset '" + name + "'");
}

DisplacementField displacement_preset(const BodyGrid& g, const std::string& name,
                                      const json& params) {
  DisplacementField out(g);
  if (name == "zero") return out;
  if (name == "rigid") {
    const Vec3 a = vparam(params, "a", Vec3(0.1, 0.2, -0.1));
    const Vec3 b = vparam(params, "b", Vec3(0.3, -0.2, 0.5));
    out.u.fill([&](const Vec3& p) { return Vec3(a + b.cross(p)); });
    out.phi.fill([&](const Vec3&) { return b; });
    return out;
  }
  if (name == "shear") {
    out.u.fill([](const Vec3& p) { return Vec3(p[1], 0, 0); });
    return out;
  }
  if (name == "constant-rotation") {
    const double c = param(params, "c", 1.0);
    out.phi.fill([&](const Vec3&) { return Vec3(0, 0, c); });
    return out;
  }
  if (name == "trig") {
    const AnalyticDisplacement d = analytic_preset("trig", params);
    out.u.fill([&](const Vec3& p) { return d.u(p); });
    out.phi.fill([&](const Vec3& p) { return d.phi(p); });
    return out;
  }
  throw ConfigError("unknown displacement preset '" + name + "'");
}

AnalyticDisplacement analytic_preset(const std::string& name, const json& params) {
  if (name == "trig")
    return AnalyticDisplacement::random(uparam(params, "seed", 1),
                                        param(params, "amplitude", 0.6),
                                        param(params, "max_freq", 1.0));
  throw ConfigError("unknown analytic preset '" + name + "'");
}

Cochain<Motor> strain_cochain_preset(const BodyGrid& g, const std::string& name,
                                     const json& params) {
  if (name == "integrable") {
    const AnalyticDisplacement d =
        AnalyticDisplacement::random(uparam(params, "seed", 3), 0.7);
    std::function<Motor(const Vec3&, int)> comp = [d](const Vec3& p, int slot) {
      return Motor(d.strain_eps(p).row(slot).transpose(),
                   d.strain_tau(p).row(slot).transpose());
    };
    return de_rham<Motor>(g, 1, comp);
  }
  if (name == "defect-line") {
    const int i0 = static_cast<int>(param(params, "i0", g.dims()[0] / 2));
    const int j0 = static_cast<int>(param(params, "j0", g.dims()[1] / 2));
    Motor mu;
    mu.u = vparam(params, "burgers", Vec3(1, 0, 0));
    mu.phi = vparam(params, "frank", Vec3(0, 0, 0));
    return defect_line(g, i0, j0, mu);
  }
  throw ConfigError("unknown strain cochain preset '" + name + "'");
}

}  // namespace cosserat::presets
