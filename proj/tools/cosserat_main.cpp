#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "cosserat/elastostatics.hpp"
#include "cosserat/io.hpp"
#include "cosserat/parallel.hpp"
#include "cosserat/presets.hpp"
#include "cosserat/verify.hpp"

namespace fs = std::filesystem;
using cosserat::io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitValidationError = 3;
constexpr int kExitSolverError = 4;

struct GlobalOptions {
  std::string config;
  std::string output_dir = "out";
  int threads = 1;
  std::string level = "quick";
  unsigned seed = 0;
};

void reject_unknown(const json& j, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) throw cosserat::ConfigError(where + ": unknown key '" + it.key() + "'");
  }
}

json load_config(const GlobalOptions& g) {
  if (g.config.empty()) throw cosserat::ConfigError("missing --config");
  if (!fs::exists(g.config)) throw cosserat::ConfigError("config file not found: " + g.config);
  json cfg = cosserat::io::parse_json_file(g.config);
  if (!cfg.is_object()) throw cosserat::ConfigError("config: expected a json object");
  reject_unknown(cfg, {"grid", "strain", "compat", "solve", "verify", "seed"}, "config");
  return cfg;
}

cosserat::BodyGrid grid_from_config(const json& cfg) {
  if (!cfg.contains("grid")) throw cosserat::ConfigError("config: missing 'grid'");
  const json& g = cfg.at("grid");
  reject_unknown(g, {"dims", "spacing", "origin"}, "grid");
  if (!g.contains("dims") || !g.at("dims").is_array() || g.at("dims").size() != 3)
    throw cosserat::ConfigError("grid: 'dims' must be [n1,n2,n3]");
  std::array<int, 3> dims{g.at("dims")[0].get<int>(), g.at("dims")[1].get<int>(),
                          g.at("dims")[2].get<int>()};
  cosserat::Vec3 spacing(1.0 / dims[0], 1.0 / dims[1], 1.0 / dims[2]);
  if (g.contains("spacing")) {
    const auto& s = g.at("spacing");
    if (!s.is_array() || s.size() != 3) throw cosserat::ConfigError("grid: bad 'spacing'");
    spacing = cosserat::Vec3(s[0].get<double>(), s[1].get<double>(), s[2].get<double>());
  }
  cosserat::Vec3 origin = cosserat::Vec3::Zero();
  if (g.contains("origin")) {
    const auto& o = g.at("origin");
    if (!o.is_array() || o.size() != 3) throw cosserat::ConfigError("grid: bad 'origin'");
    origin = cosserat::Vec3(o[0].get<double>(), o[1].get<double>(), o[2].get<double>());
  }
  try {
    return cosserat::BodyGrid(dims, spacing, origin);
  } catch (const cosserat::ValidationError& e) {
    throw cosserat::ConfigError(std::string("grid: ") + e.what());
  }
}

struct Manifest {
  json doc;
  fs::path dir;

  Manifest(const std::string& command, const GlobalOptions& g, const json& cfg) : dir(g.output_dir) {
    fs::create_directories(dir);
    doc["command"] = command;
    doc["config"] = g.config;
    if (!g.config.empty() && fs::exists(g.config))
      doc["config_checksum"] = cosserat::io::file_checksum(g.config);
    doc["seed"] = g.seed;
    doc["threads"] = g.threads;
    if (cfg.contains("grid")) doc["grid"] = cfg.at("grid");
    doc["outputs"] = json::array();
  }

  void record(const fs::path& file) {
    doc["outputs"].push_back({{"path", file.filename().string()},
                              {"checksum", cosserat::io::file_checksum(file)}});
  }

  void finish() const {
    std::ofstream out(dir / "manifest.json");
    out << doc.dump(2) << "\n";
  }
};

json params_of(const json& sec) {
  return sec.contains("params") ? sec.at("params") : json::object();
}

std::vector<std::string> outputs_of(const json& sec) {
  if (!sec.contains("outputs")) return {"csv", "vtk"};
  std::vector<std::string> out;
  for (const auto& o : sec.at("outputs")) {
    const std::string s = o.get<std::string>();
    if (s != "csv" && s != "vtk") throw cosserat::ConfigError("outputs: unknown format '" + s + "'");
    out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------

int cmd_strain(const GlobalOptions& g) {
  const json cfg = load_config(g);
  const cosserat::BodyGrid grid = grid_from_config(cfg);
  if (!cfg.contains("strain")) throw cosserat::ConfigError("config: missing 'strain' section");
  const json& sec = cfg.at("strain");
  reject_unknown(sec, {"kind", "preset", "params", "csv", "outputs"}, "strain");
  const std::string kind = sec.value("kind", std::string("infinitesimal"));

  Manifest manifest("strain", g, cfg);
  cosserat::StrainState e(grid);
  if (kind == "finite") {
    cosserat::Configuration cfg_field(grid);
    if (sec.contains("csv")) {
      // configuration from a displacement csv: y = x + u, Q = exp(hat(phi))
      const cosserat::DisplacementField d =
          cosserat::io::read_displacement_csv(sec.at("csv").get<std::string>(), grid);
      for (int v = 0; v < cfg_field.y.size(); ++v) {
        cfg_field.y[v] += d.u[v];
        cfg_field.Q[v] = cosserat::exp_so3(d.phi[v]);
      }
    } else {
      const std::string preset = sec.value("preset", std::string("identity"));
      cfg_field = cosserat::presets::configuration_preset(grid, preset, params_of(sec));
    }
    e = cosserat::finite_strain(cfg_field);
  } else if (kind == "infinitesimal") {
    cosserat::DisplacementField d(grid);
    if (sec.contains("csv")) {
      d = cosserat::io::read_displacement_csv(sec.at("csv").get<std::string>(), grid);
    } else {
      const std::string preset = sec.value("preset", std::string("zero"));
      d = cosserat::presets::displacement_preset(grid, preset, params_of(sec));
    }
    e = cosserat::infinitesimal_strain(d);
  } else {
    throw cosserat::ConfigError("strain: kind must be 'finite' or 'infinitesimal'");
  }

  for (const std::string& fmt : outputs_of(sec)) {
    const fs::path file = manifest.dir / (fmt == "csv" ? "strain.csv" : "strain.vtk");
    if (fmt == "csv")
      cosserat::io::write_strain_csv(file, e);
    else
      cosserat::io::write_strain_vtk(file, e);
    manifest.record(file);
  }
  manifest.finish();
  std::cout << "strain: max |E| = " << e.norm_inf() << "\n";
  return kExitOk;
}

int cmd_compat(const GlobalOptions& g) {
  const json cfg = load_config(g);
  const cosserat::BodyGrid grid = grid_from_config(cfg);
  if (!cfg.contains("compat")) throw cosserat::ConfigError("config: missing 'compat' section");
  const json& sec = cfg.at("compat");
  reject_unknown(sec, {"preset", "params", "circuit", "outputs"}, "compat");
  const std::string preset = sec.value("preset", std::string("trig"));

  Manifest manifest("compat", g, cfg);

  const bool cochain_path = preset == "defect-line" || preset == "integrable";
  if (cochain_path) {
    const auto e = cosserat::presets::strain_cochain_preset(grid, preset, params_of(sec));
    const fs::path file = manifest.dir / "strain_cochain.csv";
    cosserat::io::write_motor_cochain_csv(file, e);
    manifest.record(file);

    if (sec.contains("circuit")) {
      const json& cj = sec.at("circuit");
      reject_unknown(cj, {"rect", "loop", "cap"}, "circuit");
      cosserat::Chain loop, cap;
      if (cj.contains("rect")) {
        const json& r = cj.at("rect");
        reject_unknown(r, {"k", "i0", "i1", "j0", "j1"}, "circuit.rect");
        auto lc = cosserat::rect_loop_and_cap(grid, r.at("k").get<int>(), r.at("i0").get<int>(),
                                              r.at("i1").get<int>(), r.at("j0").get<int>(),
                                              r.at("j1").get<int>());
        loop = lc.first;
        cap = lc.second;
      } else {
        auto parse_chain = [&](const json& arr, int degree) {
          cosserat::Chain ch;
          for (const auto& ent : arr) {
            if (!ent.is_array() || ent.size() != 5)
              throw cosserat::ConfigError("circuit: chain entries are [axis,i,j,k,sign]");
            cosserat::CellRef ref{ent[0].get<int>(), ent[1].get<int>(), ent[2].get<int>(),
                                  ent[3].get<int>()};
            ch.push_back({grid.cell_id(degree, ref), ent[4].get<int>() >= 0 ? +1 : -1});
          }
          return ch;
        };
        if (!cj.contains("loop") || !cj.contains("cap"))
          throw cosserat::ConfigError("circuit: need 'rect' or explicit 'loop' and 'cap'");
        loop = parse_chain(cj.at("loop"), 1);
        cap = parse_chain(cj.at("cap"), 2);
      }
      const cosserat::CircuitReport rep = cosserat::burgers_circuit(e, loop, cap);
      const cosserat::Vec6 cv = rep.circuit.packed();
      const cosserat::Vec6 fv = rep.flux.packed();
      json rj;
      rj["circuit"] = std::vector<double>(cv.data(), cv.data() + 6);
      rj["flux"] = std::vector<double>(fv.data(), fv.data() + 6);
      const fs::path file2 = manifest.dir / "circuit.json";
      std::ofstream(file2) << rj.dump(2) << "\n";
      manifest.record(file2);
      std::cout << "circuit: " << rj["circuit"].dump() << "\n";
    }
  } else {
    const cosserat::DisplacementField d =
        cosserat::presets::displacement_preset(grid, preset, params_of(sec));
    const cosserat::DefectDensity J =
        cosserat::strain_incompatibility(cosserat::infinitesimal_strain(d));
    for (const std::string& fmt : outputs_of(sec)) {
      const fs::path file = manifest.dir / (fmt == "csv" ? "defects.csv" : "defects.vtk");
      if (fmt == "csv")
        cosserat::io::write_defect_csv(file, J);
      else
        cosserat::io::write_defect_vtk(file, J);
      manifest.record(file);
    }
    std::cout << "compat: max |De| = " << J.norm_inf() << "\n";
  }
  manifest.finish();
  return kExitOk;
}

int cmd_solve(const GlobalOptions& g) {
  const json cfg = load_config(g);
  const cosserat::BodyGrid grid = grid_from_config(cfg);
  if (!cfg.contains("solve")) throw cosserat::ConfigError("config: missing 'solve' section");
  const json& sec = cfg.at("solve");
  reject_unknown(sec, {"material", "preset", "params", "loads", "dirichlet", "method", "mms",
                       "outputs"},
                 "solve");

  if (!sec.contains("material")) throw cosserat::ConfigError("solve: missing 'material'");
  std::pair<cosserat::MaterialConstants, cosserat::SymmetryClass> mat;
  if (sec.at("material").is_string()) {
    const std::string path = sec.at("material").get<std::string>();
    if (!fs::exists(path)) throw cosserat::ConfigError("material file not found: " + path);
    mat = cosserat::io::load_material(path);
  } else {
    mat = cosserat::io::material_from_json(sec.at("material"));
  }
  const cosserat::StiffnessOperator C = cosserat::build_stiffness(mat.first, mat.second);

  const std::string method_name = sec.value("method", std::string("direct"));
  cosserat::SolveMethod method;
  if (method_name == "direct")
    method = cosserat::SolveMethod::Direct;
  else if (method_name == "cg")
    method = cosserat::SolveMethod::ConjugateGradient;
  else
    throw cosserat::ConfigError("solve: method must be 'direct' or 'cg'");

  const cosserat::AnalyticDisplacement preset =
      cosserat::presets::analytic_preset("trig", params_of(sec));

  Manifest manifest("solve", g, cfg);

  // optional manufactured-solution convergence study
  if (sec.contains("mms")) {
    const json& mj = sec.at("mms");
    reject_unknown(mj, {"grids"}, "solve.mms");
    std::vector<int> grids;
    for (const auto& n : mj.at("grids")) grids.push_back(n.get<int>());
    const cosserat::MmsResult res = cosserat::mms_verify(C, preset, grids, method);
    json rj;
    rj["grids"] = res.grids;
    rj["errors"] = res.errors;
    rj["observed_order"] = res.observed_order;
    const fs::path file = manifest.dir / "mms.json";
    std::ofstream(file) << rj.dump(2) << "\n";
    manifest.record(file);
    std::cout << "mms: observed order " << res.observed_order << "\n";
  }

  cosserat::ElastostaticsProblem problem(grid, C);
  const std::string loads_kind =
      sec.contains("loads") ? sec.at("loads").get<std::string>() : "manufactured";
  if (loads_kind == "manufactured")
    problem.loads = cosserat::manufactured_loads(grid, C, preset);
  else if (loads_kind != "zero")
    throw cosserat::ConfigError("solve: loads must be 'manufactured' or 'zero'");

  const std::string bc_kind =
      sec.contains("dirichlet") ? sec.at("dirichlet").get<std::string>() : "exact";
  if (bc_kind == "exact") {
    problem.dirichlet.u.fill([&](const cosserat::Vec3& p) { return preset.u(p); });
    problem.dirichlet.phi.fill([&](const cosserat::Vec3& p) { return preset.phi(p); });
  } else if (bc_kind != "zero") {
    throw cosserat::ConfigError("solve: dirichlet must be 'exact' or 'zero'");
  }

  cosserat::SolveReport srep;
  const cosserat::DisplacementField sol = cosserat::solve(problem, method, &srep);
  const cosserat::StressState stress =
      cosserat::apply_law(C, cosserat::infinitesimal_strain(sol));
  const cosserat::BalanceResidual res = cosserat::balance_residual(stress, problem.loads);

  for (const std::string& fmt : outputs_of(sec)) {
    if (fmt == "csv") {
      const fs::path f1 = manifest.dir / "solution.csv";
      cosserat::io::write_displacement_csv(f1, sol);
      manifest.record(f1);
      const fs::path f2 = manifest.dir / "stress.csv";
      cosserat::io::write_stress_csv(f2, stress);
      manifest.record(f2);
    } else {
      const fs::path f1 = manifest.dir / "solution.vtk";
      cosserat::io::write_displacement_vtk(f1, sol);
      manifest.record(f1);
      const fs::path f2 = manifest.dir / "stress.vtk";
      cosserat::io::write_stress_vtk(f2, stress);
      manifest.record(f2);
    }
  }

  json rj;
  // the ring next to the boundary differentiates one-sided stencils and
  // carries a larger, first-order constant; depth 2 is the second-order part
  rj["balance_residual_interior"] = res.interior_norm_inf(2);
  rj["balance_residual_full"] = res.norm_inf();
  rj["solver_iterations"] = srep.iterations;
  rj["solver_relative_residual"] = srep.relative_residual;
  const fs::path rfile = manifest.dir / "residuals.json";
  std::ofstream(rfile) << rj.dump(2) << "\n";
  manifest.record(rfile);
  manifest.finish();
  std::cout << "solve: interior balance residual " << res.interior_norm_inf(2) << "\n";
  return kExitOk;
}

int cmd_verify(const GlobalOptions& g) {
  std::string level = g.level;
  if (!g.config.empty()) {
    const json cfg = load_config(g);
    if (cfg.contains("verify")) {
      reject_unknown(cfg.at("verify"), {"level"}, "verify");
      if (cfg.at("verify").contains("level") && level == "quick")
        level = cfg.at("verify").at("level").get<std::string>();
    }
  }
  if (level != "quick" && level != "full")
    throw cosserat::ConfigError("verify: level must be 'quick' or 'full'");

  const cosserat::verify::Report rep = cosserat::verify::run(
      level == "full" ? cosserat::verify::Level::Full : cosserat::verify::Level::Quick, g.seed);
  for (const auto& c : rep.checks)
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
  std::cout << (rep.all_pass() ? "all checks passed" : "some checks FAILED") << " ("
            << rep.seconds << " s, level " << level << ")\n";
  return rep.all_pass() ? kExitOk : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geometric micropolar (Cosserat) mechanics toolkit"};
  app.fallthrough();
  GlobalOptions g;
  app.add_option("--config", g.config, "run configuration (json)");
  app.add_option("--output-dir", g.output_dir, "output directory");
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--level", g.level, "verification level")
      ->check(CLI::IsMember({"quick", "full"}));
  app.add_option("--seed", g.seed, "seed for randomized property suites");

  auto* strain = app.add_subcommand("strain", "evaluate finite or infinitesimal strain fields");
  auto* compat = app.add_subcommand("compat", "incompatibility fields and circuit integrals");
  auto* solve = app.add_subcommand("solve", "linear elastostatics under Dirichlet data");
  auto* verify = app.add_subcommand("verify", "run the property verification suites");
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  cosserat::set_thread_count(g.threads);

  try {
    if (strain->parsed()) return cmd_strain(g);
    if (compat->parsed()) return cmd_compat(g);
    if (solve->parsed()) return cmd_solve(g);
    if (verify->parsed()) return cmd_verify(g);
  } catch (const cosserat::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const cosserat::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolverError;
  } catch (const cosserat::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidationError;
  }
  return kExitConfigError;
}
