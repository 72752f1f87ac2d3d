#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef COSSERAT_CLI
#error "COSSERAT_CLI must point at the built binary"
#endif

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const fs::path log = fs::path("cli_scratch") / "last_run.log";
  fs::create_directories("cli_scratch");
  const std::string cmd = std::string(COSSERAT_CLI) + " " + args + " > " + log.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(log);
  std::ostringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

fs::path write_file(const std::string& name, const std::string& text) {
  fs::create_directories("cli_scratch");
  const fs::path p = fs::path("cli_scratch") / name;
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("rigid preset produces an all-zero strain field") {
  const fs::path cfg = write_file("rigid.json", R"({
    "grid": {"dims": [4, 4, 4]},
    "strain": {"kind": "finite", "preset": "rigid",
               "params": {"axis": [0,0,1], "angle": 0.8, "shift": [0.1, 0.2, 0.3]},
               "outputs": ["csv"]}
  })");
  RunResult r = run_cli("strain --config " + cfg.string() + " --output-dir cli_scratch/rigid_out");
  CHECK(r.exit_code == 0);

  std::ifstream in("cli_scratch/rigid_out/strain.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "cell-type,i,j,k,c1,c2,c3,c4,c5,c6");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream ls(line);
    std::string tok;
    std::getline(ls, tok, ',');
    for (int c = 0; c < 3; ++c) std::getline(ls, tok, ',');
    while (std::getline(ls, tok, ',')) CHECK(std::abs(std::stod(tok)) < 1e-12);
  }
  CHECK(rows == 5 * 5 * 5 * 3);
}

TEST_CASE("shear preset sets the single strain component") {
  const fs::path cfg = write_file("shear.json", R"({
    "grid": {"dims": [4, 4, 4]},
    "strain": {"kind": "infinitesimal", "preset": "shear", "outputs": ["csv"]}
  })");
  RunResult r = run_cli("strain --config " + cfg.string() + " --output-dir cli_scratch/shear_out");
  CHECK(r.exit_code == 0);

  std::ifstream in("cli_scratch/shear_out/strain.csv");
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string type;
    std::getline(ls, type, ',');
    std::string tok;
    for (int c = 0; c < 3; ++c) std::getline(ls, tok, ',');
    std::array<double, 6> v{};
    for (int c = 0; c < 6; ++c) {
      std::getline(ls, tok, ',');
      v[c] = std::stod(tok);
    }
    if (type == "vertex:dx2") {
      CHECK(v[0] == doctest::Approx(1.0).epsilon(1e-12));  // eps_21
      for (int c = 1; c < 6; ++c) CHECK(std::abs(v[c]) < 1e-12);
    } else {
      for (double x : v) CHECK(std::abs(x) < 1e-12);
    }
  }
}

TEST_CASE("defect line circuit reports the unit charge") {
  const fs::path cfg = write_file("defect.json", R"({
    "grid": {"dims": [8, 8, 8], "spacing": [0.25, 0.25, 0.25]},
    "compat": {"preset": "defect-line",
               "params": {"i0": 3, "j0": 4, "burgers": [1, 0, 0]},
               "circuit": {"rect": {"k": 4, "i0": 2, "i1": 6, "j0": 3, "j1": 6}}}
  })");
  RunResult r = run_cli("compat --config " + cfg.string() + " --output-dir cli_scratch/defect_out");
  CHECK(r.exit_code == 0);
  // parse the report and pin the exact six circuit components
  const std::string rep = slurp("cli_scratch/defect_out/circuit.json");
  std::array<std::array<double, 6>, 2> got{};
  for (int which = 0; which < 2; ++which) {
    const std::string key = which == 0 ? "\"circuit\": [" : "\"flux\": [";
    size_t pos = rep.find(key);
    REQUIRE(pos != std::string::npos);
    pos += key.size();
    char terminator = 0;
    for (int c = 0; c < 6; ++c) {
      size_t next = rep.find_first_of(",]", pos);
      got[which][c] = std::stod(rep.substr(pos, next - pos));
      terminator = rep[next];
      pos = next + 1;
    }
    CHECK(terminator == ']');  // exactly six entries
  }
  for (int which = 0; which < 2; ++which) {
    CHECK(got[which][0] == 1.0);
    for (int c = 1; c < 6; ++c) CHECK(got[which][c] == 0.0);
  }
  CHECK(r.output.find("circuit") != std::string::npos);
}

TEST_CASE("finite strain from an ingested displacement csv") {
  // constant translation: y = x + a is rigid, so the strain vanishes
  std::ostringstream csv;
  csv << "cell-type,i,j,k,c1,c2,c3,c4,c5,c6\n";
  for (int k = 0; k <= 4; ++k)
    for (int j = 0; j <= 4; ++j)
      for (int i = 0; i <= 4; ++i)
        csv << "vertex," << i << ',' << j << ',' << k << ",0.1,-0.2,0.3,0,0,0\n";
  write_file("disp.csv", csv.str());
  const fs::path cfg = write_file("fromcsv.json", R"({
    "grid": {"dims": [4, 4, 4]},
    "strain": {"kind": "finite", "csv": "cli_scratch/disp.csv", "outputs": ["csv"]}
  })");
  RunResult r = run_cli("strain --config " + cfg.string() + " --output-dir cli_scratch/csv_out");
  CHECK(r.exit_code == 0);
  std::ifstream in("cli_scratch/csv_out/strain.csv");
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    for (int c = 0; c < 4; ++c) std::getline(ls, tok, ',');
    while (std::getline(ls, tok, ',')) CHECK(std::abs(std::stod(tok)) < 1e-12);
  }
}

TEST_CASE("unclosed loops exit with a validation error") {
  const fs::path cfg = write_file("badloop.json", R"({
    "grid": {"dims": [6, 6, 6]},
    "compat": {"preset": "defect-line",
               "circuit": {"loop": [[0, 1, 1, 1, 1]],
                           "cap":  [[2, 1, 1, 1, 1]]}}
  })");
  RunResult r = run_cli("compat --config " + cfg.string() + " --output-dir cli_scratch/badloop_out");
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("not closed") != std::string::npos);
}

TEST_CASE("missing material file exits with a config error naming the path") {
  const fs::path cfg = write_file("nomat.json", R"({
    "grid": {"dims": [4, 4, 4]},
    "solve": {"material": "cli_scratch/does_not_exist.json"}
  })");
  RunResult r = run_cli("solve --config " + cfg.string() + " --output-dir cli_scratch/nomat_out");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("does_not_exist.json") != std::string::npos);
}

TEST_CASE("non-definite materials exit with the margin printed") {
  write_file("softmat.json", R"({
    "class": "isotropic",
    "lambda": 1.0, "mu1": 1.0, "mu2": 0.3,
    "alpha": 0.8, "beta1": -2.0, "beta2": 0.2
  })");
  const fs::path cfg = write_file("softsolve.json", R"({
    "grid": {"dims": [4, 4, 4]},
    "solve": {"material": "cli_scratch/softmat.json", "loads": "zero", "dirichlet": "zero"}
  })");
  RunResult r = run_cli("solve --config " + cfg.string() + " --output-dir cli_scratch/soft_out");
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("margin") != std::string::npos);
}

TEST_CASE("unknown config keys are rejected") {
  const fs::path cfg = write_file("unknown.json", R"({
    "grid": {"dims": [4, 4, 4], "typo": 1},
    "strain": {"kind": "infinitesimal", "preset": "zero"}
  })");
  RunResult r = run_cli("strain --config " + cfg.string() + " --output-dir cli_scratch/unknown_out");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("typo") != std::string::npos);
}

TEST_CASE("zero-load solve returns the zero solution") {
  write_file("mat.json", R"({
    "class": "hemitropic",
    "lambda": 1.0, "mu1": 1.0, "mu2": 0.3,
    "alpha": 0.8, "beta1": 0.9, "beta2": 0.2,
    "c1": 0.1, "c2": 0.15, "c3": 0.05
  })");
  const fs::path cfg = write_file("zerosolve.json", R"({
    "grid": {"dims": [4, 4, 4]},
    "solve": {"material": "cli_scratch/mat.json", "loads": "zero", "dirichlet": "zero",
              "method": "cg", "outputs": ["csv"]}
  })");
  RunResult r = run_cli("solve --config " + cfg.string() + " --output-dir cli_scratch/zero_out");
  CHECK(r.exit_code == 0);
  std::ifstream in("cli_scratch/zero_out/solution.csv");
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    for (int c = 0; c < 4; ++c) std::getline(ls, tok, ',');
    while (std::getline(ls, tok, ',')) CHECK(std::stod(tok) == 0.0);
  }
}

TEST_CASE("identical configs give byte-identical outputs") {
  const fs::path cfg = write_file("repeat.json", R"({
    "grid": {"dims": [5, 5, 5]},
    "strain": {"kind": "finite", "preset": "wavy", "params": {"amplitude": 0.15, "seed": 9},
               "outputs": ["csv", "vtk"]}
  })");
  RunResult r1 = run_cli("strain --config " + cfg.string() + " --output-dir cli_scratch/rep1");
  RunResult r2 = run_cli("strain --config " + cfg.string() + " --output-dir cli_scratch/rep2");
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);
  CHECK(slurp("cli_scratch/rep1/strain.csv") == slurp("cli_scratch/rep2/strain.csv"));
  CHECK(slurp("cli_scratch/rep1/strain.vtk") == slurp("cli_scratch/rep2/strain.vtk"));
  // manifests agree except for nothing: same config, same checksums
  CHECK(slurp("cli_scratch/rep1/manifest.json") == slurp("cli_scratch/rep2/manifest.json"));
}

TEST_CASE("flags are order independent") {
  const fs::path cfg = write_file("order.json", R"({
    "grid": {"dims": [4, 4, 4]},
    "strain": {"kind": "infinitesimal", "preset": "shear", "outputs": ["csv"]}
  })");
  RunResult r1 = run_cli("strain --output-dir cli_scratch/ord1 --config " + cfg.string());
  RunResult r2 = run_cli("--output-dir cli_scratch/ord2 strain --config " + cfg.string());
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);
  CHECK(slurp("cli_scratch/ord1/strain.csv") == slurp("cli_scratch/ord2/strain.csv"));
}

TEST_CASE("thread count does not change the output bytes") {
  const fs::path cfg = write_file("threads.json", R"({
    "grid": {"dims": [6, 6, 6]},
    "solve": {"material": "cli_scratch/mat.json", "method": "cg",
              "params": {"seed": 71, "amplitude": 0.6, "max_freq": 1.0},
              "outputs": ["csv"]}
  })");
  RunResult r1 = run_cli("solve --config " + cfg.string() + " --threads 1 --output-dir cli_scratch/t1");
  RunResult r2 = run_cli("solve --config " + cfg.string() + " --threads 4 --output-dir cli_scratch/t2");
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);
  CHECK(slurp("cli_scratch/t1/solution.csv") == slurp("cli_scratch/t2/solution.csv"));
  CHECK(slurp("cli_scratch/t1/stress.csv") == slurp("cli_scratch/t2/stress.csv"));
}

TEST_CASE("mms study writes the error table") {
  const fs::path cfg = write_file("mms.json", R"({
    "grid": {"dims": [6, 6, 6]},
    "solve": {"material": "cli_scratch/mat.json", "method": "direct",
              "params": {"seed": 71, "amplitude": 0.6, "max_freq": 1.0},
              "mms": {"grids": [6, 12]}, "outputs": ["csv"]}
  })");
  RunResult r = run_cli("solve --config " + cfg.string() + " --output-dir cli_scratch/mms_out");
  CHECK(r.exit_code == 0);
  const std::string rep = slurp("cli_scratch/mms_out/mms.json");
  CHECK(rep.find("observed_order") != std::string::npos);
  CHECK(r.output.find("mms: observed order") != std::string::npos);
}
