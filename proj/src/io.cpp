#include "cosserat/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace cosserat::io {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open for writing: " + path.string());
  out << text;
}

constexpr const char* kHeader = "cell-type,i,j,k,c1,c2,c3,c4,c5,c6\n";

void row(std::ostringstream& os, const std::string& type, int i, int j, int k,
         const std::array<double, 6>& v) {
  os << type << ',' << i << ',' << j << ',' << k;
  for (double x : v) os << ',' << fmt(x);
  os << '\n';
}

const char* kSlotLabel1[3] = {"vertex:dx1", "vertex:dx2", "vertex:dx3"};
const char* kSlotLabel2[3] = {"vertex:A1", "vertex:A2", "vertex:A3"};

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

std::string file_checksum(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open for checksum: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return fnv1a_hex(ss.str());
}

void write_displacement_csv(const std::filesystem::path& path, const DisplacementField& d) {
  const BodyGrid& g = d.grid();
  std::ostringstream os;
  os << kHeader;
  const auto& dm = g.dims();
  for (int k = 0; k <= dm[2]; ++k)
    for (int j = 0; j <= dm[1]; ++j)
      for (int i = 0; i <= dm[0]; ++i) {
        const Vec3& u = d.u(i, j, k);
        const Vec3& p = d.phi(i, j, k);
        row(os, "vertex", i, j, k, {u[0], u[1], u[2], p[0], p[1], p[2]});
      }
  write_text(path, os.str());
}

namespace {
template <class GetMotor>
std::string form_rows(const BodyGrid& g, int nslots, const char* const* labels, GetMotor get) {
  std::ostringstream os;
  os << kHeader;
  const auto& dm = g.dims();
  for (int k = 0; k <= dm[2]; ++k)
    for (int j = 0; j <= dm[1]; ++j)
      for (int i = 0; i <= dm[0]; ++i)
        for (int s = 0; s < nslots; ++s) {
          const auto [a, b] = get(i, j, k, s);
          row(os, labels[s], i, j, k, {a[0], a[1], a[2], b[0], b[1], b[2]});
        }
  return os.str();
}
}  // namespace

void write_strain_csv(const std::filesystem::path& path, const StrainState& e) {
  write_text(path, form_rows(e.grid(), 3, kSlotLabel1, [&](int i, int j, int k, int s) {
               return std::pair<Vec3, Vec3>(e.eps(i, j, k).row(s).transpose(),
                                            e.tau(i, j, k).row(s).transpose());
             }));
}

void write_stress_csv(const std::filesystem::path& path, const StressState& st) {
  write_text(path, form_rows(st.grid(), 3, kSlotLabel2, [&](int i, int j, int k, int s) {
               return std::pair<Vec3, Vec3>(st.sigma(i, j, k).row(s).transpose(),
                                            st.chi(i, j, k).row(s).transpose());
             }));
}

void write_defect_csv(const std::filesystem::path& path, const DefectDensity& jd) {
  write_text(path, form_rows(jd.grid(), 3, kSlotLabel2, [&](int i, int j, int k, int s) {
               const Motor& m = jd.j.at(i, j, k, s);
               return std::pair<Vec3, Vec3>(m.u, m.phi);
             }));
}

void write_motor_cochain_csv(const std::filesystem::path& path, const Cochain<Motor>& c) {
  static const char* kCell[4] = {"vertex", "edge", "face", "cell"};
  static const char* kAxis[3] = {"-x", "-y", "-z"};
  std::ostringstream os;
  os << kHeader;
  const BodyGrid& g = c.grid();
  for (int id = 0; id < c.size(); ++id) {
    const CellRef r = g.cell_ref(c.degree(), id);
    std::string type = kCell[c.degree()];
    if (c.degree() == 1 || c.degree() == 2) type += kAxis[r.axis];
    const Motor& m = c[id];
    row(os, type, r.i, r.j, r.k, {m.u[0], m.u[1], m.u[2], m.phi[0], m.phi[1], m.phi[2]});
  }
  write_text(path, os.str());
}

DisplacementField read_displacement_csv(const std::filesystem::path& path, const BodyGrid& g) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open displacement csv: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty displacement csv: " + path.string());
  DisplacementField d(g);
  std::vector<bool> seen(g.num_vertices(), false);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string type;
    std::getline(ls, type, ',');
    if (type != "vertex") throw ConfigError("displacement csv expects vertex rows");
    std::array<double, 9> v{};
    char comma;
    for (int c = 0; c < 9; ++c) {
      if (!(ls >> v[c])) throw ConfigError("bad displacement csv row: " + line);
      ls >> comma;
    }
    const int i = static_cast<int>(v[0]), j = static_cast<int>(v[1]), k = static_cast<int>(v[2]);
    if (i < 0 || i > g.dims()[0] || j < 0 || j > g.dims()[1] || k < 0 || k > g.dims()[2])
      throw ConfigError("displacement csv index out of range: " + line);
    d.u(i, j, k) = Vec3(v[3], v[4], v[5]);
    d.phi(i, j, k) = Vec3(v[6], v[7], v[8]);
    seen[g.vertex_id(i, j, k)] = true;
  }
  for (bool s : seen)
    if (!s) throw ConfigError("displacement csv does not cover the grid");
  return d;
}

void write_vtk(const std::filesystem::path& path, const BodyGrid& g,
               const std::vector<std::pair<std::string, const GridField<double>*>>& fields) {
  std::ostringstream os;
  const auto& d = g.dims();
  os << "# vtk DataFile Version 3.0\n";
  os << "cosserat field export\n";
  os << "ASCII\n";
  os << "DATASET STRUCTURED_POINTS\n";
  os << "DIMENSIONS " << d[0] + 1 << ' ' << d[1] + 1 << ' ' << d[2] + 1 << '\n';
  os << "ORIGIN " << fmt(g.origin()[0]) << ' ' << fmt(g.origin()[1]) << ' '
     << fmt(g.origin()[2]) << '\n';
  os << "SPACING " << fmt(g.spacing()[0]) << ' ' << fmt(g.spacing()[1]) << ' '
     << fmt(g.spacing()[2]) << '\n';
  os << "POINT_DATA " << g.num_vertices() << '\n';
  for (const auto& [name, field] : fields) {
    os << "SCALARS " << name << " double 1\n";
    os << "LOOKUP_TABLE default\n";
    for (int k = 0; k <= d[2]; ++k)
      for (int j = 0; j <= d[1]; ++j)
        for (int i = 0; i <= d[0]; ++i) os << fmt((*field)(i, j, k)) << '\n';
  }
  write_text(path, os.str());
}

namespace {
// split a 3x3-matrix pair of fields into named scalar components
struct ComponentSet {
  std::vector<std::string> names;
  std::vector<GridField<double>> fields;
  std::vector<std::pair<std::string, const GridField<double>*>> view() const {
    std::vector<std::pair<std::string, const GridField<double>*>> v;
    for (size_t n = 0; n < names.size(); ++n) v.emplace_back(names[n], &fields[n]);
    return v;
  }
};

ComponentSet split_matrix_pair(const BodyGrid& g, const GridField<Mat3>& a, const char* aname,
                               const GridField<Mat3>& b, const char* bname) {
  ComponentSet out;
  for (int which = 0; which < 2; ++which)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        out.names.push_back(std::string(which ? bname : aname) + "_" + std::to_string(i + 1) +
                            std::to_string(j + 1));
        GridField<double> f(g);
        const GridField<Mat3>& src = which ? b : a;
        for (int v = 0; v < f.size(); ++v) f[v] = src[v](i, j);
        out.fields.push_back(std::move(f));
      }
  return out;
}
}  // namespace

void write_strain_vtk(const std::filesystem::path& path, const StrainState& e) {
  const ComponentSet cs = split_matrix_pair(e.grid(), e.eps, "eps", e.tau, "tau");
  write_vtk(path, e.grid(), cs.view());
}

void write_stress_vtk(const std::filesystem::path& path, const StressState& s) {
  const ComponentSet cs = split_matrix_pair(s.grid(), s.sigma, "sigma", s.chi, "chi");
  write_vtk(path, s.grid(), cs.view());
}

void write_defect_vtk(const std::filesystem::path& path, const DefectDensity& jd) {
  const BodyGrid& g = jd.grid();
  GridField<Mat3> t(g), om(g);
  for (int v = 0; v < t.size(); ++v)
    for (int s = 0; s < 3; ++s) {
      t[v].row(s) = jd.j.comp(s)[v].u.transpose();
      om[v].row(s) = jd.j.comp(s)[v].phi.transpose();
    }
  const ComponentSet cs = split_matrix_pair(g, t, "T", om, "Omega");
  write_vtk(path, g, cs.view());
}

void write_displacement_vtk(const std::filesystem::path& path, const DisplacementField& d) {
  const BodyGrid& g = d.grid();
  ComponentSet cs;
  static const char* names[6] = {"u_1", "u_2", "u_3", "phi_1", "phi_2", "phi_3"};
  for (int c = 0; c < 6; ++c) {
    cs.names.push_back(names[c]);
    GridField<double> f(g);
    for (int v = 0; v < f.size(); ++v) f[v] = c < 3 ? d.u[v][c] : d.phi[v][c - 3];
    cs.fields.push_back(std::move(f));
  }
  write_vtk(path, g, cs.view());
}

json parse_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("bad json in " + path.string() + ": " + e.what());
  }
  return j;
}

std::pair<MaterialConstants, SymmetryClass> material_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("material: expected an object");
  static const std::set<std::string> known = {"class", "lambda", "mu1",  "mu2", "alpha",
                                              "beta1", "beta2",  "c1",   "c2",  "c3",
                                              "odd",   "matrix"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw ConfigError("material: unknown key '" + it.key() + "'");
  if (!j.contains("class")) throw ConfigError("material: missing 'class'");
  const std::string cls = j.at("class").get<std::string>();

  MaterialConstants mc;
  auto num = [&](const char* key, double& slot) {
    if (j.contains(key)) slot = j.at(key).get<double>();
  };
  num("lambda", mc.lambda);
  num("mu1", mc.mu1);
  num("mu2", mc.mu2);
  num("alpha", mc.alpha);
  num("beta1", mc.beta1);
  num("beta2", mc.beta2);
  num("c1", mc.c1);
  num("c2", mc.c2);
  num("c3", mc.c3);
  if (j.contains("odd")) {
    for (const auto& o : j.at("odd")) {
      if (!o.is_array() || o.size() != 3) throw ConfigError("material: odd entries are [row,col,k]");
      mc.odd.push_back({o[0].get<int>(), o[1].get<int>(), o[2].get<double>()});
    }
  }
  if (j.contains("matrix")) {
    const auto& m = j.at("matrix");
    if (!m.is_array() || m.size() != 18 * 18)
      throw ConfigError("material: matrix needs 324 row-major entries");
    Mat18 M;
    for (int r = 0; r < 18; ++r)
      for (int c = 0; c < 18; ++c) M(r, c) = m[18 * r + c].get<double>();
    mc.matrix = M;
  }

  SymmetryClass sc;
  if (cls == "isotropic")
    sc = SymmetryClass::Isotropic;
  else if (cls == "hemitropic")
    sc = SymmetryClass::Hemitropic;
  else if (cls == "anisotropic")
    sc = SymmetryClass::Anisotropic;
  else if (cls == "odd")
    sc = SymmetryClass::Odd;
  else
    throw ConfigError("material: unknown class '" + cls + "'");
  return {mc, sc};
}

std::pair<MaterialConstants, SymmetryClass> load_material(const std::filesystem::path& path) {
  return material_from_json(parse_json_file(path));
}

}  // namespace cosserat::io
