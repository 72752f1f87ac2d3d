#include "cosserat/elastostatics.hpp"

#include <Eigen/SparseCholesky>
#include <sstream>

#include "cosserat/parallel.hpp"

namespace cosserat {

namespace {

// 6x6 coupling block for each of the 27 stencil offsets, for a constant
// operator on a uniform grid. Rows are the negated balance equations
// (-d_j sigma_ji = f_i and the moment analogue), so the assembled matrix is
// positive definite for positive definite C.
std::array<Eigen::Matrix<double, 6, 6>, 27> stencil_blocks(const StiffnessOperator& C,
                                                           const Vec3& h) {
  std::array<Eigen::Matrix<double, 6, 6>, 27> B;
  for (auto& m : B) m.setZero();

  auto at = [&B](int dx, int dy, int dz) -> Eigen::Matrix<double, 6, 6>& {
    return B[(dx + 1) + 3 * (dy + 1) + 9 * (dz + 1)];
  };

  // first-derivative weights d_j and second derivatives d_j d_k
  auto add_first = [&](int j, int row, int col, double coeff) {
    if (coeff == 0.0) return;
    std::array<int, 3> d{};
    d[j] = 1;
    at(d[0], d[1], d[2])(row, col) += coeff / (2 * h[j]);
    at(-d[0], -d[1], -d[2])(row, col) -= coeff / (2 * h[j]);
  };
  auto add_second = [&](int j, int k, int row, int col, double coeff) {
    if (coeff == 0.0) return;
    if (j == k) {
      std::array<int, 3> d{};
      d[j] = 1;
      const double w = coeff / (h[j] * h[j]);
      at(d[0], d[1], d[2])(row, col) += w;
      at(-d[0], -d[1], -d[2])(row, col) += w;
      at(0, 0, 0)(row, col) -= 2 * w;
    } else {
      const double w = coeff / (4 * h[j] * h[k]);
      for (int sj : {-1, 1})
        for (int sk : {-1, 1}) {
          std::array<int, 3> d{};
          d[j] = sj;
          d[k] = sk;
          at(d[0], d[1], d[2])(row, col) += w * sj * sk;
        }
    }
  };

  const Mat18& M = C.matrix();
  auto C1 = [&](int j, int i, int k, int l) { return M(3 * j + i, 3 * k + l); };
  auto C2 = [&](int j, int i, int k, int l) { return M(3 * j + i, 9 + 3 * k + l); };
  auto C3 = [&](int j, int i, int k, int l) { return M(9 + 3 * j + i, 3 * k + l); };
  auto C4 = [&](int j, int i, int k, int l) { return M(9 + 3 * j + i, 9 + 3 * k + l); };

  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          // force rows: -C1 d_j d_k u_l + C1 eps_klm d_j phi_m - C2 d_j d_k phi_l
          add_second(j, k, i, l, -C1(j, i, k, l));
          add_second(j, k, i, 3 + l, -C2(j, i, k, l));
          for (int m = 0; m < 3; ++m) {
            const double lc = levi_civita(k, l, m);
            if (lc != 0.0) add_first(j, i, 3 + m, C1(j, i, k, l) * lc);
          }
          // moment rows, stress-divergence part
          add_second(j, k, 3 + i, l, -C3(j, i, k, l));
          add_second(j, k, 3 + i, 3 + l, -C4(j, i, k, l));
          for (int m = 0; m < 3; ++m) {
            const double lc = levi_civita(k, l, m);
            if (lc != 0.0) add_first(j, 3 + i, 3 + m, C3(j, i, k, l) * lc);
          }
        }

    // moment rows, torque of the force stress: -eps_ijk sigma_jk
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const double lc = levi_civita(i, j, k);
        if (lc == 0.0) continue;
        for (int p = 0; p < 3; ++p)
          for (int q = 0; q < 3; ++q) {
            add_first(p, 3 + i, q, -lc * C1(j, k, p, q));
            add_first(p, 3 + i, 3 + q, -lc * C2(j, k, p, q));
            for (int m = 0; m < 3; ++m) {
              const double lc2 = levi_civita(p, q, m);
              if (lc2 != 0.0) at(0, 0, 0)(3 + i, 3 + m) += lc * C1(j, k, p, q) * lc2;
            }
          }
      }
  }
  return B;
}

}  // namespace

double LinearSystem::symmetry_defect() const {
  Eigen::SparseMatrix<double> d = Eigen::SparseMatrix<double>(A.transpose()) - A;
  double m = 0;
  for (int k = 0; k < d.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(d, k); it; ++it)
      m = std::max(m, std::abs(it.value()));
  return m;
}

LinearSystem assemble(const ElastostaticsProblem& p) {
  if (!p.C.hyperelastic())
    throw ValidationError(
        "assemble: constitutive operator lacks major symmetry; the symmetric "
        "solvers do not apply");
  if (!p.C.positive_definite())
    throw ValidationError("assemble: constitutive operator is not positive definite (margin " +
                          std::to_string(p.C.min_eigenvalue()) + ")");
  const BodyGrid& g = p.grid;
  const auto& d = g.dims();

  LinearSystem sys;
  std::vector<int> unknown_of(g.num_vertices(), -1);
  for (int k = 1; k < d[2]; ++k)
    for (int j = 1; j < d[1]; ++j)
      for (int i = 1; i < d[0]; ++i) {
        unknown_of[g.vertex_id(i, j, k)] = static_cast<int>(sys.interior_vertices.size());
        sys.interior_vertices.push_back(g.vertex_id(i, j, k));
      }
  const int n = static_cast<int>(sys.interior_vertices.size());
  sys.b.setZero(6 * n);

  const auto blocks = stencil_blocks(p.C, g.spacing());

  // row-chunked assembly; chunks are concatenated in order, so the triplet
  // list (and hence the matrix) is identical for any thread count
  const int workers = std::max(1, std::min(thread_count(), n));
  std::vector<std::vector<Eigen::Triplet<double>>> chunk_trips(workers);
  const int chunk = (n + workers - 1) / workers;
  parallel_chunks(workers, [&](int wb, int we) {
    for (int w = wb; w < we; ++w) {
      auto& trips = chunk_trips[w];
      trips.reserve(static_cast<size_t>(chunk) * 27 * 12);
      for (int row_v = w * chunk; row_v < std::min(n, (w + 1) * chunk); ++row_v) {
        const CellRef c = g.vertex_ref(sys.interior_vertices[row_v]);
        for (int dz = -1; dz <= 1; ++dz)
          for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
              const auto& B = blocks[(dx + 1) + 3 * (dy + 1) + 9 * (dz + 1)];
              const int ni = c.i + dx, nj = c.j + dy, nk = c.k + dz;
              const int col_v = unknown_of[g.vertex_id(ni, nj, nk)];
              if (col_v >= 0) {
                for (int r = 0; r < 6; ++r)
                  for (int cc = 0; cc < 6; ++cc)
                    if (B(r, cc) != 0.0)
                      trips.emplace_back(6 * row_v + r, 6 * col_v + cc, B(r, cc));
              } else {
                Eigen::Matrix<double, 6, 1> wv;
                wv << p.dirichlet.u(ni, nj, nk), p.dirichlet.phi(ni, nj, nk);
                sys.b.segment<6>(6 * row_v) -= B * wv;
              }
            }
        sys.b.segment<3>(6 * row_v) += p.loads.f(c.i, c.j, c.k);
        sys.b.segment<3>(6 * row_v + 3) += p.loads.m(c.i, c.j, c.k);
      }
    }
  });
  std::vector<Eigen::Triplet<double>> trips;
  size_t total = 0;
  for (const auto& t : chunk_trips) total += t.size();
  trips.reserve(total);
  for (auto& t : chunk_trips) trips.insert(trips.end(), t.begin(), t.end());
  sys.A.resize(6 * n, 6 * n);
  sys.A.setFromTriplets(trips.begin(), trips.end());
  sys.A.makeCompressed();
  return sys;
}

Eigen::VectorXd solve_system(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b,
                             SolveMethod method, SolveReport* report) {
  if (method == SolveMethod::Direct) {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
    if (ldlt.info() != Eigen::Success)
      throw SolverError("direct solve: factorization failed (singular or indefinite matrix)");
    Eigen::VectorXd x = ldlt.solve(b);
    const double bn = b.norm();
    const double rel = bn > 0 ? (A * x - b).norm() / bn : (A * x).norm();
    if (!x.allFinite() || rel > 1e-8)
      throw SolverError("direct solve: residual " + std::to_string(rel));
    if (report) {
      report->iterations = 1;
      report->relative_residual = rel;
    }
    return x;
  }

  // Jacobi-preconditioned conjugate gradient, fixed summation order
  const int n = static_cast<int>(A.rows());
  Eigen::VectorXd diag = A.diagonal();
  for (int i = 0; i < n; ++i) {
    if (diag[i] <= 0.0) throw SolverError("cg: non-positive diagonal, matrix is not SPD");
    diag[i] = 1.0 / diag[i];
  }
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd r = b;
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    if (report) *report = SolveReport{};
    return x;
  }
  Eigen::VectorXd z = diag.cwiseProduct(r);
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  const long maxit = 10L * n;
  SolveReport local;
  SolveReport& rep = report ? *report : local;
  rep.residual_history.clear();
  const double tol = 1e-11;
  for (long it = 1; it <= maxit; ++it) {
    const Eigen::VectorXd q = A * p;
    const double pq = p.dot(q);
    if (pq <= 0.0) throw SolverError("cg: encountered a non-positive curvature direction");
    const double alpha = rz / pq;
    x += alpha * p;
    r -= alpha * q;
    const double rel = r.norm() / bnorm;
    rep.residual_history.push_back(rel);
    rep.iterations = static_cast<int>(it);
    rep.relative_residual = rel;
    if (rel < tol) return x;
    z = diag.cwiseProduct(r);
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  std::ostringstream os;
  os << "cg: no convergence after " << maxit << " iterations; residual history tail:";
  const size_t tail = std::min<size_t>(5, rep.residual_history.size());
  for (size_t i = rep.residual_history.size() - tail; i < rep.residual_history.size(); ++i)
    os << " " << rep.residual_history[i];
  throw SolverError(os.str());
}

DisplacementField solve(const ElastostaticsProblem& p, SolveMethod method, SolveReport* report) {
  const LinearSystem sys = assemble(p);
  const Eigen::VectorXd x = solve_system(sys.A, sys.b, method, report);
  DisplacementField out(p.grid);
  const auto& d = p.grid.dims();
  for (int k = 0; k <= d[2]; ++k)
    for (int j = 0; j <= d[1]; ++j)
      for (int i = 0; i <= d[0]; ++i)
        if (p.grid.is_boundary_vertex(i, j, k)) {
          out.u(i, j, k) = p.dirichlet.u(i, j, k);
          out.phi(i, j, k) = p.dirichlet.phi(i, j, k);
        }
  for (size_t v = 0; v < sys.interior_vertices.size(); ++v) {
    out.u[sys.interior_vertices[v]] = x.segment<3>(6 * v);
    out.phi[sys.interior_vertices[v]] = x.segment<3>(6 * v + 3);
  }
  return out;
}

LoadState manufactured_loads(const BodyGrid& g, const StiffnessOperator& C,
                             const AnalyticDisplacement& d) {
  LoadState out(g);
  const Mat18& M = C.matrix();
  auto C1 = [&](int j, int i, int k, int l) { return M(3 * j + i, 3 * k + l); };
  auto C2 = [&](int j, int i, int k, int l) { return M(3 * j + i, 9 + 3 * k + l); };
  auto C3 = [&](int j, int i, int k, int l) { return M(9 + 3 * j + i, 3 * k + l); };
  auto C4 = [&](int j, int i, int k, int l) { return M(9 + 3 * j + i, 9 + 3 * k + l); };

  const auto& dims = g.dims();
  parallel_chunks(dims[2] + 1, [&](int kb, int ke) {
  for (int kk = kb; kk < ke; ++kk)
    for (int jj = 0; jj <= dims[1]; ++jj)
      for (int ii = 0; ii <= dims[0]; ++ii) {
        const Vec3 p = g.position(ii, jj, kk);
        const Mat3 gu = d.grad_u(p), gp = d.grad_phi(p);
        const Vec3 ph = d.phi(p);
        // strains and their exact gradients
        Mat3 eps = gu, tau = gp;
        for (int a = 0; a < 3; ++a)
          for (int l = 0; l < 3; ++l)
            for (int m = 0; m < 3; ++m) eps(a, l) -= levi_civita(a, l, m) * ph[m];
        std::array<Mat3, 3> hu, hp;  // hu[l](j,k) = d_j d_k u_l
        for (int l = 0; l < 3; ++l) {
          hu[l] = d.hess_u(p, l);
          hp[l] = d.hess_phi(p, l);
        }
        // d_j eps_kl = d_j d_k u_l - eps_klm d_j phi_m
        auto deps = [&](int j, int k, int l) {
          double v = hu[l](j, k);
          for (int m = 0; m < 3; ++m) v -= levi_civita(k, l, m) * gp(j, m);
          return v;
        };
        auto dtau = [&](int j, int k, int l) { return hp[l](j, k); };

        Vec3 f = Vec3::Zero(), mt = Vec3::Zero();
        Mat3 sigma = Mat3::Zero();
        for (int j = 0; j < 3; ++j)
          for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k)
              for (int l = 0; l < 3; ++l) {
                f[i] -= C1(j, i, k, l) * deps(j, k, l) + C2(j, i, k, l) * dtau(j, k, l);
                mt[i] -= C3(j, i, k, l) * deps(j, k, l) + C4(j, i, k, l) * dtau(j, k, l);
                sigma(j, i) += C1(j, i, k, l) * eps(k, l) + C2(j, i, k, l) * tau(k, l);
              }
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) mt[i] -= levi_civita(i, j, k) * sigma(j, k);
        out.f(ii, jj, kk) = f;
        out.m(ii, jj, kk) = mt;
      }
  });
  return out;
}

double l2_error(const DisplacementField& got, const AnalyticDisplacement& d) {
  const BodyGrid& g = got.grid();
  const auto& dims = g.dims();
  double acc = 0;
  for (int k = 1; k < dims[2]; ++k)
    for (int j = 1; j < dims[1]; ++j)
      for (int i = 1; i < dims[0]; ++i) {
        const Vec3 p = g.position(i, j, k);
        const double w = g.spacing().prod();
        acc += w * ((got.u(i, j, k) - d.u(p)).squaredNorm() +
                    (got.phi(i, j, k) - d.phi(p)).squaredNorm());
      }
  return std::sqrt(acc);
}

MmsResult mms_verify(const StiffnessOperator& C, const AnalyticDisplacement& preset,
                     const std::vector<int>& grids, SolveMethod method) {
  MmsResult res;
  for (int n : grids) {
    BodyGrid g({n, n, n}, Vec3(1.0 / n, 1.0 / n, 1.0 / n));
    ElastostaticsProblem prob(g, C);
    prob.loads = manufactured_loads(g, C, preset);
    prob.dirichlet.u.fill([&](const Vec3& p) { return preset.u(p); });
    prob.dirichlet.phi.fill([&](const Vec3& p) { return preset.phi(p); });
    DisplacementField sol = solve(prob, method);
    res.grids.push_back(n);
    res.errors.push_back(l2_error(sol, preset));
  }
  // least-squares slope of log error against log h
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int m = static_cast<int>(grids.size());
  for (int i = 0; i < m; ++i) {
    const double x = std::log(1.0 / res.grids[i]), y = std::log(res.errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  res.observed_order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return res;
}

}  // namespace cosserat
