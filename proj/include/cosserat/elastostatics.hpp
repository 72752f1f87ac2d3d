#pragma once

#include <Eigen/Sparse>

#include "cosserat/analytic.hpp"
#include "cosserat/material.hpp"

namespace cosserat {

/// Pure-Dirichlet linear micropolar elastostatics on a box: the balance
/// laws closed by a positive definite constitutive operator, collocated at
/// interior vertices with second-order central differences.
struct ElastostaticsProblem {
  BodyGrid grid;
  StiffnessOperator C;
  LoadState loads;
  DisplacementField dirichlet;  ///< boundary values (interior entries ignored)

  ElastostaticsProblem(const BodyGrid& g, StiffnessOperator op)
      : grid(g), C(std::move(op)), loads(grid), dirichlet(grid) {}
};

/// Assembled sparse operator over the interior unknowns, six per vertex in
/// vertex-lexicographic x (u then phi) order. Dirichlet data is folded into
/// the right-hand side.
struct LinearSystem {
  Eigen::SparseMatrix<double> A;
  Eigen::VectorXd b;
  std::vector<int> interior_vertices;  ///< vertex ids in unknown order

  double symmetry_defect() const;
};

LinearSystem assemble(const ElastostaticsProblem& p);

enum class SolveMethod { Direct, ConjugateGradient };

struct SolveReport {
  int iterations = 0;
  double relative_residual = 0.0;
  std::vector<double> residual_history;
};

/// Solve the raw system. Direct uses a sparse LDLT factorization; the
/// conjugate gradient is Jacobi preconditioned with a fixed summation
/// order and errors out with its residual history after 10 N iterations.
Eigen::VectorXd solve_system(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b,
                             SolveMethod method, SolveReport* report = nullptr);

/// Assemble, solve and scatter back into a full displacement field (with
/// the Dirichlet data on the boundary).
DisplacementField solve(const ElastostaticsProblem& p, SolveMethod method,
                        SolveReport* report = nullptr);

/// Equilibrium body loads of an analytic displacement under the operator C
/// (the manufactured-solution source terms, derived in closed form).
LoadState manufactured_loads(const BodyGrid& g, const StiffnessOperator& C,
                             const AnalyticDisplacement& d);

/// Interior L2 error of a solved field against the analytic preset.
double l2_error(const DisplacementField& got, const AnalyticDisplacement& d);

struct MmsResult {
  std::vector<int> grids;
  std::vector<double> errors;
  double observed_order = 0.0;
};

/// Manufactured-solution convergence study: solve on each grid with exact
/// Dirichlet data and closed-form loads, and fit the L2 error order.
MmsResult mms_verify(const StiffnessOperator& C, const AnalyticDisplacement& preset,
                     const std::vector<int>& grids, SolveMethod method);

}  // namespace cosserat
