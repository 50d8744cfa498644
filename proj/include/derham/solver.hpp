#pragma once

#include <optional>
#include <vector>

#include "derham/nonlinearity.hpp"
#include "derham/potentials.hpp"
#include "derham/spaces.hpp"
#include "derham/trajectory.hpp"

namespace derham::solver {

enum class SolveStatus { kConverged, kMaxIter, kBlowUpSuspected };
const char* status_name(SolveStatus s);

struct ProblemSpec {
  int n = 2;
  int q = 1;
  int a = 0;  // 0: no constraint, p = 0; 1: projected problem with pressure
  HeatParams heat;
  Grid grid;
  nonlinearity::NonlinearitySpec nl;
  Trajectory f;  // forcing on the heat time grid
  GridForm u0;
  spaces::NormParams norms;
  double tol = 1e-10;
  int max_iter = 200;
  double theta = 1.0;  // Picard damping; auto-halved on residual increase
  double blowup_threshold = 1e6;

  ProblemSpec(const Grid& g, const HeatParams& h, const nonlinearity::NonlinearitySpec& nl_);
  void validate() const;
};

struct IterationRow {
  int iter;
  double residual;    // proxy norm of u + [P] Psi N u - v0
  double rel_change;  // proxy norm of the damped update, relative
  double theta;
  double sup;         // trajectory sup norm after the update
};

struct DiagnosticsRow {
  double t;
  double energy;       // ||u(t)||_{L^2}^2
  double dissipation;  // mu sum_j ||d_j u(t)||_{L^2}^2
  double energy_residual;
  double sup;
  double weighted_sup;  // sup_x w^delta |u|
};

struct SolveResult {
  SolveStatus status = SolveStatus::kMaxIter;
  Trajectory u;
  Trajectory p;  // (q-1)-forms, populated only for a = 1
  int iterations = 0;
  double final_change = 0.0;
  double blowup_time = -1.0;
  std::vector<IterationRow> iteration_log;
  std::vector<DiagnosticsRow> diagnostics;
};

/// v0 = Psi f + Psi_0 u0, Leray-projected slice-wise when a = 1.
Trajectory assemble_rhs(const ProblemSpec& spec);

/// Damped Picard iteration for u + [P] Psi N u = v0. Blow-up and max-iter
/// are reported as statuses, never thrown.
SolveResult picard_solve(const ProblemSpec& spec);
SolveResult picard_solve_from(const ProblemSpec& spec, const Trajectory& initial_iterate);

/// Same fixed-point machinery with the nonlinearity frozen to B(w, .).
SolveResult picard_solve_linearized(const ProblemSpec& spec, const Trajectory& w);

/// p(t) = Phi-inverse of (I - P)(f(t) - N u(t)); requires a = 1.
Trajectory recover_pressure(const ProblemSpec& spec, const Trajectory& u);

std::vector<DiagnosticsRow> energy_monitor(const ProblemSpec& spec, const Trajectory& u);

}  // namespace derham::solver
