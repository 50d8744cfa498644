#include "derham/solver.hpp"

#include <algorithm>
#include <cmath>

#include "derham/errors.hpp"
#include "derham/exterior.hpp"
#include "derham/fft.hpp"
#include "derham/parallel.hpp"

namespace derham::solver {
namespace {

Trajectory apply_N_slicewise(const nonlinearity::NonlinearitySpec& nl, const Trajectory& u) {
  Trajectory out(u.params, u.grid(), u.degree());
  par::parallel_for(0, u.nt(), [&](std::int64_t i) {
    out.slices[i] = nonlinearity::apply_N(nl, u.slices[i]);
  });
  return out;
}

Trajectory apply_B_slicewise(const nonlinearity::NonlinearitySpec& nl, const Trajectory& w,
                             const Trajectory& u) {
  Trajectory out(u.params, u.grid(), u.degree());
  par::parallel_for(0, u.nt(), [&](std::int64_t i) {
    out.slices[i] = nonlinearity::apply_B(nl, w.slices[i], u.slices[i]);
  });
  return out;
}

double dissipation_rate(const GridForm& u, double mu) {
  const SpectralForm s = fft::forward(u);
  const auto& k2 = exterior::symbols(u.grid).k2;
  double sum = 0.0;
  for (const auto& c : s.comps)
    for (std::size_t m = 0; m < c.size(); ++m) sum += k2[m] * std::norm(c[m]);
  double vol = 1.0;
  for (int i = 0; i < u.grid.n; ++i) vol *= 2.0 * u.grid.L;
  return mu * vol * sum;
}

// shared iteration driver; `nonlinear_term` maps the current iterate to N(u)
// (or B(w, u) in the linearized mode)
template <typename Term>
SolveResult iterate(const ProblemSpec& spec, const Trajectory& v0, Trajectory u, Term&& term) {
  SolveResult res;
  const double lam = spec.norms.lambda, delta = spec.norms.delta;
  double theta = spec.theta;
  double prev_residual = std::numeric_limits<double>::infinity();

  for (int it = 1; it <= spec.max_iter; ++it) {
    Trajectory correction = potentials::volume_potential(term(u));
    if (spec.a == 1) correction = potentials::leray_project(correction);
    Trajectory trial = v0;
    trial.axpy(-1.0, correction);

    Trajectory defect = trial;
    defect.axpy(-1.0, u);
    const double residual = spaces::proxy_norm(defect, lam, delta);
    if (residual > prev_residual) theta = std::max(theta / 2.0, 0.125);
    prev_residual = residual;

    u.blend(1.0 - theta, theta, trial);

    const double sup = u.sup_norm();
    bool finite = true;
    for (const auto& s : u.slices)
      if (!s.all_finite()) finite = false;
    if (!finite || sup > spec.blowup_threshold) {
      res.status = SolveStatus::kBlowUpSuspected;
      res.blowup_time = 0.0;
      for (int i = 0; i < u.nt(); ++i)
        if (!u.slices[i].all_finite() || u.slices[i].sup_norm() > spec.blowup_threshold) {
          res.blowup_time = u.time(i);
          break;
        }
      res.u = std::move(u);
      res.iterations = it;
      res.iteration_log.push_back({it, residual, std::numeric_limits<double>::quiet_NaN(), theta,
                                   sup});
      return res;
    }

    const double unorm = spaces::proxy_norm(u, lam, delta);
    const double rel = (unorm > 0.0) ? theta * residual / unorm : theta * residual;
    res.iteration_log.push_back({it, residual, rel, theta, sup});
    if (rel <= spec.tol) {
      res.status = SolveStatus::kConverged;
      res.u = std::move(u);
      res.iterations = it;
      res.final_change = rel;
      return res;
    }
  }
  res.status = SolveStatus::kMaxIter;
  res.u = std::move(u);
  res.iterations = spec.max_iter;
  res.final_change = res.iteration_log.empty() ? 0.0 : res.iteration_log.back().rel_change;
  return res;
}

void finish(const ProblemSpec& spec, SolveResult& res) {
  if (spec.a == 1 && res.status == SolveStatus::kConverged)
    res.p = recover_pressure(spec, res.u);
  if (res.status != SolveStatus::kBlowUpSuspected)
    res.diagnostics = energy_monitor(spec, res.u);
}

}  // namespace

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::kConverged: return "Converged";
    case SolveStatus::kMaxIter: return "MaxIter";
    case SolveStatus::kBlowUpSuspected: return "BlowUpSuspected";
  }
  return "?";
}

ProblemSpec::ProblemSpec(const Grid& g, const HeatParams& h,
                         const nonlinearity::NonlinearitySpec& nl_)
    : n(g.n), q(nl_.q), heat(h), grid(g), nl(nl_), f(h, g, nl_.q), u0(g, nl_.q) {}

void ProblemSpec::validate() const {
  if (grid.n != n || nl.n != n || nl.q != q)
    throw Error(ErrorCode::InvalidProblem, "dimension/degree mismatch across the problem");
  if (a != 0 && a != 1) throw Error(ErrorCode::InvalidProblem, "a must be 0 or 1");
  if (a == 1 && (q < 1 || q > n - 1))
    throw Error(ErrorCode::InvalidProblem, "a = 1 requires 1 <= q <= n-1");
  if (f.nt() != heat.nt || !(f.grid() == grid) || f.degree() != q)
    throw Error(ErrorCode::InvalidProblem, "forcing trajectory does not match the problem");
  if (!(u0.grid == grid) || u0.degree() != q)
    throw Error(ErrorCode::InvalidProblem, "initial data does not match the problem");
  if (a == 1) {
    const double un = u0.l2_norm();
    if (un > 0.0 && exterior::d_star(u0).l2_norm() > 1e-8 * un)
      throw Error(ErrorCode::InvalidProblem, "a = 1 requires co-closed initial data");
  }
  if (!(tol > 0.0) || max_iter < 1 || !(theta > 0.0 && theta <= 1.0))
    throw Error(ErrorCode::InvalidProblem, "bad solver parameters");
}

Trajectory assemble_rhs(const ProblemSpec& spec) {
  spec.validate();
  Trajectory v0 = potentials::poisson_potential(spec.u0, spec.heat);
  bool forced = false;
  for (const auto& s : spec.f.slices)
    if (s.sup_norm() > 0.0) forced = true;
  if (forced) v0.axpy(1.0, potentials::volume_potential(spec.f));
  if (spec.a == 1) v0 = potentials::leray_project(v0);
  return v0;
}

SolveResult picard_solve(const ProblemSpec& spec) {
  const Trajectory v0 = assemble_rhs(spec);
  SolveResult res =
      iterate(spec, v0, v0, [&](const Trajectory& u) { return apply_N_slicewise(spec.nl, u); });
  finish(spec, res);
  return res;
}

SolveResult picard_solve_from(const ProblemSpec& spec, const Trajectory& initial_iterate) {
  const Trajectory v0 = assemble_rhs(spec);
  SolveResult res = iterate(spec, v0, initial_iterate,
                            [&](const Trajectory& u) { return apply_N_slicewise(spec.nl, u); });
  finish(spec, res);
  return res;
}

SolveResult picard_solve_linearized(const ProblemSpec& spec, const Trajectory& w) {
  require_compatible(spec.f, w);
  const Trajectory v0 = assemble_rhs(spec);
  SolveResult res = iterate(
      spec, v0, v0, [&](const Trajectory& u) { return apply_B_slicewise(spec.nl, w, u); });
  if (res.status != SolveStatus::kBlowUpSuspected) res.diagnostics = energy_monitor(spec, res.u);
  return res;
}

Trajectory recover_pressure(const ProblemSpec& spec, const Trajectory& u) {
  if (spec.a != 1) throw Error(ErrorCode::InvalidProblem, "pressure exists only for a = 1");
  Trajectory p(u.params, u.grid(), spec.q - 1);
  par::parallel_for(0, u.nt(), [&](std::int64_t i) {
    GridForm rhs = spec.f.slices[i] - nonlinearity::apply_N(spec.nl, u.slices[i]);
    GridForm exact_part = rhs - potentials::leray_project(rhs);
    p.slices[i] = potentials::phi_inverse_d(exact_part);
  });
  return p;
}

std::vector<DiagnosticsRow> energy_monitor(const ProblemSpec& spec, const Trajectory& u) {
  const int nt = u.nt();
  std::vector<DiagnosticsRow> rows(nt);
  std::vector<double> energy(nt), pairing(nt);
  par::parallel_for(0, nt, [&](std::int64_t i) {
    const GridForm& s = u.slices[i];
    GridForm nl_term = nonlinearity::apply_N(spec.nl, s);
    if (spec.a == 1) nl_term = potentials::leray_project(nl_term);
    energy[i] = s.dot(s);
    pairing[i] = nl_term.dot(s) - spec.f.slices[i].dot(s);
    rows[i].t = u.time(static_cast<int>(i));
    rows[i].energy = energy[i];
    rows[i].dissipation = dissipation_rate(s, spec.heat.mu);
    rows[i].sup = s.sup_norm();
    spaces::NormParams p0;
    p0.s = 0;
    p0.lambda = spec.norms.lambda;
    p0.delta = spec.norms.delta;
    rows[i].weighted_sup = spaces::weighted_sup_norm(s, p0).total;
  });
  // dE/dt by the same second-order stencils used for trajectories
  const double tau = u.params.tau();
  for (int i = 0; i < nt; ++i) {
    double dEdt;
    if (nt == 2)
      dEdt = (energy[1] - energy[0]) / tau;
    else if (i == 0)
      dEdt = (-1.5 * energy[0] + 2.0 * energy[1] - 0.5 * energy[2]) / tau;
    else if (i == nt - 1)
      dEdt = (1.5 * energy[nt - 1] - 2.0 * energy[nt - 2] + 0.5 * energy[nt - 3]) / tau;
    else
      dEdt = (energy[i + 1] - energy[i - 1]) / (2.0 * tau);
    rows[i].energy_residual = std::fabs(dEdt + 2.0 * rows[i].dissipation + 2.0 * pairing[i]);
  }
  return rows;
}

}  // namespace derham::solver
