#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "derham/errors.hpp"
#include "derham/io.hpp"
#include "derham/kernels.hpp"
#include "derham/radial.hpp"
#include "derham/reference.hpp"
#include "derham/solver.hpp"
#include "derham/verify.hpp"

namespace {

using namespace derham;
namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void write_manifest(const fs::path& dir, const io::RunConfig& cfg, const std::string& command,
                    const std::string& status, double seconds, const json& metrics) {
  json m;
  m["command"] = command;
  m["version"] = kVersion;
  m["simd"] = kernels::active().name;
  m["status"] = status;
  m["seconds"] = seconds;
  m["config"] = json::parse(cfg.echo_json());
  m["metrics"] = metrics;
  io::atomic_write_text(dir / "manifest.json", m.dump(2));
}

int run_solve(const io::RunConfig& cfg, const fs::path& out_dir) {
  Timer timer;
  solver::ProblemSpec spec = io::build_problem(cfg);
  solver::SolveResult res = solver::picard_solve(spec);

  std::vector<std::vector<double>> iter_rows;
  for (const auto& r : res.iteration_log)
    iter_rows.push_back({static_cast<double>(r.iter), r.residual, r.rel_change, r.theta, r.sup});
  io::write_csv(out_dir / "iterations.csv", {"iter", "residual", "rel_change", "theta", "sup"},
                iter_rows);

  std::vector<std::vector<double>> diag_rows;
  for (const auto& r : res.diagnostics)
    diag_rows.push_back({r.t, r.energy, r.dissipation, r.energy_residual, r.sup, r.weighted_sup});
  io::write_csv(out_dir / "diagnostics.csv",
                {"t", "energy", "dissipation", "energy_residual", "sup", "weighted_sup"},
                diag_rows);

  if (res.status != solver::SolveStatus::kBlowUpSuspected) {
    io::write_field_file(out_dir / "u.drns", res.u);
    if (cfg.a == 1 && !res.p.slices.empty()) io::write_field_file(out_dir / "p.drns", res.p);
    if (cfg.snapshot_stride > 0)
      for (int i = 0; i < res.u.nt(); i += cfg.snapshot_stride)
        io::write_field_file(out_dir / ("u_" + std::to_string(i) + ".drns"), res.u.slices[i],
                             res.u.time(i));
  }

  json metrics;
  metrics["iterations"] = res.iterations;
  metrics["final_rel_change"] = res.final_change;
  if (res.status == solver::SolveStatus::kBlowUpSuspected)
    metrics["blowup_time"] = res.blowup_time;

  if (cfg.reference == "taylor_green" && res.status == solver::SolveStatus::kConverged) {
    double verr = 0.0, perr = 0.0;
    for (int i = 0; i < res.u.nt(); ++i) {
      const GridForm exact = reference::taylor_green_velocity(spec.grid, cfg.mu, res.u.time(i));
      verr = std::max(verr, (res.u.slices[i] - exact).sup_norm());
    }
    if (!res.p.slices.empty()) {
      const int last = res.p.nt() - 1;
      GridForm pex = reference::taylor_green_pressure(spec.grid, cfg.mu, res.p.time(last));
      GridForm dp = res.p.slices[last] - pex;
      // compare up to the additive constant (zero mode)
      double mean = 0.0;
      for (double v : dp.comps[0]) mean += v;
      mean /= static_cast<double>(dp.comps[0].size());
      for (auto& v : dp.comps[0]) v -= mean;
      perr = dp.sup_norm();
    }
    metrics["reference_velocity_error"] = verr;
    metrics["reference_pressure_error"] = perr;
  } else if (cfg.reference == "cole_hopf" && res.status == solver::SolveStatus::kConverged) {
    reference::BumpProblem prob{cfg.u0_amplitude, cfg.u0_sigma, cfg.mu, 1.5};
    const GridForm& last = res.u.slices.back();
    double err = 0.0;
    for (int j = 0; j < spec.grid.N; ++j) {
      const double x = spec.grid.coord(j);
      err = std::max(err, std::fabs(last.comps[0][j] -
                                    reference::cole_hopf_profile(prob, x, cfg.T)));
    }
    metrics["reference_profile_error"] = err;
  }

  write_manifest(out_dir, cfg, "solve", solver::status_name(res.status), timer.seconds(),
                 metrics);
  switch (res.status) {
    case solver::SolveStatus::kConverged: return 0;
    case solver::SolveStatus::kMaxIter: return 2;
    case solver::SolveStatus::kBlowUpSuspected: return 3;
  }
  return 2;
}

int run_radial(const io::RunConfig& cfg, const fs::path& out_dir) {
  Timer timer;
  std::vector<double> amps = cfg.amplitudes;
  if (amps.empty()) amps.push_back(cfg.amplitude);
  const double dt = cfg.dt_radial > 0.0 ? cfg.dt_radial
                                        : 0.4 * (cfg.R / cfg.nr) * (cfg.R / cfg.nr);

  std::vector<std::vector<double>> sweep;
  std::string status = "Completed";
  bool any_blowup = false;
  for (std::size_t run = 0; run < amps.size(); ++run) {
    const double A = amps[run];
    const auto v0 = radial::sample_profile(cfg.n, cfg.nr, cfg.R, [&](double r) {
      return A / std::pow(1.0 + r * r, 3.0);
    });
    const auto res = radial::radial_evolve(v0, cfg.t_final, dt, cfg.snapshot_stride);
    const bool blew = res.status == radial::EvolveResult::Status::kBlowUp;
    any_blowup = any_blowup || blew;
    sweep.push_back({A, blew ? res.blowup_time : -1.0,
                     blew ? res.max_series.back().second : res.final.max_abs()});

    std::vector<std::vector<double>> profile_rows;
    const radial::RadialProfile& fin = blew ? v0 : res.final;
    for (int i = 0; i < fin.nr(); ++i) profile_rows.push_back({fin.r(i), fin.v[i]});
    io::write_csv(out_dir / ("profile_" + std::to_string(run) + ".csv"), {"r", "v"},
                  profile_rows);
    std::vector<std::vector<double>> series;
    for (const auto& [t, m] : res.max_series) series.push_back({t, m});
    io::write_csv(out_dir / ("max_series_" + std::to_string(run) + ".csv"), {"t", "max_abs_v"},
                  series);
  }
  io::write_csv(out_dir / "sweep.csv", {"amplitude", "blowup_time", "final_max"}, sweep);
  if (any_blowup) status = "BlowUp";

  json metrics;
  metrics["runs"] = amps.size();
  metrics["blowup"] = any_blowup;
  if (any_blowup) {
    json ts = json::array();
    for (const auto& row : sweep) ts.push_back(row[1]);
    metrics["blowup_times"] = ts;
  }
  write_manifest(out_dir, cfg, "radial", status, timer.seconds(), metrics);
  return any_blowup ? 3 : 0;
}

int run_selfsim(const io::RunConfig& cfg, const fs::path& out_dir) {
  Timer timer;
  json metrics;
  std::vector<std::vector<double>> table;
  radial::SelfSimilarProfile prof;
  if (cfg.gamma == 0.0) {
    // gamma = 0: w == 0 solves the problem identically
    prof.n = cfg.n;
    prof.gamma = 0.0;
    prof.kappa = cfg.kappa > 0.0 ? cfg.kappa : 1.0;
    for (int i = 0; i <= 100; ++i) {
      prof.y.push_back(cfg.y_max * i / 100.0);
      prof.w.push_back(0.0);
    }
    prof.matched = true;
  } else if (cfg.kappa > 0.0) {
    radial::OdeOptions opt;
    opt.y_max = cfg.y_max;
    opt.coeff_2kw = cfg.coeff_2kw;
    prof = radial::selfsim_integrate(cfg.gamma, cfg.kappa, cfg.n, opt);
  } else {
    prof = radial::selfsim_shoot(cfg.gamma, cfg.n, cfg.y_max, cfg.coeff_2kw);
  }
  table.push_back({prof.gamma, prof.kappa, prof.decay_constant});
  io::write_csv(out_dir / "matched.csv", {"gamma", "kappa", "decay_constant"}, table);
  std::vector<std::vector<double>> profile_rows;
  for (std::size_t i = 0; i < prof.y.size(); ++i)
    profile_rows.push_back({prof.y[i], prof.w[i]});
  io::write_csv(out_dir / "profile.csv", {"y", "w"}, profile_rows);

  metrics["kappa"] = prof.kappa;
  metrics["decay_constant"] = prof.decay_constant;
  metrics["matched"] = prof.matched;
  write_manifest(out_dir, cfg, "selfsim", prof.matched ? "Matched" : "Unmatched",
                 timer.seconds(), metrics);
  return 0;
}

int run_norms(const io::RunConfig& cfg, const fs::path& out_dir, const std::string& field_path) {
  Timer timer;
  Trajectory u = io::read_field_file(field_path, cfg.mu > 0.0 ? cfg.mu : 1.0);
  for (auto& s : u.slices) s.grid.mode =
      cfg.grid_mode == "periodic" ? DomainMode::kPeriodic : DomainMode::kFree;

  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  auto emit = [&](const std::string& label, double value) {
    labels.push_back(label);
    rows.push_back({value});
  };

  spaces::NormParams p = cfg.norms;
  if (u.nt() == 1) {
    const GridForm& s = u.slices[0];
    const auto sup = spaces::weighted_sup_norm(s, p);
    for (const auto& t : sup.terms) emit("weighted_sup " + t.label, t.value);
    emit("weighted_sup total", sup.total);
    emit("holder_seminorm", spaces::holder_seminorm(s, p.lambda, p.delta, p.pair_budget));
    emit("lp_norm p=2", spaces::lp_norm(s, 2.0));
    const auto cn = spaces::c_norm(s, p);
    emit("c_norm total", cn.total);
  } else {
    u.params.mu = cfg.mu > 0.0 ? cfg.mu : 1.0;
    const auto an = spaces::aniso_norm(u, p);
    for (const auto& t : an.terms) emit("aniso " + t.label, t.value);
    emit("aniso total", an.total);
    if (p.lambda_prime > p.lambda) {
      const auto fn = spaces::f_norm(u, p);
      for (const auto& t : fn.terms) emit("F " + t.label, t.value);
      emit("F total", fn.total);
    }
  }

  std::string text = "norm,value\n";
  for (std::size_t i = 0; i < labels.size(); ++i)
    text += labels[i] + "," + io::format_double(rows[i][0]) + "\n";
  io::atomic_write_text(out_dir / "norms.csv", text);

  write_manifest(out_dir, cfg, "norms", "Done", timer.seconds(), json::object());
  return 0;
}

int run_verify() {
  const auto rows = verify::run_identity_suite(4, 32);
  std::printf("%-36s %14s %10s  %s\n", "check", "residual", "tol", "status");
  for (const auto& r : rows)
    std::printf("%-36s %14.3e %10.1e  %s\n", r.name.c_str(), r.residual, r.tolerance,
                r.pass ? "pass" : "FAIL");
  const bool ok = verify::all_pass(rows);
  std::printf("%zu checks, %s\n", rows.size(), ok ? "all passed" : "FAILURES present");
  return ok ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral laboratory for Navier-Stokes type equations on the de Rham complex"};
  app.require_subcommand(1);

  std::string config_path, out_override, field_path;

  auto* solve = app.add_subcommand("solve", "run the mild fixed-point solver");
  solve->add_option("--config", config_path, "run configuration (JSON)")->required();
  solve->add_option("--out", out_override, "output directory override");

  auto* rad = app.add_subcommand("radial", "evolve the radial reduction");
  rad->add_option("--config", config_path)->required();
  rad->add_option("--out", out_override);

  auto* ss = app.add_subcommand("selfsim", "self-similar profile by shooting");
  ss->add_option("--config", config_path)->required();
  ss->add_option("--out", out_override);

  auto* norms = app.add_subcommand("norms", "weighted norm report for a field file");
  norms->add_option("--config", config_path)->required();
  norms->add_option("--field", field_path, "binary field file")->required();
  norms->add_option("--out", out_override);

  auto* verify_cmd = app.add_subcommand("verify", "run the operator identity suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify_cmd->parsed()) return run_verify();
    const io::RunConfig cfg = io::load_config(config_path);
    const fs::path out_dir = out_override.empty() ? fs::path(cfg.out_dir) : fs::path(out_override);
    std::filesystem::create_directories(out_dir);
    if (solve->parsed()) return run_solve(cfg, out_dir);
    if (rad->parsed()) return run_radial(cfg, out_dir);
    if (ss->parsed()) return run_selfsim(cfg, out_dir);
    if (norms->parsed()) return run_norms(cfg, out_dir, field_path);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
