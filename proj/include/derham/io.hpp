#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "derham/solver.hpp"
#include "derham/trajectory.hpp"

namespace derham::io {

/// Parsed run configuration. Unknown keys are rejected with the offending
/// path; physical fields (n, q, a, mu, T) are mandatory, defaults exist only
/// for the solver and output sections.
struct RunConfig {
  // problem
  int n = 0, q = 0, a = 0;
  double mu = 0.0, T = 0.0;
  int nt = 0;
  std::string nl_name = "zero";  // zero | lamb | ps | file
  double nl_b = 0.0;
  std::string nl_tensor_file;

  // grid
  int N = 0;
  double L = 0.0;
  std::string grid_mode = "free";  // free | periodic

  // data (initial value and forcing)
  std::string u0_type = "zero";  // zero | gaussian | quasi1d_bump | taylor_green | radial | file
  double u0_amplitude = 1.0;
  double u0_sigma = 1.0;
  std::string u0_file;
  std::string f_type = "zero";  // zero | file
  std::string f_file;

  // norms
  spaces::NormParams norms;

  // solver (defaulted)
  double tol = 1e-10;
  int max_iter = 200;
  double theta = 1.0;
  double blowup_threshold = 1e6;

  // radial
  int nr = 2000;
  double R = 20.0;
  double dt_radial = 0.0;  // 0: auto 0.4 dr^2
  double gamma = 1.0;
  double kappa = 0.0;  // 0: shoot for it
  double y_max = 40.0;
  bool coeff_2kw = true;
  double amplitude = 1.0;
  std::vector<double> amplitudes;  // sweep; empty = single run at `amplitude`
  double t_final = 1.0;

  // reference comparison recorded in the manifest
  std::string reference = "none";  // none | taylor_green | cole_hopf

  // output (defaulted)
  std::string out_dir = "out";
  int snapshot_stride = 0;

  std::string echo_json() const;  // canonical serialization of this config
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);

/// Binary field container: magic "DRNS", u32 version 1, u32 n,q,N,nt,
/// f64 L,T, then nt * C(n,q) * N^n little-endian f64 samples, time-slice
/// outermost, component-major, x1 fastest.
void write_field_file(const std::filesystem::path& path, const Trajectory& u);
void write_field_file(const std::filesystem::path& path, const GridForm& u,
                      double T = 0.0);
Trajectory read_field_file(const std::filesystem::path& path, double mu = 1.0);

/// CSV helpers: header row, dot decimal, 17 significant digits, atomic
/// write (temp file + rename).
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
void atomic_write_text(const std::filesystem::path& path, const std::string& text);

std::string format_double(double v);

/// Builds the problem a config describes (grid, data, nonlinearity, solver
/// parameters) ready for picard_solve.
solver::ProblemSpec build_problem(const RunConfig& cfg);

}  // namespace derham::io
