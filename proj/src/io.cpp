#include "derham/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "derham/errors.hpp"
#include "derham/radial.hpp"
#include "derham/reference.hpp"
#include "derham/synth.hpp"

static_assert(std::endian::native == std::endian::little,
              "field files are little-endian; big-endian hosts are unsupported");

namespace derham::io {
namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ConfigError, where + ": " + what);
}

template <typename T>
T require(const json& j, const std::string& section, const std::string& key) {
  if (!j.contains(key)) config_error(section + "." + key, "missing mandatory field");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    config_error(section + "." + key, e.what());
  }
}

template <typename T>
void maybe(const json& j, const std::string& section, const std::string& key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    config_error(section + "." + key, e.what());
  }
}

void reject_unknown(const json& j, const std::string& section,
                    std::initializer_list<const char*> known) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known)
      if (key == k) ok = true;
    if (!ok) config_error(section + "." + key, "unknown field");
  }
}

nonlinearity::NonlinearitySpec load_nonlinearity(const RunConfig& cfg) {
  if (cfg.nl_name == "zero") return nonlinearity::NonlinearitySpec::zero(cfg.n, cfg.q);
  if (cfg.nl_name == "lamb" || cfg.nl_name == "ps")
    return nonlinearity::NonlinearitySpec::builtin(cfg.nl_name, cfg.n, cfg.nl_b);
  if (cfg.nl_name == "file") {
    std::ifstream in(cfg.nl_tensor_file);
    if (!in) throw Error(ErrorCode::IoError, "cannot open tensor file " + cfg.nl_tensor_file);
    json j = json::parse(in);
    return nonlinearity::NonlinearitySpec::custom(
        j.at("n").get<int>(), j.at("q").get<int>(),
        j.at("M1").get<std::vector<std::vector<std::vector<double>>>>(),
        j.at("M2").get<std::vector<std::vector<std::vector<double>>>>());
  }
  throw Error(ErrorCode::ConfigError, "unknown nonlinearity '" + cfg.nl_name + "'");
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(j, "config",
                 {"problem", "grid", "data", "norms", "solver", "radial", "reference", "output"});

  RunConfig cfg;
  if (!j.contains("problem")) config_error("problem", "missing mandatory section");
  {
    const json& p = j.at("problem");
    reject_unknown(p, "problem", {"n", "q", "a", "mu", "T", "nt", "nonlinearity"});
    cfg.n = require<int>(p, "problem", "n");
    cfg.q = require<int>(p, "problem", "q");
    cfg.a = require<int>(p, "problem", "a");
    cfg.mu = require<double>(p, "problem", "mu");
    cfg.T = require<double>(p, "problem", "T");
    cfg.nt = p.contains("nt") ? p.at("nt").get<int>() : 17;
    if (p.contains("nonlinearity")) {
      const json& nl = p.at("nonlinearity");
      reject_unknown(nl, "problem.nonlinearity", {"name", "b", "tensor_file"});
      maybe(nl, "problem.nonlinearity", "name", cfg.nl_name);
      maybe(nl, "problem.nonlinearity", "b", cfg.nl_b);
      maybe(nl, "problem.nonlinearity", "tensor_file", cfg.nl_tensor_file);
    }
  }
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    reject_unknown(g, "grid", {"N", "L", "mode"});
    cfg.N = require<int>(g, "grid", "N");
    cfg.L = require<double>(g, "grid", "L");
    maybe(g, "grid", "mode", cfg.grid_mode);
    if (cfg.grid_mode != "free" && cfg.grid_mode != "periodic")
      config_error("grid.mode", "must be 'free' or 'periodic'");
  }
  if (j.contains("data")) {
    const json& d = j.at("data");
    reject_unknown(d, "data", {"u0", "f"});
    if (d.contains("u0")) {
      const json& u0 = d.at("u0");
      reject_unknown(u0, "data.u0", {"type", "amplitude", "sigma", "file"});
      maybe(u0, "data.u0", "type", cfg.u0_type);
      maybe(u0, "data.u0", "amplitude", cfg.u0_amplitude);
      maybe(u0, "data.u0", "sigma", cfg.u0_sigma);
      maybe(u0, "data.u0", "file", cfg.u0_file);
    }
    if (d.contains("f")) {
      const json& f = d.at("f");
      reject_unknown(f, "data.f", {"type", "file"});
      maybe(f, "data.f", "type", cfg.f_type);
      maybe(f, "data.f", "file", cfg.f_file);
    }
  }
  if (j.contains("norms")) {
    const json& nm = j.at("norms");
    reject_unknown(nm, "norms", {"s", "k", "lambda", "lambda_prime", "delta", "pair_budget"});
    maybe(nm, "norms", "s", cfg.norms.s);
    maybe(nm, "norms", "k", cfg.norms.k);
    maybe(nm, "norms", "lambda", cfg.norms.lambda);
    maybe(nm, "norms", "lambda_prime", cfg.norms.lambda_prime);
    maybe(nm, "norms", "delta", cfg.norms.delta);
    maybe(nm, "norms", "pair_budget", cfg.norms.pair_budget);
  }
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    reject_unknown(s, "solver", {"tol", "max_iter", "theta", "blowup_threshold"});
    maybe(s, "solver", "tol", cfg.tol);
    maybe(s, "solver", "max_iter", cfg.max_iter);
    maybe(s, "solver", "theta", cfg.theta);
    maybe(s, "solver", "blowup_threshold", cfg.blowup_threshold);
  }
  if (j.contains("radial")) {
    const json& r = j.at("radial");
    reject_unknown(r, "radial",
                   {"nr", "R", "dt", "gamma", "kappa", "y_max", "coeff_2kw", "amplitude",
                    "amplitudes", "t_final"});
    maybe(r, "radial", "nr", cfg.nr);
    maybe(r, "radial", "R", cfg.R);
    maybe(r, "radial", "dt", cfg.dt_radial);
    maybe(r, "radial", "gamma", cfg.gamma);
    maybe(r, "radial", "kappa", cfg.kappa);
    maybe(r, "radial", "y_max", cfg.y_max);
    maybe(r, "radial", "coeff_2kw", cfg.coeff_2kw);
    maybe(r, "radial", "amplitude", cfg.amplitude);
    maybe(r, "radial", "amplitudes", cfg.amplitudes);
    maybe(r, "radial", "t_final", cfg.t_final);
  }
  if (j.contains("reference")) {
    const json& r = j.at("reference");
    reject_unknown(r, "reference", {"type"});
    maybe(r, "reference", "type", cfg.reference);
  }
  if (j.contains("output")) {
    const json& o = j.at("output");
    reject_unknown(o, "output", {"dir", "snapshot_stride"});
    maybe(o, "output", "dir", cfg.out_dir);
    maybe(o, "output", "snapshot_stride", cfg.snapshot_stride);
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config(text);
}

std::string RunConfig::echo_json() const {
  json j;
  j["problem"] = {{"n", n}, {"q", q},  {"a", a},
                  {"mu", mu}, {"T", T}, {"nt", nt},
                  {"nonlinearity", {{"name", nl_name}, {"b", nl_b}}}};
  if (!nl_tensor_file.empty()) j["problem"]["nonlinearity"]["tensor_file"] = nl_tensor_file;
  j["grid"] = {{"N", N}, {"L", L}, {"mode", grid_mode}};
  j["data"] = {{"u0",
                {{"type", u0_type}, {"amplitude", u0_amplitude}, {"sigma", u0_sigma}}},
               {"f", {{"type", f_type}}}};
  if (!u0_file.empty()) j["data"]["u0"]["file"] = u0_file;
  if (!f_file.empty()) j["data"]["f"]["file"] = f_file;
  j["norms"] = {{"s", norms.s},
                {"k", norms.k},
                {"lambda", norms.lambda},
                {"lambda_prime", norms.lambda_prime},
                {"delta", norms.delta},
                {"pair_budget", norms.pair_budget}};
  j["solver"] = {{"tol", tol},
                 {"max_iter", max_iter},
                 {"theta", theta},
                 {"blowup_threshold", blowup_threshold}};
  j["radial"] = {{"nr", nr},         {"R", R},
                 {"dt", dt_radial},  {"gamma", gamma},
                 {"kappa", kappa},   {"y_max", y_max},
                 {"coeff_2kw", coeff_2kw}, {"amplitude", amplitude},
                 {"amplitudes", amplitudes}, {"t_final", t_final}};
  j["reference"] = {{"type", reference}};
  j["output"] = {{"dir", out_dir}, {"snapshot_stride", snapshot_stride}};
  return j.dump(2);
}

namespace {

void put_u32(std::string& buf, std::uint32_t v) {
  char b[4];
  std::memcpy(b, &v, 4);
  buf.append(b, 4);
}

void put_f64(std::string& buf, double v) {
  char b[8];
  std::memcpy(b, &v, 8);
  buf.append(b, 8);
}

}  // namespace

void write_field_file(const std::filesystem::path& path, const Trajectory& u) {
  std::string buf;
  const Grid& g = u.grid();
  buf.reserve(40 + u.nt() * u.slices[0].components() * g.points() * 8);
  buf.append("DRNS", 4);
  put_u32(buf, 1);
  put_u32(buf, static_cast<std::uint32_t>(g.n));
  put_u32(buf, static_cast<std::uint32_t>(u.degree()));
  put_u32(buf, static_cast<std::uint32_t>(g.N));
  put_u32(buf, static_cast<std::uint32_t>(u.nt()));
  put_f64(buf, g.L);
  put_f64(buf, u.params.T);
  for (const auto& slice : u.slices)
    for (const auto& comp : slice.comps)
      buf.append(reinterpret_cast<const char*>(comp.data()), comp.size() * 8);
  atomic_write_text(path, buf);
}

void write_field_file(const std::filesystem::path& path, const GridForm& u, double T) {
  std::string buf;
  const Grid& g = u.grid;
  buf.append("DRNS", 4);
  put_u32(buf, 1);
  put_u32(buf, static_cast<std::uint32_t>(g.n));
  put_u32(buf, static_cast<std::uint32_t>(u.degree()));
  put_u32(buf, static_cast<std::uint32_t>(g.N));
  put_u32(buf, 1);
  put_f64(buf, g.L);
  put_f64(buf, T);
  for (const auto& comp : u.comps)
    buf.append(reinterpret_cast<const char*>(comp.data()), comp.size() * 8);
  atomic_write_text(path, buf);
}

Trajectory read_field_file(const std::filesystem::path& path, double mu) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open field file " + path.string());
  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < 40 || buf.compare(0, 4, "DRNS") != 0)
    throw Error(ErrorCode::IoError, "bad magic in field file " + path.string());
  auto u32 = [&](std::size_t off) {
    std::uint32_t v;
    std::memcpy(&v, buf.data() + off, 4);
    return v;
  };
  auto f64 = [&](std::size_t off) {
    double v;
    std::memcpy(&v, buf.data() + off, 8);
    return v;
  };
  if (u32(4) != 1) throw Error(ErrorCode::IoError, "unsupported field file version");
  const int n = static_cast<int>(u32(8));
  const int q = static_cast<int>(u32(12));
  const int N = static_cast<int>(u32(16));
  const int nt = static_cast<int>(u32(20));
  const double L = f64(24);
  const double T = f64(32);

  const Grid g(n, N, L);
  const std::int64_t npts = g.points();
  const std::int64_t ncomp = binomial(n, q);
  const std::size_t expected = 40 + static_cast<std::size_t>(nt) * ncomp * npts * 8;
  if (buf.size() != expected)
    throw Error(ErrorCode::IoError, "field file payload length mismatch");

  Trajectory out;
  out.params.mu = mu;
  out.params.T = T;
  out.params.nt = nt;
  std::size_t off = 40;
  for (int s = 0; s < nt; ++s) {
    GridForm slice(g, q);
    for (auto& comp : slice.comps) {
      std::memcpy(comp.data(), buf.data() + off, comp.size() * 8);
      off += comp.size() * 8;
    }
    out.slices.push_back(std::move(slice));
  }
  return out;
}

std::string format_double(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.17g", v);
  return b;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::string text;
  for (std::size_t i = 0; i < header.size(); ++i)
    text += (i ? "," : "") + header[i];
  text += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      text += (i ? "," : "") + format_double(row[i]);
    text += "\n";
  }
  atomic_write_text(path, text);
}

void atomic_write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
  }
  std::filesystem::rename(tmp, path);
}

solver::ProblemSpec build_problem(const RunConfig& cfg) {
  if (cfg.N == 0 || cfg.L == 0.0)
    throw Error(ErrorCode::ConfigError, "grid section is required for solve runs");
  const DomainMode mode =
      cfg.grid_mode == "periodic" ? DomainMode::kPeriodic : DomainMode::kFree;
  const Grid grid(cfg.n, cfg.N, cfg.L, mode);
  const HeatParams heat(cfg.mu, cfg.T, cfg.nt);
  solver::ProblemSpec spec(grid, heat, load_nonlinearity(cfg));
  spec.a = cfg.a;
  spec.norms = cfg.norms;
  spec.tol = cfg.tol;
  spec.max_iter = cfg.max_iter;
  spec.theta = cfg.theta;
  spec.blowup_threshold = cfg.blowup_threshold;

  if (cfg.u0_type == "zero") {
    // keep zeros
  } else if (cfg.u0_type == "gaussian") {
    spec.u0 = synth::gaussian_bump(grid, cfg.q, cfg.u0_amplitude, cfg.u0_sigma);
  } else if (cfg.u0_type == "quasi1d_bump") {
    spec.u0 = GridForm::sample(grid, cfg.q, [&](int c, const double* x) {
      return c == 0 ? cfg.u0_amplitude * std::exp(-x[0] * x[0] / (cfg.u0_sigma * cfg.u0_sigma))
                    : 0.0;
    });
  } else if (cfg.u0_type == "taylor_green") {
    spec.u0 = reference::taylor_green_velocity(grid, cfg.mu, 0.0);
  } else if (cfg.u0_type == "radial") {
    const auto prof = radial::sample_profile(cfg.n, cfg.nr, cfg.R, [&](double r) {
      return cfg.amplitude / std::pow(1.0 + r * r, 3.0);
    });
    spec.u0 = radial::lift_radial(prof, grid);
  } else if (cfg.u0_type == "file") {
    Trajectory t = read_field_file(cfg.u0_file, cfg.mu);
    spec.u0 = t.slices.front();
  } else {
    throw Error(ErrorCode::ConfigError, "unknown data.u0.type '" + cfg.u0_type + "'");
  }

  if (cfg.f_type == "file") {
    spec.f = read_field_file(cfg.f_file, cfg.mu);
    spec.f.params = heat;
  } else if (cfg.f_type != "zero") {
    throw Error(ErrorCode::ConfigError, "unknown data.f.type '" + cfg.f_type + "'");
  }
  return spec;
}

}  // namespace derham::io
