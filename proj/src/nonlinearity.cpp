#include "derham/nonlinearity.hpp"

#include <cmath>

#include "derham/errors.hpp"
#include "derham/exterior.hpp"
#include "derham/fft.hpp"
#include "derham/kernels.hpp"

namespace derham::nonlinearity {
namespace {

using Tensor = std::vector<std::vector<std::vector<double>>>;

Tensor zero_tensor(int ni, int nj, int nl) {
  return Tensor(ni, std::vector<std::vector<double>>(nj, std::vector<double>(nl, 0.0)));
}

// out_l += sum_{i,j} T[i][j][l] v_i u_j pointwise, skipping zero entries
void contract(const Tensor& t, const std::vector<const std::vector<double>*>& v,
              const GridForm& u, GridForm& out) {
  const auto& k = kernels::active();
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t[i].size(); ++j)
      for (std::size_t l = 0; l < t[i][j].size(); ++l) {
        const double c = t[i][j][l];
        if (c == 0.0) continue;
        k.fmadd_mul(out.comps[l].size(), c, v[i]->data(), u.comps[j].data(),
                    out.comps[l].data());
      }
}

struct DerivBundle {
  GridForm d, dstar;
  std::vector<const std::vector<double>*> fields;  // d comps then d* comps
};

DerivBundle derivative_bundle(const GridForm& u) {
  SpectralForm s = fft::forward(u);
  DerivBundle b{fft::inverse(exterior::d(s)), fft::inverse(exterior::d_star(s)), {}};
  for (const auto& c : b.d.comps) b.fields.push_back(&c);
  for (const auto& c : b.dstar.comps) b.fields.push_back(&c);
  return b;
}

// M1(Dv, u) + d M2(v, u) for an already-computed bundle of v
GridForm half_form(const NonlinearitySpec& spec, const DerivBundle& dv, const GridForm& v,
                   const GridForm& u) {
  GridForm out(u.grid, spec.q);
  contract(spec.M1, dv.fields, u, out);
  const int qm1 = spec.q - 1;
  if (binomial(spec.n, qm1) > 0) {
    GridForm m2(u.grid, qm1);
    std::vector<const std::vector<double>*> vptr;
    for (const auto& c : v.comps) vptr.push_back(&c);
    contract(spec.M2, vptr, u, m2);
    out.axpy(1.0, exterior::d(m2));
  }
  return out;
}

}  // namespace

NonlinearitySpec NonlinearitySpec::zero(int n, int q) {
  NonlinearitySpec s;
  s.n = n;
  s.q = q;
  s.name = "zero";
  const int m = binomial(n, q);
  s.M1 = zero_tensor(binomial(n, q + 1) + binomial(n, q - 1), m, m);
  s.M2 = zero_tensor(m, m, binomial(n, q - 1));
  return s;
}

NonlinearitySpec NonlinearitySpec::builtin(const std::string& name, int n, double b) {
  if (n < 2) throw Error(ErrorCode::UnsupportedCombination, "built-ins need n >= 2");
  if (name == "lamb" && n != 3)
    throw Error(ErrorCode::UnsupportedCombination, "lamb form requires n = 3");
  if (name != "lamb" && name != "ps")
    throw Error(ErrorCode::UnsupportedCombination, "unknown built-in '" + name + "'");

  NonlinearitySpec s = zero(n, 1);
  s.name = name;
  s.b = (name == "lamb") ? 1.0 : b;

  // convective part via the interior product: for the 2-form component (a,c),
  // iota_u contributes +u_a to slot c and -u_c to slot a
  MultiIndexTable two(n, 2);
  for (int i = 0; i < two.count(); ++i) {
    const auto t = two.tuple(i);
    s.M1[i][t[0]][t[1]] += s.b;
    s.M1[i][t[1]][t[0]] -= s.b;
  }
  // gradient part d|u|^2 / 2 through M2
  for (int j = 0; j < n; ++j) s.M2[j][j][0] = 0.5;
  // the compressible coupling -(d* u) u / 2, absent from the Lamb form
  if (name == "ps") {
    const int dstar_slot = binomial(n, 2);
    for (int j = 0; j < n; ++j) s.M1[dstar_slot][j][j] = -0.5;
  }
  return s;
}

NonlinearitySpec NonlinearitySpec::custom(int n, int q, Tensor m1, Tensor m2) {
  NonlinearitySpec s;
  s.n = n;
  s.q = q;
  s.name = "custom";
  s.M1 = std::move(m1);
  s.M2 = std::move(m2);
  s.validate();
  return s;
}

bool NonlinearitySpec::is_zero() const {
  for (const auto& t : {M1, M2})
    for (const auto& a : t)
      for (const auto& b_ : a)
        for (double c : b_)
          if (c != 0.0) return false;
  return true;
}

void NonlinearitySpec::validate() const {
  const std::size_t m = binomial(n, q);
  const std::size_t bundle = binomial(n, q + 1) + binomial(n, q - 1);
  const std::size_t lo = binomial(n, q - 1);
  auto check = [&](const Tensor& t, std::size_t ni, std::size_t nj, std::size_t nl,
                   const char* tag) {
    if (t.size() != ni) throw Error(ErrorCode::ShapeMismatch, std::string(tag) + " slot count");
    for (const auto& a : t) {
      if (a.size() != nj) throw Error(ErrorCode::ShapeMismatch, std::string(tag) + " shape");
      for (const auto& b_ : a)
        if (b_.size() != nl) throw Error(ErrorCode::ShapeMismatch, std::string(tag) + " shape");
    }
  };
  check(M1, bundle, m, m, "M1");
  check(M2, m, m, lo, "M2");
}

GridForm apply_N(const NonlinearitySpec& spec, const GridForm& u) {
  if (u.grid.n != spec.n || u.degree() != spec.q)
    throw Error(ErrorCode::ShapeMismatch, "field does not match the nonlinearity (n,q)");
  const DerivBundle du = derivative_bundle(u);
  return half_form(spec, du, u, u);
}

GridForm apply_B(const NonlinearitySpec& spec, const GridForm& w, const GridForm& u) {
  require_same_grid(w, u);
  if (w.grid.n != spec.n || w.degree() != spec.q || u.degree() != spec.q)
    throw Error(ErrorCode::ShapeMismatch, "fields do not match the nonlinearity (n,q)");
  const DerivBundle dw = derivative_bundle(w);
  const DerivBundle du = derivative_bundle(u);
  GridForm out = half_form(spec, dw, w, u);
  out.axpy(1.0, half_form(spec, du, u, w));
  return out;
}

}  // namespace derham::nonlinearity
