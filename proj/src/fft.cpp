#include "derham/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

#include "derham/parallel.hpp"

namespace derham::fft {
namespace {

std::mutex plan_mutex;

fftw_plan get_plan(int n, int N, int sign) {
  static std::map<std::tuple<int, int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  const auto key = std::make_tuple(n, N, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::int64_t npts = 1;
  for (int i = 0; i < n; ++i) npts *= N;
  std::vector<std::complex<double>> scratch_in(npts), scratch_out(npts);
  std::vector<int> dims(n, N);
  // FFTW_UNALIGNED so the new-array execute below accepts any buffer;
  // FFTW_ESTIMATE keeps planning deterministic.
  fftw_plan plan = fftw_plan_dft(n, dims.data(),
                                 reinterpret_cast<fftw_complex*>(scratch_in.data()),
                                 reinterpret_cast<fftw_complex*>(scratch_out.data()), sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, plan);
  return plan;
}

void execute(const Grid& g, int sign, const std::complex<double>* in,
             std::complex<double>* out) {
  fftw_plan plan = get_plan(g.n, g.N, sign);
  // new-array execution is thread-safe; in is not modified for c2c plans
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

void forward_c(const Grid& g, const std::complex<double>* in, std::complex<double>* out) {
  execute(g, FFTW_FORWARD, in, out);
  const double scale = 1.0 / static_cast<double>(g.points());
  const std::int64_t npts = g.points();
  for (std::int64_t i = 0; i < npts; ++i) out[i] *= scale;
}

void inverse_c(const Grid& g, const std::complex<double>* in, std::complex<double>* out) {
  execute(g, FFTW_BACKWARD, in, out);
}

void forward(const Grid& g, const double* in, std::complex<double>* out) {
  const std::int64_t npts = g.points();
  std::vector<std::complex<double>> tmp(npts);
  for (std::int64_t i = 0; i < npts; ++i) tmp[i] = in[i];
  forward_c(g, tmp.data(), out);
}

void inverse(const Grid& g, const std::complex<double>* in, double* out) {
  const std::int64_t npts = g.points();
  std::vector<std::complex<double>> tmp(npts);
  inverse_c(g, in, tmp.data());
  for (std::int64_t i = 0; i < npts; ++i) out[i] = tmp[i].real();
}

SpectralForm forward(const GridForm& u) {
  SpectralForm s(u.grid, u.degree());
  par::parallel_for(0, u.components(), [&](std::int64_t c) {
    forward(u.grid, u.comps[c].data(), s.comps[c].data());
  });
  return s;
}

GridForm inverse(const SpectralForm& s) {
  GridForm u(s.grid, s.degree());
  par::parallel_for(0, s.components(), [&](std::int64_t c) {
    inverse(s.grid, s.comps[c].data(), u.comps[c].data());
  });
  return u;
}

}  // namespace derham::fft
