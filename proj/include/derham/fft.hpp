#pragma once

#include <complex>

#include "derham/form.hpp"

namespace derham::fft {

// c2c transforms over the N^n grid; forward is normalized by 1/N^n so the
// zero coefficient is the field mean and inverse is the plain synthesis sum.
// Plans are cached per (n, N, direction); execution is thread-safe.

void forward(const Grid& g, const double* in, std::complex<double>* out);
void inverse(const Grid& g, const std::complex<double>* in, double* out);  // real part
void forward_c(const Grid& g, const std::complex<double>* in, std::complex<double>* out);
void inverse_c(const Grid& g, const std::complex<double>* in, std::complex<double>* out);

SpectralForm forward(const GridForm& u);
GridForm inverse(const SpectralForm& u);

}  // namespace derham::fft
