#pragma once

#include <cstdint>

#include "derham/form.hpp"

namespace derham::synth {

/// Random real band-limited form: white noise filtered to |k|_inf <= kmax
/// (Nyquist excluded), normalized to unit sup norm. Deterministic per seed.
GridForm band_limited(const Grid& g, int q, int kmax, std::uint64_t seed);

/// band_limited damped by the envelope exp(-|x|^2 / sigma^2); decays in the
/// box, suitable for free-space norm estimators.
GridForm decaying_random(const Grid& g, int q, int kmax, std::uint64_t seed, double sigma);

/// Component c carries amplitude/(1+c) * exp(-|x|^2 / sigma^2).
GridForm gaussian_bump(const Grid& g, int q, double amplitude, double sigma);

}  // namespace derham::synth
