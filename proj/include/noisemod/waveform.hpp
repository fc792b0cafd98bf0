#pragma once

#include "noisemod/channel.hpp"
#include "noisemod/rng.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace noisemod {

/// Transmit waveform of the mean-keyed noise modulation: bit 0 sends
/// N(-m, sigma_x2) samples, bit 1 sends N(+m, sigma_x2).
struct NoiseModParams {
    double mean_mag = 0.70710678118654752; ///< m, so mu_l = -m and mu_h = +m
    double sigma_x2 = 1.0;
    int n_info = 90;
    int n_energy = 60;

    double mean_for_bit(int bit) const { return bit == 0 ? -mean_mag : mean_mag; }
    /// m^2 + sigma_x2, identical for both bits.
    double per_sample_power() const { return mean_mag * mean_mag + sigma_x2; }
    /// Same m / sigma_x ratio, rescaled to unit per-sample power.
    NoiseModParams unit_power() const;
    void validate() const;
};

enum class BaselineScheme { BPSK, PSK16, QAM16, RG, CSCG };

std::string_view to_string(BaselineScheme scheme);

std::vector<double> noisemod_modulate(int bit, std::size_t count, const NoiseModParams& params,
                                      RngStream& rng);
void noisemod_modulate_into(int bit, const NoiseModParams& params, RngStream& rng, std::span<double> out);

/// Unit-average-power symbols, one sample per symbol.
std::vector<cdouble> baseline_modulate(BaselineScheme scheme, std::size_t count, RngStream& rng);

struct Moments {
    double second = 0.0; ///< E|x|^2
    double fourth = 0.0; ///< E|x|^4
};

Moments theoretical_moments(BaselineScheme scheme);
/// (mu^2 + s^2, mu^4 + 6 mu^2 s^2 + 3 s^4) for a real Gaussian with mean +-m.
Moments theoretical_moments(const NoiseModParams& params);

} // namespace noisemod
