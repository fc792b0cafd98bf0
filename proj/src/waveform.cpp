#include "noisemod/waveform.hpp"

#include "noisemod/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace noisemod {

namespace {

const std::array<cdouble, 16>& psk16_points()
{
    static const std::array<cdouble, 16> points = [] {
        std::array<cdouble, 16> p{};
        for (int k = 0; k < 16; ++k)
            p[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / 16.0);
        return p;
    }();
    return points;
}

const std::array<cdouble, 16>& qam16_points()
{
    static const std::array<cdouble, 16> points = [] {
        constexpr double levels[4] = {-3.0, -1.0, 1.0, 3.0};
        const double norm = 1.0 / std::sqrt(10.0);
        std::array<cdouble, 16> p{};
        for (int i = 0; i < 4; ++i)
            for (int q = 0; q < 4; ++q)
                p[4 * i + q] = cdouble(levels[i] * norm, levels[q] * norm);
        return p;
    }();
    return points;
}

} // namespace

NoiseModParams NoiseModParams::unit_power() const
{
    NoiseModParams out = *this;
    const double p = per_sample_power();
    require(p > 0.0, "NoiseModParams: cannot normalize a zero-power waveform");
    out.mean_mag = mean_mag / std::sqrt(p);
    out.sigma_x2 = sigma_x2 / p;
    return out;
}

void NoiseModParams::validate() const
{
    require(mean_mag > 0.0 && std::isfinite(mean_mag), "NoiseModParams: mean magnitude m must be positive");
    require(sigma_x2 >= 0.0 && std::isfinite(sigma_x2), "NoiseModParams: sigma_x2 must be non-negative");
    require(n_info >= 1, "NoiseModParams: n_info must be at least 1");
    require(n_energy >= 0, "NoiseModParams: n_energy must be non-negative");
}

std::string_view to_string(BaselineScheme scheme)
{
    switch (scheme) {
    case BaselineScheme::BPSK: return "bpsk";
    case BaselineScheme::PSK16: return "psk16";
    case BaselineScheme::QAM16: return "qam16";
    case BaselineScheme::RG: return "rg";
    case BaselineScheme::CSCG: return "cscg";
    }
    return "unknown";
}

void noisemod_modulate_into(int bit, const NoiseModParams& params, RngStream& rng, std::span<double> out)
{
    require(bit == 0 || bit == 1, "noisemod_modulate: bit must be 0 or 1");
    require(!out.empty(), "noisemod_modulate: count must be at least 1");
    require(params.mean_mag > 0.0, "noisemod_modulate: mean magnitude must be positive");
    require(params.sigma_x2 >= 0.0, "noisemod_modulate: sigma_x2 must be non-negative");
    const double mu = params.mean_for_bit(bit);
    if (params.sigma_x2 == 0.0) {
        std::fill(out.begin(), out.end(), mu);
        return;
    }
    const double sd = std::sqrt(params.sigma_x2);
    for (double& v : out)
        v = mu + sd * sample_standard_normal(rng);
}

std::vector<double> noisemod_modulate(int bit, std::size_t count, const NoiseModParams& params,
                                      RngStream& rng)
{
    require(count >= 1, "noisemod_modulate: count must be at least 1");
    std::vector<double> out(count);
    noisemod_modulate_into(bit, params, rng, out);
    return out;
}

std::vector<cdouble> baseline_modulate(BaselineScheme scheme, std::size_t count, RngStream& rng)
{
    require(count >= 1, "baseline_modulate: count must be at least 1");
    std::vector<cdouble> out(count);
    for (auto& x : out) {
        switch (scheme) {
        case BaselineScheme::BPSK:
            x = (rng() >> 63) ? cdouble(1.0, 0.0) : cdouble(-1.0, 0.0);
            break;
        case BaselineScheme::PSK16:
            x = psk16_points()[rng() >> 60];
            break;
        case BaselineScheme::QAM16:
            x = qam16_points()[rng() >> 60];
            break;
        case BaselineScheme::RG:
            x = cdouble(sample_standard_normal(rng), 0.0);
            break;
        case BaselineScheme::CSCG:
            x = sample_complex_normal(rng, 1.0);
            break;
        }
    }
    return out;
}

Moments theoretical_moments(BaselineScheme scheme)
{
    switch (scheme) {
    case BaselineScheme::BPSK:
    case BaselineScheme::PSK16:
        return {1.0, 1.0};
    case BaselineScheme::QAM16: {
        // Average over the 16 normalized points.
        double m2 = 0.0, m4 = 0.0;
        for (const cdouble& p : qam16_points()) {
            const double a = std::norm(p);
            m2 += a;
            m4 += a * a;
        }
        return {m2 / 16.0, m4 / 16.0};
    }
    case BaselineScheme::RG:
        return {1.0, 3.0};
    case BaselineScheme::CSCG:
        return {1.0, 2.0};
    }
    return {};
}

Moments theoretical_moments(const NoiseModParams& params)
{
    const double mu2 = params.mean_mag * params.mean_mag;
    const double s2 = params.sigma_x2;
    return {mu2 + s2, mu2 * mu2 + 6.0 * mu2 * s2 + 3.0 * s2 * s2};
}

} // namespace noisemod
