#include "noisemod/channel.hpp"

#include "noisemod/errors.hpp"

#include <cmath>
#include <numbers>

namespace noisemod {

double path_loss(const PathLossParams& params)
{
    require(params.distance_m > 0.0 && std::isfinite(params.distance_m),
            "path_loss: distance must be positive");
    require(params.carrier_hz > 0.0 && std::isfinite(params.carrier_hz),
            "path_loss: carrier frequency must be positive");
    require(params.light_speed > 0.0 && std::isfinite(params.light_speed),
            "path_loss: propagation speed must be positive");
    const double a = 4.0 * std::numbers::pi * params.distance_m * params.carrier_hz / params.light_speed;
    return a * a;
}

RicianShape rician_shape(double k_factor)
{
    require(k_factor >= 0.0, "rician_shape: K-factor must be non-negative");
    if (std::isinf(k_factor))
        return {1.0, 0.0};
    const double sigma_s2 = 0.5 / (1.0 + k_factor);
    const double s2 = k_factor / (1.0 + k_factor);
    return {std::sqrt(s2), std::sqrt(sigma_s2)};
}

double rician_fourth_moment(double k_factor)
{
    require(k_factor >= 0.0, "rician_fourth_moment: K-factor must be non-negative");
    if (std::isinf(k_factor))
        return 1.0;
    const double d = 1.0 + k_factor;
    return (2.0 + 4.0 * k_factor + k_factor * k_factor) / (d * d);
}

cdouble sample_fading(const FadingParams& params, RngStream& rng)
{
    require(params.k_factor >= 0.0, "sample_fading: K-factor must be non-negative");
    if (std::isinf(params.k_factor))
        return {std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0};
    const double k = params.k_factor;
    const double mean = std::sqrt(k / (2.0 * (1.0 + k)));
    const double sd = std::sqrt(1.0 / (2.0 * (1.0 + k)));
    const double re = mean + sd * sample_standard_normal(rng);
    const double im = mean + sd * sample_standard_normal(rng);
    return {re, im};
}

void ChannelState::validate() const
{
    require(std::isfinite(h_bar.real()) && std::isfinite(h_bar.imag()),
            "ChannelState: fading coefficient must be finite");
    require(loss_l > 0.0 && std::isfinite(loss_l), "ChannelState: path loss must be positive");
    require(sigma_w2 >= 0.0 && std::isfinite(sigma_w2), "ChannelState: noise variance must be non-negative");
    require(sigma_e2 >= 0.0 && std::isfinite(sigma_e2), "ChannelState: CSI error variance must be non-negative");
}

void apply_channel_into(std::span<const double> x, const ChannelState& state, RngStream& rng,
                        std::span<cdouble> out)
{
    require(!x.empty(), "apply_channel: input block is empty");
    require(out.size() == x.size(), "apply_channel: output length mismatch");
    state.validate();
    const cdouble h = state.effective();
    if (state.sigma_w2 == 0.0) {
        for (std::size_t n = 0; n < x.size(); ++n)
            out[n] = h * x[n];
        return;
    }
    const double sd = std::sqrt(0.5 * state.sigma_w2);
    for (std::size_t n = 0; n < x.size(); ++n) {
        const double wr = sample_standard_normal(rng);
        const double wi = sample_standard_normal(rng);
        out[n] = h * x[n] + cdouble(sd * wr, sd * wi);
    }
}

std::vector<cdouble> apply_channel(std::span<const double> x, const ChannelState& state, RngStream& rng)
{
    std::vector<cdouble> out(x.size());
    apply_channel_into(x, state, rng, out);
    return out;
}

std::vector<cdouble> apply_channel(std::span<const cdouble> x, const ChannelState& state, RngStream& rng)
{
    require(!x.empty(), "apply_channel: input block is empty");
    state.validate();
    const cdouble h = state.effective();
    std::vector<cdouble> out(x.size());
    for (std::size_t n = 0; n < x.size(); ++n)
        out[n] = h * x[n] + (state.sigma_w2 > 0.0 ? sample_complex_normal(rng, state.sigma_w2) : cdouble{});
    return out;
}

cdouble corrupt_csi(cdouble h, double sigma_e2, RngStream& rng)
{
    require(sigma_e2 >= 0.0 && std::isfinite(sigma_e2), "corrupt_csi: error variance must be non-negative");
    if (sigma_e2 == 0.0)
        return h;
    return h + sample_complex_normal(rng, sigma_e2);
}

} // namespace noisemod
