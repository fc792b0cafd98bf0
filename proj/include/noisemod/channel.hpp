#pragma once

#include "noisemod/rng.hpp"

#include <complex>
#include <span>
#include <vector>

namespace noisemod {

using cdouble = std::complex<double>;

inline constexpr double kDefaultLightSpeed = 3.0e8;

struct PathLossParams {
    double distance_m = 1.0;
    double carrier_hz = 433.0e6;
    double light_speed = kDefaultLightSpeed;
};

/// Free-space power attenuation L = (4 pi d f_c / c)^2 (linear, not dB).
double path_loss(const PathLossParams& params);

struct FadingParams {
    double k_factor = 0.0; ///< Rician K; 0 is Rayleigh, +inf is a pure line-of-sight channel.
};

/// Rician amplitude parameters for a unit-power channel: s^2 + 2 sigma_s^2 = 1, K = s^2 / (2 sigma_s^2).
struct RicianShape {
    double s = 0.0;
    double sigma_s = 0.0;

    double s2() const { return s * s; }
    double sigma_s2() const { return sigma_s * sigma_s; }
};

RicianShape rician_shape(double k_factor);

/// E|h|^4 of the unit-power Rician coefficient: (2 + 4K + K^2) / (1 + K)^2.
double rician_fourth_moment(double k_factor);

/// Small-scale coefficient h = h_R + j h_I with both parts
/// N(sqrt(K / (2(1+K))), 1 / (2(1+K))), so E|h|^2 = 1.
cdouble sample_fading(const FadingParams& params, RngStream& rng);

/// One block-fading link realization. The effective coefficient h_bar / sqrt(loss_l)
/// stays fixed for every sample of a bit interval.
struct ChannelState {
    cdouble h_bar{1.0, 0.0};
    double loss_l = 1.0;
    double sigma_w2 = 1.0;
    double sigma_e2 = 0.0;

    cdouble effective() const { return h_bar / std::sqrt(loss_l); }
    void validate() const;
};

/// y_n = h x_n + w_n with w_n ~ CN(0, sigma_w2). sigma_w2 = 0 gives the noiseless channel.
std::vector<cdouble> apply_channel(std::span<const double> x, const ChannelState& state, RngStream& rng);
std::vector<cdouble> apply_channel(std::span<const cdouble> x, const ChannelState& state, RngStream& rng);

/// In-place variant for hot loops; `out` must have the same length as `x`.
void apply_channel_into(std::span<const double> x, const ChannelState& state, RngStream& rng,
                        std::span<cdouble> out);

/// Imperfect channel estimate h + e with e ~ CN(0, sigma_e2).
cdouble corrupt_csi(cdouble h, double sigma_e2, RngStream& rng);

} // namespace noisemod
