#pragma once

#include "noisemod/channel.hpp"

#include <span>

namespace noisemod {

/// Outcome of the minimum-distance rule on the block sample mean.
struct Decision {
    int bit = 0;
    double metric_low = 0.0;  ///< |y_mean - h_est * (-m)|^2
    double metric_high = 0.0; ///< |y_mean - h_est * (+m)|^2
    bool degenerate = false;  ///< set when h_est == 0 and the metrics cannot separate the bits
};

cdouble sample_mean(std::span<const cdouble> y);

/// Picks the hypothesis mean closer to y_mean. Exact ties resolve to bit 0.
/// The comparison is made on the exact metric difference, so the result
/// equals the sign of Re(conj(h_est) y_mean).
Decision detect_bit(cdouble y_mean, cdouble h_est, double mean_mag);

} // namespace noisemod
