#include "noisemod/detector.hpp"

#include "noisemod/errors.hpp"

#include <cmath>

namespace noisemod {

cdouble sample_mean(std::span<const cdouble> y)
{
    require(!y.empty(), "sample_mean: sequence is empty");
    cdouble sum{};
    for (const cdouble& v : y)
        sum += v;
    return sum / static_cast<double>(y.size());
}

Decision detect_bit(cdouble y_mean, cdouble h_est, double mean_mag)
{
    require(mean_mag > 0.0 && std::isfinite(mean_mag), "detect_bit: mean magnitude must be positive");
    require(std::isfinite(y_mean.real()) && std::isfinite(y_mean.imag()),
            "detect_bit: sample mean must be finite");
    require(std::isfinite(h_est.real()) && std::isfinite(h_est.imag()),
            "detect_bit: channel estimate must be finite");

    Decision d;
    d.metric_low = std::norm(y_mean - h_est * (-mean_mag));
    d.metric_high = std::norm(y_mean - h_est * mean_mag);
    // metric_low - metric_high = 4 m Re(conj(h) y) exactly; comparing the
    // rounded metrics loses the sign when |y| and |h m| differ by many decades.
    const double margin = h_est.real() * y_mean.real() + h_est.imag() * y_mean.imag();
    d.bit = margin > 0.0 ? 1 : 0;
    d.degenerate = h_est == cdouble{};
    return d;
}

} // namespace noisemod
