#include "noisemod/harvest.hpp"

#include "noisemod/errors.hpp"

#include <cmath>

namespace noisemod {

void RectennaParams::validate() const
{
    require(k2 > 0.0 && std::isfinite(k2), "RectennaParams: k2 must be positive");
    require(k4 > 0.0 && std::isfinite(k4), "RectennaParams: k4 must be positive");
    require(r_ant > 0.0 && std::isfinite(r_ant), "RectennaParams: antenna impedance must be positive");
}

double z_dc_empirical(std::span<const cdouble> y, const RectennaParams& params)
{
    require(!y.empty(), "z_dc_empirical: sample block is empty");
    params.validate();
    double m2 = 0.0;
    double m4 = 0.0;
    for (const cdouble& v : y) {
        const double p = std::norm(v);
        m2 += p;
        m4 += p * p;
    }
    const double n = static_cast<double>(y.size());
    m2 /= n;
    m4 /= n;
    return params.k2 * params.r_ant * m2 + params.k4 * params.r_ant * params.r_ant * m4;
}

double z_dc_analytic(double second_moment, double fourth_moment, const RectennaParams& params)
{
    params.validate();
    require(second_moment >= 0.0 && fourth_moment >= 0.0, "z_dc_analytic: moments must be non-negative");
    const double floor = second_moment * second_moment;
    require(fourth_moment >= floor * (1.0 - 1e-12),
            "z_dc_analytic: fourth moment below squared second moment (Jensen)");
    return params.k2 * params.r_ant * second_moment +
           params.k4 * params.r_ant * params.r_ant * fourth_moment;
}

TsPartition ts_partition(int n_total, double alpha)
{
    require(n_total >= 1, "ts_partition: n_total must be at least 1");
    require(alpha >= 0.0 && alpha <= 1.0, "ts_partition: alpha must lie in [0, 1]");
    const int n_energy = static_cast<int>(std::floor(alpha * n_total + 0.5));
    return {n_energy, n_total - n_energy};
}

PsPartition ps_partition(std::span<const cdouble> y, double rho)
{
    require(rho >= 0.0 && rho <= 1.0, "ps_partition: rho must lie in [0, 1]");
    const double a_eh = std::sqrt(rho);
    const double a_ih = std::sqrt(1.0 - rho);
    PsPartition out;
    out.eh.reserve(y.size());
    out.ih.reserve(y.size());
    for (const cdouble& v : y) {
        out.eh.push_back(a_eh * v);
        out.ih.push_back(a_ih * v);
    }
    return out;
}

} // namespace noisemod
