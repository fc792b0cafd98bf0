#pragma once

#include <functional>

namespace noisemod {

/// Tolerance contract for integrate_adaptive. Convergence is declared once
/// the summed error estimate is at most max(abs_tol, rel_tol * |result|).
struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-9;
    int max_subdivisions = 1000;

    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
};

/// Gaussian tail Q(x) = P{Z > x}, computed as erfc(x / sqrt(2)) / 2.
double gaussian_q(double x);

/// log Q(x), accurate far into the upper tail where Q(x) underflows.
double log_gaussian_q(double x);

/// Arguments above this overflow I0 in double precision.
inline constexpr double kBesselI0OverflowThreshold = 713.0;

/// Modified Bessel function of the first kind, order zero.
/// Throws DomainError above kBesselI0OverflowThreshold; use the scaled or
/// log variants there.
double bessel_i0(double x);

/// exp(-|x|) * I0(x), finite for all finite x.
double bessel_i0_scaled(double x);

/// log I0(x).
double log_bessel_i0(double x);

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature on [lower, upper].
/// Throws ConvergenceError (with the best estimate) when the subdivision
/// budget is exhausted first.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lower,
                                    double upper, const QuadratureSpec& spec = {});

} // namespace noisemod
