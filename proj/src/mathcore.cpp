#include "noisemod/mathcore.hpp"

#include "noisemod/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace noisemod {

void QuadratureSpec::validate() const
{
    require(abs_tol > 0.0, "QuadratureSpec: abs_tol must be positive");
    require(rel_tol > 0.0, "QuadratureSpec: rel_tol must be positive");
    require(max_subdivisions >= 1, "QuadratureSpec: max_subdivisions must be at least 1");
}

double gaussian_q(double x)
{
    require(std::isfinite(x), "gaussian_q: argument must be finite");
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double log_gaussian_q(double x)
{
    require(std::isfinite(x), "log_gaussian_q: argument must be finite");
    if (x < 25.0)
        return std::log(gaussian_q(x));
    // Asymptotic series for the Mills ratio; at x >= 25 the terms fall below
    // machine precision long before the series starts to diverge.
    const double inv_x2 = 1.0 / (x * x);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 12; ++k) {
        term *= -(2.0 * k - 1.0) * inv_x2;
        sum += term;
        if (std::abs(term) < 1e-17)
            break;
    }
    return -0.5 * x * x - std::log(x) - 0.5 * std::log(2.0 * std::numbers::pi) + std::log(sum);
}

namespace {

// Below this the power series (all terms positive) is used; above it the
// Hankel asymptotic expansion is accurate to machine precision.
constexpr double kI0SeriesLimit = 30.0;

double i0_series(double ax)
{
    const double q = 0.25 * ax * ax;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < sum * std::numeric_limits<double>::epsilon() * 0.5)
            break;
    }
    return sum;
}

// sqrt(2 pi x) * exp(-x) * I0(x) for large x.
double i0_asymptotic_factor(double ax)
{
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= odd * odd / (8.0 * k * ax);
        sum += term;
        if (term < sum * std::numeric_limits<double>::epsilon() * 0.5)
            break;
    }
    return sum;
}

} // namespace

double bessel_i0_scaled(double x)
{
    require(std::isfinite(x), "bessel_i0_scaled: argument must be finite");
    const double ax = std::abs(x);
    if (ax <= kI0SeriesLimit)
        return i0_series(ax) * std::exp(-ax);
    return i0_asymptotic_factor(ax) / std::sqrt(2.0 * std::numbers::pi * ax);
}

double bessel_i0(double x)
{
    require(std::isfinite(x), "bessel_i0: argument must be finite");
    const double ax = std::abs(x);
    if (ax > kBesselI0OverflowThreshold)
        throw DomainError("bessel_i0: argument overflows double; use bessel_i0_scaled or log_bessel_i0");
    if (ax <= kI0SeriesLimit)
        return i0_series(ax);
    return bessel_i0_scaled(ax) * std::exp(ax);
}

double log_bessel_i0(double x)
{
    require(std::isfinite(x), "log_bessel_i0: argument must be finite");
    const double ax = std::abs(x);
    if (ax <= kI0SeriesLimit)
        return std::log(i0_series(ax));
    return ax + std::log(bessel_i0_scaled(ax));
}

namespace {

// QUADPACK qk15 abscissae and weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gauss_kronrod_15(const std::function<double(double)>& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f_center = f(center);

    double kronrod = f_center * kWgk[7];
    double gauss = f_center * kWg[3];
    double abs_sum = std::abs(kronrod);
    double fv1[7], fv2[7];

    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += kWgk[j] * (f1 + f2);
        abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1)
            gauss += kWg[j / 2] * (f1 + f2);
    }

    const double mean = 0.5 * kronrod;
    double asc = kWgk[7] * std::abs(f_center - mean);
    for (int j = 0; j < 7; ++j)
        asc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

    const double value = kronrod * half;
    abs_sum *= std::abs(half);
    asc *= std::abs(half);

    double err = std::abs((kronrod - gauss) * half);
    if (asc != 0.0 && err != 0.0)
        err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (abs_sum > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(50.0 * eps * abs_sum, err);

    return {a, b, value, err};
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lower,
                                    double upper, const QuadratureSpec& spec)
{
    spec.validate();
    require(std::isfinite(lower) && std::isfinite(upper), "integrate_adaptive: limits must be finite");
    require(lower < upper, "integrate_adaptive: lower limit must be below upper limit");

    std::vector<Segment> heap;
    heap.reserve(static_cast<std::size_t>(spec.max_subdivisions) + 1);
    Segment first = gauss_kronrod_15(f, lower, upper);
    require(std::isfinite(first.value), "integrate_adaptive: integrand is not finite on the interval");
    heap.push_back(first);

    double total = first.value;
    double total_err = first.error;
    int subdivisions = 1;

    auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };

    while (total_err > tolerance()) {
        if (subdivisions >= spec.max_subdivisions)
            throw ConvergenceError("integrate_adaptive: subdivision budget exhausted", total, total_err);

        const Segment worst = heap.front();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // The interval cannot be split further in double precision.
            throw ConvergenceError("integrate_adaptive: interval too small to subdivide", total, total_err);
        }
        std::pop_heap(heap.begin(), heap.end());
        heap.pop_back();

        const Segment left = gauss_kronrod_15(f, worst.a, mid);
        const Segment right = gauss_kronrod_15(f, mid, worst.b);
        require(std::isfinite(left.value) && std::isfinite(right.value),
                "integrate_adaptive: integrand is not finite on the interval");
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end());
        ++subdivisions;

        // Re-sum instead of updating incrementally so roundoff does not accumulate.
        total = 0.0;
        total_err = 0.0;
        for (const Segment& s : heap) {
            total += s.value;
            total_err += s.error;
        }
    }

    return {total, total_err, subdivisions};
}

} // namespace noisemod
