#pragma once

// Independent reference implementations used only by tests. None of these
// share code with the library.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracle {

/// Q(x) from the Maclaurin series of erf, summed in long double.
inline long double q_series(long double x)
{
    const long double z = x / std::sqrt(2.0L);
    long double term = z;
    long double sum = z;
    for (int n = 1; n < 200; ++n) {
        term *= -z * z / n;
        const long double add = term / (2 * n + 1);
        sum += add;
        if (std::fabs(add) < 1e-30L)
            break;
    }
    const long double erf = 2.0L / std::sqrt(std::numbers::pi_v<long double>) * sum;
    return 0.5L * (1.0L - erf);
}

/// Q(x) from the asymptotic expansion phi(x)/x * sum (-1)^k (2k-1)!! / x^(2k),
/// truncated at its smallest term.
inline long double q_asymptotic(long double x)
{
    const long double phi = std::exp(-x * x / 2) / std::sqrt(2 * std::numbers::pi_v<long double>);
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int k = 1; k < 60; ++k) {
        const long double next = -term * (2 * k - 1) / (x * x);
        if (std::fabs(next) >= std::fabs(term))
            break;
        term = next;
        sum += term;
    }
    return phi / x * sum;
}

/// Q(x) for x > 0 from the Laplace continued fraction
/// phi(x) / (x + 1/(x + 2/(x + 3/(x + ...)))), evaluated bottom-up.
inline long double q_continued_fraction(long double x, int depth = 2000)
{
    long double tail = x;
    for (int k = depth; k >= 1; --k)
        tail = x + k / tail;
    const long double phi = std::exp(-x * x / 2) / std::sqrt(2 * std::numbers::pi_v<long double>);
    return phi / tail;
}

/// I0(x) from its power series sum (x/2)^(2k) / (k!)^2 in long double.
inline long double i0_series(long double x)
{
    const long double q = x * x / 4;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<long double>(k) * k);
        sum += term;
        if (term < sum * 1e-22L)
            break;
    }
    return sum;
}

/// Density of |h| for a unit-power Rician coefficient with factor K.
inline double rician_amplitude_pdf(double x, double k)
{
    const double s2 = k / (1.0 + k);
    const double v = 1.0 / (2.0 * (1.0 + k));
    const double s = std::sqrt(s2);
    const double arg = x * s / v;
    // exp(-(x^2+s^2)/2v) I0(arg), written with the scaled product to stay finite
    return x / v * std::exp(-(x - s) * (x - s) / (2 * v)) * std::cyl_bessel_i(0.0, arg) * std::exp(-arg);
}

/// Tabulated CDF of a density on [0, upper] using Boost Gauss-Kronrod panels.
template <class F>
struct TabulatedCdf {
    double step;
    std::vector<double> values;

    TabulatedCdf(F f, double upper, std::size_t panels) : step(upper / static_cast<double>(panels))
    {
        values.assign(panels + 1, 0.0);
        for (std::size_t i = 0; i < panels; ++i) {
            const double a = step * static_cast<double>(i);
            values[i + 1] = values[i] + boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, a + step, 0);
        }
    }

    double operator()(double x) const
    {
        if (x <= 0.0)
            return 0.0;
        const double pos = x / step;
        const std::size_t i = static_cast<std::size_t>(pos);
        if (i + 1 >= values.size())
            return values.back();
        const double w = pos - static_cast<double>(i);
        return values[i] * (1.0 - w) + values[i + 1] * w;
    }
};

/// Small self-contained generator for property-test inputs (splitmix64).
class Gen {
public:
    explicit Gen(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }

private:
    std::uint64_t state_;
};

struct MeanVar {
    double mean = 0.0;
    double var = 0.0;
};

inline MeanVar mean_var(const std::vector<double>& v)
{
    long double s = 0.0L;
    for (double x : v)
        s += x;
    const long double m = s / static_cast<long double>(v.size());
    long double ss = 0.0L;
    for (double x : v)
        ss += (x - m) * (x - m);
    return {static_cast<double>(m), static_cast<double>(ss / static_cast<long double>(v.size() - 1))};
}

} // namespace oracle
