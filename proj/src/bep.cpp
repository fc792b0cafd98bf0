#include "noisemod/bep.hpp"

#include "noisemod/channel.hpp"
#include "noisemod/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace noisemod {

void LinkBudget::validate() const
{
    require(mean_mag > 0.0 && std::isfinite(mean_mag), "LinkBudget: mean magnitude must be positive");
    require(sigma_x2 > 0.0 && std::isfinite(sigma_x2), "LinkBudget: sigma_x2 must be positive");
    require(sigma_w2 >= 0.0 && !std::isnan(sigma_w2), "LinkBudget: sigma_w2 must be non-negative");
    require(n_info >= 1, "LinkBudget: n_info must be at least 1");
    require(loss_l > 0.0 && std::isfinite(loss_l), "LinkBudget: path loss must be positive");
    require(k_factor >= 0.0 && std::isfinite(k_factor), "LinkBudget: K-factor must be finite and non-negative");
}

namespace {

double conditional_argument(double r, const LinkBudget& b)
{
    require(r >= 0.0 && std::isfinite(r), "conditional_bep: amplitude must be non-negative");
    if (r == 0.0)
        return 0.0;
    if (std::isinf(b.sigma_w2))
        return 0.0;
    const double var = (2.0 * r * r * b.sigma_x2 + b.sigma_w2) / (2.0 * b.n_info);
    return r * b.mean_mag / std::sqrt(var);
}

} // namespace

double conditional_bep(double r, const LinkBudget& budget)
{
    return gaussian_q(conditional_argument(r, budget));
}

double log_conditional_bep(double r, const LinkBudget& budget)
{
    return log_gaussian_q(conditional_argument(r, budget));
}

double log_scaled_rician_pdf(double r, const LinkBudget& budget)
{
    require(r >= 0.0 && std::isfinite(r), "scaled_rician_pdf: amplitude must be non-negative");
    if (r == 0.0)
        return -std::numeric_limits<double>::infinity();
    const RicianShape shape = rician_shape(budget.k_factor);
    const double var = shape.sigma_s2();
    const double x = r * std::sqrt(budget.loss_l);
    // exp(-(x^2 + s^2) / 2v) I0(x s / v) = exp(-(x - s)^2 / 2v) * [exp(-x s / v) I0(x s / v)]
    const double z = x * shape.s / var;
    const double dev = x - shape.s;
    return std::log(budget.loss_l * r / var) - dev * dev / (2.0 * var) + std::log(bessel_i0_scaled(z));
}

double scaled_rician_pdf(double r, const LinkBudget& budget)
{
    return std::exp(log_scaled_rician_pdf(r, budget));
}

double truncation_bound(const LinkBudget& budget, double mass_tol)
{
    require(mass_tol > 0.0 && mass_tol < 1.0, "truncation_bound: mass_tol must lie in (0, 1)");
    require(budget.loss_l > 0.0, "truncation_bound: path loss must be positive");
    const RicianShape shape = rician_shape(budget.k_factor);
    const double x_max = shape.s + shape.sigma_s * std::sqrt(-2.0 * std::log(mass_tol));
    return x_max / std::sqrt(budget.loss_l);
}

double bep_error_floor(const LinkBudget& budget)
{
    return gaussian_q(budget.mean_mag * std::sqrt(static_cast<double>(budget.n_info)) /
                      std::sqrt(budget.sigma_x2));
}

BepResult analytical_bep(const LinkBudget& budget, const QuadratureSpec& spec, double mass_tol)
{
    budget.validate();
    spec.validate();

    const double r_max = truncation_bound(budget, mass_tol);
    auto integrand = [&budget](double r) {
        if (r <= 0.0)
            return 0.0;
        return std::exp(log_conditional_bep(r, budget) + log_scaled_rician_pdf(r, budget));
    };

    // The conditional error probability never drops below the floor, so an
    // absolute tolerance tied to the floor keeps deep-floor results relative-accurate.
    QuadratureSpec local = spec;
    const double floor = bep_error_floor(budget);
    local.abs_tol = std::max(std::min(spec.abs_tol, spec.rel_tol * floor), 1e-300);

    // Breakpoints: the density peak, and a geometric ladder up from
    // r_c = sqrt(sigma_w2 / (2 sigma_x2)), where the conditional error
    // probability turns from 1/2 toward the floor. At high delta that
    // transition is far narrower than the Kronrod node spacing near 0.
    std::vector<double> cuts{0.0};
    const RicianShape shape = rician_shape(budget.k_factor);
    const double r_peak = shape.s / std::sqrt(budget.loss_l);
    if (budget.sigma_w2 > 0.0 && std::isfinite(budget.sigma_w2)) {
        for (double r = std::sqrt(budget.sigma_w2 / (2.0 * budget.sigma_x2)); r < r_max; r *= 8.0)
            cuts.push_back(r);
    }
    if (r_peak > 0.0 && r_peak < r_max)
        cuts.push_back(r_peak);
    cuts.push_back(r_max);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    local.abs_tol /= static_cast<double>(cuts.size() - 1);
    BepResult out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const auto part = integrate_adaptive(integrand, cuts[i], cuts[i + 1], local);
        out.value += part.value;
        out.error_estimate += part.error;
        out.subdivisions += part.subdivisions;
    }
    return out;
}

} // namespace noisemod
