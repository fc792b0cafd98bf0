#pragma once

#include "noisemod/mathcore.hpp"

namespace noisemod {

/// Everything the closed-form error probability depends on.
struct LinkBudget {
    double mean_mag = 0.70710678118654752; ///< m; the bit means are -m and +m
    double sigma_x2 = 1.0;                 ///< transmit sample variance
    double sigma_w2 = 1.0;                 ///< receiver AWGN variance
    int n_info = 90;                       ///< samples averaged by the detector
    double loss_l = 1.0;                   ///< linear path loss
    double k_factor = 5.0;                 ///< Rician K

    /// sigma_x2 / sigma_w2, the SNR analogue used as the sweep axis.
    double delta() const { return sigma_x2 / sigma_w2; }
    /// Distance between the two bit means, 2m.
    double omega() const { return 2.0 * mean_mag; }
    void validate() const;
};

/// Default probability mass left outside the integration range of analytical_bep.
inline constexpr double kDefaultTailMass = 1e-13;

/// Error probability given the channel amplitude r:
/// Q(r m / sqrt((2 r^2 sigma_x2 + sigma_w2) / (2 N_i))).
double conditional_bep(double r, const LinkBudget& budget);
double log_conditional_bep(double r, const LinkBudget& budget);

/// Density of r = |h| / sqrt(L) for a unit-power Rician |h|:
/// (L r / sigma_s^2) exp(-(L r^2 + s^2) / (2 sigma_s^2)) I0(r sqrt(L) s / sigma_s^2).
/// Integrates to one.
double scaled_rician_pdf(double r, const LinkBudget& budget);
double log_scaled_rician_pdf(double r, const LinkBudget& budget);

/// r_max with P{r > r_max} <= mass_tol, from the bound
/// P{|h| > x} <= exp(-(x - s)^2 / (2 sigma_s^2)) for x >= s.
double truncation_bound(const LinkBudget& budget, double mass_tol);

/// Limit of the error probability as sigma_w2 -> 0: Q(m sqrt(N_i) / sigma_x).
double bep_error_floor(const LinkBudget& budget);

struct BepResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions = 0;
};

/// Fading-averaged error probability: the conditional error probability
/// integrated against scaled_rician_pdf over [0, truncation_bound].
/// The integrand is formed in log space. Propagates ConvergenceError.
BepResult analytical_bep(const LinkBudget& budget, const QuadratureSpec& spec = {},
                         double mass_tol = kDefaultTailMass);

} // namespace noisemod
