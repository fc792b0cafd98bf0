#pragma once

#include "noisemod/bep.hpp"
#include "noisemod/harvest.hpp"
#include "noisemod/rng.hpp"
#include "noisemod/waveform.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace noisemod {

enum class Experiment { Ber, Theory, Eh };
enum class FadingMode { Rician, None };
/// Where the CSI error is injected: on the unit-power small-scale coefficient
/// (then scaled by the path loss like the channel itself) or directly on h.
enum class CsiErrorReference { SmallScale, Effective };
enum class SweepAxis { DeltaDb, DeltaLinear, DistanceM };
enum class EhScheme { NoiseModTS, NoiseModPS, QAM16, PSK16, BPSK, RG, CSCG };

std::string_view to_string(Experiment e);
std::string_view to_string(FadingMode m);
std::string_view to_string(CsiErrorReference r);
std::string_view to_string(SweepAxis a);
std::string_view to_string(EhScheme s);
std::string_view to_string(SplitMode m);

/// All EH schemes in their canonical output order.
std::vector<EhScheme> all_eh_schemes();

/// Fully resolved experiment description. Every field has a default taken
/// from the reference simulation setup (433 MHz, N = 150, m = sqrt(0.5), sigma_x2 = 1).
struct ExperimentConfig {
    // waveform
    double mean_mag = 0.70710678118654752;
    double sigma_x2 = 1.0;

    // channel
    double distance_m = 3.0;
    double carrier_hz = 433.0e6;
    double light_speed = kDefaultLightSpeed;
    double k_factor = 5.0;
    double sigma_e2 = 0.0;
    FadingMode fading = FadingMode::Rician;
    bool apply_path_loss = true;
    CsiErrorReference csi_error_ref = CsiErrorReference::SmallScale;

    // split
    SplitConfig split{};
    int n_total = 150;
    int eh_block = 100; ///< N_e used by energy-harvesting sweeps

    // sweep
    SweepAxis axis = SweepAxis::DeltaDb;
    std::vector<double> values;

    // Monte Carlo
    std::uint64_t bits_per_point = 1'000'000;
    std::uint64_t seed = 1;
    std::string rng_algorithm = kRngAlgorithm;
    std::uint64_t min_errors = 400; ///< early-stop threshold per point; 0 runs every bit
    std::uint64_t fading_realizations = 10'000;
    bool sample_level = true; ///< false draws the block means directly (same law, faster)

    // harvest
    RectennaParams rectenna{};
    double eh_sigma_w2 = 0.0;      ///< AWGN added before harvesting; 0 excludes it
    bool eh_unit_power = true;     ///< rescale NoiseMod to unit power for EH comparisons

    std::vector<EhScheme> schemes = all_eh_schemes();

    TsPartition partition() const { return ts_partition(n_total, split.alpha); }
    double loss_at(double distance) const;
    double loss() const { return loss_at(distance_m); }
    NoiseModParams noisemod() const;
    /// Linear delta for a sweep value on a delta axis.
    double delta_linear(double axis_value) const;
};

/// Returns every violated invariant for running `kind`; empty means valid.
std::vector<std::string> validate_config(const ExperimentConfig& cfg, Experiment kind);

struct SweepPoint {
    double axis_value = 0.0;
    double estimate = 0.0;
    std::uint64_t trial_count = 0;
    std::uint64_t error_count = 0;
    double standard_error = 0.0;
    bool ok = true;
    std::uint64_t degenerate_count = 0; ///< detector calls with a zero channel estimate
};

struct SweepCurve {
    std::string label;
    std::vector<SweepPoint> points;
};

struct SweepResult {
    std::string axis_name;
    std::vector<SweepCurve> curves;
    nlohmann::json metadata; ///< resolved configuration echo

    const SweepCurve& curve(std::string_view label) const;
};

struct RunOptions {
    int threads = 1; ///< never changes results
};

/// Index limits for derive_trial_seed. Stream ids pack
/// point (20 bits) | substream (4 bits) | trial (40 bits).
inline constexpr std::uint64_t kMaxPointIndex = (std::uint64_t{1} << 20) - 1;
inline constexpr std::uint64_t kMaxSubstream = 15;
inline constexpr std::uint64_t kMaxTrialIndex = (std::uint64_t{1} << 40) - 1;

/// Injective (point, trial, substream) -> stream id under a fixed master seed.
/// Substreams separate independent draws of one trial (e.g. the CSI error)
/// so that changing one model parameter leaves the other draws untouched.
RngStream derive_trial_seed(std::uint64_t master_seed, std::uint64_t point_index, std::uint64_t trial_index,
                            std::uint64_t substream = 0);

/// Monte Carlo BER over the delta axis (TS mode, perfect or imperfect CSI).
SweepResult run_ber_sweep(const ExperimentConfig& cfg, const RunOptions& options = {});

/// Fading-averaged error probability over the delta axis. Points whose
/// quadrature fails keep the best estimate and are flagged ok = false.
SweepResult run_theory_curve(const ExperimentConfig& cfg, const QuadratureSpec& spec = {});

/// Fading-averaged z_DC over the distance axis, one curve per scheme.
SweepResult run_eh_sweep(const ExperimentConfig& cfg, const RunOptions& options = {});

/// Same-law prediction for run_eh_sweep, using analytic waveform moments and
/// the Rician fourth moment (no AWGN).
double eh_analytic_prediction(const ExperimentConfig& cfg, EhScheme scheme, double distance);

} // namespace noisemod
