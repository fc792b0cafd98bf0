#include "noisemod/engine.hpp"

#include "noisemod/config.hpp"
#include "noisemod/detector.hpp"
#include "noisemod/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace noisemod {

std::string_view to_string(Experiment e)
{
    switch (e) {
    case Experiment::Ber: return "ber";
    case Experiment::Theory: return "theory";
    case Experiment::Eh: return "eh";
    }
    return "unknown";
}

std::string_view to_string(FadingMode m)
{
    return m == FadingMode::Rician ? "rician" : "none";
}

std::string_view to_string(CsiErrorReference r)
{
    return r == CsiErrorReference::SmallScale ? "small_scale" : "effective";
}

std::string_view to_string(SweepAxis a)
{
    switch (a) {
    case SweepAxis::DeltaDb: return "delta_db";
    case SweepAxis::DeltaLinear: return "delta_linear";
    case SweepAxis::DistanceM: return "distance_m";
    }
    return "unknown";
}

std::string_view to_string(EhScheme s)
{
    switch (s) {
    case EhScheme::NoiseModTS: return "noisemod_ts";
    case EhScheme::NoiseModPS: return "noisemod_ps";
    case EhScheme::QAM16: return "qam16";
    case EhScheme::PSK16: return "psk16";
    case EhScheme::BPSK: return "bpsk";
    case EhScheme::RG: return "rg";
    case EhScheme::CSCG: return "cscg";
    }
    return "unknown";
}

std::string_view to_string(SplitMode m)
{
    return m == SplitMode::TS ? "TS" : "PS";
}

std::vector<EhScheme> all_eh_schemes()
{
    return {EhScheme::NoiseModTS, EhScheme::NoiseModPS, EhScheme::QAM16, EhScheme::PSK16,
            EhScheme::BPSK,       EhScheme::RG,         EhScheme::CSCG};
}

double ExperimentConfig::loss_at(double distance) const
{
    if (!apply_path_loss)
        return 1.0;
    return path_loss({distance, carrier_hz, light_speed});
}

NoiseModParams ExperimentConfig::noisemod() const
{
    const TsPartition p = partition();
    return {mean_mag, sigma_x2, p.n_info, p.n_energy};
}

double ExperimentConfig::delta_linear(double axis_value) const
{
    switch (axis) {
    case SweepAxis::DeltaDb: return std::pow(10.0, axis_value / 10.0);
    case SweepAxis::DeltaLinear: return axis_value;
    case SweepAxis::DistanceM: break;
    }
    throw DomainError("delta_linear: sweep axis is not a delta axis");
}

std::vector<std::string> validate_config(const ExperimentConfig& cfg, Experiment kind)
{
    std::vector<std::string> v;
    auto check = [&v](bool ok, std::string msg) {
        if (!ok)
            v.push_back(std::move(msg));
    };
    auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };

    check(positive(cfg.mean_mag), "waveform.m must be positive");
    check(positive(cfg.sigma_x2), "waveform.sigma_x2 must be positive");
    check(positive(cfg.distance_m), "channel.d_m must be positive (path-loss domain)");
    check(positive(cfg.carrier_hz), "channel.fc_hz must be positive");
    check(positive(cfg.light_speed), "channel.light_speed must be positive");
    check(std::isfinite(cfg.k_factor) && cfg.k_factor >= 0.0, "channel.k_factor must be finite and >= 0");
    check(std::isfinite(cfg.sigma_e2) && cfg.sigma_e2 >= 0.0, "channel.sigma_e2 must be >= 0");
    check(cfg.split.alpha >= 0.0 && cfg.split.alpha <= 1.0, "split.alpha must lie in [0, 1]");
    check(cfg.split.rho >= 0.0 && cfg.split.rho <= 1.0, "split.rho must lie in [0, 1]");
    check(cfg.n_total >= 1, "split.n_total must be at least 1");
    check(cfg.eh_block >= 1, "split.n_energy must be at least 1");
    check(cfg.bits_per_point >= 10'000, "mc.bits_per_point must be at least 10000");
    check(cfg.fading_realizations >= 1, "mc.fading_realizations must be at least 1");
    check(cfg.rng_algorithm == kRngAlgorithm,
          "mc.rng_algorithm '" + cfg.rng_algorithm + "' is not supported (use '" + kRngAlgorithm + "')");
    check(positive(cfg.rectenna.k2) && positive(cfg.rectenna.k4) && positive(cfg.rectenna.r_ant),
          "harvest.k2, harvest.k4 and harvest.r_ant must be positive");
    check(std::isfinite(cfg.eh_sigma_w2) && cfg.eh_sigma_w2 >= 0.0, "harvest.sigma_w2 must be >= 0");

    check(!cfg.values.empty(), "sweep values must not be empty");
    bool increasing = true;
    bool finite = true;
    for (std::size_t i = 0; i < cfg.values.size(); ++i) {
        finite = finite && std::isfinite(cfg.values[i]);
        if (i > 0 && !(cfg.values[i] > cfg.values[i - 1]))
            increasing = false;
    }
    check(finite, "sweep values must be finite");
    check(increasing, "sweep values must be strictly increasing");
    check(cfg.values.size() <= kMaxPointIndex + 1, "too many sweep points");

    if (kind == Experiment::Eh) {
        check(cfg.axis == SweepAxis::DistanceM, "eh sweeps require sweep.axis = distance_m");
        check(!cfg.schemes.empty(), "schemes must list at least one scheme");
        for (double d : cfg.values)
            if (!(d > 0.0)) {
                check(false, "sweep.values_m must be positive (path-loss domain)");
                break;
            }
    } else {
        check(cfg.axis != SweepAxis::DistanceM, std::string(to_string(kind)) +
                                                    " sweeps require sweep.axis = delta_db or delta_linear");
        check(cfg.split.mode == SplitMode::TS,
              "split.mode PS is only supported for energy-harvesting sweeps");
        if (cfg.split.alpha >= 0.0 && cfg.split.alpha <= 1.0 && cfg.n_total >= 1)
            check(cfg.partition().n_info >= 1, "split.alpha leaves no information samples (N_i = 0)");
        if (cfg.axis == SweepAxis::DeltaLinear)
            for (double d : cfg.values)
                if (!(d > 0.0)) {
                    check(false, "sweep.values_linear must be positive");
                    break;
                }
    }
    return v;
}

const SweepCurve& SweepResult::curve(std::string_view label) const
{
    for (const auto& c : curves)
        if (c.label == label)
            return c;
    throw DomainError("SweepResult: no curve named '" + std::string(label) + "'");
}

RngStream derive_trial_seed(std::uint64_t master_seed, std::uint64_t point_index, std::uint64_t trial_index,
                            std::uint64_t substream)
{
    require(point_index <= kMaxPointIndex, "derive_trial_seed: point index out of range");
    require(trial_index <= kMaxTrialIndex, "derive_trial_seed: trial index out of range");
    require(substream <= kMaxSubstream, "derive_trial_seed: substream out of range");
    return RngStream(master_seed, (point_index << 44) | (substream << 40) | trial_index);
}

namespace {

/// Runs body(i) for i in [0, n) on up to `threads` workers.
template <class Body>
void parallel_for(std::size_t n, int threads, Body&& body)
{
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                body(i);
        });
}

nlohmann::json config_echo(const ExperimentConfig& cfg, Experiment kind)
{
    nlohmann::json j = to_json(cfg);
    j["experiment"] = to_string(kind);
    j["mc"]["normal_algorithm"] = kNormalAlgorithm;
    const TsPartition p = cfg.partition();
    j["derived"] = {{"n_info", p.n_info},
                    {"n_energy", p.n_energy},
                    {"per_sample_power", cfg.noisemod().per_sample_power()}};
    return j;
}

void require_valid(const ExperimentConfig& cfg, Experiment kind)
{
    const auto problems = validate_config(cfg, kind);
    if (problems.empty())
        return;
    std::string msg = "invalid experiment configuration:";
    for (const auto& p : problems)
        msg += "\n  " + p;
    throw DomainError(msg);
}

constexpr std::uint64_t kBitsPerBatch = 4096;
constexpr std::uint64_t kCsiSubstream = 1;

struct BatchTally {
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    std::uint64_t degenerate = 0;
};

struct BerWorkspace {
    std::vector<double> x;
    std::vector<cdouble> y;
};

BatchTally simulate_batch(const ExperimentConfig& cfg, std::uint64_t point, std::uint64_t first_trial,
                          std::uint64_t count, double sigma_w2, BerWorkspace& ws)
{
    const NoiseModParams nm = cfg.noisemod();
    const double loss = cfg.loss();
    const double inv_sqrt_loss = 1.0 / std::sqrt(loss);
    const FadingParams fading{cfg.k_factor};
    ws.x.resize(static_cast<std::size_t>(nm.n_info));
    ws.y.resize(static_cast<std::size_t>(nm.n_info));

    BatchTally tally;
    for (std::uint64_t t = first_trial; t < first_trial + count; ++t) {
        RngStream rng = derive_trial_seed(cfg.seed, point, t);
        const int bit = static_cast<int>(rng() >> 63);
        const cdouble h_bar = cfg.fading == FadingMode::Rician ? sample_fading(fading, rng) : cdouble(1.0, 0.0);
        const ChannelState state{h_bar, loss, sigma_w2, cfg.sigma_e2};
        const cdouble h = state.effective();

        cdouble h_est = h;
        if (cfg.sigma_e2 > 0.0) {
            RngStream csi = derive_trial_seed(cfg.seed, point, t, kCsiSubstream);
            h_est = cfg.csi_error_ref == CsiErrorReference::SmallScale
                        ? corrupt_csi(h_bar, cfg.sigma_e2, csi) * inv_sqrt_loss
                        : corrupt_csi(h, cfg.sigma_e2, csi);
        }

        cdouble y_mean;
        if (cfg.sample_level) {
            noisemod_modulate_into(bit, nm, rng, ws.x);
            apply_channel_into(ws.x, state, rng, ws.y);
            y_mean = sample_mean(ws.y);
        } else {
            const double n = static_cast<double>(nm.n_info);
            const double x_mean = nm.mean_for_bit(bit) + std::sqrt(nm.sigma_x2 / n) * sample_standard_normal(rng);
            y_mean = h * x_mean + sample_complex_normal(rng, sigma_w2 / n);
        }

        const Decision d = detect_bit(y_mean, h_est, nm.mean_mag);
        ++tally.trials;
        tally.errors += d.bit != bit ? 1 : 0;
        tally.degenerate += d.degenerate ? 1 : 0;
    }
    return tally;
}

SweepPoint simulate_ber_point(const ExperimentConfig& cfg, std::uint64_t point, double axis_value,
                              const RunOptions& options)
{
    const double sigma_w2 = cfg.sigma_x2 / cfg.delta_linear(axis_value);
    const std::uint64_t n_batches = (cfg.bits_per_point + kBitsPerBatch - 1) / kBitsPerBatch;
    const std::size_t wave = static_cast<std::size_t>(std::max(options.threads, 1)) * 4;

    BatchTally total;
    bool stopped = false;
    std::vector<BatchTally> results;

    for (std::uint64_t start = 0; start < n_batches && !stopped; start += wave) {
        const std::size_t count = static_cast<std::size_t>(std::min<std::uint64_t>(wave, n_batches - start));
        results.assign(count, BatchTally{});
        parallel_for(count, options.threads, [&](std::size_t i) {
            thread_local BerWorkspace ws;
            const std::uint64_t b = start + i;
            const std::uint64_t first = b * kBitsPerBatch;
            const std::uint64_t n = std::min(kBitsPerBatch, cfg.bits_per_point - first);
            results[i] = simulate_batch(cfg, point, first, n, sigma_w2, ws);
        });
        // Fold in batch order so the stopping batch never depends on scheduling.
        for (const BatchTally& r : results) {
            total.trials += r.trials;
            total.errors += r.errors;
            total.degenerate += r.degenerate;
            if (cfg.min_errors > 0 && total.errors >= cfg.min_errors) {
                stopped = true;
                break;
            }
        }
    }

    SweepPoint p;
    p.axis_value = axis_value;
    p.trial_count = total.trials;
    p.error_count = total.errors;
    p.degenerate_count = total.degenerate;
    p.estimate = static_cast<double>(total.errors) / static_cast<double>(total.trials);
    p.standard_error = std::sqrt(p.estimate * (1.0 - p.estimate) / static_cast<double>(total.trials));
    return p;
}

} // namespace

SweepResult run_ber_sweep(const ExperimentConfig& cfg, const RunOptions& options)
{
    require_valid(cfg, Experiment::Ber);
    SweepResult out;
    out.axis_name = std::string(to_string(cfg.axis));
    out.metadata = config_echo(cfg, Experiment::Ber);
    SweepCurve curve{"ber_sim", {}};
    for (std::size_t i = 0; i < cfg.values.size(); ++i)
        curve.points.push_back(simulate_ber_point(cfg, i, cfg.values[i], options));
    out.curves.push_back(std::move(curve));
    return out;
}

SweepResult run_theory_curve(const ExperimentConfig& cfg, const QuadratureSpec& spec)
{
    require_valid(cfg, Experiment::Theory);
    SweepResult out;
    out.axis_name = std::string(to_string(cfg.axis));
    out.metadata = config_echo(cfg, Experiment::Theory);
    out.metadata["theory"] = {{"abs_tol", spec.abs_tol},
                              {"rel_tol", spec.rel_tol},
                              {"max_subdivisions", spec.max_subdivisions},
                              {"tail_mass", kDefaultTailMass},
                              {"perfect_csi", true}};

    SweepCurve curve{"ber_theory", {}};
    for (double v : cfg.values) {
        LinkBudget budget;
        budget.mean_mag = cfg.mean_mag;
        budget.sigma_x2 = cfg.sigma_x2;
        budget.sigma_w2 = cfg.sigma_x2 / cfg.delta_linear(v);
        budget.n_info = cfg.partition().n_info;
        budget.loss_l = cfg.loss();
        budget.k_factor = cfg.k_factor;

        SweepPoint p;
        p.axis_value = v;
        if (cfg.fading == FadingMode::None) {
            p.estimate = conditional_bep(1.0 / std::sqrt(budget.loss_l), budget);
        } else {
            try {
                const BepResult r = analytical_bep(budget, spec);
                p.estimate = r.value;
                p.standard_error = r.error_estimate;
            } catch (const ConvergenceError& e) {
                p.estimate = e.best_estimate();
                p.standard_error = e.error_estimate();
                p.ok = false;
            }
        }
        curve.points.push_back(p);
    }
    out.curves.push_back(std::move(curve));
    return out;
}

namespace {

// Substream 0 draws the fading coefficient; 1 + scheme index draws that scheme's block.
constexpr std::uint64_t kEhFadingSubstream = 0;

std::vector<cdouble> eh_transmit_block(const ExperimentConfig& cfg, EhScheme scheme, RngStream& rng)
{
    const std::size_t n = static_cast<std::size_t>(cfg.eh_block);
    switch (scheme) {
    case EhScheme::NoiseModTS:
    case EhScheme::NoiseModPS: {
        const NoiseModParams nm = cfg.eh_unit_power ? cfg.noisemod().unit_power() : cfg.noisemod();
        const int bit = static_cast<int>(rng() >> 63);
        const auto x = noisemod_modulate(bit, n, nm, rng);
        return {x.begin(), x.end()};
    }
    case EhScheme::QAM16: return baseline_modulate(BaselineScheme::QAM16, n, rng);
    case EhScheme::PSK16: return baseline_modulate(BaselineScheme::PSK16, n, rng);
    case EhScheme::BPSK: return baseline_modulate(BaselineScheme::BPSK, n, rng);
    case EhScheme::RG: return baseline_modulate(BaselineScheme::RG, n, rng);
    case EhScheme::CSCG: return baseline_modulate(BaselineScheme::CSCG, n, rng);
    }
    return {};
}

} // namespace

SweepResult run_eh_sweep(const ExperimentConfig& cfg, const RunOptions& options)
{
    require_valid(cfg, Experiment::Eh);
    require(cfg.fading_realizations <= kMaxTrialIndex + 1, "run_eh_sweep: too many realizations");

    SweepResult out;
    out.axis_name = std::string(to_string(cfg.axis));
    out.metadata = config_echo(cfg, Experiment::Eh);
    for (EhScheme s : cfg.schemes)
        out.curves.push_back({std::string(to_string(s)), {}});

    const std::size_t n_real = static_cast<std::size_t>(cfg.fading_realizations);
    const std::size_t n_schemes = cfg.schemes.size();
    std::vector<double> z(n_real * n_schemes);

    for (std::size_t p = 0; p < cfg.values.size(); ++p) {
        const double loss = cfg.loss_at(cfg.values[p]);
        parallel_for(n_real, options.threads, [&](std::size_t t) {
            RngStream fade = derive_trial_seed(cfg.seed, p, t, kEhFadingSubstream);
            const cdouble h_bar = cfg.fading == FadingMode::Rician ? sample_fading({cfg.k_factor}, fade)
                                                                   : cdouble(1.0, 0.0);
            const ChannelState state{h_bar, loss, cfg.eh_sigma_w2, 0.0};
            for (std::size_t s = 0; s < n_schemes; ++s) {
                const EhScheme scheme = cfg.schemes[s];
                RngStream rng = derive_trial_seed(cfg.seed, p, t, 1 + static_cast<std::uint64_t>(scheme));
                const auto x = eh_transmit_block(cfg, scheme, rng);
                auto y = apply_channel(std::span<const cdouble>(x), state, rng);
                if (scheme == EhScheme::NoiseModPS)
                    y = ps_partition(y, cfg.split.rho).eh;
                z[t * n_schemes + s] = z_dc_empirical(y, cfg.rectenna);
            }
        });

        for (std::size_t s = 0; s < n_schemes; ++s) {
            double sum = 0.0;
            for (std::size_t t = 0; t < n_real; ++t)
                sum += z[t * n_schemes + s];
            const double mean = sum / static_cast<double>(n_real);
            double ss = 0.0;
            for (std::size_t t = 0; t < n_real; ++t) {
                const double d = z[t * n_schemes + s] - mean;
                ss += d * d;
            }
            SweepPoint pt;
            pt.axis_value = cfg.values[p];
            pt.estimate = mean;
            pt.trial_count = n_real;
            pt.standard_error =
                n_real > 1 ? std::sqrt(ss / static_cast<double>(n_real - 1) / static_cast<double>(n_real)) : 0.0;
            out.curves[s].points.push_back(pt);
        }
    }
    return out;
}

double eh_analytic_prediction(const ExperimentConfig& cfg, EhScheme scheme, double distance)
{
    Moments m;
    double power_scale = 1.0;
    switch (scheme) {
    case EhScheme::NoiseModPS:
        power_scale = cfg.split.rho;
        [[fallthrough]];
    case EhScheme::NoiseModTS:
        m = theoretical_moments(cfg.eh_unit_power ? cfg.noisemod().unit_power() : cfg.noisemod());
        break;
    case EhScheme::QAM16: m = theoretical_moments(BaselineScheme::QAM16); break;
    case EhScheme::PSK16: m = theoretical_moments(BaselineScheme::PSK16); break;
    case EhScheme::BPSK: m = theoretical_moments(BaselineScheme::BPSK); break;
    case EhScheme::RG: m = theoretical_moments(BaselineScheme::RG); break;
    case EhScheme::CSCG: m = theoretical_moments(BaselineScheme::CSCG); break;
    }
    const double loss = cfg.loss_at(distance);
    const double h4 = cfg.fading == FadingMode::Rician ? rician_fourth_moment(cfg.k_factor) : 1.0;
    // |a + w|^4 averaged over circular w: |a|^4 + 4 |a|^2 s + 2 s^2.
    const double s = cfg.eh_sigma_w2;
    const double m2 = m.second / loss + s;
    const double m4 = h4 * m.fourth / (loss * loss) + 4.0 * (m.second / loss) * s + 2.0 * s * s;
    return z_dc_analytic(power_scale * m2, power_scale * power_scale * m4, cfg.rectenna);
}

} // namespace noisemod
