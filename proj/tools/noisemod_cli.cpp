// noisemod: command-line front end for the BER, theory and energy-harvesting sweeps.

#include "noisemod/config.hpp"
#include "noisemod/csv.hpp"
#include "noisemod/engine.hpp"
#include "noisemod/errors.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using noisemod::Experiment;
using noisemod::ExperimentConfig;

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    int threads = 1;
    std::string experiment; // validate only
};

std::string utc_now()
{
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

ExperimentConfig resolve(const CommonOptions& opts, Experiment kind)
{
    ExperimentConfig cfg = opts.config_path.empty() ? noisemod::default_config(kind)
                                                    : noisemod::load_config(opts.config_path, kind);
    if (opts.seed)
        cfg.seed = *opts.seed;
    return cfg;
}

int report_problems(const std::vector<std::string>& problems)
{
    std::cerr << "error: invalid configuration (" << problems.size() << " problem"
              << (problems.size() == 1 ? "" : "s") << ")\n";
    for (const auto& p : problems)
        std::cerr << "  - " << p << '\n';
    return 2;
}

void warn_power(const ExperimentConfig& cfg)
{
    const double power = cfg.noisemod().per_sample_power();
    if (power > 1.0 + 1e-12)
        std::cerr << "warning: per-sample transmit power m^2 + sigma_x2 = " << noisemod::format_double(power)
                  << " exceeds unit power\n";
}

int write_outputs(const CommonOptions& opts, Experiment kind, const ExperimentConfig& cfg,
                  const std::string& started, const std::string& csv, bool all_ok)
{
    {
        std::ofstream out(opts.out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write output file '" << opts.out_path << "'\n";
            return 1;
        }
        out << csv;
    }

    const std::string manifest_path = opts.out_path + ".manifest.json";
    nlohmann::json manifest;
    manifest["tool"] = "noisemod";
    manifest["tool_version"] = NOISEMOD_VERSION;
    manifest["command"] = std::string(noisemod::to_string(kind));
    manifest["config_source"] = opts.config_path.empty() ? "defaults" : opts.config_path;
    manifest["config_hash"] = noisemod::config_hash(cfg);
    manifest["config"] = noisemod::to_json(cfg);
    manifest["rng_algorithm"] = noisemod::kRngAlgorithm;
    manifest["normal_algorithm"] = noisemod::kNormalAlgorithm;
    manifest["derived"] = {{"n_info", cfg.partition().n_info},
                           {"n_energy", kind == Experiment::Eh ? cfg.eh_block : cfg.partition().n_energy},
                           {"per_sample_power", cfg.noisemod().per_sample_power()}};
    manifest["threads"] = opts.threads;
    manifest["started_at"] = started;
    manifest["finished_at"] = utc_now();
    manifest["outputs"] = {opts.out_path};
    manifest["all_points_ok"] = all_ok;

    std::ofstream mout(manifest_path, std::ios::binary);
    if (!mout) {
        std::cerr << "error: cannot write manifest '" << manifest_path << "'\n";
        return 1;
    }
    mout << manifest.dump(2) << '\n';
    std::cerr << "wrote " << opts.out_path << " and " << manifest_path << '\n';
    return 0;
}

bool all_finite(const noisemod::SweepResult& r)
{
    for (const auto& c : r.curves)
        for (const auto& p : c.points)
            if (!std::isfinite(p.estimate))
                return false;
    return true;
}

bool all_converged(const noisemod::SweepResult& r)
{
    for (const auto& c : r.curves)
        for (const auto& p : c.points)
            if (!p.ok)
                return false;
    return true;
}

int run_sweep(const CommonOptions& opts, Experiment kind)
{
    const std::string started = utc_now();
    const ExperimentConfig cfg = resolve(opts, kind);
    if (auto problems = noisemod::validate_config(cfg, kind); !problems.empty())
        return report_problems(problems);
    warn_power(cfg);

    const noisemod::RunOptions run{opts.threads};
    std::ostringstream csv;
    bool finite = true;
    bool converged = true;
    switch (kind) {
    case Experiment::Ber: {
        const auto theory = noisemod::run_theory_curve(cfg);
        const auto sim = noisemod::run_ber_sweep(cfg, run);
        noisemod::write_ber_csv(csv, sim, theory);
        finite = all_finite(sim) && all_finite(theory);
        converged = all_converged(theory);
        break;
    }
    case Experiment::Theory: {
        const auto theory = noisemod::run_theory_curve(cfg);
        noisemod::write_theory_csv(csv, theory);
        finite = all_finite(theory);
        converged = all_converged(theory);
        break;
    }
    case Experiment::Eh: {
        const auto eh = noisemod::run_eh_sweep(cfg, run);
        noisemod::write_eh_csv(csv, eh);
        finite = all_finite(eh);
        break;
    }
    }
    if (!converged)
        std::cerr << "warning: quadrature did not converge at some points (see theory_ok column)\n";
    const int status = write_outputs(opts, kind, cfg, started, csv.str(), converged);
    if (status != 0)
        return status;
    return finite ? 0 : 3;
}

Experiment infer_experiment(const CommonOptions& opts)
{
    if (opts.experiment == "ber")
        return Experiment::Ber;
    if (opts.experiment == "theory")
        return Experiment::Theory;
    if (opts.experiment == "eh")
        return Experiment::Eh;
    if (!opts.config_path.empty()) {
        std::ifstream in(opts.config_path);
        const auto doc = nlohmann::json::parse(in, nullptr, false);
        if (doc.is_object() && doc.contains("sweep") && doc["sweep"].is_object() &&
            doc["sweep"].value("axis", "") == "distance_m")
            return Experiment::Eh;
    }
    return Experiment::Ber;
}

std::string join_values(const std::vector<double>& v)
{
    std::string out;
    for (double x : v)
        out += (out.empty() ? "" : ", ") + noisemod::format_double(x);
    return out;
}

int run_validate(const CommonOptions& opts)
{
    const Experiment kind = infer_experiment(opts);
    const ExperimentConfig cfg = resolve(opts, kind);
    const auto problems = noisemod::validate_config(cfg, kind);
    if (!problems.empty())
        return report_problems(problems);

    const auto part = cfg.partition();
    std::cout << "config:            " << (opts.config_path.empty() ? "(defaults)" : opts.config_path) << '\n'
              << "experiment:        " << noisemod::to_string(kind) << '\n'
              << "config hash:       " << noisemod::config_hash(cfg) << '\n'
              << "waveform:          m = " << noisemod::format_double(cfg.mean_mag)
              << ", sigma_x2 = " << noisemod::format_double(cfg.sigma_x2) << '\n'
              << "per-sample power:  " << noisemod::format_double(cfg.noisemod().per_sample_power()) << '\n'
              << "split:             " << noisemod::to_string(cfg.split.mode) << ", N = " << cfg.n_total
              << ", alpha = " << noisemod::format_double(cfg.split.alpha) << " -> N_e = " << part.n_energy
              << ", N_i = " << part.n_info << ", rho = " << noisemod::format_double(cfg.split.rho) << '\n';
    if (kind == Experiment::Eh) {
        std::cout << "EH block:          N_e = " << cfg.eh_block << '\n'
                  << "distances (m):     " << join_values(cfg.values) << '\n';
        std::vector<double> losses;
        for (double d : cfg.values)
            losses.push_back(cfg.loss_at(d));
        std::cout << "path loss L:       " << join_values(losses) << '\n';
    } else {
        std::vector<double> lin, sw;
        for (double v : cfg.values) {
            lin.push_back(cfg.delta_linear(v));
            sw.push_back(cfg.sigma_x2 / lin.back());
        }
        std::cout << "distance:          " << noisemod::format_double(cfg.distance_m)
                  << " m, L = " << noisemod::format_double(cfg.loss()) << '\n'
                  << "delta grid (" << noisemod::to_string(cfg.axis) << "): " << join_values(cfg.values) << '\n'
                  << "delta (linear):    " << join_values(lin) << '\n'
                  << "sigma_w2:          " << join_values(sw) << '\n';
    }
    std::cout << "seed:              " << cfg.seed << " (" << cfg.rng_algorithm << ")\n";
    warn_power(cfg);
    std::cout << "ok\n";
    return 0;
}

void add_common(CLI::App* sub, CommonOptions& opts, bool needs_out)
{
    sub->add_option("--config", opts.config_path, "JSON experiment configuration (defaults if omitted)");
    if (needs_out) {
        sub->add_option("--out", opts.out_path, "CSV output path; the manifest goes to <out>.manifest.json")
            ->required();
        sub->add_option("--seed", opts.seed, "master seed, overrides mc.seed");
        sub->add_option("--threads", opts.threads, "worker threads (results do not depend on it)")
            ->check(CLI::Range(1, 1024));
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"noisemod: mean-keyed noise modulation link simulator"};
    app.require_subcommand(1);

    CommonOptions opts;
    auto* ber = app.add_subcommand("ber", "Monte Carlo BER sweep with the analytical curve alongside");
    auto* theory = app.add_subcommand("theory", "Analytical bit error probability curve");
    auto* eh = app.add_subcommand("eh", "Energy-harvesting z_DC versus distance for every scheme");
    auto* validate = app.add_subcommand("validate", "Check a configuration and print the resolved values");
    add_common(ber, opts, true);
    add_common(theory, opts, true);
    add_common(eh, opts, true);
    add_common(validate, opts, false);
    validate->add_option("--experiment", opts.experiment, "ber, theory or eh (inferred from sweep.axis)")
        ->check(CLI::IsMember({"ber", "theory", "eh"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (ber->parsed())
            return run_sweep(opts, Experiment::Ber);
        if (theory->parsed())
            return run_sweep(opts, Experiment::Theory);
        if (eh->parsed())
            return run_sweep(opts, Experiment::Eh);
        return run_validate(opts);
    } catch (const noisemod::ConfigError& e) {
        return report_problems(e.problems());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
