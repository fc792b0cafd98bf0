#include "noisemod/config.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace noisemod {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& items)
{
    std::string out;
    for (const auto& s : items) {
        if (!out.empty())
            out += "; ";
        out += s;
    }
    return out;
}

class Reader {
public:
    explicit Reader(std::vector<std::string>& problems) : problems_(problems) {}

    bool object(const json& j, const std::string& path)
    {
        if (j.is_object())
            return true;
        problems_.push_back(path + ": expected an object");
        return false;
    }

    void allow_only(const json& j, const std::string& path, std::initializer_list<const char*> keys)
    {
        for (auto it = j.begin(); it != j.end(); ++it) {
            bool known = false;
            for (const char* k : keys)
                known = known || it.key() == k;
            if (!known)
                problems_.push_back("unknown key '" + (path.empty() ? "" : path + ".") + it.key() + "'");
        }
    }

    void number(const json& j, const char* key, const std::string& path, double& out)
    {
        if (!j.contains(key))
            return;
        const json& v = j.at(key);
        if (!v.is_number())
            problems_.push_back(path + "." + key + ": expected a number");
        else
            out = v.get<double>();
    }

    template <class Int>
    void integer(const json& j, const char* key, const std::string& path, Int& out)
    {
        if (!j.contains(key))
            return;
        const json& v = j.at(key);
        if (v.is_number_unsigned()) {
            out = static_cast<Int>(v.get<std::uint64_t>());
            return;
        }
        if (v.is_number()) {
            const double d = v.get<double>();
            if (d >= 0.0 && d < 1.8e19 && std::floor(d) == d) {
                out = static_cast<Int>(d);
                return;
            }
        }
        problems_.push_back(path + "." + key + ": expected a non-negative integer");
    }

    void boolean(const json& j, const char* key, const std::string& path, bool& out)
    {
        if (!j.contains(key))
            return;
        if (!j.at(key).is_boolean())
            problems_.push_back(path + "." + key + ": expected true or false");
        else
            out = j.at(key).get<bool>();
    }

    template <class Enum>
    void choice(const json& j, const char* key, const std::string& path, Enum& out,
                std::initializer_list<std::pair<const char*, Enum>> options)
    {
        if (!j.contains(key))
            return;
        const json& v = j.at(key);
        if (v.is_string()) {
            for (const auto& [name, value] : options)
                if (v.get<std::string>() == name) {
                    out = value;
                    return;
                }
        }
        std::string names;
        for (const auto& [name, value] : options)
            names += std::string(names.empty() ? "" : ", ") + name;
        problems_.push_back(path + "." + key + ": expected one of " + names);
    }

    void numbers(const json& j, const char* key, const std::string& path, std::vector<double>& out)
    {
        if (!j.contains(key))
            return;
        const json& v = j.at(key);
        if (!v.is_array()) {
            problems_.push_back(path + "." + key + ": expected an array of numbers");
            return;
        }
        std::vector<double> vals;
        for (const json& e : v) {
            if (!e.is_number()) {
                problems_.push_back(path + "." + key + ": expected an array of numbers");
                return;
            }
            vals.push_back(e.get<double>());
        }
        out = std::move(vals);
    }

private:
    std::vector<std::string>& problems_;
};

std::vector<double> linspace_step(double first, double last, double step)
{
    std::vector<double> v;
    const int n = static_cast<int>(std::lround((last - first) / step));
    for (int i = 0; i <= n; ++i)
        v.push_back(first + step * i);
    return v;
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join(problems)), problems_(std::move(problems))
{
}

ExperimentConfig default_config(Experiment kind)
{
    ExperimentConfig cfg;
    if (kind == Experiment::Eh) {
        cfg.axis = SweepAxis::DistanceM;
        cfg.values = linspace_step(1.0, 10.0, 1.0);
    } else {
        cfg.axis = SweepAxis::DeltaDb;
        cfg.values = linspace_step(0.0, 60.0, 5.0);
    }
    return cfg;
}

ExperimentConfig parse_config(const json& doc, Experiment kind)
{
    ExperimentConfig cfg = default_config(kind);
    std::vector<std::string> problems;
    Reader r(problems);

    if (!r.object(doc, "config"))
        throw ConfigError(problems);
    r.allow_only(doc, "", {"waveform", "channel", "split", "sweep", "mc", "harvest", "schemes"});

    if (doc.contains("waveform") && r.object(doc["waveform"], "waveform")) {
        const json& w = doc["waveform"];
        r.allow_only(w, "waveform", {"m", "sigma_x2"});
        r.number(w, "m", "waveform", cfg.mean_mag);
        r.number(w, "sigma_x2", "waveform", cfg.sigma_x2);
    }

    if (doc.contains("channel") && r.object(doc["channel"], "channel")) {
        const json& c = doc["channel"];
        r.allow_only(c, "channel",
                     {"d_m", "fc_hz", "k_factor", "sigma_e2", "light_speed", "fading", "path_loss", "csi_error_ref"});
        r.number(c, "d_m", "channel", cfg.distance_m);
        r.number(c, "fc_hz", "channel", cfg.carrier_hz);
        r.number(c, "k_factor", "channel", cfg.k_factor);
        r.number(c, "sigma_e2", "channel", cfg.sigma_e2);
        r.number(c, "light_speed", "channel", cfg.light_speed);
        r.choice(c, "fading", "channel", cfg.fading,
                 {{"rician", FadingMode::Rician}, {"none", FadingMode::None}});
        r.boolean(c, "path_loss", "channel", cfg.apply_path_loss);
        r.choice(c, "csi_error_ref", "channel", cfg.csi_error_ref,
                 {{"small_scale", CsiErrorReference::SmallScale}, {"effective", CsiErrorReference::Effective}});
    }

    if (doc.contains("split") && r.object(doc["split"], "split")) {
        const json& s = doc["split"];
        r.allow_only(s, "split", {"mode", "alpha", "rho", "n_total", "n_energy"});
        r.choice(s, "mode", "split", cfg.split.mode, {{"TS", SplitMode::TS}, {"PS", SplitMode::PS}});
        r.number(s, "alpha", "split", cfg.split.alpha);
        r.number(s, "rho", "split", cfg.split.rho);
        r.integer(s, "n_total", "split", cfg.n_total);
        r.integer(s, "n_energy", "split", cfg.eh_block);
    }

    if (doc.contains("sweep") && r.object(doc["sweep"], "sweep")) {
        const json& s = doc["sweep"];
        r.allow_only(s, "sweep", {"axis", "values_db", "values_linear", "values_m"});
        r.choice(s, "axis", "sweep", cfg.axis,
                 {{"delta_db", SweepAxis::DeltaDb},
                  {"delta_linear", SweepAxis::DeltaLinear},
                  {"distance_m", SweepAxis::DistanceM}});
        const char* expected = cfg.axis == SweepAxis::DeltaDb       ? "values_db"
                               : cfg.axis == SweepAxis::DeltaLinear ? "values_linear"
                                                                    : "values_m";
        for (const char* key : {"values_db", "values_linear", "values_m"})
            if (s.contains(key) && std::string(key) != expected)
                problems.push_back(std::string("sweep.") + key + " does not match sweep.axis '" +
                                   std::string(to_string(cfg.axis)) + "' (expected sweep." + expected + ")");
        if (s.contains("axis") && !s.contains(expected) && s["axis"] != json(to_string(default_config(kind).axis)))
            problems.push_back(std::string("sweep.") + expected + " is required when sweep.axis is '" +
                               std::string(to_string(cfg.axis)) + "'");
        r.numbers(s, expected, "sweep", cfg.values);
    }

    if (doc.contains("mc") && r.object(doc["mc"], "mc")) {
        const json& m = doc["mc"];
        r.allow_only(m, "mc", {"bits_per_point", "seed", "rng_algorithm", "min_errors", "fading_realizations",
                               "sample_level"});
        r.integer(m, "bits_per_point", "mc", cfg.bits_per_point);
        r.integer(m, "seed", "mc", cfg.seed);
        if (m.contains("rng_algorithm")) {
            if (!m["rng_algorithm"].is_string())
                problems.push_back("mc.rng_algorithm: expected a string");
            else
                cfg.rng_algorithm = m["rng_algorithm"].get<std::string>();
        }
        r.integer(m, "min_errors", "mc", cfg.min_errors);
        r.integer(m, "fading_realizations", "mc", cfg.fading_realizations);
        r.boolean(m, "sample_level", "mc", cfg.sample_level);
    }

    if (doc.contains("harvest") && r.object(doc["harvest"], "harvest")) {
        const json& h = doc["harvest"];
        r.allow_only(h, "harvest", {"k2", "k4", "r_ant", "sigma_w2", "unit_power"});
        r.number(h, "k2", "harvest", cfg.rectenna.k2);
        r.number(h, "k4", "harvest", cfg.rectenna.k4);
        r.number(h, "r_ant", "harvest", cfg.rectenna.r_ant);
        r.number(h, "sigma_w2", "harvest", cfg.eh_sigma_w2);
        r.boolean(h, "unit_power", "harvest", cfg.eh_unit_power);
    }

    if (doc.contains("schemes")) {
        const json& s = doc["schemes"];
        if (!s.is_array()) {
            problems.push_back("schemes: expected an array of scheme names");
        } else {
            std::vector<EhScheme> schemes;
            for (const json& e : s) {
                bool found = false;
                for (EhScheme candidate : all_eh_schemes())
                    if (e.is_string() && e.get<std::string>() == to_string(candidate)) {
                        schemes.push_back(candidate);
                        found = true;
                    }
                if (!found)
                    problems.push_back("schemes: unknown scheme " + e.dump() +
                                       " (expected noisemod_ts, noisemod_ps, qam16, psk16, bpsk, rg, cscg)");
            }
            cfg.schemes = std::move(schemes);
        }
    }

    if (!problems.empty())
        throw ConfigError(problems);
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, Experiment kind)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError({"cannot open config file '" + path.string() + "'"});
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError({"malformed JSON in '" + path.string() + "': " + e.what()});
    }
    try {
        return parse_config(doc, kind);
    } catch (const ConfigError& e) {
        std::vector<std::string> problems;
        for (const auto& p : e.problems())
            problems.push_back(path.string() + ": " + p);
        throw ConfigError(problems);
    }
}

json to_json(const ExperimentConfig& cfg)
{
    json j;
    j["waveform"] = {{"m", cfg.mean_mag}, {"sigma_x2", cfg.sigma_x2}};
    j["channel"] = {{"d_m", cfg.distance_m},
                    {"fc_hz", cfg.carrier_hz},
                    {"k_factor", cfg.k_factor},
                    {"sigma_e2", cfg.sigma_e2},
                    {"light_speed", cfg.light_speed},
                    {"fading", to_string(cfg.fading)},
                    {"path_loss", cfg.apply_path_loss},
                    {"csi_error_ref", to_string(cfg.csi_error_ref)}};
    j["split"] = {{"mode", to_string(cfg.split.mode)},
                  {"alpha", cfg.split.alpha},
                  {"rho", cfg.split.rho},
                  {"n_total", cfg.n_total},
                  {"n_energy", cfg.eh_block}};
    const char* values_key = cfg.axis == SweepAxis::DeltaDb       ? "values_db"
                             : cfg.axis == SweepAxis::DeltaLinear ? "values_linear"
                                                                  : "values_m";
    j["sweep"] = {{"axis", to_string(cfg.axis)}, {values_key, cfg.values}};
    j["mc"] = {{"bits_per_point", cfg.bits_per_point},
               {"seed", cfg.seed},
               {"rng_algorithm", cfg.rng_algorithm},
               {"min_errors", cfg.min_errors},
               {"fading_realizations", cfg.fading_realizations},
               {"sample_level", cfg.sample_level}};
    j["harvest"] = {{"k2", cfg.rectenna.k2},
                    {"k4", cfg.rectenna.k4},
                    {"r_ant", cfg.rectenna.r_ant},
                    {"sigma_w2", cfg.eh_sigma_w2},
                    {"unit_power", cfg.eh_unit_power}};
    auto schemes = json::array();
    for (EhScheme s : cfg.schemes)
        schemes.push_back(to_string(s));
    j["schemes"] = schemes;
    return j;
}

std::string config_hash(const ExperimentConfig& cfg)
{
    const std::string bytes = to_json(cfg).dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

} // namespace noisemod
