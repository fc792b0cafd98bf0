#include <noisemod/config.hpp>
#include <noisemod/csv.hpp>
#include <noisemod/errors.hpp>

#include <doctest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

using namespace noisemod;
using nlohmann::json;

namespace {

bool mentions(const std::vector<std::string>& problems, const std::string& needle)
{
    for (const auto& p : problems)
        if (p.find(needle) != std::string::npos)
            return true;
    return false;
}

std::vector<std::string> parse_problems(const json& doc, Experiment kind)
{
    try {
        parse_config(doc, kind);
    } catch (const ConfigError& e) {
        return e.problems();
    }
    return {};
}

} // namespace

TEST_SUITE("config")
{
    TEST_CASE("defaults follow the reference setup")
    {
        const ExperimentConfig ber = parse_config(json::object(), Experiment::Ber);
        CHECK(ber.mean_mag == doctest::Approx(std::sqrt(0.5)));
        CHECK(ber.sigma_x2 == 1.0);
        CHECK(ber.distance_m == 3.0);
        CHECK(ber.carrier_hz == 433e6);
        CHECK(ber.k_factor == 5.0);
        CHECK(ber.split.alpha == 0.4);
        CHECK(ber.partition().n_info == 90);
        CHECK(ber.partition().n_energy == 60);
        CHECK(ber.axis == SweepAxis::DeltaDb);
        CHECK(validate_config(ber, Experiment::Ber).empty());

        const ExperimentConfig eh = default_config(Experiment::Eh);
        CHECK(eh.axis == SweepAxis::DistanceM);
        CHECK(eh.eh_block == 100);
        CHECK(eh.values.front() == 1.0);
        CHECK(eh.values.back() == 10.0);
        CHECK(validate_config(eh, Experiment::Eh).empty());
    }

    TEST_CASE("overlay of every documented key")
    {
        const json doc = json::parse(R"({
            "waveform": {"m": 0.5, "sigma_x2": 0.75},
            "channel": {"d_m": 1, "fc_hz": 915e6, "k_factor": 10, "sigma_e2": 0.01},
            "split": {"mode": "TS", "alpha": 0.2, "rho": 0.5},
            "sweep": {"axis": "delta_db", "values_db": [0, 10, 20]},
            "mc": {"bits_per_point": 20000, "seed": 7, "rng_algorithm": "xoshiro256pp-philox4x32-10-keyed"},
            "schemes": ["rg", "bpsk"]
        })");
        const ExperimentConfig c = parse_config(doc, Experiment::Ber);
        CHECK(c.mean_mag == 0.5);
        CHECK(c.sigma_x2 == 0.75);
        CHECK(c.distance_m == 1.0);
        CHECK(c.carrier_hz == 915e6);
        CHECK(c.k_factor == 10.0);
        CHECK(c.sigma_e2 == 0.01);
        CHECK(c.partition().n_info == 120);
        CHECK(c.values == std::vector<double>{0, 10, 20});
        CHECK(c.bits_per_point == 20000);
        CHECK(c.seed == 7);
        CHECK(c.schemes == std::vector<EhScheme>{EhScheme::RG, EhScheme::BPSK});
    }

    TEST_CASE("unknown keys are rejected and every problem is reported")
    {
        const auto p = parse_problems(json::parse(R"({"waveform": {"mu": 1}, "chanel": {}, "mc": {"seed": "x"}})"),
                                      Experiment::Ber);
        CHECK(p.size() == 3);
        CHECK(mentions(p, "waveform.mu"));
        CHECK(mentions(p, "chanel"));
        CHECK(mentions(p, "mc.seed"));
        CHECK(mentions(parse_problems(json::parse(R"({"schemes": ["ofdm"]})"), Experiment::Eh), "ofdm"));
        CHECK(mentions(parse_problems(json::parse(R"({"sweep": {"axis": "delta_db", "values_m": [1]}})"),
                                      Experiment::Ber),
                       "values_m"));
        CHECK(mentions(parse_problems(json::parse(R"({"mc": {"bits_per_point": -5}})"), Experiment::Ber),
                       "bits_per_point"));
    }

    TEST_CASE("validation finds range problems")
    {
        ExperimentConfig c = default_config(Experiment::Ber);
        c.split.alpha = 1.1;
        CHECK(mentions(validate_config(c, Experiment::Ber), "alpha"));

        c = default_config(Experiment::Ber);
        c.distance_m = 0.0;
        CHECK(mentions(validate_config(c, Experiment::Ber), "d_m"));

        c = default_config(Experiment::Eh);
        c.schemes.clear();
        CHECK(mentions(validate_config(c, Experiment::Eh), "schemes"));

        c = default_config(Experiment::Eh);
        c.values = {0.0, 1.0};
        CHECK(mentions(validate_config(c, Experiment::Eh), "values_m"));

        c = default_config(Experiment::Ber);
        c.rng_algorithm = "mt19937";
        CHECK(mentions(validate_config(c, Experiment::Ber), "rng_algorithm"));

        c = default_config(Experiment::Ber);
        c.split.alpha = 1.1;
        c.distance_m = -1.0;
        c.bits_per_point = 10;
        CHECK(validate_config(c, Experiment::Ber).size() >= 3);

        c = default_config(Experiment::Ber);
        CHECK(mentions(validate_config(c, Experiment::Eh), "distance_m"));
    }

    TEST_CASE("file loading names the path")
    {
        const std::filesystem::path missing = "/nonexistent/dir/cfg.json";
        try {
            load_config(missing, Experiment::Ber);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(missing.string()) != std::string::npos);
        }

        const auto tmp = std::filesystem::temp_directory_path() / "noisemod_bad_config.json";
        {
            std::ofstream(tmp) << "{\"waveform\": {\"m\": 0.5,}}";
        }
        try {
            load_config(tmp, Experiment::Ber);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(tmp.string()) != std::string::npos);
        }
        std::filesystem::remove(tmp);
    }

    TEST_CASE("canonical JSON round trip and hash stability")
    {
        ExperimentConfig c = default_config(Experiment::Eh);
        c.k_factor = 2.5;
        c.schemes = {EhScheme::CSCG};
        const ExperimentConfig back = parse_config(to_json(c), Experiment::Eh);
        CHECK(to_json(back) == to_json(c));
        CHECK(config_hash(back) == config_hash(c));
        CHECK(config_hash(c).size() == 16);
        ExperimentConfig d = c;
        d.seed = 2;
        CHECK(config_hash(d) != config_hash(c));
    }
}

TEST_SUITE("csv")
{
    TEST_CASE("shortest round-trip formatting")
    {
        for (double v : {0.0, 0.1, 1.0 / 3.0, 1e-300, 9.858875073e-12, 123456789.125, -2.5}) {
            const std::string s = format_double(v);
            double back = 0.0;
            std::from_chars(s.data(), s.data() + s.size(), back);
            CHECK(back == v);
            CHECK(s.find(',') == std::string::npos);
        }
        CHECK(format_double(0.5) == "0.5");
    }

    TEST_CASE("ber and eh layouts")
    {
        SweepResult sim;
        sim.axis_name = "delta_db";
        sim.curves.push_back({"ber_sim", {{10.0, 0.25, 100, 25, 0.0433, true, 0}}});
        SweepResult th;
        th.axis_name = "delta_db";
        th.curves.push_back({"ber_theory", {{10.0, 0.24, 0, 0, 0.0, false, 0}}});
        std::ostringstream os;
        write_ber_csv(os, sim, th);
        CHECK(os.str() == "delta_db,ber_sim,ber_theory,trials,errors,stderr,theory_ok\n10,0.25,0.24,100,25,0.0433,0\n");

        std::ostringstream ts;
        write_theory_csv(ts, th);
        CHECK(ts.str() == "delta_db,ber_theory,theory_ok\n10,0.24,0\n");

        SweepResult eh;
        eh.axis_name = "distance_m";
        eh.curves.push_back({"rg", {{1.0, 2.0}, {2.0, 1.0}}});
        eh.curves.push_back({"bpsk", {{1.0, 0.5}, {2.0, 0.25}}});
        std::ostringstream es;
        write_eh_csv(es, eh);
        CHECK(es.str() == "distance_m,rg,bpsk\n1,2,0.5\n2,1,0.25\n");
    }
}
