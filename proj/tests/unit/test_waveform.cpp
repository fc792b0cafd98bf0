#include "oracles.hpp"

#include <noisemod/errors.hpp>
#include <noisemod/waveform.hpp>

#include <doctest.h>

#include <cmath>
#include <complex>
#include <set>
#include <vector>

using namespace noisemod;

namespace {

// 16-QAM with levels {-3,-1,1,3} per axis, normalized by sqrt(10).
Moments enumerate_qam16()
{
    double m2 = 0.0;
    double m4 = 0.0;
    for (int i : {-3, -1, 1, 3})
        for (int q : {-3, -1, 1, 3}) {
            const double p = (i * i + q * q) / 10.0;
            m2 += p / 16.0;
            m4 += p * p / 16.0;
        }
    return {m2, m4};
}

Moments empirical(const std::vector<cdouble>& x)
{
    double m2 = 0.0;
    double m4 = 0.0;
    for (const auto& v : x) {
        const double p = std::norm(v);
        m2 += p;
        m4 += p * p;
    }
    return {m2 / x.size(), m4 / x.size()};
}

} // namespace

TEST_SUITE("waveform.noisemod")
{
    TEST_CASE("degenerate variance gives the exact mean")
    {
        RngStream rng(1, 0);
        const NoiseModParams p{std::sqrt(0.5), 0.0, 90, 60};
        for (double v : noisemod_modulate(1, 64, p, rng))
            CHECK(v == p.mean_mag);
        for (double v : noisemod_modulate(0, 64, p, rng))
            CHECK(v == -p.mean_mag);
    }

    TEST_CASE("table values: mean and variance over 1e6 samples")
    {
        RngStream rng(1, 1);
        const NoiseModParams p{};
        const auto x = noisemod_modulate(0, 1'000'000, p, rng);
        const auto mv = oracle::mean_var(x);
        CHECK(std::fabs(mv.mean + 0.70710678) < 4e-3);
        CHECK(mv.var == doctest::Approx(1.0).epsilon(0.01));
    }

    TEST_CASE("power symmetry between bits")
    {
        RngStream r0(2, 0);
        RngStream r1(2, 1);
        const NoiseModParams p{};
        const auto x0 = noisemod_modulate(0, 1'000'000, p, r0);
        const auto x1 = noisemod_modulate(1, 1'000'000, p, r1);
        std::vector<double> s0(x0.size());
        std::vector<double> s1(x1.size());
        for (std::size_t i = 0; i < x0.size(); ++i) {
            s0[i] = x0[i] * x0[i];
            s1[i] = x1[i] * x1[i];
        }
        const auto a = oracle::mean_var(s0);
        const auto b = oracle::mean_var(s1);
        const double se = std::sqrt(a.var / 1e6 + b.var / 1e6);
        CHECK(std::fabs(a.mean - b.mean) < 4 * se);
    }

    TEST_CASE("domain")
    {
        RngStream rng(1, 0);
        CHECK_THROWS_AS(noisemod_modulate(2, 10, NoiseModParams{}, rng), DomainError);
        CHECK_THROWS_AS(noisemod_modulate(-1, 10, NoiseModParams{}, rng), DomainError);
        CHECK_THROWS_AS(noisemod_modulate(0, 0, NoiseModParams{}, rng), DomainError);
    }

    TEST_CASE("moments and unit-power rescaling")
    {
        const NoiseModParams p{};
        CHECK(p.per_sample_power() == doctest::Approx(1.5));
        const Moments m = theoretical_moments(p);
        CHECK(m.second == doctest::Approx(1.5));
        CHECK(m.fourth == doctest::Approx(6.25));

        const NoiseModParams u = p.unit_power();
        CHECK(u.per_sample_power() == doctest::Approx(1.0));
        CHECK(u.mean_mag / std::sqrt(u.sigma_x2) == doctest::Approx(p.mean_mag / std::sqrt(p.sigma_x2)));
        CHECK(theoretical_moments(u).fourth == doctest::Approx(25.0 / 9.0));
    }
}

TEST_SUITE("waveform.baseline")
{
    TEST_CASE("BPSK is constant envelope")
    {
        RngStream rng(3, 0);
        const auto x = baseline_modulate(BaselineScheme::BPSK, 10000, rng);
        std::set<double> values;
        for (const auto& v : x) {
            CHECK(v.imag() == 0.0);
            CHECK(std::fabs(v.real()) == 1.0);
            values.insert(v.real());
        }
        CHECK(values.size() == 2);
    }

    TEST_CASE("16-PSK uses 16 unit-modulus points")
    {
        RngStream rng(3, 1);
        const auto x = baseline_modulate(BaselineScheme::PSK16, 100000, rng);
        std::set<long> phases;
        for (const auto& v : x) {
            CHECK(std::abs(v) == doctest::Approx(1.0).epsilon(1e-15));
            phases.insert(std::lround(std::arg(v) / (2 * std::acos(-1.0) / 16)));
        }
        CHECK(phases.size() == 16);
    }

    TEST_CASE("16-QAM points and power")
    {
        RngStream rng(3, 2);
        const auto x = baseline_modulate(BaselineScheme::QAM16, 1'000'000, rng);
        std::set<std::pair<long, long>> pts;
        for (const auto& v : x)
            pts.insert({std::lround(v.real() * std::sqrt(10.0)), std::lround(v.imag() * std::sqrt(10.0))});
        CHECK(pts.size() == 16);
        for (const auto& [i, q] : pts) {
            CHECK((std::abs(i) == 1 || std::abs(i) == 3));
            CHECK((std::abs(q) == 1 || std::abs(q) == 3));
        }
        CHECK(empirical(x).second == doctest::Approx(1.0).epsilon(0.01));
    }

    TEST_CASE("CSCG fourth moment")
    {
        RngStream rng(3, 3);
        CHECK(empirical(baseline_modulate(BaselineScheme::CSCG, 1'000'000, rng)).fourth ==
              doctest::Approx(2.0).epsilon(0.02));
    }

    TEST_CASE("theoretical moments")
    {
        const Moments q = enumerate_qam16();
        CHECK(theoretical_moments(BaselineScheme::QAM16).second == doctest::Approx(q.second));
        CHECK(theoretical_moments(BaselineScheme::QAM16).fourth == doctest::Approx(q.fourth));
        CHECK(q.fourth == doctest::Approx(1.32));
        CHECK(theoretical_moments(BaselineScheme::BPSK).fourth == 1.0);
        CHECK(theoretical_moments(BaselineScheme::PSK16).fourth == 1.0);
        CHECK(theoretical_moments(BaselineScheme::RG).fourth == 3.0);
        CHECK(theoretical_moments(BaselineScheme::CSCG).fourth == 2.0);
        for (auto s : {BaselineScheme::BPSK, BaselineScheme::PSK16, BaselineScheme::QAM16, BaselineScheme::RG,
                       BaselineScheme::CSCG})
            CHECK(theoretical_moments(s).second == 1.0);
    }

    TEST_CASE("fourth-moment ordering at unit power")
    {
        const auto f = [](BaselineScheme s) { return theoretical_moments(s).fourth; };
        CHECK(f(BaselineScheme::RG) > f(BaselineScheme::CSCG));
        CHECK(f(BaselineScheme::CSCG) > f(BaselineScheme::QAM16));
        CHECK(f(BaselineScheme::QAM16) > f(BaselineScheme::BPSK));
        CHECK(f(BaselineScheme::BPSK) == f(BaselineScheme::PSK16));
    }

    TEST_CASE("every modulator matches its moments within 3%")
    {
        std::uint64_t stream = 10;
        for (auto s : {BaselineScheme::BPSK, BaselineScheme::PSK16, BaselineScheme::QAM16, BaselineScheme::RG,
                       BaselineScheme::CSCG}) {
            RngStream rng(4, stream++);
            const Moments e = empirical(baseline_modulate(s, 1'000'000, rng));
            const Moments t = theoretical_moments(s);
            INFO(to_string(s));
            CHECK(e.second == doctest::Approx(t.second).epsilon(0.03));
            CHECK(e.fourth == doctest::Approx(t.fourth).epsilon(0.03));
        }
        oracle::Gen g(4);
        for (int i = 0; i < 4; ++i) {
            const NoiseModParams p{g.uniform(0.2, 2.0), g.uniform(0.2, 2.0), 90, 60};
            RngStream rng(5, static_cast<std::uint64_t>(i));
            const auto x = noisemod_modulate(i % 2, 1'000'000, p, rng);
            double m2 = 0.0;
            double m4 = 0.0;
            for (double v : x) {
                m2 += v * v;
                m4 += v * v * v * v;
            }
            const Moments t = theoretical_moments(p);
            CHECK(m2 / 1e6 == doctest::Approx(t.second).epsilon(0.03));
            CHECK(m4 / 1e6 == doctest::Approx(t.fourth).epsilon(0.03));
        }
    }
}
