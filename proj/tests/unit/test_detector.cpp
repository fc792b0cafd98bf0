#include "oracles.hpp"

#include <noisemod/channel.hpp>
#include <noisemod/detector.hpp>
#include <noisemod/errors.hpp>
#include <noisemod/waveform.hpp>

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

using namespace noisemod;

namespace {
const double kM = std::sqrt(0.5);
}

TEST_SUITE("detector")
{
    TEST_CASE("sample mean")
    {
        CHECK(sample_mean(std::vector<cdouble>{{1, 0}, {1, 0}}) == cdouble(1, 0));
        CHECK(sample_mean(std::vector<cdouble>{{2, 2}, {0, 0}}) == cdouble(1, 1));
        CHECK_THROWS_AS(sample_mean(std::vector<cdouble>{}), DomainError);

        RngStream rng(6, 0);
        std::vector<cdouble> w(1'000'000);
        for (auto& v : w)
            v = sample_complex_normal(rng, 2.0);
        CHECK(std::abs(sample_mean(w)) < 4 * std::sqrt(2.0) / 1e3);
    }

    TEST_CASE("examples")
    {
        CHECK(detect_bit({0.3, 0.0}, {1.0, 0.0}, kM).bit == 1);
        CHECK(detect_bit({-0.3, 0.0}, {1.0, 0.0}, kM).bit == 0);
        const Decision d = detect_bit({0.3, 0.0}, {1.0, 0.0}, kM);
        CHECK(d.metric_high < d.metric_low);
        CHECK_FALSE(d.degenerate);
    }

    TEST_CASE("ties resolve to bit 0 and a zero estimate is flagged")
    {
        const Decision tie = detect_bit({0.0, 0.4}, {1.0, 0.0}, kM);
        CHECK(tie.bit == 0);
        CHECK(tie.metric_low == tie.metric_high);
        const Decision z = detect_bit({0.7, 0.1}, {0.0, 0.0}, kM);
        CHECK(z.bit == 0);
        CHECK(z.degenerate);
    }

    TEST_CASE("non-finite input")
    {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(detect_bit({nan, 0.0}, {1.0, 0.0}, kM), DomainError);
        CHECK_THROWS_AS(detect_bit({0.1, 0.0}, {1.0, nan}, kM), DomainError);
    }

    TEST_CASE("equivalence with sign of Re(conj(h) y)")
    {
        oracle::Gen g(77);
        int ties = 0;
        for (int i = 0; i < 10000; ++i) {
            const cdouble h{g.uniform(-2, 2), g.uniform(-2, 2)};
            const cdouble y{g.uniform(-2, 2), g.uniform(-2, 2)};
            const double m = g.uniform(0.05, 3.0);
            const double c = (std::conj(h) * y).real();
            if (c == 0.0) {
                ++ties;
                continue;
            }
            REQUIRE(detect_bit(y, h, m).bit == (c > 0.0 ? 1 : 0));
        }
        CHECK(ties == 0);
    }

    TEST_CASE("decision follows the metrics and survives extreme scale disparity")
    {
        oracle::Gen g(81);
        for (int i = 0; i < 20000; ++i) {
            const cdouble h = g.log_uniform(1e-8, 1e8) * std::polar(1.0, g.uniform(0, 2 * std::numbers::pi));
            const cdouble y = g.log_uniform(1e-8, 1e8) * std::polar(1.0, g.uniform(0, 2 * std::numbers::pi));
            const double m = g.uniform(0.05, 3.0);
            const Decision d = detect_bit(y, h, m);
            const long double c = static_cast<long double>(h.real()) * y.real() +
                                  static_cast<long double>(h.imag()) * y.imag();
            REQUIRE(d.bit == (c > 0 ? 1 : 0));
            // when the metrics are well separated they agree with the decision
            if (std::fabs(d.metric_low - d.metric_high) > 1e-9 * (d.metric_low + d.metric_high))
                CHECK(d.bit == (d.metric_high < d.metric_low ? 1 : 0));
        }
    }

    TEST_CASE("phase invariance")
    {
        oracle::Gen g(78);
        for (int i = 0; i < 5000; ++i) {
            const cdouble h{g.uniform(-2, 2), g.uniform(-2, 2)};
            const cdouble y{g.uniform(-2, 2), g.uniform(-2, 2)};
            const double c = (std::conj(h) * y).real();
            // skip pairs too close to the boundary for rounding to matter
            if (std::fabs(c) < 1e-9 * std::abs(h) * std::abs(y))
                continue;
            const cdouble rot = std::polar(1.0, g.uniform(0.0, 2 * std::numbers::pi));
            CHECK(detect_bit(rot * y, rot * h, kM).bit == detect_bit(y, h, kM).bit);
        }
    }

    TEST_CASE("positive scale invariance")
    {
        oracle::Gen g(79);
        for (int i = 0; i < 5000; ++i) {
            const cdouble h{g.uniform(-2, 2), g.uniform(-2, 2)};
            const cdouble y{g.uniform(-2, 2), g.uniform(-2, 2)};
            const double s = g.log_uniform(1e-6, 1e6);
            const double c = (std::conj(h) * y).real();
            if (std::fabs(c) < 1e-9 * std::abs(h) * std::abs(y))
                continue;
            CHECK(detect_bit(s * y, s * h, kM).bit == detect_bit(y, h, kM).bit);
        }
    }

    TEST_CASE("noiseless decisions are error free")
    {
        oracle::Gen g(80);
        const NoiseModParams p{kM, 0.0, 90, 60};
        for (int i = 0; i < 2000; ++i) {
            const cdouble hb{g.uniform(-1, 1), g.uniform(-1, 1)};
            if (hb == cdouble(0, 0))
                continue;
            const int bit = i % 2;
            RngStream rng(9, static_cast<std::uint64_t>(i));
            const auto x = noisemod_modulate(bit, 90, p, rng);
            const ChannelState st{hb, g.uniform(1.0, 3000.0), 0.0, 0.0};
            const auto y = apply_channel(x, st, rng);
            CHECK(detect_bit(sample_mean(y), st.effective(), kM).bit == bit);
        }
    }
}
