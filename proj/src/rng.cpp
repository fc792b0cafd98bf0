#include "noisemod/rng.hpp"

#include "noisemod/errors.hpp"

#include <cmath>

namespace noisemod {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo)
{
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

} // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key)
{
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : seed_(seed), stream_id_(stream_id)
{
    const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed),
                                              static_cast<std::uint32_t>(seed >> 32)};
    for (std::uint32_t block = 0; block < 2; ++block) {
        const std::array<std::uint32_t, 4> ctr = {block, 0u, static_cast<std::uint32_t>(stream_id),
                                                  static_cast<std::uint32_t>(stream_id >> 32)};
        const auto out = philox4x32_10(ctr, key);
        state_[2 * block] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
        state_[2 * block + 1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
    }
    // xoshiro must not start from the all-zero state; Philox output is a
    // bijection of the counter, so this is unreachable for all but one key.
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0)
        state_[0] = 0x9E3779B97F4A7C15ull;
}

double sample_uniform(RngStream& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::complex<double> sample_complex_normal(RngStream& rng, double variance)
{
    require(variance >= 0.0 && std::isfinite(variance),
            "sample_complex_normal: variance must be finite and non-negative");
    if (variance == 0.0)
        return {0.0, 0.0};
    const double sd = std::sqrt(0.5 * variance);
    const double re = sample_standard_normal(rng);
    const double im = sample_standard_normal(rng);
    return {sd * re, sd * im};
}

} // namespace noisemod
