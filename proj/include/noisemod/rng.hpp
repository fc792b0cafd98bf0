#pragma once

#include <boost/random/normal_distribution.hpp>

#include <array>
#include <complex>
#include <cstdint>
#include <limits>

namespace noisemod {

/// Name of the generator pipeline, echoed into every run manifest.
inline constexpr const char* kRngAlgorithm = "xoshiro256pp-philox4x32-10-keyed";
inline constexpr const char* kNormalAlgorithm = "boost-ziggurat";

/// Philox4x32-10 block cipher: maps a 128-bit counter under a 64-bit key to
/// 128 pseudo-random bits (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3").
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Random stream keyed by (seed, stream_id).
///
/// The 256-bit xoshiro256++ state of a stream is the Philox4x32-10 encryption
/// of the counters (0, stream_id) and (1, stream_id) under the key `seed`, so
/// every (seed, stream_id) pair selects an independent, reproducible sequence
/// without any shared state. Satisfies UniformRandomBitGenerator.
/// A stream is single-owner: never share one instance across threads.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept
    {
        const std::uint64_t out = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return out;
    }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::array<std::uint64_t, 4> state_{};
};

/// Uniform double in [0, 1) with 53 random bits.
double sample_uniform(RngStream& rng);

/// Standard normal deviate (ziggurat).
inline double sample_standard_normal(RngStream& rng)
{
    boost::random::normal_distribution<double> normal;
    return normal(rng);
}

/// Circularly symmetric complex Gaussian: real and imaginary parts i.i.d. N(0, variance/2).
std::complex<double> sample_complex_normal(RngStream& rng, double variance);

} // namespace noisemod
