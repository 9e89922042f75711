#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "kac/model.hpp"

namespace kac {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
// Stateless block function: 128-bit counter + 64-bit key -> 128 random bits.
// Streams are carved out of the counter space, so (seed, stream) pairs
// never collide and draws are reproducible independent of scheduling.
namespace philox {

inline constexpr std::uint32_t M0 = 0xD2511F53u;
inline constexpr std::uint32_t M1 = 0xCD9E8D57u;
inline constexpr std::uint32_t W0 = 0x9E3779B9u;
inline constexpr std::uint32_t W1 = 0xBB67AE85u;

using block = std::array<std::uint32_t, 4>;
using key = std::array<std::uint32_t, 2>;

inline void round_once(block& x, const key& k) {
    const std::uint64_t p0 = std::uint64_t(M0) * x[0];
    const std::uint64_t p1 = std::uint64_t(M1) * x[2];
    const std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
    const std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
    x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
}

inline block generate(block ctr, key k) {
    for (int r = 0; r < 10; ++r) {
        if (r) { k[0] += W0; k[1] += W1; }
        round_once(ctr, k);
    }
    return ctr;
}

} // namespace philox

/// One reproducible random stream, identified by (seed, stream_index).
class SeededStream {
public:
    SeededStream(std::uint64_t seed, std::uint64_t stream_index)
        : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)},
          stream_(stream_index) {}

    std::uint64_t seed() const {
        return std::uint64_t(key_[0]) | (std::uint64_t(key_[1]) << 32);
    }
    std::uint64_t stream_index() const { return stream_; }

    std::uint32_t next_u32() {
        if (pos_ == 4) refill();
        return buf_[pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() {
        return double(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform on (0, 1]; safe under log().
    double uniform01_open_below() { return 1.0 - uniform01(); }

    /// Uniform integer in {0, ..., k-1} (k >= 1).
    std::uint64_t uniform_index(std::uint64_t k) {
        return std::uint64_t((__uint128_t(next_u64()) * k) >> 64);
    }

    /// Uniform angle on (0, 2*pi].
    double uniform_angle() { return two_pi * uniform01_open_below(); }

    double exponential() { return -std::log(uniform01_open_below()); }

    double standard_normal() {
        const double r = std::sqrt(2.0 * exponential());
        return r * std::cos(two_pi * uniform01());
    }

private:
    void refill() {
        buf_ = philox::generate(
            {std::uint32_t(block_), std::uint32_t(block_ >> 32),
             std::uint32_t(stream_), std::uint32_t(stream_ >> 32)},
            key_);
        ++block_;
        pos_ = 0;
    }

    philox::key key_;
    std::uint64_t stream_ = 0;
    std::uint64_t block_ = 0;
    philox::block buf_{};
    int pos_ = 4;
};

} // namespace kac
