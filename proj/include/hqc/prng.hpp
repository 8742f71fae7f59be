#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace hqc {

// xorshift64* generator (shifts 12/25/27, multiplier 0x2545F4914F6CDD1D).
// Every seeded draw in the project goes through this class so that runs
// reproduce bit-for-bit across platforms and across language ports.
//
// Reference outputs for seed 42 (first four raw 64-bit values):
//   0x56ce4ab7719ba3a0, 0xc841eb53ebbb2dda,
//   0xca466be0c9980276, 0xf1acc7334a7b70df
// Unit doubles are derived as (value >> 11) * 2^-53, giving [0, 1).
class Xorshift64Star {
public:
    explicit Xorshift64Star(std::uint64_t seed) noexcept
        : state_(seed != 0 ? seed : kZeroSeedFallback) {}

    std::uint64_t next_u64() noexcept {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545F4914F6CDD1DULL;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_unit() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double low, double high) noexcept {
        return low + (high - low) * next_unit();
    }

    // Standard normal via Box-Muller; consumes exactly two draws per call.
    double normal() noexcept {
        const double u1 = 1.0 - next_unit();  // (0, 1], keeps log finite
        const double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    // State must never be zero; 0 maps to the golden-ratio constant.
    static constexpr std::uint64_t kZeroSeedFallback = 0x9E3779B97F4A7C15ULL;
    std::uint64_t state_;
};

}  // namespace hqc
