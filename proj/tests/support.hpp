#pragma once

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>

namespace testing_support {

/// Seed for randomized suites, read from DIAGCUBIC_SEED.
inline std::uint64_t seed() {
    static const std::uint64_t s = [] {
        const char* env = std::getenv("DIAGCUBIC_SEED");
        std::uint64_t v = env ? std::strtoull(env, nullptr, 10) : 20240917ULL;
        std::cerr << "DIAGCUBIC_SEED=" << v << '\n';
        return v;
    }();
    return s;
}

inline std::mt19937_64 rng(std::uint64_t salt) { return std::mt19937_64(seed() ^ (salt * 0x9E3779B97F4A7C15ULL)); }

inline long uniform(std::mt19937_64& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

}  // namespace testing_support
