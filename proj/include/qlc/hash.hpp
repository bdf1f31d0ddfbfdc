/// @file hash.hpp
/// @brief Stable hashing used for question ids and per-question seeds.

#pragma once

#include <cstdint>
#include <string_view>

namespace qlc {

/// 64-bit FNV-1a. Stable across platforms and runs.
constexpr std::uint64_t stable_hash(std::string_view text,
                                    std::uint64_t basis = 0xcbf29ce484222325ULL) noexcept {
    std::uint64_t h = basis;
    for (const char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// splitmix64 finalizer.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace qlc
