#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace wsqopt {

/// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Derives an independent stream seed from a master seed, a component label and
/// optional integer coordinates (instance index, iteration, branch, ...).
///
/// The label is folded in with 64-bit FNV-1a, then every value is absorbed
/// through SplitMix64. The mapping is stable across platforms and releases;
/// changing it changes every experiment output.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                                    std::initializer_list<std::uint64_t> coords = {}) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ull;
    }
    std::uint64_t s = mix64(master ^ mix64(h));
    for (std::uint64_t c : coords) s = mix64(s ^ mix64(c + 0x632BE59BD9B4E019ull));
    return s;
}

}  // namespace wsqopt
