#pragma once

#include <cstdint>
#include <random>

namespace wavecore {

/// Independent stream identifiers mixed into per-stage seeds.
enum class RngStream : std::uint64_t {
    Data = 1,
    Channel = 2,
    Noise = 3,
    Doppler = 4,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for trial `index` of stage `stream`. Distinct (seed, stream, index)
/// triples give unrelated engine states, so trials can run in any order.
constexpr std::uint64_t derive_seed(std::uint64_t seed, RngStream stream, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(stream)) + index);
}

using Engine = std::mt19937_64;

}  // namespace wavecore
