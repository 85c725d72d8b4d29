#pragma once

#include <cstdint>
#include <random>

namespace pollq {

using Engine = std::mt19937_64;

// SplitMix64 finalizer; decorrelates nearby seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed for replication `index` under `base_seed`. Depends only on the pair,
// so replications can run in any order or on any thread.
constexpr std::uint64_t replication_seed(std::uint64_t base_seed, std::uint64_t index) {
    return mix64(mix64(base_seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

inline Engine make_engine(std::uint64_t base_seed, std::uint64_t index) {
    return Engine(replication_seed(base_seed, index));
}

}  // namespace pollq
