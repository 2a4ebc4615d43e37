#pragma once

#include <cstdint>
#include <random>

namespace quiko {

// All randomness in the project flows from a single root seed through
// mt19937_64 engines whose seeds are derived with the splitmix64 finalizer.
// Both generators are publicly specified, so fixtures are reproducible
// across platforms. The generator name is recorded in output metadata.
inline constexpr const char* kGeneratorName = "mt19937_64/splitmix64-streams";

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stream derivation: (root, salt, index) -> engine seed. Distinct salts keep
// components (shots, trials, database entries, ...) on independent streams.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t salt, std::uint64_t index = 0) {
    std::uint64_t h = splitmix64(root ^ (0x9e3779b97f4a7c15ULL * (salt + 1)));
    return splitmix64(h ^ index);
}

inline std::mt19937_64 make_engine(std::uint64_t root, std::uint64_t salt, std::uint64_t index = 0) {
    return std::mt19937_64(derive_seed(root, salt, index));
}

// Uniform double in [0,1) built from the top 53 bits of the engine output.
// std::uniform_real_distribution is not pinned by the standard; this is.
inline double u01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Stream salts, one per consumer. Values are arbitrary but frozen.
namespace streams {
inline constexpr std::uint64_t kShots = 0x01;
inline constexpr std::uint64_t kDatabase = 0x02;
inline constexpr std::uint64_t kTrialInput = 0x03;
inline constexpr std::uint64_t kReference = 0x04;
inline constexpr std::uint64_t kCompareBatch = 0x05;
inline constexpr std::uint64_t kTrialShots = 0x06;
inline constexpr std::uint64_t kDatabaseShots = 0x07;
} // namespace streams

} // namespace quiko
