#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace idealdnf {

inline constexpr const char* kVersion = "0.1.0";

/// One Boolean value per element, stored as 0/1 bytes so rows and columns can be
/// handed around as spans.
using Bits = std::vector<std::uint8_t>;

/// Raised for problems with the data itself: unparseable cells, empty results,
/// single-class targets where two classes are required.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised for configuration problems: unknown columns, out-of-range parameters,
/// unknown config keys.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// SplitMix64 step. Used to derive independent child seeds (per fold, per trial)
/// from a parent seed.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Fisher-Yates shuffle of 0..n-1 driven by mt19937_64 with an explicit bounded
/// draw, so the permutation is identical across standard library implementations.
std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed);

/// Runs body(i) for i in [0, count) on up to `threads` workers. Results must be
/// written to pre-sized, index-addressed storage by the caller. The first
/// exception thrown by any task is rethrown after all workers join.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body);

}  // namespace idealdnf

#include "idealdnf/detail/parallel.hpp"
