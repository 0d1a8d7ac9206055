#include "idealdnf/common.hpp"

#include <limits>
#include <numeric>
#include <random>

namespace idealdnf {

namespace {

// Uniform draw from [0, bound) by rejection, bound >= 1.
std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = gen();
    while (x >= limit) x = gen();
    return x % bound;
}

}  // namespace

std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::mt19937_64 gen(seed);
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(bounded(gen, i));
        std::swap(idx[i - 1], idx[j]);
    }
    return idx;
}

}  // namespace idealdnf
