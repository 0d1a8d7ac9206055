#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "json.hpp"

#include "idealdnf/booleanize.hpp"
#include "idealdnf/dnf.hpp"
#include "idealdnf/ideal.hpp"

namespace idealdnf {

/// Packs a (tau-type, q) pair: the q bit is least significant, bit i + 1 is feature i.
constexpr std::uint64_t extended_key(TypeKey type, bool q) noexcept { return (type << 1) | (q ? 1U : 0U); }

inline constexpr std::size_t kMaxDistributionBits = 20;

/// Explicit probability of every extended type over tau plus the target.
class SyntheticDistribution {
public:
    /// `probabilities` is indexed by extended_key and has 2^(tau_size + 1) entries
    /// summing to 1 within 1e-12.
    SyntheticDistribution(std::size_t tau_size, std::vector<double> probabilities);

    std::size_t tau_size() const noexcept { return tau_size_; }
    std::size_t type_count() const noexcept { return std::size_t{1} << tau_size_; }
    const std::vector<double>& probabilities() const noexcept { return probs_; }

    double probability(TypeKey type, bool q) const;
    /// Marginal mass of a tau-type.
    double mass(TypeKey type) const { return probability(type, true) + probability(type, false); }

private:
    std::size_t tau_size_ = 0;
    std::vector<double> probs_;
};

/// Document form: {"tau_size": n, "types": [{"type": "01", "q": true, "probability": p}, ...]}.
/// Character i of "type" is feature i; absent entries have probability 0.
SyntheticDistribution distribution_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SyntheticDistribution& mu);

struct BoundParams {
    std::size_t tau_size = 0;
    double epsilon = 0.0;
    double delta = 0.0;

    /// Throws std::invalid_argument unless epsilon in (0, 1] and delta in (0, 1).
    void validate() const;
};

/// ceil(2 ln(2^(|tau|+1) / delta) / epsilon^2).
std::uint64_t theorem_sample_size(const BoundParams& p);
/// ceil(2^(2|tau|+1) ln(2^(|tau|+1) / delta) / epsilon^2).
std::uint64_t corollary_sample_size(const BoundParams& p);

/// |mu(t & q) - mu(t & ~q)|.
double epsilon_separation(const SyntheticDistribution& mu, TypeKey type);

/// Probability mass of extended types on which f disagrees with q.
double true_error(const DnfFormula& f, const SyntheticDistribution& mu);

/// Whether a tau-type belongs to the ideal classifier of mu: positive mass and
/// mu(t & q) >= mu(t & ~q).
bool ideal_includes(const SyntheticDistribution& mu, TypeKey type);
DnfFormula ideal_of_distribution(const SyntheticDistribution& mu);

/// n i.i.d. draws; features carry the tau bits, the target the q bit.
BooleanDataset sample_model(const SyntheticDistribution& mu, std::size_t n, std::uint64_t seed);

/// Fraction of trials in which the empirical ideal classifier of a size-n sample
/// agrees with the ideal classifier of mu on every epsilon-separated type. Trial t
/// uses a seed derived from (seed, t).
double monte_carlo_agreement(const SyntheticDistribution& mu, std::size_t n, std::size_t trials, double epsilon,
                             std::uint64_t seed, unsigned threads = 1);

}  // namespace idealdnf
