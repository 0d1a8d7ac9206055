#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "idealdnf/booleanize.hpp"

namespace idealdnf {

/// Univariate scorers, in canonical tie-break order.
enum class ScorerKind { f_test, mutual_info, chi2 };

inline constexpr ScorerKind kAllScorers[] = {ScorerKind::f_test, ScorerKind::mutual_info, ScorerKind::chi2};

std::string_view to_string(ScorerKind kind);
ScorerKind parse_scorer(std::string_view text);

/// Selected feature positions into a BooleanDataset, strictly increasing.
struct FeatureSet {
    std::vector<std::size_t> indices;
    std::vector<std::string> names;

    std::size_t size() const noexcept { return indices.size(); }

    friend bool operator==(const FeatureSet&, const FeatureSet&) = default;
};

/// Sorts the indices and resolves names against `bd`.
FeatureSet make_feature_set(const BooleanDataset& bd, std::vector<std::size_t> indices);

/// 2x2 contingency counts of a Boolean feature x against a Boolean target y.
struct Contingency {
    std::size_t x1y1 = 0, x1y0 = 0, x0y1 = 0, x0y0 = 0;

    std::size_t total() const noexcept { return x1y1 + x1y0 + x0y1 + x0y0; }
};

Contingency contingency(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y);

/// Pearson chi-squared of the full 2x2 table, no continuity correction. Zero when
/// any marginal is zero.
double score_chi2(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y);

/// One-way ANOVA F of x (as 0/1) grouped by y. Returns +infinity for perfect
/// separation (zero within-group, positive between-group variance) and 0 when both
/// are zero. Throws DataError when y has a single class.
double score_f_test(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y);

/// Plug-in mutual information of the empirical joint of (x, y), in nats.
double score_mutual_info(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y);

double score(ScorerKind kind, std::span<const std::uint8_t> x, std::span<const std::uint8_t> y);

/// Scores of every feature of `bd`. With a single-class target every feature
/// scores 0 under every scorer.
std::vector<double> score_features(const BooleanDataset& bd, ScorerKind kind, unsigned threads = 1);

/// The k best features by score, ties broken by lower index.
FeatureSet select_top_k(const BooleanDataset& bd, std::size_t k, ScorerKind kind, unsigned threads = 1);

/// Same selection from precomputed scores.
std::vector<std::size_t> top_k_indices(std::span<const double> scores, std::size_t k);

}  // namespace idealdnf
