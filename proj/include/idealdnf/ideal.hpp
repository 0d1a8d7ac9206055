#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "idealdnf/booleanize.hpp"
#include "idealdnf/dnf.hpp"
#include "idealdnf/scoring.hpp"

namespace idealdnf {

/// A row's type over a feature set, packed: bit i is the value of the i-th
/// selected feature.
using TypeKey = std::uint64_t;

inline constexpr std::size_t kMaxTypeBits = 64;

struct TypeStats {
    std::size_t rows = 0;      // rows realizing the type
    std::size_t positive = 0;  // of those, rows with a true target

    /// Majority rule with ties going positive, in integers.
    bool majority_positive() const noexcept { return 2 * positive >= rows; }

    friend bool operator==(const TypeStats&, const TypeStats&) = default;
};

/// Counts of every type realized in a Boolean dataset over a feature set.
class TypeTable {
public:
    TypeTable(FeatureSet features, std::unordered_map<TypeKey, TypeStats> entries, std::size_t total_rows);

    const FeatureSet& feature_set() const noexcept { return features_; }
    const std::unordered_map<TypeKey, TypeStats>& entries() const noexcept { return entries_; }
    std::size_t total_rows() const noexcept { return total_rows_; }
    std::size_t realized_types() const noexcept { return entries_.size(); }

    /// Entries sorted by key.
    std::vector<std::pair<TypeKey, TypeStats>> sorted_entries() const;

    friend bool operator==(const TypeTable&, const TypeTable&) = default;

private:
    FeatureSet features_;
    std::unordered_map<TypeKey, TypeStats> entries_;
    std::size_t total_rows_ = 0;
};

/// Type of row r of `bd` projected onto `fs`.
TypeKey type_of(const BooleanDataset& bd, std::size_t r, const FeatureSet& fs);
Bits project(std::span<const std::uint8_t> row, const FeatureSet& fs);

/// One pass over the rows with hashed type lookup. With threads > 1 the rows are
/// sharded and the per-shard counters summed; the result is identical.
TypeTable build_type_table(const BooleanDataset& bd, const FeatureSet& fs, unsigned threads = 1);

/// Disjunction of the realized types whose positive share is at least one half.
/// The vocabulary is the feature set, in feature-set order.
DnfFormula ideal_classifier(const TypeTable& tt);

/// Rows where f, evaluated on the projection onto fs, differs from the target.
std::size_t misclassified(const DnfFormula& f, const BooleanDataset& bd, const FeatureSet& fs);
double empirical_error(const DnfFormula& f, const BooleanDataset& bd, const FeatureSet& fs);
double accuracy(const DnfFormula& f, const BooleanDataset& bd, const FeatureSet& fs);

}  // namespace idealdnf
