#include "idealdnf/ideal.hpp"

#include <algorithm>

namespace idealdnf {

namespace {

void check_feature_set(const BooleanDataset& bd, const FeatureSet& fs) {
    if (fs.size() > kMaxTypeBits) throw std::invalid_argument("feature set larger than 64 features");
    for (auto i : fs.indices)
        if (i >= bd.features()) throw std::invalid_argument("feature index out of range");
}

}  // namespace

TypeTable::TypeTable(FeatureSet features, std::unordered_map<TypeKey, TypeStats> entries, std::size_t total_rows)
    : features_(std::move(features)), entries_(std::move(entries)), total_rows_(total_rows) {}

std::vector<std::pair<TypeKey, TypeStats>> TypeTable::sorted_entries() const {
    std::vector<std::pair<TypeKey, TypeStats>> out(entries_.begin(), entries_.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

TypeKey type_of(const BooleanDataset& bd, std::size_t r, const FeatureSet& fs) {
    const auto row = bd.row(r);
    TypeKey key = 0;
    for (std::size_t i = 0; i < fs.indices.size(); ++i) key |= TypeKey{row[fs.indices[i]]} << i;
    return key;
}

Bits project(std::span<const std::uint8_t> row, const FeatureSet& fs) {
    Bits out(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) out[i] = row[fs.indices.at(i)];
    return out;
}

TypeTable build_type_table(const BooleanDataset& bd, const FeatureSet& fs, unsigned threads) {
    if (bd.rows() == 0) throw DataError("cannot build a type table from an empty dataset");
    check_feature_set(bd, fs);

    const std::size_t shards = std::max<std::size_t>(1, std::min<std::size_t>(threads, bd.rows() / 4096 + 1));
    std::vector<std::unordered_map<TypeKey, TypeStats>> partial(shards);
    const std::size_t chunk = (bd.rows() + shards - 1) / shards;
    parallel_for(shards, threads, [&](std::size_t s) {
        auto& table = partial[s];
        const std::size_t end = std::min(bd.rows(), (s + 1) * chunk);
        for (std::size_t r = s * chunk; r < end; ++r) {
            auto& stats = table[type_of(bd, r, fs)];
            ++stats.rows;
            if (bd.target(r)) ++stats.positive;
        }
    });

    auto merged = std::move(partial.front());
    for (std::size_t s = 1; s < shards; ++s) {
        for (const auto& [key, stats] : partial[s]) {
            auto& m = merged[key];
            m.rows += stats.rows;
            m.positive += stats.positive;
        }
    }
    return TypeTable(fs, std::move(merged), bd.rows());
}

DnfFormula ideal_classifier(const TypeTable& tt) {
    std::vector<std::uint64_t> minterms;
    for (const auto& [key, stats] : tt.entries())
        if (stats.majority_positive()) minterms.push_back(key);
    return DnfFormula::from_minterms(tt.feature_set().size(), minterms);
}

std::size_t misclassified(const DnfFormula& f, const BooleanDataset& bd, const FeatureSet& fs) {
    if (bd.rows() == 0) throw DataError("empirical error of an empty dataset");
    check_feature_set(bd, fs);
    if (f.vocabulary_size() != fs.size()) throw std::invalid_argument("formula vocabulary differs from the feature set");
    std::size_t wrong = 0;
    if (fs.size() <= 20) {
        const auto table = truth_table(f);
        for (std::size_t r = 0; r < bd.rows(); ++r) wrong += (table[type_of(bd, r, fs)] != 0) != bd.target(r);
    } else {
        for (std::size_t r = 0; r < bd.rows(); ++r) wrong += evaluate(f, type_of(bd, r, fs)) != bd.target(r);
    }
    return wrong;
}

double empirical_error(const DnfFormula& f, const BooleanDataset& bd, const FeatureSet& fs) {
    return static_cast<double>(misclassified(f, bd, fs)) / static_cast<double>(bd.rows());
}

double accuracy(const DnfFormula& f, const BooleanDataset& bd, const FeatureSet& fs) {
    return 1.0 - empirical_error(f, bd, fs);
}

}  // namespace idealdnf
