#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "idealdnf/common.hpp"
#include "idealdnf/tabular.hpp"

namespace idealdnf {

enum class FeatureKind { above_median, one_hot, passthrough };

/// A Boolean feature derived from one source attribute. Identity is
/// (source_attribute, kind, category); the threshold is re-derived on refit.
struct BooleanFeature {
    std::string source_attribute;
    FeatureKind kind = FeatureKind::above_median;
    double threshold = 0.0;  // above_median only
    std::string category;    // one_hot only

    std::string name() const;
    bool same_identity(const BooleanFeature& other) const;

    friend bool operator==(const BooleanFeature&, const BooleanFeature&) = default;
};

struct BooleanizationMap {
    /// Predictor schema the map was fitted on (target excluded), in schema order.
    std::vector<AttributeSpec> source_schema;
    std::vector<BooleanFeature> features;
    std::size_t fitted_on_rows = 0;

    std::vector<std::string> feature_names() const;

    friend bool operator==(const BooleanizationMap&, const BooleanizationMap&) = default;
};

/// Row-major Boolean matrix plus a Boolean target.
class BooleanDataset {
public:
    BooleanDataset() = default;
    BooleanDataset(std::vector<std::string> feature_names, std::size_t rows);
    BooleanDataset(std::vector<std::string> feature_names, std::vector<Bits> rows, Bits targets);

    std::size_t rows() const noexcept { return targets_.size(); }
    std::size_t features() const noexcept { return names_.size(); }
    const std::vector<std::string>& feature_names() const noexcept { return names_; }

    std::span<const std::uint8_t> row(std::size_t r) const {
        return {bits_.data() + r * names_.size(), names_.size()};
    }
    std::span<std::uint8_t> row(std::size_t r) { return {bits_.data() + r * names_.size(), names_.size()}; }
    std::uint8_t at(std::size_t r, std::size_t f) const { return bits_[r * names_.size() + f]; }
    void set(std::size_t r, std::size_t f, bool v) { bits_[r * names_.size() + f] = v ? 1 : 0; }

    Bits column(std::size_t f) const;
    const Bits& targets() const noexcept { return targets_; }
    bool target(std::size_t r) const { return targets_[r] != 0; }
    void set_target(std::size_t r, bool v) { targets_[r] = v ? 1 : 0; }

    BooleanDataset subset(const std::vector<std::size_t>& indices) const;

    friend bool operator==(const BooleanDataset&, const BooleanDataset&) = default;

private:
    std::vector<std::string> names_;
    Bits bits_;
    Bits targets_;
};

/// Median of the values (midpoint of the two middle values for even counts).
double median(std::vector<double> values);

BooleanizationMap fit_booleanization(const Dataset& d);

/// Same feature list as `m`, with every above_median threshold recomputed on `d`.
/// One-hot categories are kept as they are so feature positions stay stable.
BooleanizationMap refit_booleanization(const BooleanizationMap& m, const Dataset& d);

/// Throws ConfigError if the predictors of `d` do not match the fitted schema.
BooleanDataset apply_booleanization(const BooleanizationMap& m, const Dataset& d);

/// Booleanizes a single predictor row given in `m.source_schema` order.
Bits booleanize_row(const BooleanizationMap& m, std::span<const Cell> predictors);

nlohmann::json to_json(const BooleanizationMap& m);
BooleanizationMap booleanization_from_json(const nlohmann::json& j);

}  // namespace idealdnf
