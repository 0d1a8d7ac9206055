#include "idealdnf/booleanize.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace idealdnf {

namespace {

std::string_view kind_name(FeatureKind k) {
    switch (k) {
        case FeatureKind::above_median: return "above_median";
        case FeatureKind::one_hot: return "one_hot";
        case FeatureKind::passthrough: return "passthrough";
    }
    return "above_median";
}

FeatureKind parse_kind(const std::string& s) {
    if (s == "above_median") return FeatureKind::above_median;
    if (s == "one_hot") return FeatureKind::one_hot;
    if (s == "passthrough") return FeatureKind::passthrough;
    throw ConfigError("unknown feature kind '" + s + "'");
}

/// Column positions in `d` of every attribute of `schema`, checking kinds.
std::vector<std::size_t> match_schema(const std::vector<AttributeSpec>& schema, const Dataset& d) {
    std::vector<std::size_t> cols;
    cols.reserve(schema.size());
    for (const auto& a : schema) {
        const auto pos = d.find(a.name);
        if (!pos) throw ConfigError("schema mismatch: attribute '" + a.name + "' is missing");
        if (d.schema()[*pos].kind != a.kind)
            throw ConfigError("schema mismatch: attribute '" + a.name + "' is " +
                              std::string(to_string(d.schema()[*pos].kind)) + ", expected " +
                              std::string(to_string(a.kind)));
        cols.push_back(*pos);
    }
    return cols;
}

bool feature_value(const BooleanFeature& f, const Cell& cell) {
    if (is_missing(cell)) throw DataError("cannot booleanize a missing value of '" + f.source_attribute + "'");
    switch (f.kind) {
        case FeatureKind::above_median: return std::get<double>(cell) > f.threshold;
        case FeatureKind::one_hot: return std::get<std::string>(cell) == f.category;
        case FeatureKind::passthrough: return std::get<bool>(cell);
    }
    return false;
}

std::vector<double> numeric_column(const Dataset& d, std::size_t col) {
    std::vector<double> values;
    values.reserve(d.size());
    for (const auto& row : d.rows()) {
        if (is_missing(row[col])) continue;
        values.push_back(std::get<double>(row[col]));
    }
    return values;
}

}  // namespace

std::string BooleanFeature::name() const {
    switch (kind) {
        case FeatureKind::above_median: return source_attribute + "_above_median";
        case FeatureKind::one_hot: return source_attribute + "_" + category;
        case FeatureKind::passthrough: return source_attribute;
    }
    return source_attribute;
}

bool BooleanFeature::same_identity(const BooleanFeature& other) const {
    return source_attribute == other.source_attribute && kind == other.kind &&
           (kind != FeatureKind::one_hot || category == other.category);
}

std::vector<std::string> BooleanizationMap::feature_names() const {
    std::vector<std::string> names;
    names.reserve(features.size());
    for (const auto& f : features) names.push_back(f.name());
    return names;
}

BooleanDataset::BooleanDataset(std::vector<std::string> feature_names, std::size_t rows)
    : names_(std::move(feature_names)), bits_(rows * names_.size(), 0), targets_(rows, 0) {}

BooleanDataset::BooleanDataset(std::vector<std::string> feature_names, std::vector<Bits> rows, Bits targets)
    : names_(std::move(feature_names)), targets_(std::move(targets)) {
    if (rows.size() != targets_.size()) throw std::invalid_argument("row count and target count differ");
    bits_.reserve(rows.size() * names_.size());
    for (const auto& r : rows) {
        if (r.size() != names_.size()) throw std::invalid_argument("row length differs from feature count");
        for (auto b : r) bits_.push_back(b ? 1 : 0);
    }
    for (auto& t : targets_) t = t ? 1 : 0;
}

Bits BooleanDataset::column(std::size_t f) const {
    if (f >= features()) throw std::out_of_range("feature index out of range");
    Bits col(rows());
    for (std::size_t r = 0; r < rows(); ++r) col[r] = at(r, f);
    return col;
}

BooleanDataset BooleanDataset::subset(const std::vector<std::size_t>& indices) const {
    BooleanDataset out(names_, indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const auto src = row(indices[i]);
        std::copy(src.begin(), src.end(), out.row(i).begin());
        out.targets_[i] = targets_.at(indices[i]);
    }
    return out;
}

double median(std::vector<double> values) {
    if (values.empty()) throw DataError("median of an empty column");
    const auto n = values.size();
    const auto mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(values.begin(), mid, values.end());
    if (n % 2 == 1) return *mid;
    const double upper = *mid;
    const double lower = *std::max_element(values.begin(), mid);
    return lower + (upper - lower) / 2.0;
}

BooleanizationMap fit_booleanization(const Dataset& d) {
    if (d.empty()) throw DataError("cannot fit a booleanization on an empty dataset");
    BooleanizationMap m;
    m.source_schema = d.predictors();
    m.fitted_on_rows = d.size();
    for (const auto& a : m.source_schema) {
        const auto col = *d.find(a.name);
        switch (a.kind) {
            case AttributeKind::numerical: {
                auto values = numeric_column(d, col);
                const double threshold = values.empty() ? 0.0 : median(std::move(values));
                m.features.push_back({a.name, FeatureKind::above_median, threshold, {}});
                break;
            }
            case AttributeKind::categorical: {
                std::set<std::string> categories;
                for (const auto& row : d.rows())
                    if (const auto* s = std::get_if<std::string>(&row[col])) categories.insert(*s);
                for (const auto& c : categories) m.features.push_back({a.name, FeatureKind::one_hot, 0.0, c});
                break;
            }
            case AttributeKind::boolean:
                m.features.push_back({a.name, FeatureKind::passthrough, 0.0, {}});
                break;
        }
    }
    return m;
}

BooleanizationMap refit_booleanization(const BooleanizationMap& m, const Dataset& d) {
    if (d.empty()) throw DataError("cannot refit a booleanization on an empty dataset");
    match_schema(m.source_schema, d);
    BooleanizationMap out = m;
    out.fitted_on_rows = d.size();
    std::map<std::string, double> thresholds;
    for (auto& f : out.features) {
        if (f.kind != FeatureKind::above_median) continue;
        auto it = thresholds.find(f.source_attribute);
        if (it == thresholds.end()) {
            auto values = numeric_column(d, *d.find(f.source_attribute));
            const double t = values.empty() ? 0.0 : median(std::move(values));
            it = thresholds.emplace(f.source_attribute, t).first;
        }
        f.threshold = it->second;
    }
    return out;
}

BooleanDataset apply_booleanization(const BooleanizationMap& m, const Dataset& d) {
    const auto cols = match_schema(m.source_schema, d);
    std::map<std::string, std::size_t> col_of;
    for (std::size_t i = 0; i < m.source_schema.size(); ++i) col_of[m.source_schema[i].name] = cols[i];

    std::vector<std::size_t> feature_col;
    feature_col.reserve(m.features.size());
    for (const auto& f : m.features) {
        const auto it = col_of.find(f.source_attribute);
        if (it == col_of.end()) throw ConfigError("feature '" + f.name() + "' refers to an unknown attribute");
        feature_col.push_back(it->second);
    }

    BooleanDataset out(m.feature_names(), d.size());
    for (std::size_t r = 0; r < d.size(); ++r) {
        const auto& row = d.rows()[r];
        for (std::size_t f = 0; f < m.features.size(); ++f) out.set(r, f, feature_value(m.features[f], row[feature_col[f]]));
        out.set_target(r, d.target(r));
    }
    return out;
}

Bits booleanize_row(const BooleanizationMap& m, std::span<const Cell> predictors) {
    if (predictors.size() != m.source_schema.size())
        throw ConfigError("schema mismatch: expected " + std::to_string(m.source_schema.size()) + " predictor values, got " +
                          std::to_string(predictors.size()));
    std::map<std::string, std::size_t> col_of;
    for (std::size_t i = 0; i < m.source_schema.size(); ++i) col_of[m.source_schema[i].name] = i;
    Bits bits(m.features.size());
    for (std::size_t f = 0; f < m.features.size(); ++f) {
        const auto& feature = m.features[f];
        const auto& cell = predictors[col_of.at(feature.source_attribute)];
        bits[f] = feature_value(feature, cell) ? 1 : 0;
    }
    return bits;
}

nlohmann::json to_json(const BooleanizationMap& m) {
    nlohmann::json schema = nlohmann::json::array();
    for (const auto& a : m.source_schema) schema.push_back({{"name", a.name}, {"kind", std::string(to_string(a.kind))}});
    nlohmann::json features = nlohmann::json::array();
    for (const auto& f : m.features) {
        nlohmann::json jf = {{"name", f.name()}, {"source", f.source_attribute}, {"kind", std::string(kind_name(f.kind))}};
        if (f.kind == FeatureKind::above_median) jf["threshold"] = f.threshold;
        if (f.kind == FeatureKind::one_hot) jf["category"] = f.category;
        features.push_back(std::move(jf));
    }
    return {{"source_schema", schema}, {"features", features}, {"fitted_on_rows", m.fitted_on_rows}};
}

BooleanizationMap booleanization_from_json(const nlohmann::json& j) {
    BooleanizationMap m;
    for (const auto& a : j.at("source_schema"))
        m.source_schema.push_back({a.at("name").get<std::string>(), parse_attribute_kind(a.at("kind").get<std::string>())});
    for (const auto& jf : j.at("features")) {
        BooleanFeature f;
        f.source_attribute = jf.at("source").get<std::string>();
        f.kind = parse_kind(jf.at("kind").get<std::string>());
        if (f.kind == FeatureKind::above_median) f.threshold = jf.at("threshold").get<double>();
        if (f.kind == FeatureKind::one_hot) f.category = jf.at("category").get<std::string>();
        m.features.push_back(std::move(f));
    }
    m.fitted_on_rows = j.at("fitted_on_rows").get<std::size_t>();
    return m;
}

}  // namespace idealdnf
