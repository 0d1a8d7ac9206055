#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "idealdnf/common.hpp"

namespace idealdnf {

enum class AttributeKind { numerical, categorical, boolean };

std::string_view to_string(AttributeKind kind);
AttributeKind parse_attribute_kind(std::string_view text);

struct AttributeSpec {
    std::string name;
    AttributeKind kind = AttributeKind::numerical;

    friend bool operator==(const AttributeSpec&, const AttributeSpec&) = default;
};

struct Missing {
    friend bool operator==(Missing, Missing) { return true; }
};

/// A typed cell. Numerical columns hold double, categorical columns hold the raw
/// token, boolean columns hold bool. Missing is only legal before cleaning.
using Cell = std::variant<Missing, double, std::string, bool>;

inline bool is_missing(const Cell& c) { return std::holds_alternative<Missing>(c); }

/// Immutable schema-typed table. The target is an ordinary boolean attribute of
/// the schema, named by `target_name`.
class Dataset {
public:
    Dataset(std::vector<AttributeSpec> schema, std::vector<std::vector<Cell>> rows,
            std::string target_name);

    const std::vector<AttributeSpec>& schema() const noexcept { return schema_; }
    const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
    const std::string& target_name() const noexcept { return target_name_; }
    std::size_t target_index() const noexcept { return target_index_; }
    std::size_t size() const noexcept { return rows_.size(); }
    bool empty() const noexcept { return rows_.empty(); }

    /// Position of a named attribute, or nullopt.
    std::optional<std::size_t> find(std::string_view name) const;

    /// Target of row r. Throws DataError if the target cell is missing.
    bool target(std::size_t r) const;
    std::size_t positive_count() const;

    /// Schema minus the target, in schema order.
    std::vector<AttributeSpec> predictors() const;

    /// Rows at the given positions, in the given order.
    Dataset subset(const std::vector<std::size_t>& indices) const;

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    std::vector<AttributeSpec> schema_;
    std::vector<std::vector<Cell>> rows_;
    std::string target_name_;
    std::size_t target_index_ = 0;
};

struct CsvOptions {
    std::string target_name;
    /// Target token mapped to true; every other non-missing token maps to false.
    /// When absent the target must have exactly two distinct values, one of which
    /// reads as an obvious positive (1, true, yes, t, y), or a single value that
    /// reads as true or false.
    std::optional<std::string> positive_label;
    std::map<std::string, AttributeKind> schema_hint;
    std::set<std::string> missing_tokens = default_missing_tokens();
    std::set<std::string> drop_columns;

    static std::set<std::string> default_missing_tokens() { return {"", "?", "NA", "NaN"}; }
};

/// Splits RFC-4180 style CSV text into records. Quoted fields may contain commas,
/// doubled quotes and newlines. Unquoted fields are trimmed of blanks.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

Dataset read_csv(std::string_view text, const CsvOptions& options);
Dataset load_csv(const std::string& path, const CsvOptions& options);

/// Reads rows of a CSV against a known predictor schema, matching columns by name
/// and ignoring extra columns. Missing tokens become Missing. Throws ConfigError
/// when a schema column is absent and DataError on unparseable values.
std::vector<std::vector<Cell>> read_rows(std::string_view text, const std::vector<AttributeSpec>& schema,
                                         const std::set<std::string>& missing_tokens = CsvOptions::default_missing_tokens());

/// Rows with no missing cell (Missing, or a categorical token listed in
/// `missing_tokens`), order preserved. Throws DataError when nothing survives.
Dataset drop_missing(const Dataset& d,
                     const std::set<std::string>& missing_tokens = CsvOptions::default_missing_tokens());

/// Writes the dataset back as CSV; the target is written as true/false and
/// missing cells as "?". Reading it back with `round_trip_options` reproduces
/// the dataset.
std::string to_csv(const Dataset& d);
CsvOptions round_trip_options(const Dataset& d);

}  // namespace idealdnf
