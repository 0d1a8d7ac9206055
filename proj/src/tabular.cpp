#include "idealdnf/tabular.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace idealdnf {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::optional<double> parse_number(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

std::optional<bool> parse_truth(std::string_view s) {
    const auto t = lower(s);
    if (t == "1" || t == "true" || t == "yes" || t == "t" || t == "y") return true;
    if (t == "0" || t == "false" || t == "no" || t == "f" || t == "n") return false;
    return std::nullopt;
}

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string quote_if_needed(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos && trim(s).size() == s.size()) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string_view to_string(AttributeKind kind) {
    switch (kind) {
        case AttributeKind::numerical: return "numerical";
        case AttributeKind::categorical: return "categorical";
        case AttributeKind::boolean: return "boolean";
    }
    return "numerical";
}

AttributeKind parse_attribute_kind(std::string_view text) {
    const auto t = lower(text);
    if (t == "numerical" || t == "numeric") return AttributeKind::numerical;
    if (t == "categorical") return AttributeKind::categorical;
    if (t == "boolean" || t == "bool") return AttributeKind::boolean;
    throw ConfigError("unknown attribute kind '" + std::string(text) + "'");
}

Dataset::Dataset(std::vector<AttributeSpec> schema, std::vector<std::vector<Cell>> rows,
                 std::string target_name)
    : schema_(std::move(schema)), rows_(std::move(rows)), target_name_(std::move(target_name)) {
    std::set<std::string> seen;
    for (const auto& a : schema_) {
        if (!seen.insert(a.name).second) throw ConfigError("duplicate attribute name '" + a.name + "'");
    }
    const auto t = find(target_name_);
    if (!t) throw ConfigError("target column '" + target_name_ + "' not found");
    if (schema_[*t].kind != AttributeKind::boolean)
        throw ConfigError("target column '" + target_name_ + "' must be boolean");
    target_index_ = *t;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const auto& row = rows_[r];
        if (row.size() != schema_.size())
            throw DataError("row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                            " values, schema has " + std::to_string(schema_.size()));
        for (std::size_t c = 0; c < row.size(); ++c) {
            const auto& cell = row[c];
            if (is_missing(cell)) continue;
            const bool ok = (schema_[c].kind == AttributeKind::numerical && std::holds_alternative<double>(cell)) ||
                            (schema_[c].kind == AttributeKind::categorical && std::holds_alternative<std::string>(cell)) ||
                            (schema_[c].kind == AttributeKind::boolean && std::holds_alternative<bool>(cell));
            if (!ok)
                throw DataError("row " + std::to_string(r) + ": value of '" + schema_[c].name +
                                "' does not match its kind");
        }
    }
}

std::optional<std::size_t> Dataset::find(std::string_view name) const {
    for (std::size_t i = 0; i < schema_.size(); ++i)
        if (schema_[i].name == name) return i;
    return std::nullopt;
}

bool Dataset::target(std::size_t r) const {
    const auto& cell = rows_.at(r)[target_index_];
    if (const auto* b = std::get_if<bool>(&cell)) return *b;
    throw DataError("row " + std::to_string(r) + " has a missing target");
}

std::size_t Dataset::positive_count() const {
    std::size_t n = 0;
    for (std::size_t r = 0; r < rows_.size(); ++r) n += target(r) ? 1 : 0;
    return n;
}

std::vector<AttributeSpec> Dataset::predictors() const {
    std::vector<AttributeSpec> out;
    for (std::size_t i = 0; i < schema_.size(); ++i)
        if (i != target_index_) out.push_back(schema_[i]);
    return out;
}

Dataset Dataset::subset(const std::vector<std::size_t>& indices) const {
    std::vector<std::vector<Cell>> rows;
    rows.reserve(indices.size());
    for (auto i : indices) rows.push_back(rows_.at(i));
    return Dataset(schema_, std::move(rows), target_name_);
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;      // inside quotes
    bool was_quoted = false;  // current field started with a quote
    bool any = false;         // current record has content

    auto end_field = [&] {
        record.push_back(was_quoted ? field : std::string(trim(field)));
        field.clear();
        was_quoted = false;
    };
    auto end_record = [&] {
        end_field();
        const bool blank = record.size() == 1 && record.front().empty();
        if (!blank) records.push_back(std::move(record));
        record.clear();
        any = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (trim(field).empty()) {
                    field.clear();
                    quoted = true;
                    was_quoted = true;
                } else {
                    field += c;
                }
                any = true;
                break;
            case ',':
                end_field();
                any = true;
                break;
            case '\n':
                end_record();
                break;
            case '\r':
                break;
            default:
                if (!(was_quoted && (c == ' ' || c == '\t'))) field += c;
                any = true;
        }
    }
    if (quoted) throw DataError("unterminated quoted field in CSV");
    if (any || !field.empty() || !record.empty()) end_record();
    return records;
}

Dataset read_csv(std::string_view text, const CsvOptions& options) {
    auto records = parse_csv(text);
    if (records.empty()) throw DataError("CSV has no header row");
    const auto header = records.front();
    const std::size_t width = header.size();
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != width)
            throw DataError("CSV line " + std::to_string(r + 1) + " has " + std::to_string(records[r].size()) +
                            " fields, header has " + std::to_string(width));
    }

    const auto target_it = std::find(header.begin(), header.end(), options.target_name);
    if (target_it == header.end()) throw ConfigError("target column '" + options.target_name + "' not found");
    for (const auto& [name, kind] : options.schema_hint) {
        if (std::find(header.begin(), header.end(), name) == header.end())
            throw ConfigError("schema hint names unknown column '" + name + "'");
    }
    for (const auto& name : options.drop_columns) {
        if (std::find(header.begin(), header.end(), name) == header.end())
            throw ConfigError("drop_columns names unknown column '" + name + "'");
        if (name == options.target_name) throw ConfigError("cannot drop the target column");
    }

    auto is_missing_token = [&](const std::string& s) { return options.missing_tokens.count(s) > 0; };

    std::vector<std::size_t> kept;
    std::vector<AttributeSpec> schema;
    for (std::size_t c = 0; c < width; ++c) {
        if (options.drop_columns.count(header[c])) continue;
        AttributeSpec attr{header[c], AttributeKind::numerical};
        if (header[c] == options.target_name) {
            attr.kind = AttributeKind::boolean;
        } else if (auto hint = options.schema_hint.find(header[c]); hint != options.schema_hint.end()) {
            attr.kind = hint->second;
        } else {
            bool numeric = true;
            for (std::size_t r = 1; r < records.size() && numeric; ++r) {
                const auto& s = records[r][c];
                if (!is_missing_token(s) && !parse_number(s)) numeric = false;
            }
            attr.kind = numeric ? AttributeKind::numerical : AttributeKind::categorical;
        }
        kept.push_back(c);
        schema.push_back(std::move(attr));
    }

    // Target mapping.
    const std::size_t tcol = static_cast<std::size_t>(target_it - header.begin());
    std::set<std::string> target_values;
    for (std::size_t r = 1; r < records.size(); ++r)
        if (!is_missing_token(records[r][tcol])) target_values.insert(records[r][tcol]);
    std::optional<std::string> positive;
    if (options.positive_label) {
        positive = *options.positive_label;
    } else if (target_values.size() == 1 && parse_truth(*target_values.begin())) {
        // Constant target spelled as a truth value.
        if (*parse_truth(*target_values.begin())) positive = *target_values.begin();
    } else {
        if (target_values.size() != 2)
            throw DataError("target column '" + options.target_name + "' has " +
                            std::to_string(target_values.size()) +
                            " distinct values; declare a positive label");
        for (const auto& v : target_values)
            if (parse_truth(v) == true) positive = v;
        if (!positive)
            throw DataError("cannot tell which target value of '" + options.target_name +
                            "' is positive; declare a positive label");
    }

    std::vector<std::vector<Cell>> rows;
    rows.reserve(records.size() - 1);
    for (std::size_t r = 1; r < records.size(); ++r) {
        std::vector<Cell> row;
        row.reserve(kept.size());
        for (std::size_t k = 0; k < kept.size(); ++k) {
            const auto& s = records[r][kept[k]];
            if (is_missing_token(s)) {
                row.emplace_back(Missing{});
                continue;
            }
            if (kept[k] == tcol) {
                row.emplace_back(positive && s == *positive);
                continue;
            }
            switch (schema[k].kind) {
                case AttributeKind::numerical: {
                    auto v = parse_number(s);
                    if (!v)
                        throw DataError("line " + std::to_string(r + 1) + ": cannot parse '" + s +
                                        "' as a number in column '" + schema[k].name + "'");
                    row.emplace_back(*v);
                    break;
                }
                case AttributeKind::categorical:
                    row.emplace_back(s);
                    break;
                case AttributeKind::boolean: {
                    auto v = parse_truth(s);
                    if (!v)
                        throw DataError("line " + std::to_string(r + 1) + ": cannot parse '" + s +
                                        "' as a boolean in column '" + schema[k].name + "'");
                    row.emplace_back(*v);
                    break;
                }
            }
        }
        rows.push_back(std::move(row));
    }
    return Dataset(std::move(schema), std::move(rows), options.target_name);
}

Dataset load_csv(const std::string& path, const CsvOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return read_csv(ss.str(), options);
}

std::vector<std::vector<Cell>> read_rows(std::string_view text, const std::vector<AttributeSpec>& schema,
                                         const std::set<std::string>& missing_tokens) {
    const auto records = parse_csv(text);
    if (records.empty()) throw DataError("CSV has no header row");
    const auto& header = records.front();
    std::vector<std::size_t> cols;
    for (const auto& a : schema) {
        const auto it = std::find(header.begin(), header.end(), a.name);
        if (it == header.end()) throw ConfigError("schema mismatch: column '" + a.name + "' is missing");
        cols.push_back(static_cast<std::size_t>(it - header.begin()));
    }
    std::vector<std::vector<Cell>> rows;
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != header.size())
            throw DataError("CSV line " + std::to_string(r + 1) + " has " + std::to_string(records[r].size()) +
                            " fields, header has " + std::to_string(header.size()));
        std::vector<Cell> row;
        for (std::size_t k = 0; k < schema.size(); ++k) {
            const auto& s = records[r][cols[k]];
            if (missing_tokens.count(s)) {
                row.emplace_back(Missing{});
                continue;
            }
            switch (schema[k].kind) {
                case AttributeKind::numerical: {
                    auto v = parse_number(s);
                    if (!v)
                        throw DataError("line " + std::to_string(r + 1) + ": cannot parse '" + s +
                                        "' as a number in column '" + schema[k].name + "'");
                    row.emplace_back(*v);
                    break;
                }
                case AttributeKind::categorical:
                    row.emplace_back(s);
                    break;
                case AttributeKind::boolean: {
                    auto v = parse_truth(s);
                    if (!v)
                        throw DataError("line " + std::to_string(r + 1) + ": cannot parse '" + s +
                                        "' as a boolean in column '" + schema[k].name + "'");
                    row.emplace_back(*v);
                    break;
                }
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Dataset drop_missing(const Dataset& d, const std::set<std::string>& missing_tokens) {
    std::vector<std::size_t> keep;
    for (std::size_t r = 0; r < d.size(); ++r) {
        const auto& row = d.rows()[r];
        const bool has_missing = std::any_of(row.begin(), row.end(), [&](const Cell& c) {
            if (is_missing(c)) return true;
            const auto* s = std::get_if<std::string>(&c);
            return s && missing_tokens.count(*s) > 0;
        });
        if (!has_missing) keep.push_back(r);
    }
    if (keep.empty()) throw DataError("no rows left after removing rows with missing values");
    return d.subset(keep);
}

std::string to_csv(const Dataset& d) {
    std::string out;
    for (std::size_t c = 0; c < d.schema().size(); ++c) {
        if (c) out += ',';
        out += quote_if_needed(d.schema()[c].name);
    }
    out += '\n';
    for (const auto& row : d.rows()) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, Missing>) out += '?';
                    else if constexpr (std::is_same_v<T, double>) out += format_number(v);
                    else if constexpr (std::is_same_v<T, std::string>) out += quote_if_needed(v);
                    else out += v ? "true" : "false";
                },
                row[c]);
        }
        out += '\n';
    }
    return out;
}

CsvOptions round_trip_options(const Dataset& d) {
    CsvOptions o;
    o.target_name = d.target_name();
    o.positive_label = "true";
    o.missing_tokens = {"?"};
    for (const auto& a : d.schema())
        if (a.name != d.target_name()) o.schema_hint[a.name] = a.kind;
    return o;
}

}  // namespace idealdnf
