#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "idealdnf/bounds.hpp"
#include "idealdnf/pipeline.hpp"
#include "idealdnf/tabular.hpp"

namespace idealdnf::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kDataError = 3 };

struct DataConfig {
    std::string path;
    std::string target;
    std::optional<std::string> positive_label;
    std::map<std::string, AttributeKind> schema_hints;
    std::set<std::string> missing_tokens = CsvOptions::default_missing_tokens();
    std::set<std::string> drop_columns;
};

/// Everything a command needs. Read from a JSON config file, then overridden by
/// command-line flags.
struct RunConfig {
    DataConfig data;
    PipelineConfig pipeline;
    std::uint64_t seed = 0;
    std::size_t k = 10;
    BoundParams bound;
    std::string bound_which = "theorem";
    unsigned threads = 0;  // 0: all cores
    std::string out;

    unsigned worker_count() const;
};

/// Parses a config document; unknown keys raise ConfigError. Relative data paths
/// resolve against `base_dir`.
RunConfig config_from_json(const nlohmann::json& j, const std::string& base_dir = "");
nlohmann::json to_json(const RunConfig& c);

/// Loads and cleans the dataset the config points at.
Dataset load_dataset(const DataConfig& c);

/// Entry point of the idealdnf tool. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace idealdnf::cli
