#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "idealdnf/pipeline.hpp"

namespace idealdnf {

struct FoldSummary {
    std::string formula;
    std::vector<std::string> features;
    std::size_t chosen_ell = 0;
    std::size_t test_rows = 0;
    std::size_t correct = 0;

    friend bool operator==(const FoldSummary&, const FoldSummary&) = default;
};

struct CvReport {
    std::string protocol;  // "k_fold" or "leave_one_out"
    std::size_t k = 0;
    std::uint64_t seed = 0;
    std::vector<double> fold_accuracies;
    double mean = 0.0;
    /// Sample standard deviation (n - 1 denominator); absent for leave-one-out.
    std::optional<double> std;
    std::vector<FoldSummary> folds;
    std::vector<double> runtime_per_fold;  // seconds

    double mean_selected_features() const;
};

/// Mean and sample standard deviation of a list of fold accuracies.
double mean_of(const std::vector<double>& values);
double sample_std(const std::vector<double>& values);

/// Seeded shuffle, contiguous folds of floor(n/k) or ceil(n/k) rows. Each fold
/// trains on its complement with an inner seed derived from (seed, fold index).
CvReport k_fold_cv(const Dataset& d, std::size_t k, const PipelineConfig& cfg, std::uint64_t seed,
                   unsigned threads = 1);

/// One model per held-out row; inner seeds derived from (cfg.seed, row index).
CvReport leave_one_out(const Dataset& d, const PipelineConfig& cfg, unsigned threads = 1);

/// Test-fold row positions of a k-fold split, fold by fold.
std::vector<std::vector<std::size_t>> k_fold_partition(std::size_t n, std::size_t k, std::uint64_t seed);

/// Structured report. Timings are included only when `include_timings` is set, so
/// that repeated runs produce identical documents by default.
nlohmann::json to_json(const CvReport& r, bool include_timings = false);
std::string to_text(const CvReport& r);

}  // namespace idealdnf
