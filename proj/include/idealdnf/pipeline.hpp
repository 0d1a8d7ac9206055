#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "idealdnf/booleanize.hpp"
#include "idealdnf/dnf.hpp"
#include "idealdnf/ideal.hpp"
#include "idealdnf/scoring.hpp"
#include "idealdnf/tabular.hpp"

namespace idealdnf {

struct PipelineConfig {
    std::size_t max_features = 10;
    /// Percentage points below the best validation accuracy still acceptable.
    double tolerance_points = 1.0;
    double validation_fraction = 0.30;
    std::vector<ScorerKind> scorers{std::begin(kAllScorers), std::end(kAllScorers)};
    std::uint64_t seed = 0;

    /// Throws ConfigError on out-of-range values.
    void validate() const;

    friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

/// Best result for one feature count on the inner validation split.
struct SelectionRecord {
    std::size_t ell = 0;
    ScorerKind scorer = ScorerKind::f_test;
    FeatureSet feature_set;
    std::size_t validation_correct = 0;
    std::size_t validation_rows = 0;
    double validation_accuracy = 0.0;

    friend bool operator==(const SelectionRecord&, const SelectionRecord&) = default;
};

/// Self-contained classifier: Booleanization fitted on all training rows, the
/// selected features (indices into the Booleanization's feature list) and the
/// simplified formula over them.
struct TrainedModel {
    std::string target_name;
    DnfFormula formula;
    FeatureSet feature_set;
    BooleanizationMap booleanization;
    std::vector<SelectionRecord> records;
    std::size_t chosen_ell = 0;
    std::size_t training_rows = 0;
    double training_accuracy = 0.0;
    PipelineConfig config;

    /// Formula with feature names substituted.
    std::string formula_text() const;

    friend bool operator==(const TrainedModel&, const TrainedModel&) = default;
};

/// Seeded 70/30 split, Booleanization on the training part, sweep of feature
/// counts and scorers, smallest feature count within tolerance of the best
/// validation accuracy, refit on all rows, exact simplification. The (ell, scorer)
/// grid runs on up to `threads` workers with a scheduling-independent result.
TrainedModel train(const Dataset& d, const PipelineConfig& cfg, unsigned threads = 1);

/// Predictor values in `m.booleanization.source_schema` order.
bool predict(const TrainedModel& m, std::span<const Cell> predictors);
/// Predictions for every row of `d`, whose predictors must match the model schema.
std::vector<bool> predict(const TrainedModel& m, const Dataset& d);
/// Correctly classified rows of `d`.
std::size_t count_correct(const TrainedModel& m, const Dataset& d);

nlohmann::json to_json(const PipelineConfig& cfg);
PipelineConfig pipeline_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TrainedModel& m);
TrainedModel model_from_json(const nlohmann::json& j);

}  // namespace idealdnf
