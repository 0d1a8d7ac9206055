#include "doctest.h"

#include "idealdnf/pipeline.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace idealdnf;

namespace {

const TrainedModel& planted_model() {
    static const TrainedModel m = train(testsupport::planted_dataset(5000, 0.0, 1), PipelineConfig{});
    return m;
}

// a xor b on the three realized types; (a, b) = (T, T) never occurs.
Dataset xor_without_both() {
    std::vector<std::vector<Cell>> rows;
    for (int i = 0; i < 30; ++i) {
        rows.push_back({false, false, false});
        rows.push_back({true, false, true});
        rows.push_back({false, true, true});
    }
    return Dataset({{"a", AttributeKind::boolean}, {"b", AttributeKind::boolean}, {"q", AttributeKind::boolean}},
                   rows, "q");
}

}  // namespace

TEST_CASE("planted formula is recovered exactly") {
    const auto& m = planted_model();
    CHECK(m.chosen_ell <= 2);
    CHECK(testsupport::is_planted(m.formula, m.feature_set.names));
    CHECK(m.records[m.chosen_ell - 1].validation_accuracy == 1.0);
    CHECK(m.training_accuracy == 1.0);
    CHECK(m.formula_text() == "x1_above_median | x2_above_median");
}

TEST_CASE("constant target gives TRUE or FALSE") {
    const auto t = train(testsupport::constant_dataset(40, true, 2), PipelineConfig{});
    CHECK(t.formula.is_true());
    CHECK(t.formula_text() == "TRUE");
    CHECK(t.training_accuracy == 1.0);
    const auto f = train(testsupport::constant_dataset(40, false, 2), PipelineConfig{});
    CHECK(f.formula.is_false());
    CHECK(f.training_accuracy == 1.0);
}

TEST_CASE("too few rows is a data error") {
    CHECK_THROWS_AS(train(testsupport::constant_dataset(1, true, 2), PipelineConfig{}), DataError);
}

TEST_CASE("records, selection rule and determinism") {
    const auto d = testsupport::planted_dataset(800, 0.1, 3);
    PipelineConfig cfg;
    cfg.seed = 5;
    const auto m = train(d, cfg);
    CHECK(m.records.size() == 4);  // four predictors, one feature each
    for (std::size_t i = 0; i < m.records.size(); ++i) CHECK(m.records[i].ell == i + 1);
    CHECK(train(d, cfg) == m);
    CHECK(train(d, cfg, 4) == m);

    cfg.tolerance_points = 0.0;
    const auto strict = train(d, cfg);
    std::size_t best = 0;
    for (const auto& r : strict.records) best = std::max(best, r.validation_correct);
    CHECK(strict.records[strict.chosen_ell - 1].validation_correct == best);
    for (std::size_t i = 0; i + 1 < strict.chosen_ell; ++i) CHECK(strict.records[i].validation_correct < best);

    cfg.max_features = 2;
    CHECK(train(d, cfg).records.size() == 2);
}

TEST_CASE("final formula is error-minimal on the training rows") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        PipelineConfig cfg;
        cfg.seed = seed;
        cfg.max_features = 3;
        const auto d = testsupport::planted_dataset(300, 0.2, 10 + seed);
        const auto m = train(d, cfg);
        const auto bd = apply_booleanization(m.booleanization, d);
        CHECK(misclassified(m.formula, bd, m.feature_set) == oracle::min_errors_all_functions(bd, m.feature_set));
    }
}

TEST_CASE("predict") {
    const auto& m = planted_model();
    std::vector<Cell> row{2.0, 0.0, 0.5, 0.5};
    CHECK(predict(m, row));
    row[0] = 1.0;  // exactly at the threshold
    CHECK_FALSE(predict(m, row));
    row[1] = 1.5;
    CHECK(predict(m, row));

    const auto d = xor_without_both();
    PipelineConfig cfg;
    cfg.max_features = 2;
    const auto x = train(d, cfg);
    REQUIRE(x.feature_set.size() == 2);
    const std::vector<Cell> seen{Cell{true}, Cell{false}};
    CHECK(predict(x, seen));
    const std::vector<Cell> unseen{Cell{true}, Cell{true}};
    CHECK_FALSE(predict(x, unseen));
    const auto labels = predict(x, d);
    for (std::size_t r = 0; r < d.size(); ++r) CHECK(labels[r] == d.target(r));
    CHECK(count_correct(x, d) == d.size());
}

TEST_CASE("breast cancer held-out split") {
    CsvOptions o;
    o.target_name = "class";
    o.positive_label = "benign";
    o.drop_columns = {"sample_id"};
    const auto d = drop_missing(load_csv(IDEALDNF_DATA_DIR "/breast_cancer_wisconsin.csv", o));
    const auto order = shuffled_indices(d.size(), 7);
    const std::size_t cut = d.size() * 7 / 10;
    const auto tr = d.subset({order.begin(), order.begin() + cut});
    const auto te = d.subset({order.begin() + cut, order.end()});
    const auto m = train(tr, PipelineConfig{});
    CHECK(m.feature_set.size() <= 9);
    CHECK(double(count_correct(m, te)) / double(te.size()) >= 0.90);
}

TEST_CASE("model and config documents") {
    const auto& m = planted_model();
    CHECK(model_from_json(to_json(m)) == m);
    CHECK(model_from_json(nlohmann::json::parse(to_json(m).dump())) == m);

    PipelineConfig cfg;
    cfg.max_features = 4;
    cfg.scorers = {ScorerKind::chi2};
    CHECK(pipeline_config_from_json(to_json(cfg)) == cfg);
    CHECK_THROWS_AS(pipeline_config_from_json(nlohmann::json::parse(R"({"max_feature": 3})")), ConfigError);
    CHECK_THROWS_AS(pipeline_config_from_json(nlohmann::json::parse(R"({"max_features": 0})")), ConfigError);
    CHECK_THROWS_AS(pipeline_config_from_json(nlohmann::json::parse(R"({"validation_fraction": 1.0})")), ConfigError);
}
