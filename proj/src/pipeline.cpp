#include "idealdnf/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace idealdnf {

namespace {

struct Split {
    std::vector<std::size_t> train, validation;
};

Split split_rows(std::size_t n, double validation_fraction, std::uint64_t seed) {
    auto order = shuffled_indices(n, seed);
    auto n_val = static_cast<std::size_t>(std::llround(static_cast<double>(n) * validation_fraction));
    n_val = std::clamp<std::size_t>(n_val, 1, n - 1);
    Split s;
    s.validation.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_val));
    s.train.assign(order.begin() + static_cast<std::ptrdiff_t>(n_val), order.end());
    std::sort(s.validation.begin(), s.validation.end());
    std::sort(s.train.begin(), s.train.end());
    return s;
}

struct GridCell {
    FeatureSet features;
    std::size_t correct = 0;
};

nlohmann::json feature_set_json(const FeatureSet& fs) { return {{"indices", fs.indices}, {"names", fs.names}}; }

FeatureSet feature_set_from_json(const nlohmann::json& j) {
    FeatureSet fs;
    fs.indices = j.at("indices").get<std::vector<std::size_t>>();
    fs.names = j.at("names").get<std::vector<std::string>>();
    if (fs.indices.size() != fs.names.size()) throw ConfigError("feature set indices and names differ in length");
    return fs;
}

void reject_unknown_keys(const nlohmann::json& j, const std::set<std::string>& known, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

}  // namespace

void PipelineConfig::validate() const {
    if (max_features < 1 || max_features > kMaxSimplifyVariables)
        throw ConfigError("max_features must be in [1, " + std::to_string(kMaxSimplifyVariables) + "]");
    if (!(validation_fraction > 0.0 && validation_fraction < 1.0))
        throw ConfigError("validation_fraction must be in (0, 1)");
    if (!(tolerance_points >= 0.0)) throw ConfigError("tolerance_points must be non-negative");
    if (scorers.empty()) throw ConfigError("at least one scorer is required");
}

std::string TrainedModel::formula_text() const { return render(formula, feature_set.names); }

TrainedModel train(const Dataset& d, const PipelineConfig& cfg, unsigned threads) {
    cfg.validate();
    if (d.size() < 2)
        throw DataError("training needs at least 2 rows to form training and validation parts, got " +
                        std::to_string(d.size()));
    if (d.predictors().empty()) throw DataError("dataset has no predictor attributes");

    const auto split = split_rows(d.size(), cfg.validation_fraction, cfg.seed);
    const auto train_rows = d.subset(split.train);
    const auto val_rows = d.subset(split.validation);

    const auto bmap = fit_booleanization(train_rows);
    const auto btrain = apply_booleanization(bmap, train_rows);
    const auto bval = apply_booleanization(bmap, val_rows);
    if (btrain.features() == 0) throw DataError("booleanization produced no features");

    const std::size_t max_ell = std::min(cfg.max_features, btrain.features());
    const std::size_t n_scorers = cfg.scorers.size();

    std::vector<std::vector<double>> scores(n_scorers);
    for (std::size_t s = 0; s < n_scorers; ++s) scores[s] = score_features(btrain, cfg.scorers[s], threads);

    // Grid cell (ell - 1) * n_scorers + s.
    std::vector<GridCell> grid(max_ell * n_scorers);
    parallel_for(grid.size(), threads, [&](std::size_t g) {
        const std::size_t ell = g / n_scorers + 1;
        const std::size_t s = g % n_scorers;
        auto fs = make_feature_set(btrain, top_k_indices(scores[s], ell));
        const auto formula = ideal_classifier(build_type_table(btrain, fs));
        grid[g].correct = bval.rows() - misclassified(formula, bval, fs);
        grid[g].features = std::move(fs);
    });

    TrainedModel model;
    model.target_name = d.target_name();
    model.config = cfg;
    for (std::size_t ell = 1; ell <= max_ell; ++ell) {
        std::size_t best = 0;
        for (std::size_t s = 1; s < n_scorers; ++s)
            if (grid[(ell - 1) * n_scorers + s].correct > grid[(ell - 1) * n_scorers + best].correct) best = s;
        const auto& cell = grid[(ell - 1) * n_scorers + best];
        model.records.push_back({ell, cfg.scorers[best], cell.features, cell.correct, bval.rows(),
                                 static_cast<double>(cell.correct) / static_cast<double>(bval.rows())});
    }

    // r_ell >= r* - tolerance/100, compared on counts: (best - correct) * 100 <= tolerance * n_val.
    std::size_t best_correct = 0;
    for (const auto& r : model.records) best_correct = std::max(best_correct, r.validation_correct);
    const SelectionRecord* chosen = nullptr;
    for (const auto& r : model.records) {
        const double gap = static_cast<double>(best_correct - r.validation_correct) * 100.0;
        if (gap <= cfg.tolerance_points * static_cast<double>(bval.rows())) {
            chosen = &r;
            break;
        }
    }
    model.chosen_ell = chosen->ell;

    model.booleanization = refit_booleanization(bmap, d);
    const auto bfull = apply_booleanization(model.booleanization, d);
    model.feature_set = make_feature_set(bfull, chosen->feature_set.indices);
    const auto ideal = ideal_classifier(build_type_table(bfull, model.feature_set, threads));
    model.formula = simplify(ideal);
    model.training_rows = d.size();
    model.training_accuracy = accuracy(model.formula, bfull, model.feature_set);
    return model;
}

bool predict(const TrainedModel& m, std::span<const Cell> predictors) {
    const auto bits = booleanize_row(m.booleanization, predictors);
    return evaluate(m.formula, project(bits, m.feature_set));
}

std::vector<bool> predict(const TrainedModel& m, const Dataset& d) {
    const auto bd = apply_booleanization(m.booleanization, d);
    std::vector<bool> out(bd.rows());
    for (std::size_t r = 0; r < bd.rows(); ++r) out[r] = evaluate(m.formula, type_of(bd, r, m.feature_set));
    return out;
}

std::size_t count_correct(const TrainedModel& m, const Dataset& d) {
    if (d.empty()) return 0;
    const auto bd = apply_booleanization(m.booleanization, d);
    return bd.rows() - misclassified(m.formula, bd, m.feature_set);
}

nlohmann::json to_json(const PipelineConfig& cfg) {
    std::vector<std::string> scorers;
    for (auto s : cfg.scorers) scorers.emplace_back(to_string(s));
    return {{"max_features", cfg.max_features},
            {"tolerance_points", cfg.tolerance_points},
            {"validation_fraction", cfg.validation_fraction},
            {"scorers", scorers},
            {"seed", cfg.seed}};
}

PipelineConfig pipeline_config_from_json(const nlohmann::json& j) {
    reject_unknown_keys(j, {"max_features", "tolerance_points", "validation_fraction", "scorers", "seed"}, "pipeline config");
    PipelineConfig cfg;
    try {
        if (j.contains("max_features")) cfg.max_features = j.at("max_features").get<std::size_t>();
        if (j.contains("tolerance_points")) cfg.tolerance_points = j.at("tolerance_points").get<double>();
        if (j.contains("validation_fraction")) cfg.validation_fraction = j.at("validation_fraction").get<double>();
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("scorers")) {
            cfg.scorers.clear();
            for (const auto& s : j.at("scorers")) cfg.scorers.push_back(parse_scorer(s.get<std::string>()));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("pipeline config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

nlohmann::json to_json(const TrainedModel& m) {
    nlohmann::json conj = nlohmann::json::array();
    for (const auto& c : m.formula.conjunctions()) {
        nlohmann::json lits = nlohmann::json::array();
        for (const auto& l : c.literals()) lits.push_back({{"feature", l.feature}, {"positive", l.positive}});
        conj.push_back(std::move(lits));
    }
    nlohmann::json records = nlohmann::json::array();
    for (const auto& r : m.records) {
        records.push_back({{"ell", r.ell},
                           {"scorer", std::string(to_string(r.scorer))},
                           {"feature_set", feature_set_json(r.feature_set)},
                           {"validation_correct", r.validation_correct},
                           {"validation_rows", r.validation_rows},
                           {"validation_accuracy", r.validation_accuracy}});
    }
    return {{"format", "idealdnf-model"},
            {"version", kVersion},
            {"target", m.target_name},
            {"config", to_json(m.config)},
            {"booleanization", to_json(m.booleanization)},
            {"feature_set", feature_set_json(m.feature_set)},
            {"formula", m.formula_text()},
            {"conjunctions", conj},
            {"chosen_ell", m.chosen_ell},
            {"records", records},
            {"training_rows", m.training_rows},
            {"training_accuracy", m.training_accuracy}};
}

TrainedModel model_from_json(const nlohmann::json& j) {
    try {
        if (j.at("format").get<std::string>() != "idealdnf-model") throw ConfigError("not an idealdnf model document");
        TrainedModel m;
        m.target_name = j.at("target").get<std::string>();
        m.config = pipeline_config_from_json(j.at("config"));
        m.booleanization = booleanization_from_json(j.at("booleanization"));
        m.feature_set = feature_set_from_json(j.at("feature_set"));
        for (auto i : m.feature_set.indices)
            if (i >= m.booleanization.features.size()) throw ConfigError("model feature index out of range");
        std::vector<Conjunction> conj;
        for (const auto& jc : j.at("conjunctions")) {
            std::vector<Literal> lits;
            for (const auto& jl : jc) lits.push_back({jl.at("feature").get<std::uint32_t>(), jl.at("positive").get<bool>()});
            conj.emplace_back(std::move(lits));
        }
        m.formula = DnfFormula(m.feature_set.size(), std::move(conj));
        for (const auto& jr : j.at("records")) {
            SelectionRecord r;
            r.ell = jr.at("ell").get<std::size_t>();
            r.scorer = parse_scorer(jr.at("scorer").get<std::string>());
            r.feature_set = feature_set_from_json(jr.at("feature_set"));
            r.validation_correct = jr.at("validation_correct").get<std::size_t>();
            r.validation_rows = jr.at("validation_rows").get<std::size_t>();
            r.validation_accuracy = jr.at("validation_accuracy").get<double>();
            m.records.push_back(std::move(r));
        }
        m.chosen_ell = j.at("chosen_ell").get<std::size_t>();
        m.training_rows = j.at("training_rows").get<std::size_t>();
        m.training_accuracy = j.at("training_accuracy").get<double>();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("model document: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("model document: ") + e.what());
    }
}

}  // namespace idealdnf
