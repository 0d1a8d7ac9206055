#include "idealdnf/evaluation.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace idealdnf {

namespace {

struct FoldResult {
    FoldSummary summary;
    double seconds = 0.0;
};

FoldResult run_fold(const Dataset& d, const std::vector<std::size_t>& test, const PipelineConfig& cfg,
                    std::uint64_t inner_seed) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::uint8_t> in_test(d.size(), 0);
    for (auto i : test) in_test[i] = 1;
    std::vector<std::size_t> train_idx;
    train_idx.reserve(d.size() - test.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        if (!in_test[i]) train_idx.push_back(i);

    auto inner = cfg;
    inner.seed = inner_seed;
    const auto model = train(d.subset(train_idx), inner, 1);

    FoldResult out;
    out.summary.formula = model.formula_text();
    out.summary.features = model.feature_set.names;
    out.summary.chosen_ell = model.chosen_ell;
    out.summary.test_rows = test.size();
    out.summary.correct = count_correct(model, d.subset(test));
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

CvReport assemble(std::string protocol, std::size_t k, std::uint64_t seed, std::vector<FoldResult> results) {
    CvReport r;
    r.protocol = std::move(protocol);
    r.k = k;
    r.seed = seed;
    for (auto& f : results) {
        r.fold_accuracies.push_back(f.summary.test_rows
                                        ? static_cast<double>(f.summary.correct) / static_cast<double>(f.summary.test_rows)
                                        : 0.0);
        r.runtime_per_fold.push_back(f.seconds);
        r.folds.push_back(std::move(f.summary));
    }
    r.mean = mean_of(r.fold_accuracies);
    return r;
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

}  // namespace

double CvReport::mean_selected_features() const {
    if (folds.empty()) return 0.0;
    double s = 0.0;
    for (const auto& f : folds) s += static_cast<double>(f.features.size());
    return s / static_cast<double>(folds.size());
}

double mean_of(const std::vector<double>& values) {
    if (values.empty()) return 0.0;
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double sample_std(const std::vector<double>& values) {
    if (values.size() < 2) return 0.0;
    const double m = mean_of(values);
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

std::vector<std::vector<std::size_t>> k_fold_partition(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("k-fold cross-validation needs k >= 2");
    if (n < k) throw std::invalid_argument("k = " + std::to_string(k) + " exceeds the row count " + std::to_string(n));
    const auto order = shuffled_indices(n, seed);
    std::vector<std::vector<std::size_t>> folds(k);
    std::size_t pos = 0;
    for (std::size_t f = 0; f < k; ++f) {
        const std::size_t size = n / k + (f < n % k ? 1 : 0);
        folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                        order.begin() + static_cast<std::ptrdiff_t>(pos + size));
        std::sort(folds[f].begin(), folds[f].end());
        pos += size;
    }
    return folds;
}

CvReport k_fold_cv(const Dataset& d, std::size_t k, const PipelineConfig& cfg, std::uint64_t seed, unsigned threads) {
    cfg.validate();
    const auto folds = k_fold_partition(d.size(), k, seed);
    std::vector<FoldResult> results(k);
    parallel_for(k, threads, [&](std::size_t f) { results[f] = run_fold(d, folds[f], cfg, mix_seed(seed, f)); });
    auto report = assemble("k_fold", k, seed, std::move(results));
    report.std = sample_std(report.fold_accuracies);
    return report;
}

CvReport leave_one_out(const Dataset& d, const PipelineConfig& cfg, unsigned threads) {
    cfg.validate();
    if (d.size() < 2) throw std::invalid_argument("leave-one-out needs at least 2 rows");
    std::vector<FoldResult> results(d.size());
    parallel_for(d.size(), threads, [&](std::size_t i) { results[i] = run_fold(d, {i}, cfg, mix_seed(cfg.seed, i)); });
    return assemble("leave_one_out", d.size(), cfg.seed, std::move(results));
}

nlohmann::json to_json(const CvReport& r, bool include_timings) {
    nlohmann::json folds = nlohmann::json::array();
    for (std::size_t i = 0; i < r.folds.size(); ++i) {
        const auto& f = r.folds[i];
        nlohmann::json jf = {{"fold", i},
                             {"accuracy", r.fold_accuracies[i]},
                             {"test_rows", f.test_rows},
                             {"correct", f.correct},
                             {"chosen_ell", f.chosen_ell},
                             {"features", f.features},
                             {"formula", f.formula}};
        if (include_timings) jf["runtime_seconds"] = r.runtime_per_fold[i];
        folds.push_back(std::move(jf));
    }
    return {{"protocol", r.protocol},
            {"k", r.k},
            {"seed", r.seed},
            {"fold_accuracies", r.fold_accuracies},
            {"mean", r.mean},
            {"std", r.std ? nlohmann::json(*r.std) : nlohmann::json(nullptr)},
            {"mean_selected_features", r.mean_selected_features()},
            {"folds", folds}};
}

std::string to_text(const CvReport& r) {
    std::ostringstream out;
    out << (r.protocol == "leave_one_out" ? "leave-one-out" : std::to_string(r.k) + "-fold") << " cross-validation, "
        << r.folds.size() << " folds, seed " << r.seed << "\n";
    for (std::size_t i = 0; i < r.folds.size(); ++i) {
        const auto& f = r.folds[i];
        out << "  fold " << i << ": accuracy " << fixed(100.0 * r.fold_accuracies[i], 1) << "% (" << f.correct << "/"
            << f.test_rows << "), ell " << f.chosen_ell << ", " << fixed(r.runtime_per_fold[i], 2) << " s: " << f.formula
            << "\n";
    }
    out << "mean accuracy " << fixed(100.0 * r.mean, 1) << "%";
    if (r.std) out << ", std " << fixed(100.0 * *r.std, 1) << "%";
    out << ", mean selected features " << fixed(r.mean_selected_features(), 1) << "\n";
    return out.str();
}

}  // namespace idealdnf
