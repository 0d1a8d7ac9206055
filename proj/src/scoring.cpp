#include "idealdnf/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace idealdnf {

std::string_view to_string(ScorerKind kind) {
    switch (kind) {
        case ScorerKind::f_test: return "f_test";
        case ScorerKind::mutual_info: return "mutual_info";
        case ScorerKind::chi2: return "chi2";
    }
    return "f_test";
}

ScorerKind parse_scorer(std::string_view text) {
    for (auto k : kAllScorers)
        if (to_string(k) == text) return k;
    throw ConfigError("unknown scorer '" + std::string(text) + "' (expected f_test, mutual_info or chi2)");
}

FeatureSet make_feature_set(const BooleanDataset& bd, std::vector<std::size_t> indices) {
    std::sort(indices.begin(), indices.end());
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
        throw std::invalid_argument("feature set has duplicate indices");
    FeatureSet fs;
    for (auto i : indices) {
        if (i >= bd.features()) throw std::invalid_argument("feature index out of range");
        fs.names.push_back(bd.feature_names()[i]);
    }
    fs.indices = std::move(indices);
    return fs;
}

Contingency contingency(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y) {
    if (x.size() != y.size()) throw std::invalid_argument("feature and target lengths differ");
    if (x.empty()) throw std::invalid_argument("cannot score an empty column");
    Contingency t;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i]) (y[i] ? t.x1y1 : t.x1y0)++;
        else (y[i] ? t.x0y1 : t.x0y0)++;
    }
    return t;
}

double score_chi2(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y) {
    const auto t = contingency(x, y);
    const double a = t.x1y1, b = t.x1y0, c = t.x0y1, d = t.x0y0;
    const double r1 = a + b, r0 = c + d, c1 = a + c, c0 = b + d;
    if (r1 == 0 || r0 == 0 || c1 == 0 || c0 == 0) return 0.0;
    const double n = a + b + c + d;
    const double det = a * d - b * c;
    return n * det * det / (r1 * r0 * c1 * c0);
}

double score_f_test(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y) {
    const auto t = contingency(x, y);
    const std::size_t n1 = t.x1y1 + t.x0y1, n0 = t.x1y0 + t.x0y0;
    if (n1 == 0 || n0 == 0) throw DataError("F-test needs both target classes");
    const std::size_t s1 = t.x1y1, s0 = t.x1y0;

    const bool no_within = (s1 == 0 || s1 == n1) && (s0 == 0 || s0 == n0);
    const bool no_between = s1 * n0 == s0 * n1;
    if (no_between) return 0.0;
    if (no_within) return std::numeric_limits<double>::infinity();

    const double n = static_cast<double>(n1 + n0);
    const double m1 = static_cast<double>(s1) / n1, m0 = static_cast<double>(s0) / n0;
    const double m = static_cast<double>(s1 + s0) / n;
    const double between = n1 * (m1 - m) * (m1 - m) + n0 * (m0 - m) * (m0 - m);
    const double within = static_cast<double>(s1) * (n1 - s1) / n1 + static_cast<double>(s0) * (n0 - s0) / n0;
    return between / (within / (n - 2.0));
}

double score_mutual_info(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y) {
    const auto t = contingency(x, y);
    const double n = static_cast<double>(t.total());
    const double cells[2][2] = {{static_cast<double>(t.x0y0), static_cast<double>(t.x0y1)},
                                {static_cast<double>(t.x1y0), static_cast<double>(t.x1y1)}};
    const double px[2] = {cells[0][0] + cells[0][1], cells[1][0] + cells[1][1]};
    const double py[2] = {cells[0][0] + cells[1][0], cells[0][1] + cells[1][1]};
    double mi = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (cells[i][j] == 0) continue;
            mi += cells[i][j] / n * std::log(cells[i][j] * n / (px[i] * py[j]));
        }
    return std::max(0.0, mi);
}

double score(ScorerKind kind, std::span<const std::uint8_t> x, std::span<const std::uint8_t> y) {
    switch (kind) {
        case ScorerKind::f_test: return score_f_test(x, y);
        case ScorerKind::mutual_info: return score_mutual_info(x, y);
        case ScorerKind::chi2: return score_chi2(x, y);
    }
    return 0.0;
}

std::vector<double> score_features(const BooleanDataset& bd, ScorerKind kind, unsigned threads) {
    std::vector<double> scores(bd.features(), 0.0);
    if (bd.rows() == 0) throw DataError("cannot score features of an empty dataset");
    const auto& y = bd.targets();
    const auto positives = static_cast<std::size_t>(std::count(y.begin(), y.end(), std::uint8_t{1}));
    if (positives == 0 || positives == y.size()) return scores;
    parallel_for(bd.features(), threads, [&](std::size_t f) { scores[f] = score(kind, bd.column(f), y); });
    return scores;
}

std::vector<std::size_t> top_k_indices(std::span<const double> scores, std::size_t k) {
    if (k < 1 || k > scores.size())
        throw std::invalid_argument("k = " + std::to_string(k) + " outside [1, " + std::to_string(scores.size()) + "]");
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::size_t a, std::size_t b) {
                          if (scores[a] != scores[b]) return scores[a] > scores[b];
                          return a < b;
                      });
    order.resize(k);
    std::sort(order.begin(), order.end());
    return order;
}

FeatureSet select_top_k(const BooleanDataset& bd, std::size_t k, ScorerKind kind, unsigned threads) {
    if (k < 1 || k > bd.features())
        throw std::invalid_argument("k = " + std::to_string(k) + " outside [1, " + std::to_string(bd.features()) + "]");
    const auto scores = score_features(bd, kind, threads);
    return make_feature_set(bd, top_k_indices(scores, k));
}

}  // namespace idealdnf
