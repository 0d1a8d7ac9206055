#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "idealdnf/booleanize.hpp"
#include "idealdnf/dnf.hpp"
#include "idealdnf/tabular.hpp"

namespace testsupport {

using namespace idealdnf;

inline BooleanDataset random_boolean(std::size_t rows, std::size_t features, std::uint64_t seed, double p_true = 0.5) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < features; ++i) names.push_back("p" + std::to_string(i + 1));
    BooleanDataset bd(std::move(names), rows);
    std::mt19937_64 gen(seed);
    std::bernoulli_distribution coin(p_true);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t f = 0; f < features; ++f) bd.set(r, f, coin(gen));
        bd.set_target(r, coin(gen));
    }
    return bd;
}

inline FeatureSet all_features(const BooleanDataset& bd) {
    std::vector<std::size_t> idx(bd.features());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return make_feature_set(bd, idx);
}

// x1, x2 take 0/1/2 with weights .45/.10/.45, so every sizeable sample has median
// exactly 1 and "x > median" means x == 2 on any subsample. x3, x4 are uniform
// noise. The target is (x1 > median) | (x2 > median), flipped with `flip`.
inline Dataset planted_dataset(std::size_t n, double flip, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::discrete_distribution<int> level({45, 10, 45});
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::bernoulli_distribution flipper(flip);
    std::vector<AttributeSpec> schema{{"x1", AttributeKind::numerical},
                                      {"x2", AttributeKind::numerical},
                                      {"x3", AttributeKind::numerical},
                                      {"x4", AttributeKind::numerical},
                                      {"q", AttributeKind::boolean}};
    std::vector<std::vector<Cell>> rows;
    for (std::size_t r = 0; r < n; ++r) {
        const int a = level(gen), b = level(gen);
        const double c = unif(gen), d = unif(gen);
        bool q = a == 2 || b == 2;
        if (flipper(gen)) q = !q;
        rows.push_back({double(a), double(b), c, d, q});
    }
    return Dataset(schema, std::move(rows), "q");
}

// Whether f over `names` is logically x1_above_median | x2_above_median.
inline bool is_planted(const DnfFormula& f, const std::vector<std::string>& names) {
    std::vector<Conjunction> terms;
    for (std::uint32_t i = 0; i < names.size(); ++i)
        if (names[i] == "x1_above_median" || names[i] == "x2_above_median") terms.emplace_back(std::vector<Literal>{{i, true}});
    if (terms.size() != 2) return false;
    return equivalent(f, DnfFormula(names.size(), terms));
}

inline Dataset constant_dataset(std::size_t n, bool value, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unif(0.0, 10.0);
    std::vector<AttributeSpec> schema{{"a", AttributeKind::numerical}, {"b", AttributeKind::numerical},
                                      {"q", AttributeKind::boolean}};
    std::vector<std::vector<Cell>> rows;
    for (std::size_t r = 0; r < n; ++r) rows.push_back({unif(gen), unif(gen), value});
    return Dataset(schema, std::move(rows), "q");
}

}  // namespace testsupport
