#include "idealdnf/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace idealdnf {

namespace {

double ln_term(const BoundParams& p) {
    // ln(2^(|tau|+1) / delta) without forming the power.
    return static_cast<double>(p.tau_size + 1) * std::log(2.0) - std::log(p.delta);
}

std::uint64_t ceil_count(double v) {
    // Guard against values a rounding error above an integer.
    const double r = std::round(v);
    if (std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v))) return static_cast<std::uint64_t>(r);
    return static_cast<std::uint64_t>(std::ceil(v));
}

double unit_draw(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

}  // namespace

SyntheticDistribution::SyntheticDistribution(std::size_t tau_size, std::vector<double> probabilities)
    : tau_size_(tau_size), probs_(std::move(probabilities)) {
    if (tau_size_ > kMaxDistributionBits) throw std::invalid_argument("tau_size too large for an explicit distribution");
    if (probs_.size() != (std::size_t{2} << tau_size_))
        throw std::invalid_argument("distribution needs 2^(tau_size+1) probabilities");
    double total = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0)) throw std::invalid_argument("probabilities must be non-negative");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("probabilities must sum to 1");
}

double SyntheticDistribution::probability(TypeKey type, bool q) const {
    if (type >= type_count()) throw std::invalid_argument("type key outside the vocabulary");
    return probs_[extended_key(type, q)];
}

SyntheticDistribution distribution_from_json(const nlohmann::json& j) {
    try {
        const auto tau = j.at("tau_size").get<std::size_t>();
        if (tau > kMaxDistributionBits) throw ConfigError("tau_size too large for an explicit distribution");
        std::vector<double> probs(std::size_t{2} << tau, 0.0);
        std::vector<std::uint8_t> seen(probs.size(), 0);
        for (const auto& e : j.at("types")) {
            const auto bits = e.at("type").get<std::string>();
            if (bits.size() != tau) throw ConfigError("type '" + bits + "' does not have tau_size bits");
            TypeKey t = 0;
            for (std::size_t i = 0; i < tau; ++i) {
                if (bits[i] != '0' && bits[i] != '1') throw ConfigError("type '" + bits + "' is not a bit pattern");
                if (bits[i] == '1') t |= TypeKey{1} << i;
            }
            const auto key = extended_key(t, e.at("q").get<bool>());
            if (seen[key]) throw ConfigError("extended type '" + bits + "' listed twice");
            seen[key] = 1;
            probs[key] = e.at("probability").get<double>();
        }
        return SyntheticDistribution(tau, std::move(probs));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("distribution document: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("distribution document: ") + e.what());
    }
}

nlohmann::json to_json(const SyntheticDistribution& mu) {
    nlohmann::json types = nlohmann::json::array();
    for (TypeKey t = 0; t < mu.type_count(); ++t) {
        std::string bits(mu.tau_size(), '0');
        for (std::size_t i = 0; i < mu.tau_size(); ++i)
            if ((t >> i) & 1U) bits[i] = '1';
        for (bool q : {true, false}) {
            const double p = mu.probability(t, q);
            if (p > 0.0) types.push_back({{"type", bits}, {"q", q}, {"probability", p}});
        }
    }
    return {{"tau_size", mu.tau_size()}, {"types", types}};
}

void BoundParams::validate() const {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must be in (0, 1]");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must be in (0, 1)");
    if (tau_size > 62) throw std::invalid_argument("tau_size must be at most 62");
}

std::uint64_t theorem_sample_size(const BoundParams& p) {
    p.validate();
    return ceil_count(2.0 * ln_term(p) / (p.epsilon * p.epsilon));
}

std::uint64_t corollary_sample_size(const BoundParams& p) {
    p.validate();
    // eta = epsilon / 2^|tau| substituted into the theorem bound.
    const double scale = std::ldexp(1.0, static_cast<int>(2 * p.tau_size + 1));
    return ceil_count(scale * ln_term(p) / (p.epsilon * p.epsilon));
}

double epsilon_separation(const SyntheticDistribution& mu, TypeKey type) {
    return std::abs(mu.probability(type, true) - mu.probability(type, false));
}

double true_error(const DnfFormula& f, const SyntheticDistribution& mu) {
    if (f.vocabulary_size() != mu.tau_size()) throw std::invalid_argument("formula vocabulary differs from tau_size");
    const auto table = truth_table(f);
    double err = 0.0;
    for (TypeKey t = 0; t < mu.type_count(); ++t) err += mu.probability(t, table[t] == 0);
    return err;
}

bool ideal_includes(const SyntheticDistribution& mu, TypeKey type) {
    return mu.mass(type) > 0.0 && mu.probability(type, true) >= mu.probability(type, false);
}

DnfFormula ideal_of_distribution(const SyntheticDistribution& mu) {
    std::vector<std::uint64_t> minterms;
    for (TypeKey t = 0; t < mu.type_count(); ++t)
        if (ideal_includes(mu, t)) minterms.push_back(t);
    return DnfFormula::from_minterms(mu.tau_size(), minterms);
}

BooleanDataset sample_model(const SyntheticDistribution& mu, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("sample size must be at least 1");
    std::vector<double> cumulative(mu.probabilities().size());
    std::partial_sum(mu.probabilities().begin(), mu.probabilities().end(), cumulative.begin());
    // Last key with positive mass absorbs rounding at the top end.
    std::size_t last = 0;
    for (std::size_t k = 0; k < cumulative.size(); ++k)
        if (mu.probabilities()[k] > 0.0) last = k;

    std::vector<std::string> names;
    for (std::size_t i = 0; i < mu.tau_size(); ++i) names.push_back("p" + std::to_string(i + 1));
    BooleanDataset bd(std::move(names), n);
    std::mt19937_64 gen(seed);
    for (std::size_t r = 0; r < n; ++r) {
        const double u = unit_draw(gen) * cumulative.back();
        auto key = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        key = std::min(key, last);
        const TypeKey type = key >> 1;
        for (std::size_t i = 0; i < mu.tau_size(); ++i) bd.set(r, i, (type >> i) & 1U);
        bd.set_target(r, key & 1U);
    }
    return bd;
}

double monte_carlo_agreement(const SyntheticDistribution& mu, std::size_t n, std::size_t trials, double epsilon,
                             std::uint64_t seed, unsigned threads) {
    if (trials == 0) throw std::invalid_argument("at least one trial is required");
    std::vector<TypeKey> separated;
    for (TypeKey t = 0; t < mu.type_count(); ++t)
        if (epsilon_separation(mu, t) >= epsilon) separated.push_back(t);

    FeatureSet all;
    for (std::size_t i = 0; i < mu.tau_size(); ++i) {
        all.indices.push_back(i);
        all.names.push_back("p" + std::to_string(i + 1));
    }

    std::vector<std::uint8_t> agreed(trials, 0);
    parallel_for(trials, threads, [&](std::size_t trial) {
        if (separated.empty()) {
            agreed[trial] = 1;
            return;
        }
        const auto sample = sample_model(mu, n, mix_seed(seed, trial));
        const auto table = build_type_table(sample, all);
        bool ok = true;
        for (auto t : separated) {
            const auto it = table.entries().find(t);
            const bool empirical = it != table.entries().end() && it->second.majority_positive();
            if (empirical != ideal_includes(mu, t)) {
                ok = false;
                break;
            }
        }
        agreed[trial] = ok ? 1 : 0;
    });
    const auto hits = std::count(agreed.begin(), agreed.end(), std::uint8_t{1});
    return static_cast<double>(hits) / static_cast<double>(trials);
}

}  // namespace idealdnf
