#include "doctest.h"

#include <cmath>
#include <random>

#include "idealdnf/bounds.hpp"

using namespace idealdnf;

namespace {

SyntheticDistribution one_bit(double pq, double pnq, double npq, double npnq) {
    std::vector<double> probs(4);
    probs[extended_key(1, true)] = pq;
    probs[extended_key(1, false)] = pnq;
    probs[extended_key(0, true)] = npq;
    probs[extended_key(0, false)] = npnq;
    return SyntheticDistribution(1, probs);
}

SyntheticDistribution random_mu(std::size_t tau, std::mt19937_64& gen) {
    std::vector<double> p(std::size_t{2} << tau);
    double s = 0;
    for (auto& x : p) s += (x = std::uniform_real_distribution<double>(0, 1)(gen));
    for (auto& x : p) x /= s;
    double fix = 1.0;
    for (std::size_t i = 1; i < p.size(); ++i) fix -= p[i];
    p[0] = fix;
    return SyntheticDistribution(tau, p);
}

double pre_ceiling_theorem(const BoundParams& p) {
    return 2.0 * std::log(std::pow(2.0, double(p.tau_size + 1)) / p.delta) / (p.epsilon * p.epsilon);
}

}  // namespace

TEST_CASE("theorem sample sizes") {
    CHECK(theorem_sample_size({3, 0.05, 0.01}) == 5903);
    CHECK(theorem_sample_size({2, 0.3, 0.1}) == 98);
    const BoundParams a{4, 0.2, 0.05}, b{4, 0.1, 0.05};
    CHECK(pre_ceiling_theorem(b) == doctest::Approx(4 * pre_ceiling_theorem(a)));
    CHECK(theorem_sample_size(b) == static_cast<std::uint64_t>(std::ceil(pre_ceiling_theorem(b))));
}

TEST_CASE("corollary sample sizes") {
    CHECK(corollary_sample_size({3, 0.05, 0.01}) == 377742);
    CHECK(corollary_sample_size({0, 0.1, 0.2}) == theorem_sample_size({0, 0.1, 0.2}));
}

TEST_CASE("bounds are monotone") {
    for (std::size_t tau = 0; tau < 6; ++tau)
        for (double eps : {0.05, 0.1, 0.3})
            for (double delta : {0.01, 0.1, 0.5}) {
                const BoundParams p{tau, eps, delta};
                CHECK(theorem_sample_size({tau + 1, eps, delta}) >= theorem_sample_size(p));
                CHECK(theorem_sample_size({tau, eps * 1.5, delta}) <= theorem_sample_size(p));
                CHECK(theorem_sample_size({tau, eps, delta * 1.5}) <= theorem_sample_size(p));
                CHECK(corollary_sample_size({tau + 1, eps, delta}) >= corollary_sample_size(p));
                CHECK(corollary_sample_size({tau, eps * 1.5, delta}) <= corollary_sample_size(p));
                CHECK(corollary_sample_size(p) >= theorem_sample_size(p));
            }
}

TEST_CASE("invalid bound parameters") {
    CHECK_THROWS_AS(theorem_sample_size({2, 0.3, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(theorem_sample_size({2, 0.0, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(corollary_sample_size({2, 0.3, 0.0}), std::invalid_argument);
}

TEST_CASE("separation examples") {
    const auto mu = one_bit(0.3, 0.1, 0.3, 0.3);
    CHECK(epsilon_separation(mu, 1) == doctest::Approx(0.2));
    CHECK(epsilon_separation(mu, 0) == 0.0);
    const SyntheticDistribution uniform(2, std::vector<double>(8, 0.125));
    for (TypeKey t = 0; t < 4; ++t) CHECK(epsilon_separation(uniform, t) == 0.0);
}

TEST_CASE("true error and ideal of the one-bit example") {
    const auto mu = one_bit(0.4, 0.1, 0.2, 0.3);
    const DnfFormula p(1, {Conjunction({{0, true}})});
    CHECK(true_error(p, mu) == doctest::Approx(0.3));
    CHECK(ideal_of_distribution(mu) == p);
    CHECK(true_error(DnfFormula::falsum(1), mu) == doctest::Approx(0.6));
}

TEST_CASE("ideal of deterministic, all-positive and tied distributions") {
    const auto det = one_bit(0.5, 0.0, 0.0, 0.5);
    CHECK(true_error(ideal_of_distribution(det), det) == 0.0);

    const auto pos = one_bit(0.5, 0.0, 0.5, 0.0);
    CHECK(equivalent(ideal_of_distribution(pos), DnfFormula::verum(1)));

    const auto tie = one_bit(0.25, 0.25, 0.0, 0.5);
    CHECK(ideal_includes(tie, 1));
    CHECK_FALSE(ideal_includes(tie, 0));
}

TEST_CASE("ideal of a distribution has the least true error") {
    std::mt19937_64 gen(4);
    for (std::size_t tau = 1; tau <= 3; ++tau) {
        for (int t = 0; t < 10; ++t) {
            const auto mu = random_mu(tau, gen);
            const double best = true_error(ideal_of_distribution(mu), mu);
            const std::size_t types = std::size_t{1} << tau;
            for (std::uint64_t g = 0; g < (std::uint64_t{1} << types); ++g) {
                std::vector<std::uint64_t> on;
                for (std::uint64_t a = 0; a < types; ++a)
                    if ((g >> a) & 1U) on.push_back(a);
                CHECK(best <= true_error(DnfFormula::from_minterms(tau, on), mu) + 1e-12);
            }
        }
    }
}

TEST_CASE("sampling") {
    std::vector<double> point(8, 0.0);
    point[extended_key(2, true)] = 1.0;
    const auto bd = sample_model(SyntheticDistribution(2, point), 50, 1);
    for (std::size_t r = 0; r < bd.rows(); ++r) {
        CHECK(bd.at(r, 0) == 0);
        CHECK(bd.at(r, 1) == 1);
        CHECK(bd.target(r));
    }
    CHECK_THROWS_AS(sample_model(SyntheticDistribution(2, point), 0, 1), std::invalid_argument);
}

TEST_CASE("sample frequencies are within three standard errors") {
    std::mt19937_64 gen(12);
    const auto mu = random_mu(2, gen);
    const std::size_t n = 1000000;
    const auto bd = sample_model(mu, n, 77);
    std::vector<double> counts(8, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        TypeKey t = bd.at(r, 0) | (bd.at(r, 1) << 1);
        counts[extended_key(t, bd.target(r))] += 1;
    }
    for (std::size_t k = 0; k < 8; ++k) {
        const double p = mu.probabilities()[k];
        const double se = std::sqrt(p * (1 - p) / double(n));
        CHECK(std::abs(counts[k] / double(n) - p) <= 3 * se);
    }
}

TEST_CASE("agreement edge cases and convergence") {
    const auto det = one_bit(0.5, 0.0, 0.0, 0.5);
    CHECK(monte_carlo_agreement(det, 1000, 1, 0.1, 3) == 1.0);
    const auto weak = one_bit(0.3, 0.2, 0.2, 0.3);
    CHECK(monte_carlo_agreement(weak, 10, 50, 0.5, 3) == 1.0);

    const auto mu = one_bit(0.32, 0.18, 0.18, 0.32);
    const double small = monte_carlo_agreement(mu, 20, 400, 0.1, 5);
    const double large = monte_carlo_agreement(mu, 400, 400, 0.1, 5);
    CHECK(large >= small);
    CHECK(large >= 0.95);
    CHECK(monte_carlo_agreement(mu, 100, 200, 0.1, 5, 4) == monte_carlo_agreement(mu, 100, 200, 0.1, 5, 1));
}

TEST_CASE("distribution documents") {
    const auto mu = one_bit(0.4, 0.1, 0.2, 0.3);
    const auto back = distribution_from_json(to_json(mu));
    CHECK(back.probabilities() == mu.probabilities());
    CHECK_THROWS_AS(distribution_from_json(nlohmann::json::parse(R"({"tau_size":1,"types":[{"type":"1","q":true,"probability":0.5}]})")),
                    ConfigError);
    CHECK_THROWS_AS(distribution_from_json(nlohmann::json::parse(R"({"tau_size":1,"types":[{"type":"10","q":true,"probability":1}]})")),
                    ConfigError);
}
