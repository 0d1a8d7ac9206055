#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "idealdnf/common.hpp"

namespace idealdnf {

struct Literal {
    std::uint32_t feature = 0;
    bool positive = true;

    /// Feature index first; the positive literal sorts before the negative one.
    friend auto operator<=>(const Literal& a, const Literal& b) {
        if (a.feature != b.feature) return a.feature <=> b.feature;
        return b.positive <=> a.positive;
    }
    friend bool operator==(const Literal&, const Literal&) = default;
};

/// Conjunction of literals over distinct features, kept sorted. Empty means TRUE.
class Conjunction {
public:
    Conjunction() = default;
    /// Sorts, drops exact duplicates, rejects p & ~p with std::invalid_argument.
    explicit Conjunction(std::vector<Literal> literals);

    const std::vector<Literal>& literals() const noexcept { return literals_; }
    std::size_t size() const noexcept { return literals_.size(); }
    bool empty() const noexcept { return literals_.empty(); }

    bool satisfied_by(std::span<const std::uint8_t> assignment) const;
    /// Bit i of `assignment` is the value of feature i.
    bool satisfied_by(std::uint64_t assignment) const;

    /// Canonical order: fewer literals first, then lexicographic literal sequence.
    friend auto operator<=>(const Conjunction& a, const Conjunction& b) {
        if (a.size() != b.size()) return a.size() <=> b.size();
        return std::lexicographical_compare_three_way(a.literals_.begin(), a.literals_.end(),
                                                      b.literals_.begin(), b.literals_.end());
    }
    friend bool operator==(const Conjunction&, const Conjunction&) = default;

private:
    std::vector<Literal> literals_;
};

/// Disjunction of conjunctions in canonical form: sorted, no duplicates. No
/// conjunctions means FALSE; a single empty conjunction means TRUE.
class DnfFormula {
public:
    DnfFormula() = default;
    DnfFormula(std::size_t vocabulary_size, std::vector<Conjunction> conjunctions);

    static DnfFormula falsum(std::size_t vocabulary_size) { return DnfFormula(vocabulary_size, {}); }
    static DnfFormula verum(std::size_t vocabulary_size) { return DnfFormula(vocabulary_size, {Conjunction{}}); }
    /// Disjunction of full types; bit i of each minterm is the value of feature i.
    static DnfFormula from_minterms(std::size_t vocabulary_size, std::span<const std::uint64_t> minterms);

    std::size_t vocabulary_size() const noexcept { return vocabulary_size_; }
    const std::vector<Conjunction>& conjunctions() const noexcept { return conjunctions_; }
    std::size_t literal_count() const noexcept;

    bool is_false() const noexcept { return conjunctions_.empty(); }
    bool is_true() const noexcept { return conjunctions_.size() == 1 && conjunctions_.front().empty(); }

    friend bool operator==(const DnfFormula&, const DnfFormula&) = default;

private:
    std::size_t vocabulary_size_ = 0;
    std::vector<Conjunction> conjunctions_;
};

bool evaluate(const DnfFormula& f, std::span<const std::uint8_t> assignment);
bool evaluate(const DnfFormula& f, std::uint64_t assignment);

inline constexpr std::size_t kMaxTruthTableVariables = 24;
inline constexpr std::size_t kMaxSimplifyVariables = 16;

/// Value of f on all 2^n assignments; entry a is f at the assignment whose bit i is
/// feature i. Requires n <= 24.
Bits truth_table(const DnfFormula& f);

/// Exhaustive equivalence over all assignments. Requires equal vocabularies, n <= 24.
bool equivalent(const DnfFormula& f, const DnfFormula& g);

/// Exact two-level minimization: prime implicants followed by a minimum cover
/// (fewest conjunctions, then fewest literals). Requires n <= 16.
DnfFormula simplify(const DnfFormula& f);

/// Renders with " | " between conjunctions, " & " between literals and "~" for
/// negation. Multi-literal conjunctions are parenthesized when there is more than
/// one conjunction. FALSE and TRUE are spelled out.
std::string render(const DnfFormula& f, std::span<const std::string> names);
/// Renders with names p1..pn.
std::string render(const DnfFormula& f);

/// Parses the rendering grammar against a fixed vocabulary.
DnfFormula parse_dnf(std::string_view text, std::span<const std::string> names);

struct ParsedFormula {
    DnfFormula formula;
    std::vector<std::string> names;
};

/// Parses and collects the vocabulary in order of first appearance.
ParsedFormula parse_dnf(std::string_view text);

}  // namespace idealdnf
