#include "idealdnf/dnf.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_set>

namespace idealdnf {

Conjunction::Conjunction(std::vector<Literal> literals) : literals_(std::move(literals)) {
    std::sort(literals_.begin(), literals_.end());
    literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
    for (std::size_t i = 1; i < literals_.size(); ++i)
        if (literals_[i].feature == literals_[i - 1].feature)
            throw std::invalid_argument("conjunction contains both a literal and its negation");
}

bool Conjunction::satisfied_by(std::span<const std::uint8_t> assignment) const {
    for (const auto& l : literals_)
        if ((assignment[l.feature] != 0) != l.positive) return false;
    return true;
}

bool Conjunction::satisfied_by(std::uint64_t assignment) const {
    for (const auto& l : literals_)
        if ((((assignment >> l.feature) & 1U) != 0) != l.positive) return false;
    return true;
}

DnfFormula::DnfFormula(std::size_t vocabulary_size, std::vector<Conjunction> conjunctions)
    : vocabulary_size_(vocabulary_size), conjunctions_(std::move(conjunctions)) {
    for (const auto& c : conjunctions_)
        for (const auto& l : c.literals())
            if (l.feature >= vocabulary_size_) throw std::invalid_argument("literal outside the vocabulary");
    std::sort(conjunctions_.begin(), conjunctions_.end());
    conjunctions_.erase(std::unique(conjunctions_.begin(), conjunctions_.end()), conjunctions_.end());
}

DnfFormula DnfFormula::from_minterms(std::size_t vocabulary_size, std::span<const std::uint64_t> minterms) {
    if (vocabulary_size > 64) throw std::invalid_argument("minterms support at most 64 variables");
    std::vector<Conjunction> conj;
    conj.reserve(minterms.size());
    for (auto m : minterms) {
        std::vector<Literal> lits;
        lits.reserve(vocabulary_size);
        for (std::size_t i = 0; i < vocabulary_size; ++i)
            lits.push_back({static_cast<std::uint32_t>(i), ((m >> i) & 1U) != 0});
        conj.emplace_back(std::move(lits));
    }
    return DnfFormula(vocabulary_size, std::move(conj));
}

std::size_t DnfFormula::literal_count() const noexcept {
    std::size_t n = 0;
    for (const auto& c : conjunctions_) n += c.size();
    return n;
}

bool evaluate(const DnfFormula& f, std::span<const std::uint8_t> assignment) {
    if (assignment.size() != f.vocabulary_size())
        throw std::invalid_argument("assignment length " + std::to_string(assignment.size()) +
                                    " differs from vocabulary size " + std::to_string(f.vocabulary_size()));
    return std::any_of(f.conjunctions().begin(), f.conjunctions().end(),
                       [&](const Conjunction& c) { return c.satisfied_by(assignment); });
}

bool evaluate(const DnfFormula& f, std::uint64_t assignment) {
    return std::any_of(f.conjunctions().begin(), f.conjunctions().end(),
                       [&](const Conjunction& c) { return c.satisfied_by(assignment); });
}

Bits truth_table(const DnfFormula& f) {
    const auto n = f.vocabulary_size();
    if (n > kMaxTruthTableVariables)
        throw std::invalid_argument("truth table needs at most " + std::to_string(kMaxTruthTableVariables) + " variables");
    Bits table(std::size_t{1} << n, 0);
    // Mark every assignment covered by each conjunction by enumerating its free bits.
    for (const auto& c : f.conjunctions()) {
        std::uint64_t care = 0, value = 0;
        for (const auto& l : c.literals()) {
            care |= std::uint64_t{1} << l.feature;
            if (l.positive) value |= std::uint64_t{1} << l.feature;
        }
        const std::uint64_t free = ((std::uint64_t{1} << n) - 1) & ~care;
        std::uint64_t sub = 0;
        do {
            table[value | sub] = 1;
            sub = (sub - free) & free;
        } while (sub != 0);
    }
    return table;
}

bool equivalent(const DnfFormula& f, const DnfFormula& g) {
    if (f.vocabulary_size() != g.vocabulary_size()) throw std::invalid_argument("vocabularies differ");
    return truth_table(f) == truth_table(g);
}

// ---------------------------------------------------------------------------
// Exact minimization

namespace {

struct Cube {
    std::uint32_t care = 0;
    std::uint32_t value = 0;

    std::uint64_t key() const { return (std::uint64_t{care} << 32) | value; }
    int literals() const { return std::popcount(care); }
};

Conjunction to_conjunction(const Cube& c) {
    std::vector<Literal> lits;
    for (std::uint32_t i = 0; i < 32; ++i)
        if ((c.care >> i) & 1U) lits.push_back({i, ((c.value >> i) & 1U) != 0});
    return Conjunction(std::move(lits));
}

std::vector<Cube> prime_implicants(std::uint32_t full, const std::vector<std::uint32_t>& onset) {
    std::vector<Cube> primes;
    std::vector<Cube> level;
    level.reserve(onset.size());
    for (auto m : onset) level.push_back({full, m});

    while (!level.empty()) {
        std::unordered_set<std::uint64_t> present;
        present.reserve(level.size() * 2);
        for (const auto& c : level) present.insert(c.key());

        std::unordered_set<std::uint64_t> next_keys;
        std::vector<Cube> next;
        for (const auto& c : level) {
            bool merged = false;
            for (std::uint32_t bits = c.care; bits != 0; bits &= bits - 1) {
                const std::uint32_t b = bits & (~bits + 1);
                const Cube partner{c.care, c.value ^ b};
                if (!present.count(partner.key())) continue;
                merged = true;
                const Cube up{c.care & ~b, c.value & ~b};
                if (next_keys.insert(up.key()).second) next.push_back(up);
            }
            if (!merged) primes.push_back(c);
        }
        std::sort(next.begin(), next.end(), [](const Cube& a, const Cube& b) { return a.key() < b.key(); });
        level = std::move(next);
    }
    return primes;
}

class DynBits {
public:
    DynBits() = default;
    explicit DynBits(std::size_t n) : words_((n + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
    bool none() const {
        return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
    }
    std::size_t count_and(const DynBits& o) const {
        std::size_t n = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) n += std::popcount(words_[i] & o.words_[i]);
        return n;
    }
    void subtract(const DynBits& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    }
    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            for (std::uint64_t bits = words_[w]; bits != 0; bits &= bits - 1)
                f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
    }

private:
    std::vector<std::uint64_t> words_;
};

struct Cost {
    std::size_t conjunctions = 0;
    std::size_t literals = 0;

    friend auto operator<=>(const Cost&, const Cost&) = default;
    Cost operator+(const Cost& o) const { return {conjunctions + o.conjunctions, literals + o.literals}; }
};

/// Branch and bound over covers of the on-set by prime implicants.
class CoverSearch {
public:
    CoverSearch(const std::vector<Cube>& primes, std::size_t columns, std::vector<DynBits> cover)
        : primes_(primes), columns_(columns), cover_(std::move(cover)), column_primes_(columns) {
        for (std::size_t p = 0; p < primes_.size(); ++p)
            cover_[p].for_each([&](std::size_t c) { column_primes_[c].push_back(p); });
    }

    std::vector<std::size_t> solve() {
        DynBits uncovered(columns_);
        for (std::size_t c = 0; c < columns_; ++c) uncovered.set(c);
        allowed_.assign(primes_.size(), 1);
        greedy(uncovered);
        std::vector<std::size_t> chosen;
        search(uncovered, chosen, Cost{});
        return best_;
    }

private:
    Cost cost_of(std::size_t p) const { return {1, static_cast<std::size_t>(primes_[p].literals())}; }

    void greedy(DynBits uncovered) {
        std::vector<std::size_t> chosen;
        Cost total;
        while (!uncovered.none()) {
            std::size_t best = 0, best_gain = 0;
            for (std::size_t p = 0; p < primes_.size(); ++p) {
                const auto gain = cover_[p].count_and(uncovered);
                if (gain > best_gain || (gain == best_gain && gain > 0 && primes_[p].literals() < primes_[best].literals())) {
                    best = p;
                    best_gain = gain;
                }
            }
            chosen.push_back(best);
            total = total + cost_of(best);
            uncovered.subtract(cover_[best]);
        }
        best_ = std::move(chosen);
        best_cost_ = total;
    }

    // Lower bound from a greedy set of columns whose candidate primes are pairwise
    // disjoint: each needs its own prime.
    Cost lower_bound(const DynBits& uncovered) const {
        Cost lb;
        std::vector<std::uint8_t> used(primes_.size(), 0);
        uncovered.for_each([&](std::size_t c) {
            bool independent = true;
            std::size_t min_lits = std::numeric_limits<std::size_t>::max();
            for (auto p : column_primes_[c]) {
                if (!allowed_[p]) continue;
                if (used[p]) independent = false;
                min_lits = std::min(min_lits, static_cast<std::size_t>(primes_[p].literals()));
            }
            if (!independent || min_lits == std::numeric_limits<std::size_t>::max()) return;
            for (auto p : column_primes_[c])
                if (allowed_[p]) used[p] = 1;
            lb = lb + Cost{1, min_lits};
        });
        return lb;
    }

    void search(const DynBits& uncovered, std::vector<std::size_t>& chosen, Cost cost) {
        if (uncovered.none()) {
            if (cost < best_cost_) {
                best_cost_ = cost;
                best_ = chosen;
            }
            return;
        }
        if (cost + lower_bound(uncovered) >= best_cost_) return;

        // Branch on the uncovered column with the fewest remaining candidates.
        std::size_t pick = columns_;
        std::size_t fewest = std::numeric_limits<std::size_t>::max();
        uncovered.for_each([&](std::size_t c) {
            std::size_t n = 0;
            for (auto p : column_primes_[c]) n += allowed_[p];
            if (n < fewest) {
                fewest = n;
                pick = c;
            }
        });
        if (fewest == 0) return;

        struct Candidate {
            std::size_t prime, gain;
            int literals;
        };
        std::vector<Candidate> candidates;
        for (auto p : column_primes_[pick])
            if (allowed_[p]) candidates.push_back({p, cover_[p].count_and(uncovered), primes_[p].literals()});
        std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
            if (a.gain != b.gain) return a.gain > b.gain;
            if (a.literals != b.literals) return a.literals < b.literals;
            return a.prime < b.prime;
        });

        std::vector<std::size_t> excluded;
        for (const auto& cand : candidates) {
            DynBits rest = uncovered;
            rest.subtract(cover_[cand.prime]);
            chosen.push_back(cand.prime);
            search(rest, chosen, cost + cost_of(cand.prime));
            chosen.pop_back();
            // Later siblings must not reuse this prime: that cover was explored here.
            allowed_[cand.prime] = 0;
            excluded.push_back(cand.prime);
        }
        for (auto p : excluded) allowed_[p] = 1;
    }

    const std::vector<Cube>& primes_;
    std::size_t columns_;
    std::vector<DynBits> cover_;
    std::vector<std::vector<std::size_t>> column_primes_;
    std::vector<std::uint8_t> allowed_;
    std::vector<std::size_t> best_;
    Cost best_cost_;
};

}  // namespace

DnfFormula simplify(const DnfFormula& f) {
    const auto n = f.vocabulary_size();
    if (n > kMaxSimplifyVariables)
        throw std::invalid_argument("exact simplification supports at most " + std::to_string(kMaxSimplifyVariables) +
                                    " variables, got " + std::to_string(n));
    const auto table = truth_table(f);
    std::vector<std::uint32_t> onset;
    for (std::size_t a = 0; a < table.size(); ++a)
        if (table[a]) onset.push_back(static_cast<std::uint32_t>(a));
    if (onset.empty()) return DnfFormula::falsum(n);
    if (onset.size() == table.size()) return DnfFormula::verum(n);

    const std::uint32_t full = n == 32 ? ~0U : ((1U << n) - 1);
    auto primes = prime_implicants(full, onset);
    // Canonical prime order makes the branch order, and so the chosen cover, deterministic.
    std::sort(primes.begin(), primes.end(),
              [](const Cube& a, const Cube& b) { return to_conjunction(a) < to_conjunction(b); });

    std::vector<std::int32_t> column_of(table.size(), -1);
    for (std::size_t c = 0; c < onset.size(); ++c) column_of[onset[c]] = static_cast<std::int32_t>(c);
    std::vector<DynBits> cover;
    cover.reserve(primes.size());
    for (const auto& p : primes) {
        DynBits bits(onset.size());
        const std::uint32_t free = full & ~p.care;
        std::uint32_t sub = 0;
        do {
            bits.set(static_cast<std::size_t>(column_of[p.value | sub]));
            sub = (sub - free) & free;
        } while (sub != 0);
        cover.push_back(std::move(bits));
    }

    CoverSearch search(primes, onset.size(), std::move(cover));
    std::vector<Conjunction> conj;
    for (auto p : search.solve()) conj.push_back(to_conjunction(primes[p]));
    return DnfFormula(n, std::move(conj));
}

// ---------------------------------------------------------------------------
// Text form

std::string render(const DnfFormula& f, std::span<const std::string> names) {
    if (names.size() != f.vocabulary_size()) throw std::invalid_argument("name list does not match the vocabulary");
    if (f.is_false()) return "FALSE";
    if (f.is_true()) return "TRUE";
    const bool several = f.conjunctions().size() > 1;
    std::string out;
    for (std::size_t i = 0; i < f.conjunctions().size(); ++i) {
        const auto& c = f.conjunctions()[i];
        if (i) out += " | ";
        const bool paren = several && c.size() > 1;
        if (paren) out += '(';
        if (c.empty()) out += "TRUE";
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (j) out += " & ";
            if (!c.literals()[j].positive) out += '~';
            out += names[c.literals()[j].feature];
        }
        if (paren) out += ')';
    }
    return out;
}

std::string render(const DnfFormula& f) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < f.vocabulary_size(); ++i) names.push_back("p" + std::to_string(i + 1));
    return render(f, names);
}

namespace {

bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-' || c == ':';
}

class Parser {
public:
    Parser(std::string_view text, std::vector<std::string>& names, bool grow)
        : text_(text), names_(names), grow_(grow) {}

    std::vector<Conjunction> parse() {
        std::vector<Conjunction> out;
        do {
            auto conj = conjunction();
            if (conj) out.push_back(std::move(*conj));
        } while (accept('|'));
        skip();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return out;
    }

private:
    // nullopt when the conjunction is unsatisfiable (FALSE factor or p & ~p).
    std::optional<Conjunction> conjunction() {
        std::vector<Literal> lits;
        bool satisfiable = true;
        do factor(lits, satisfiable);
        while (accept('&'));
        if (!satisfiable) return std::nullopt;
        std::sort(lits.begin(), lits.end());
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        for (std::size_t i = 1; i < lits.size(); ++i)
            if (lits[i].feature == lits[i - 1].feature) return std::nullopt;
        return Conjunction(std::move(lits));
    }

    void factor(std::vector<Literal>& lits, bool& satisfiable) {
        if (accept('(')) {
            do factor(lits, satisfiable);
            while (accept('&'));
            if (!accept(')')) fail("expected ')'");
            return;
        }
        const bool negated = accept('~');
        const auto word = identifier();
        if (word == "TRUE" || word == "FALSE") {
            if (negated) fail("negated constants are not part of the grammar");
            if (word == "FALSE") satisfiable = false;
            return;
        }
        auto it = std::find(names_.begin(), names_.end(), word);
        if (it == names_.end()) {
            if (!grow_) fail("unknown variable '" + word + "'");
            names_.push_back(word);
            it = names_.end() - 1;
        }
        lits.push_back({static_cast<std::uint32_t>(it - names_.begin()), !negated});
    }

    std::string identifier() {
        skip();
        const auto start = pos_;
        while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
        if (start == pos_) fail("expected a variable name");
        return std::string(text_.substr(start, pos_ - start));
    }

    bool accept(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("formula parse error at offset " + std::to_string(pos_) + ": " + what);
    }

    std::string_view text_;
    std::vector<std::string>& names_;
    bool grow_;
    std::size_t pos_ = 0;
};

}  // namespace

DnfFormula parse_dnf(std::string_view text, std::span<const std::string> names) {
    std::vector<std::string> vocab(names.begin(), names.end());
    auto conj = Parser(text, vocab, false).parse();
    return DnfFormula(vocab.size(), std::move(conj));
}

ParsedFormula parse_dnf(std::string_view text) {
    std::vector<std::string> vocab;
    auto conj = Parser(text, vocab, true).parse();
    const auto n = vocab.size();
    return {DnfFormula(n, std::move(conj)), std::move(vocab)};
}

}  // namespace idealdnf
