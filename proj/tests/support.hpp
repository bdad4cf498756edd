#pragma once

// Shared helpers and random generators for the unit tests.

#include <gsem/gsem.hpp>

#include <random>

namespace gsem::test {

inline GroundAtom ga(std::string name, std::vector<std::int64_t> args = {}) {
    GroundAtom a{std::move(name), {}};
    for (auto v : args) { a.args.push_back(PrecomputedTerm::numeral(v)); }
    return a;
}

inline Formula at(std::string name, std::vector<std::int64_t> args = {}) {
    return Formula::atom(ga(std::move(name), std::move(args)));
}

inline Interpretation interp(std::initializer_list<GroundAtom> atoms) { return Interpretation(atoms); }

inline Universe ints(std::int64_t lo, std::int64_t hi, std::set<std::string> consts = {}) {
    Universe u;
    u.int_lo = lo;
    u.int_hi = hi;
    u.consts = std::move(consts);
    return u;
}

inline Rule rule(std::string_view text) {
    auto p = parse_program(text);
    if (p.rules.size() != 1) { throw std::logic_error("expected exactly one rule"); }
    return p.rules.front();
}

inline AggregateExpression aggregate(std::string_view body_text) {
    auto r = rule(":- " + std::string(body_text) + ".");
    return std::get<AggregateExpression>(r.body.at(0));
}

/// Random propositional formulas over atoms a0..a{n-1}.
class FormulaGen {
public:
    FormulaGen(std::uint32_t seed, std::size_t atoms) : rng_(seed), atoms_(atoms) {}

    Formula operator()(int depth = 3) {
        int pick = uniform(0, depth <= 0 ? 1 : 5);
        switch (pick) {
            case 0: return Formula::atom(ga("a" + std::to_string(uniform(0, static_cast<int>(atoms_) - 1))));
            case 1: return uniform(0, 3) == 0 ? Formula::bottom() : (*this)(0);
            case 2:
            case 3: {
                std::vector<Formula> kids;
                int n = uniform(0, 3);
                for (int i = 0; i < n; ++i) { kids.push_back((*this)(depth - 1)); }
                return pick == 2 ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
            }
            default: return Formula::impl((*this)(depth - 1), (*this)(depth - 1));
        }
    }

    std::vector<Formula> theory(std::size_t max_size = 3, int depth = 3) {
        std::vector<Formula> out;
        auto n = uniform(0, static_cast<int>(max_size));
        for (int i = 0; i < n; ++i) { out.push_back((*this)(depth)); }
        return out;
    }

    std::set<GroundAtom> signature() const {
        std::set<GroundAtom> sig;
        for (std::size_t i = 0; i < atoms_; ++i) { sig.insert(ga("a" + std::to_string(i))); }
        return sig;
    }

    Interpretation subset(std::set<GroundAtom> const &of) {
        Interpretation i;
        for (auto const &a : of) {
            if (uniform(0, 1) == 1) { i.insert(a); }
        }
        return i;
    }

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    std::mt19937 &rng() { return rng_; }

private:
    std::mt19937 rng_;
    std::size_t atoms_;
};

/// Every subset of a small set, as interpretations.
inline std::vector<Interpretation> subsets(std::set<GroundAtom> const &sig) {
    std::vector<GroundAtom> v(sig.begin(), sig.end());
    std::vector<Interpretation> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << v.size()); ++m) {
        Interpretation i;
        for (std::size_t k = 0; k < v.size(); ++k) {
            if ((m >> k) & 1U) { i.insert(v[k]); }
        }
        out.push_back(std::move(i));
    }
    return out;
}

inline bool subset_of(Interpretation const &a, Interpretation const &b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Textbook HT satisfaction, written independently of the library.
inline bool ht_oracle(Interpretation const &h, Interpretation const &t, Formula const &f, bool at_there) {
    auto const &w = at_there ? t : h;
    switch (f.kind()) {
        case FormulaKind::Atom: return w.count(f.atom()) > 0;
        case FormulaKind::Bottom: return false;
        case FormulaKind::Conj:
            return std::all_of(f.children().begin(), f.children().end(),
                               [&](Formula const &g) { return ht_oracle(h, t, g, at_there); });
        case FormulaKind::Disj:
            return std::any_of(f.children().begin(), f.children().end(),
                               [&](Formula const &g) { return ht_oracle(h, t, g, at_there); });
        case FormulaKind::Impl: {
            bool there = !ht_oracle(h, t, f.antecedent(), true) || ht_oracle(h, t, f.consequent(), true);
            if (at_there) { return there; }
            return there && (!ht_oracle(h, t, f.antecedent(), false) || ht_oracle(h, t, f.consequent(), false));
        }
    }
    return false;
}

inline bool ht_oracle(Interpretation const &h, Interpretation const &t, std::span<Formula const> fs) {
    return std::all_of(fs.begin(), fs.end(), [&](Formula const &f) { return ht_oracle(h, t, f, false); });
}

} // namespace gsem::test
