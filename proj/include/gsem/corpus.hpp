#pragma once

// Bundled example programs and the equivalence claims made about them.

#include <gsem/equiv.hpp>
#include <gsem/parser.hpp>

namespace gsem::corpus {

struct Entry {
    std::string_view name;
    std::string_view text;
};

/// `{p(1)}. ... {p(n)}.` plus the constraint that no p-value is the sum of two.
inline std::string sum_free_program(int n) {
    std::string out;
    for (int i = 1; i <= n; ++i) { out += "{p(" + std::to_string(i) + ")}.\n"; }
    out += ":- p(X), p(Y), p(X+Y).\n";
    return out;
}

inline std::vector<Entry> const &programs() {
    static std::vector<Entry> const entries{
        {"sum_free", "{p(1)}.\n{p(2)}.\n{p(3)}.\n:- p(X), p(Y), p(X+Y).\n"},
        {"weekdays", "weekdays :- day(X) : day(X), not weekend(X).\n"},
        {"weekdays_fact", "weekdays.\n"},
        {"sort", "order(X,Y) :- p(X); p(Y); X<Y; not p(Z) : p(Z), X<Z, Z<Y.\n"},
        {"sort_bottom", "order(X,Y) :- p(X); p(Y); X<Y; #false : p(Z), X<Z, Z<Y.\n"},
        {"sort_unsafe", "order(X,Y) :- p(X); p(Y); X<Y; not p(Z) : X<Z, Z<Y.\n"},
        {"choice", "{p(X)} :- q(X).\n"},
        {"choice_cond", "p(X) :- q(X); #false : not p(X).\n"},
        {"count_exists", "p(Y) :- #count{X,Y : q(X,Y)} >= 1.\n"},
        {"count_exists_plain", "p(Y) :- q(X,Y).\n"},
        {"count_zero", "q :- #count{X : p(X)} = 0.\n"},
        {"count_zero_cond", "q :- #false : p(X).\n"},
        {"sum_zero", "q :- #sum{X : p(X)} = 0.\n"},
        {"no_p", ":- p(X).\n"},
        {"fact_q", "q.\n"},
        {"total_hours", "total_hours(N) :- #sum{H,C : enroll(C), hours(H,C)} = N.\n"},
    };
    return entries;
}

inline Program program(std::string_view name) {
    for (auto const &e : programs()) {
        if (e.name == name) { return parse_program(e.text, std::string(name) + ".lp"); }
    }
    throw std::invalid_argument("no bundled program named " + std::string(name));
}

inline Universe universe(std::int64_t lo, std::int64_t hi, std::set<std::string> consts = {}) {
    Universe u;
    u.int_lo = lo;
    u.int_hi = hi;
    u.consts = std::move(consts);
    return u;
}

struct ClaimResult {
    std::string id;
    std::string description;
    bool passed = false;
    std::string detail;
};

namespace detail {

inline ClaimResult check_strong(std::string id, std::string description, std::string_view a, std::string_view b,
                                Universe u, std::size_t cap) {
    TranslationContext ctx(std::move(u));
    auto rep = strong_equiv(program(a), program(b), ctx, cap);
    return {std::move(id), std::move(description), rep.verdict,
            "strong " + std::string(a) + " vs " + std::string(b) + " at " + to_string(ctx.universe()) + ": " +
                std::to_string(rep.signature_used.size()) + " atoms"};
}

} // namespace detail

/// Sets S within {1..n} such that no i + j (i, j in S, possibly equal) is in S.
inline std::vector<std::set<std::int64_t>> sum_free_subsets(int n) {
    std::vector<std::set<std::int64_t>> out;
    for (std::uint32_t m = 0; m < (1U << n); ++m) {
        std::set<std::int64_t> s;
        for (int i = 0; i < n; ++i) {
            if ((m >> i) & 1U) { s.insert(i + 1); }
        }
        bool ok = true;
        for (auto i : s) {
            for (auto j : s) { ok = ok && !s.count(i + j); }
        }
        if (ok) { out.push_back(std::move(s)); }
    }
    return out;
}

/// Runs every bundled claim; a claim that throws is reported as failed.
inline std::vector<ClaimResult> run_claims(std::size_t cap = default_atom_cap) {
    using Check = std::function<ClaimResult()>;
    std::vector<Check> checks{
        [cap] {
            TranslationContext ctx(universe(1, 6));
            auto gamma = tau_program(parse_program(sum_free_program(3)), ctx);
            auto models = stable_models(gamma, atoms_of(gamma), cap);
            std::vector<Interpretation> expected;
            for (auto const &s : sum_free_subsets(3)) {
                Interpretation i;
                for (auto v : s) { i.insert(GroundAtom{"p", {PrecomputedTerm::numeral(v)}}); }
                expected.push_back(std::move(i));
            }
            std::sort(expected.begin(), expected.end(), ModelOrder{});
            return ClaimResult{"sum-free", "stable models of the sum-free program (n=3) are the sum-free subsets",
                               models == expected, std::to_string(models.size()) + " stable models"};
        },
        [cap] {
            return detail::check_strong("weekdays-1", "trivial conditional body can be replaced by a fact",
                                        "weekdays", "weekdays_fact", universe(0, 0, {"mon"}), cap);
        },
        [cap] {
            return detail::check_strong("weekdays-2", "trivial conditional body can be replaced by a fact",
                                        "weekdays", "weekdays_fact", universe(0, 1, {"mon", "tue"}), cap);
        },
        [cap] {
            return detail::check_strong("sort-bottom", "sorting rule: 'not p(Z)' head can become #false",
                                        "sort", "sort_bottom", universe(1, 3), cap);
        },
        [cap] {
            return detail::check_strong("sort-unsafe", "sorting rule: condition p(Z) can be dropped",
                                        "sort", "sort_unsafe", universe(1, 3), cap);
        },
        [cap] {
            return detail::check_strong("sort-unsafe-mixed", "sorting rule: condition p(Z) can be dropped (mixed universe)",
                                        "sort", "sort_unsafe", universe(1, 3, {"a"}), cap);
        },
        [cap] {
            return detail::check_strong("choice", "choice rule equals a rule with a #false conditional literal",
                                        "choice", "choice_cond", universe(1, 2, {"a"}), cap);
        },
        [cap] {
            return detail::check_strong("count-exists", "'#count{...} >= 1' over one condition is a plain body",
                                        "count_exists", "count_exists_plain", universe(0, 1, {"a", "b"}), cap);
        },
        [cap] {
            return detail::check_strong("count-zero", "'#count{X : p(X)} = 0' equals '#false : p(X)'",
                                        "count_zero", "count_zero_cond", universe(0, 2), cap);
        },
        [cap] {
            TranslationContext ctx(universe(-1, 2, {"a"}));
            auto rep = stable_equiv_under(program("sum_zero"), program("fact_q"), program("no_p"), ctx, cap);
            return ClaimResult{"sum-zero", "under ':- p(X).' the rule 'q :- #sum{X : p(X)} = 0.' equals 'q.'",
                               rep.verdict, "stable equivalence under context at " + to_string(ctx.universe())};
        },
    };
    std::vector<ClaimResult> out;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        try {
            out.push_back(checks[i]());
        }
        catch (std::exception const &e) {
            out.push_back({"claim-" + std::to_string(i + 1), "raised an error", false, e.what()});
        }
    }
    return out;
}

} // namespace gsem::corpus
