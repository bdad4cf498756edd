#pragma once

#include <gsem/ast.hpp>
#include <gsem/error.hpp>

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>

namespace gsem {

enum class FormulaKind : std::uint8_t { Atom, Bottom, Conj, Disj, Impl };

/// Propositional formula with finite set-indexed conjunctions and
/// disjunctions. Children of Conj/Disj are kept sorted and duplicate-free.
/// The empty conjunction is truth; negation is `F -> #false`.
class Formula {
    struct Node {
        FormulaKind kind;
        GroundAtom atom;
        std::vector<Formula> kids;
    };

public:
    Formula() : node_(bottom_node()) {}

    static Formula atom(GroundAtom a) { return Formula(Node{FormulaKind::Atom, std::move(a), {}}); }
    static Formula atom(std::string name, std::vector<PrecomputedTerm> args = {}) {
        return atom(GroundAtom{std::move(name), std::move(args)});
    }
    static Formula bottom() { return Formula(); }
    static Formula top() { return conj({}); }
    static Formula conj(std::vector<Formula> kids) { return Formula(Node{FormulaKind::Conj, {}, canonical(std::move(kids))}); }
    static Formula disj(std::vector<Formula> kids) { return Formula(Node{FormulaKind::Disj, {}, canonical(std::move(kids))}); }
    static Formula impl(Formula antecedent, Formula consequent) {
        std::vector<Formula> kids;
        kids.reserve(2);
        kids.push_back(std::move(antecedent));
        kids.push_back(std::move(consequent));
        return Formula(Node{FormulaKind::Impl, {}, std::move(kids)});
    }
    static Formula neg(Formula f) { return impl(std::move(f), bottom()); }

    FormulaKind kind() const { return node_->kind; }
    bool is(FormulaKind k) const { return node_->kind == k; }
    GroundAtom const &atom() const { return node_->atom; }
    std::vector<Formula> const &children() const { return node_->kids; }
    Formula const &antecedent() const { return node_->kids[0]; }
    Formula const &consequent() const { return node_->kids[1]; }

    bool is_top() const { return is(FormulaKind::Conj) && node_->kids.empty(); }
    bool is_bottom() const { return is(FormulaKind::Bottom); }
    bool is_negation() const { return is(FormulaKind::Impl) && consequent().is_bottom(); }

    /// Identity of the shared node; equal ids imply equal formulas.
    void const *id() const { return node_.get(); }

    friend std::strong_ordering compare(Formula const &a, Formula const &b) {
        if (a.node_ == b.node_) { return std::strong_ordering::equal; }
        if (auto c = a.kind() <=> b.kind(); c != 0) { return c; }
        if (a.is(FormulaKind::Atom)) { return a.atom() <=> b.atom(); }
        auto const &x = a.children();
        auto const &y = b.children();
        for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
            if (auto c = compare(x[i], y[i]); c != 0) { return c; }
        }
        return x.size() <=> y.size();
    }
    friend bool operator==(Formula const &a, Formula const &b) { return compare(a, b) == 0; }
    friend std::strong_ordering operator<=>(Formula const &a, Formula const &b) { return compare(a, b); }

private:
    explicit Formula(Node n) : node_(std::make_shared<Node const>(std::move(n))) {}

    static std::shared_ptr<Node const> const &bottom_node() {
        static auto const node = std::make_shared<Node const>(Node{FormulaKind::Bottom, {}, {}});
        return node;
    }

    static std::vector<Formula> canonical(std::vector<Formula> kids) {
        std::sort(kids.begin(), kids.end());
        kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
        return kids;
    }

    std::shared_ptr<Node const> node_;
};

using Interpretation = std::set<GroundAtom>;

/// Two-world Kripke model; `here` must be a subset of `there`.
struct HTPair {
    Interpretation here;
    Interpretation there;

    friend bool operator==(HTPair const &, HTPair const &) = default;
    friend auto operator<=>(HTPair const &, HTPair const &) = default;
};

/// Models ordered by size, then lexicographically.
struct ModelOrder {
    bool operator()(Interpretation const &a, Interpretation const &b) const {
        if (a.size() != b.size()) { return a.size() < b.size(); }
        return a < b;
    }
};

// {{{ printing

inline std::ostream &operator<<(std::ostream &out, Formula const &f) {
    switch (f.kind()) {
        case FormulaKind::Atom: return out << f.atom();
        case FormulaKind::Bottom: return out << "#false";
        case FormulaKind::Conj:
        case FormulaKind::Disj:
            out << (f.is(FormulaKind::Conj) ? "AND{" : "OR{");
            detail::print_joined(out, f.children().begin(), f.children().end(), "; ",
                                 [&](Formula const &g) { out << g; });
            return out << '}';
        case FormulaKind::Impl:
            return out << '(' << f.antecedent() << " -> " << f.consequent() << ')';
    }
    return out;
}

/// One node per line, children indented by two spaces.
inline void print_tree(std::ostream &out, Formula const &f, std::size_t indent = 0) {
    out << std::string(indent, ' ');
    switch (f.kind()) {
        case FormulaKind::Atom: out << f.atom() << '\n'; return;
        case FormulaKind::Bottom: out << "#false\n"; return;
        case FormulaKind::Conj:
        case FormulaKind::Disj:
            if (f.is_top()) {
                out << "#true\n";
                return;
            }
            out << (f.is(FormulaKind::Conj) ? "AND" : "OR") << '\n';
            for (auto const &g : f.children()) { print_tree(out, g, indent + 2); }
            return;
        case FormulaKind::Impl:
            out << "IMPL\n";
            print_tree(out, f.antecedent(), indent + 2);
            print_tree(out, f.consequent(), indent + 2);
            return;
    }
}

inline std::ostream &operator<<(std::ostream &out, Interpretation const &i) {
    out << '{';
    detail::print_joined(out, i.begin(), i.end(), ", ", [&](GroundAtom const &a) { out << a; });
    return out << '}';
}

inline std::ostream &operator<<(std::ostream &out, HTPair const &p) {
    return out << '(' << p.here << ", " << p.there << ')';
}

// }}}
// {{{ atoms

inline void collect_atoms(Formula const &f, std::set<GroundAtom> &out) {
    if (f.is(FormulaKind::Atom)) {
        out.insert(f.atom());
        return;
    }
    for (auto const &g : f.children()) { collect_atoms(g, out); }
}

inline std::set<GroundAtom> atoms_of(std::span<Formula const> fs) {
    std::set<GroundAtom> out;
    for (auto const &f : fs) { collect_atoms(f, out); }
    return out;
}

inline std::set<GroundAtom> atoms_of(Formula const &f) { return atoms_of(std::span<Formula const>(&f, 1)); }

namespace detail {

inline void collect_positive(Formula const &f, bool positive, std::set<GroundAtom> &out) {
    switch (f.kind()) {
        case FormulaKind::Atom:
            if (positive) { out.insert(f.atom()); }
            return;
        case FormulaKind::Bottom: return;
        case FormulaKind::Impl:
            collect_positive(f.antecedent(), !positive, out);
            collect_positive(f.consequent(), positive, out);
            return;
        default:
            for (auto const &g : f.children()) { collect_positive(g, positive, out); }
    }
}

} // namespace detail

/// Atoms with at least one occurrence under an even number of implication
/// antecedents. No other atom can belong to a stable model.
inline std::set<GroundAtom> positive_atoms(std::span<Formula const> fs) {
    std::set<GroundAtom> out;
    for (auto const &f : fs) { detail::collect_positive(f, true, out); }
    return out;
}

// }}}
// {{{ satisfaction and reduct

template <class Contains>
bool satisfies_with(Formula const &f, Contains const &contains) {
    switch (f.kind()) {
        case FormulaKind::Atom: return contains(f.atom());
        case FormulaKind::Bottom: return false;
        case FormulaKind::Conj:
            return std::all_of(f.children().begin(), f.children().end(),
                               [&](Formula const &g) { return satisfies_with(g, contains); });
        case FormulaKind::Disj:
            return std::any_of(f.children().begin(), f.children().end(),
                               [&](Formula const &g) { return satisfies_with(g, contains); });
        case FormulaKind::Impl:
            return !satisfies_with(f.antecedent(), contains) || satisfies_with(f.consequent(), contains);
    }
    return false;
}

inline bool satisfies(Interpretation const &i, Formula const &f) {
    return satisfies_with(f, [&](GroundAtom const &a) { return i.count(a) > 0; });
}

inline bool satisfies(Interpretation const &i, std::span<Formula const> fs) {
    return std::all_of(fs.begin(), fs.end(), [&](Formula const &f) { return satisfies(i, f); });
}

template <class Contains>
Formula reduct_with(Formula const &f, Contains const &contains) {
    switch (f.kind()) {
        case FormulaKind::Atom: return contains(f.atom()) ? f : Formula::bottom();
        case FormulaKind::Bottom: return f;
        case FormulaKind::Conj:
        case FormulaKind::Disj: {
            std::vector<Formula> kids;
            kids.reserve(f.children().size());
            for (auto const &g : f.children()) { kids.push_back(reduct_with(g, contains)); }
            return f.is(FormulaKind::Conj) ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
        }
        case FormulaKind::Impl:
            if (!satisfies_with(f, contains)) { return Formula::bottom(); }
            return Formula::impl(reduct_with(f.antecedent(), contains), reduct_with(f.consequent(), contains));
    }
    return f;
}

/// The reduct F^I.
inline Formula reduct(Formula const &f, Interpretation const &i) {
    return reduct_with(f, [&](GroundAtom const &a) { return i.count(a) > 0; });
}

/// Here-and-there satisfaction.
inline bool ht_satisfies(HTPair const &w, Formula const &f) {
    switch (f.kind()) {
        case FormulaKind::Atom: return w.here.count(f.atom()) > 0;
        case FormulaKind::Bottom: return false;
        case FormulaKind::Conj:
            return std::all_of(f.children().begin(), f.children().end(),
                               [&](Formula const &g) { return ht_satisfies(w, g); });
        case FormulaKind::Disj:
            return std::any_of(f.children().begin(), f.children().end(),
                               [&](Formula const &g) { return ht_satisfies(w, g); });
        case FormulaKind::Impl:
            return (!ht_satisfies(w, f.antecedent()) || ht_satisfies(w, f.consequent())) && satisfies(w.there, f);
    }
    return false;
}

inline bool ht_satisfies(HTPair const &w, std::span<Formula const> fs) {
    return std::all_of(fs.begin(), fs.end(), [&](Formula const &f) { return ht_satisfies(w, f); });
}

// }}}
// {{{ simplification

/// Removes truth constants and flattens nested Conj/Disj. Every rewrite is
/// an equivalence in the logic of here-and-there.
inline Formula simplify(Formula const &f) {
    switch (f.kind()) {
        case FormulaKind::Atom:
        case FormulaKind::Bottom:
            return f;
        case FormulaKind::Conj:
        case FormulaKind::Disj: {
            bool is_conj = f.is(FormulaKind::Conj);
            std::vector<Formula> kids;
            for (auto const &g : f.children()) {
                auto s = simplify(g);
                if (is_conj ? s.is_top() : s.is_bottom()) { continue; }
                if (is_conj ? s.is_bottom() : s.is_top()) { return s; }
                if (s.kind() == f.kind()) {
                    kids.insert(kids.end(), s.children().begin(), s.children().end());
                }
                else {
                    kids.push_back(std::move(s));
                }
            }
            if (kids.size() == 1) { return kids.front(); }
            if (kids.empty()) { return is_conj ? Formula::top() : Formula::bottom(); }
            return is_conj ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
        }
        case FormulaKind::Impl: {
            auto a = simplify(f.antecedent());
            auto c = simplify(f.consequent());
            if (a.is_bottom() || c.is_top()) { return Formula::top(); }
            if (a.is_top()) { return c; }
            return Formula::impl(std::move(a), std::move(c));
        }
    }
    return f;
}

// }}}
// {{{ compiled evaluation

namespace detail {

/// Flattened formulas over atoms numbered by bit position; atoms outside
/// the index are false in every world.
class CompiledTheory {
public:
    CompiledTheory(std::span<Formula const> fs, std::map<GroundAtom, int> const &index) {
        std::unordered_map<void const *, std::uint32_t> memo;
        for (auto const &f : fs) { roots_.push_back(add(f, index, memo)); }
    }

    bool classical(std::uint64_t world) const {
        return std::all_of(roots_.begin(), roots_.end(), [&](std::uint32_t r) { return eval(r, world); });
    }

    /// Truth at the here-world of (here, there).
    bool ht(std::uint64_t here, std::uint64_t there) const {
        return std::all_of(roots_.begin(), roots_.end(), [&](std::uint32_t r) { return eval_ht(r, here, there).first; });
    }

    /// Classical truth values of every node at `world`.
    std::vector<char> truth_at(std::uint64_t world) const {
        std::vector<char> v(nodes_.size());
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            auto const &n = nodes_[i];
            switch (n.kind) {
                case FormulaKind::Atom: v[i] = (world >> n.atom) & 1U; break;
                case FormulaKind::Bottom: v[i] = false; break;
                case FormulaKind::Conj:
                    v[i] = std::all_of(kids_.begin() + n.begin, kids_.begin() + n.end, [&](auto k) { return v[k]; });
                    break;
                case FormulaKind::Disj:
                    v[i] = std::any_of(kids_.begin() + n.begin, kids_.begin() + n.end, [&](auto k) { return v[k]; });
                    break;
                case FormulaKind::Impl: v[i] = !v[kids_[n.begin]] || v[kids_[n.begin + 1]]; break;
            }
        }
        return v;
    }

    /// Classical truth at `world` of the reducts of all formulas with respect
    /// to the interpretation whose node values are `outer` (from truth_at).
    bool reduct_classical(std::vector<char> const &outer, std::uint64_t world) const {
        return std::all_of(roots_.begin(), roots_.end(), [&](std::uint32_t r) { return eval_reduct(r, outer, world); });
    }

private:
    struct Node {
        FormulaKind kind;
        int atom;
        std::uint32_t begin;
        std::uint32_t end;
    };

    std::uint32_t add(Formula const &f, std::map<GroundAtom, int> const &index,
                      std::unordered_map<void const *, std::uint32_t> &memo) {
        if (auto it = memo.find(f.id()); it != memo.end()) { return it->second; }
        Node n{f.kind(), -1, 0, 0};
        if (f.is(FormulaKind::Atom)) {
            auto it = index.find(f.atom());
            if (it == index.end()) { n.kind = FormulaKind::Bottom; }
            else { n.atom = it->second; }
        }
        std::vector<std::uint32_t> kids;
        for (auto const &g : f.children()) { kids.push_back(add(g, index, memo)); }
        n.begin = static_cast<std::uint32_t>(kids_.size());
        kids_.insert(kids_.end(), kids.begin(), kids.end());
        n.end = static_cast<std::uint32_t>(kids_.size());
        nodes_.push_back(n);
        auto id = static_cast<std::uint32_t>(nodes_.size() - 1);
        memo.emplace(f.id(), id);
        return id;
    }

    bool eval(std::uint32_t i, std::uint64_t w) const {
        auto const &n = nodes_[i];
        switch (n.kind) {
            case FormulaKind::Atom: return (w >> n.atom) & 1U;
            case FormulaKind::Bottom: return false;
            case FormulaKind::Conj:
                for (auto k = n.begin; k < n.end; ++k) {
                    if (!eval(kids_[k], w)) { return false; }
                }
                return true;
            case FormulaKind::Disj:
                for (auto k = n.begin; k < n.end; ++k) {
                    if (eval(kids_[k], w)) { return true; }
                }
                return false;
            case FormulaKind::Impl:
                return !eval(kids_[n.begin], w) || eval(kids_[n.begin + 1], w);
        }
        return false;
    }

    // Atoms and implications false in the outer interpretation become
    // falsity; everything else keeps its shape.
    bool eval_reduct(std::uint32_t i, std::vector<char> const &outer, std::uint64_t w) const {
        auto const &n = nodes_[i];
        switch (n.kind) {
            case FormulaKind::Atom: return outer[i] && ((w >> n.atom) & 1U);
            case FormulaKind::Bottom: return false;
            case FormulaKind::Conj:
                for (auto k = n.begin; k < n.end; ++k) {
                    if (!eval_reduct(kids_[k], outer, w)) { return false; }
                }
                return true;
            case FormulaKind::Disj:
                for (auto k = n.begin; k < n.end; ++k) {
                    if (eval_reduct(kids_[k], outer, w)) { return true; }
                }
                return false;
            case FormulaKind::Impl:
                return outer[i] && (!eval_reduct(kids_[n.begin], outer, w) || eval_reduct(kids_[n.begin + 1], outer, w));
        }
        return false;
    }

    // (value at here, value at there)
    std::pair<bool, bool> eval_ht(std::uint32_t i, std::uint64_t h, std::uint64_t t) const {
        auto const &n = nodes_[i];
        switch (n.kind) {
            case FormulaKind::Atom: return {((h >> n.atom) & 1U) != 0, ((t >> n.atom) & 1U) != 0};
            case FormulaKind::Bottom: return {false, false};
            case FormulaKind::Conj: {
                std::pair<bool, bool> v{true, true};
                for (auto k = n.begin; k < n.end && v.second; ++k) {
                    auto c = eval_ht(kids_[k], h, t);
                    v.first = v.first && c.first;
                    v.second = c.second;
                }
                return v;
            }
            case FormulaKind::Disj: {
                std::pair<bool, bool> v{false, false};
                for (auto k = n.begin; k < n.end && !v.first; ++k) {
                    auto c = eval_ht(kids_[k], h, t);
                    v.first = c.first;
                    v.second = v.second || c.second;
                }
                // here implies there, so a true here-value settles both
                if (v.first) { v.second = true; }
                return v;
            }
            case FormulaKind::Impl: {
                auto a = eval_ht(kids_[n.begin], h, t);
                auto c = eval_ht(kids_[n.begin + 1], h, t);
                bool there = !a.second || c.second;
                return {there && (!a.first || c.first), there};
            }
        }
        return {false, false};
    }

    std::vector<Node> nodes_;
    std::vector<std::uint32_t> kids_;
    std::vector<std::uint32_t> roots_;
};

inline std::map<GroundAtom, int> make_index(std::vector<GroundAtom> const &atoms) {
    std::map<GroundAtom, int> index;
    for (std::size_t i = 0; i < atoms.size(); ++i) { index.emplace(atoms[i], static_cast<int>(i)); }
    return index;
}

inline Interpretation from_mask(std::vector<GroundAtom> const &atoms, std::uint64_t mask) {
    Interpretation out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if ((mask >> i) & 1U) { out.insert(atoms[i]); }
    }
    return out;
}

inline void check_cap(char const *what, std::size_t n, std::size_t cap) {
    if (n > cap || n > 62) { throw CapExceeded(what, n, std::min<std::size_t>(cap, 62)); }
}

inline void check_signature(std::span<Formula const> fs, std::set<GroundAtom> const &sig) {
    for (auto const &a : atoms_of(fs)) {
        if (!sig.count(a)) { throw std::invalid_argument("atom " + to_string(a) + " is not in the signature"); }
    }
}

} // namespace detail

inline constexpr std::size_t default_atom_cap = 20;

/// Stable models by the reduct definition: interpretations that satisfy the
/// reducts of all formulas and are minimal among interpretations that do.
/// Candidates are restricted to positive_atoms(gamma); `cap` bounds their number.
inline std::vector<Interpretation> stable_models(std::span<Formula const> gamma, std::set<GroundAtom> const &sig,
                                                 std::size_t cap = default_atom_cap) {
    detail::check_signature(gamma, sig);
    auto pos = positive_atoms(gamma);
    std::vector<GroundAtom> cands(pos.begin(), pos.end());
    detail::check_cap("stable-model candidate atoms", cands.size(), cap);
    auto index = detail::make_index(cands);
    detail::CompiledTheory theory(gamma, index);

    std::vector<Interpretation> out;
    std::uint64_t const limit = std::uint64_t{1} << cands.size();
    for (std::uint64_t m = 0; m < limit; ++m) {
        // I |= F^I iff I |= F, so classical models are the only candidates
        if (!theory.classical(m)) { continue; }
        auto outer = theory.truth_at(m);
        bool minimal = theory.reduct_classical(outer, m);
        for (std::uint64_t s = m; minimal && s != 0;) {
            s = (s - 1) & m;
            if (theory.reduct_classical(outer, s)) { minimal = false; }
        }
        if (minimal) { out.push_back(detail::from_mask(cands, m)); }
    }
    std::sort(out.begin(), out.end(), ModelOrder{});
    return out;
}

/// Equilibrium models: T such that (T,T) is an HT model and no (H,T) with
/// H a proper subset of T is. Exhaustive over `sig`.
inline std::vector<Interpretation> equilibrium_models(std::span<Formula const> gamma, std::set<GroundAtom> const &sig,
                                                      std::size_t cap = default_atom_cap) {
    detail::check_signature(gamma, sig);
    std::vector<GroundAtom> atoms(sig.begin(), sig.end());
    detail::check_cap("signature atoms", atoms.size(), cap);
    detail::CompiledTheory theory(gamma, detail::make_index(atoms));
    std::vector<Interpretation> out;
    std::uint64_t const limit = std::uint64_t{1} << atoms.size();
    for (std::uint64_t t = 0; t < limit; ++t) {
        if (!theory.ht(t, t)) { continue; }
        bool equilibrium = true;
        for (std::uint64_t h = t; equilibrium && h != 0;) {
            h = (h - 1) & t;
            if (theory.ht(h, t)) { equilibrium = false; }
        }
        if (equilibrium) { out.push_back(detail::from_mask(atoms, t)); }
    }
    std::sort(out.begin(), out.end(), ModelOrder{});
    return out;
}

/// All HT models (H,T) with H within T within `sig`.
inline std::vector<HTPair> ht_models(std::span<Formula const> gamma, std::set<GroundAtom> const &sig,
                                     std::size_t cap = default_atom_cap) {
    detail::check_signature(gamma, sig);
    std::vector<GroundAtom> atoms(sig.begin(), sig.end());
    detail::check_cap("signature atoms", atoms.size(), cap);
    detail::CompiledTheory theory(gamma, detail::make_index(atoms));
    std::vector<HTPair> out;
    std::uint64_t const limit = std::uint64_t{1} << atoms.size();
    for (std::uint64_t t = 0; t < limit; ++t) {
        for (std::uint64_t h = t;; h = (h - 1) & t) {
            if (theory.ht(h, t)) { out.push_back({detail::from_mask(atoms, h), detail::from_mask(atoms, t)}); }
            if (h == 0) { break; }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// }}}

} // namespace gsem
