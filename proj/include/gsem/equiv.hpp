#pragma once

#include <gsem/translate.hpp>

#include <numeric>
#include <variant>

namespace gsem {

enum class EquivMode : std::uint8_t { Stable, Strong, StableUnderContext };

inline std::string_view mode_name(EquivMode m) {
    switch (m) {
        case EquivMode::Stable: return "stable";
        case EquivMode::Strong: return "strong";
        case EquivMode::StableUnderContext: return "under";
    }
    return "?";
}

using Witness = std::variant<Interpretation, HTPair>;

/// Outcome of an equivalence check at one finite universe. A witness is
/// present exactly when the verdict is false; `witness_of_first` tells
/// which side it is a model of.
struct EquivReport {
    EquivMode mode = EquivMode::Stable;
    bool verdict = true;
    std::optional<Witness> witness;
    bool witness_of_first = true;
    std::set<GroundAtom> signature_used;
};

// {{{ formula level

/// Compares the stable models of two theories over their joint signature.
inline EquivReport stable_equiv(std::span<Formula const> first, std::span<Formula const> second,
                                std::size_t cap = default_atom_cap) {
    EquivReport rep;
    rep.mode = EquivMode::Stable;
    rep.signature_used = atoms_of(first);
    rep.signature_used.merge(atoms_of(second));
    auto m1 = stable_models(first, rep.signature_used, cap);
    auto m2 = stable_models(second, rep.signature_used, cap);
    std::vector<Interpretation> only1, only2;
    std::set_difference(m1.begin(), m1.end(), m2.begin(), m2.end(), std::back_inserter(only1), ModelOrder{});
    std::set_difference(m2.begin(), m2.end(), m1.begin(), m1.end(), std::back_inserter(only2), ModelOrder{});
    if (!only1.empty()) { rep.witness = only1.front(); }
    else if (!only2.empty()) {
        rep.witness = only2.front();
        rep.witness_of_first = false;
    }
    rep.verdict = !rep.witness.has_value();
    return rep;
}

namespace detail {

inline void flatten_conjuncts(Formula const &f, std::vector<Formula> &out) {
    if (f.is(FormulaKind::Conj)) {
        for (auto const &g : f.children()) { flatten_conjuncts(g, out); }
    }
    else {
        out.push_back(f);
    }
}

struct Component {
    std::vector<GroundAtom> atoms;
    std::vector<Formula> first;
    std::vector<Formula> second;
};

// Groups top-level conjuncts of both theories into classes that share no
// atoms. HT models of a theory are the products of its per-class models.
inline std::vector<Component> split_components(std::span<Formula const> first, std::span<Formula const> second) {
    std::vector<std::pair<Formula, bool>> conjuncts;
    for (auto const &f : first) {
        std::vector<Formula> flat;
        flatten_conjuncts(f, flat);
        for (auto &g : flat) { conjuncts.emplace_back(std::move(g), true); }
    }
    for (auto const &f : second) {
        std::vector<Formula> flat;
        flatten_conjuncts(f, flat);
        for (auto &g : flat) { conjuncts.emplace_back(std::move(g), false); }
    }

    std::map<GroundAtom, std::size_t> id;
    std::vector<std::size_t> parent;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) { x = parent[x] = parent[parent[x]]; }
        return x;
    };
    std::vector<std::set<GroundAtom>> conj_atoms;
    for (auto const &[f, side] : conjuncts) {
        conj_atoms.push_back(atoms_of(f));
        std::optional<std::size_t> anchor;
        for (auto const &a : conj_atoms.back()) {
            auto [it, fresh] = id.emplace(a, parent.size());
            if (fresh) { parent.push_back(parent.size()); }
            if (anchor) { parent[find(it->second)] = find(*anchor); }
            else { anchor = it->second; }
        }
    }

    std::map<std::size_t, Component> by_root;
    for (auto const &[a, i] : id) { by_root[find(i)].atoms.push_back(a); }
    Component constants;
    for (std::size_t k = 0; k < conjuncts.size(); ++k) {
        auto const &[f, side] = conjuncts[k];
        Component &c = conj_atoms[k].empty() ? constants : by_root[find(id.at(*conj_atoms[k].begin()))];
        (side ? c.first : c.second).push_back(f);
    }
    std::vector<Component> out;
    if (!constants.first.empty() || !constants.second.empty()) { out.push_back(std::move(constants)); }
    for (auto &[root, c] : by_root) { out.push_back(std::move(c)); }
    return out;
}

} // namespace detail

/// Compares the HT models of two theories over their joint signature.
/// The enumeration runs per class of atom-connected conjuncts; `cap`
/// bounds the number of atoms in each class.
inline EquivReport strong_equiv(std::span<Formula const> first, std::span<Formula const> second,
                                std::size_t cap = default_atom_cap) {
    EquivReport rep;
    rep.mode = EquivMode::Strong;
    rep.signature_used = atoms_of(first);
    rep.signature_used.merge(atoms_of(second));

    struct Scan {
        std::vector<GroundAtom> atoms;
        std::optional<std::pair<std::uint64_t, std::uint64_t>> model1, model2, diff;
        bool diff_in_first = true;
    };
    auto components = detail::split_components(first, second);
    std::vector<Scan> scans;
    bool empty1 = false, empty2 = false;
    for (auto const &c : components) {
        detail::check_cap("atoms in an independent part of the signature", c.atoms.size(), cap);
        auto index = detail::make_index(c.atoms);
        detail::CompiledTheory t1(c.first, index), t2(c.second, index);
        Scan s{c.atoms, {}, {}, {}, true};
        std::uint64_t const limit = std::uint64_t{1} << c.atoms.size();
        for (std::uint64_t t = 0; t < limit; ++t) {
            for (std::uint64_t h = t;; h = (h - 1) & t) {
                bool in1 = t1.ht(h, t), in2 = t2.ht(h, t);
                if (in1 && !s.model1) { s.model1 = {h, t}; }
                if (in2 && !s.model2) { s.model2 = {h, t}; }
                if (in1 != in2 && !s.diff) {
                    s.diff = {h, t};
                    s.diff_in_first = in1;
                }
                if (h == 0) { break; }
            }
        }
        empty1 = empty1 || !s.model1;
        empty2 = empty2 || !s.model2;
        scans.push_back(std::move(s));
    }

    if (empty1 && empty2) { return rep; }
    // Assemble a distinguishing pair: a model of one side on every class,
    // replaced by a distinguishing pair on one class when both sides have models.
    std::optional<std::size_t> diff_at;
    bool of_first = !empty1;
    if (!empty1 && !empty2) {
        for (std::size_t i = 0; i < scans.size(); ++i) {
            if (scans[i].diff) {
                diff_at = i;
                of_first = scans[i].diff_in_first;
                break;
            }
        }
        if (!diff_at) { return rep; }
    }
    HTPair w;
    for (std::size_t i = 0; i < scans.size(); ++i) {
        auto const &s = scans[i];
        auto hw = (diff_at && *diff_at == i) ? *s.diff : (of_first ? *s.model1 : *s.model2);
        w.here.merge(detail::from_mask(s.atoms, hw.first));
        w.there.merge(detail::from_mask(s.atoms, hw.second));
    }
    rep.verdict = false;
    rep.witness = std::move(w);
    rep.witness_of_first = of_first;
    return rep;
}

// }}}
// {{{ program level

inline EquivReport stable_equiv(Program const &p1, Program const &p2, TranslationContext const &ctx,
                                std::size_t cap = default_atom_cap) {
    auto f1 = tau_program(p1, ctx);
    auto f2 = tau_program(p2, ctx);
    return stable_equiv(f1, f2, cap);
}

inline EquivReport strong_equiv(Program const &p1, Program const &p2, TranslationContext const &ctx,
                                std::size_t cap = default_atom_cap) {
    auto f1 = tau_program(p1, ctx);
    auto f2 = tau_program(p2, ctx);
    return strong_equiv(f1, f2, cap);
}

inline Program operator+(Program a, Program const &b) {
    a.rules.insert(a.rules.end(), b.rules.begin(), b.rules.end());
    return a;
}

/// Stable equivalence of p1 and p2 each extended by `context`.
inline EquivReport stable_equiv_under(Program const &p1, Program const &p2, Program const &context,
                                      TranslationContext const &ctx, std::size_t cap = default_atom_cap) {
    auto rep = stable_equiv(p1 + context, p2 + context, ctx, cap);
    rep.mode = EquivMode::StableUnderContext;
    return rep;
}

// }}}

inline std::ostream &operator<<(std::ostream &out, EquivReport const &r) {
    out << "mode: " << mode_name(r.mode) << '\n';
    out << "verdict: " << (r.verdict ? "equivalent" : "not equivalent") << '\n';
    out << "signature: " << r.signature_used << '\n';
    if (r.witness) {
        out << "witness: ";
        std::visit([&](auto const &w) { out << w; }, *r.witness);
        char const *kind = r.mode == EquivMode::Strong ? "HT model" : "stable model";
        out << " (" << kind << " of the " << (r.witness_of_first ? "first" : "second") << " program only)\n";
    }
    out << "note: checked at one finite universe only; a positive verdict is evidence, not a proof, "
           "for the unrestricted claim\n";
    return out;
}

} // namespace gsem
