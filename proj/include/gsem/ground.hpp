#pragma once

#include <gsem/ast.hpp>
#include <gsem/error.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>

namespace gsem {

/// Finite stand-in for the set of all precomputed terms: numerals in
/// [int_lo, int_hi], the given symbolic constants, and applications of the
/// given function symbols nested at most `depth` deep.
struct Universe {
    std::int64_t int_lo = -8;
    std::int64_t int_hi = 8;
    std::set<std::string> consts;
    std::set<std::pair<std::string, std::size_t>> funcs;
    std::size_t depth = 1;

    void validate() const {
        if (int_lo > int_hi) {
            throw std::invalid_argument("empty integer range " + std::to_string(int_lo) + ".." + std::to_string(int_hi));
        }
        for (auto const &[name, arity] : funcs) {
            if (arity == 0) { throw std::invalid_argument("function symbol " + name + " must have arity >= 1"); }
        }
    }

    /// Sorted, duplicate-free.
    std::vector<PrecomputedTerm> precomputed_terms() const {
        validate();
        std::vector<PrecomputedTerm> base;
        for (auto i = int_lo;; ++i) {
            base.push_back(PrecomputedTerm::numeral(i));
            if (i == int_hi) { break; }
        }
        for (auto const &c : consts) { base.push_back(PrecomputedTerm::symbol(c)); }
        std::set<PrecomputedTerm> all(base.begin(), base.end());
        std::vector<PrecomputedTerm> level(all.begin(), all.end());
        for (std::size_t d = 0; d < depth && !funcs.empty(); ++d) {
            std::vector<PrecomputedTerm> next;
            for (auto const &[name, arity] : funcs) {
                std::vector<std::size_t> idx(arity, 0);
                for (;;) {
                    std::vector<PrecomputedTerm> args;
                    args.reserve(arity);
                    for (auto k : idx) { args.push_back(level[k]); }
                    next.push_back(PrecomputedTerm::function(name, std::move(args)));
                    std::size_t k = arity;
                    while (k > 0 && ++idx[k - 1] == level.size()) { idx[--k] = 0; }
                    if (k == 0) { break; }
                }
            }
            all.insert(next.begin(), next.end());
            level.assign(all.begin(), all.end());
        }
        return level;
    }

    friend bool operator==(Universe const &, Universe const &) = default;
};

inline std::ostream &operator<<(std::ostream &out, Universe const &u) {
    out << "ints " << u.int_lo << ".." << u.int_hi << ", consts {";
    detail::print_joined(out, u.consts.begin(), u.consts.end(), ",", [&](auto const &c) { out << c; });
    out << "}, funcs {";
    detail::print_joined(out, u.funcs.begin(), u.funcs.end(), ",",
                         [&](auto const &f) { out << f.first << '/' << f.second; });
    return out << "}, depth " << u.depth;
}

// {{{ well-formedness

namespace detail {

inline bool well_formed(Term const &t, bool under_arith) {
    if (t.is_symbolic() && under_arith) { return false; }
    bool arith = under_arith || t.is(Term::Kind::Arith);
    for (auto const &a : t.args()) {
        if (!well_formed(a, arith)) { return false; }
    }
    return true;
}

} // namespace detail

/// No symbolic constant or function occurs in the scope of an arithmetical
/// function.
inline bool is_well_formed(Term const &t) { return detail::well_formed(t, false); }

inline bool is_well_formed(Literal const &l) {
    if (l.is_predicate()) {
        return std::all_of(l.args.begin(), l.args.end(), [](Term const &t) { return is_well_formed(t); });
    }
    return is_well_formed(l.lhs) && is_well_formed(l.rhs);
}

inline bool is_well_formed(std::vector<Literal> const &ls) {
    return std::all_of(ls.begin(), ls.end(), [](Literal const &l) { return is_well_formed(l); });
}

inline bool is_well_formed(ConditionalLiteral const &c) {
    return (!c.head || is_well_formed(*c.head)) && is_well_formed(c.conditions);
}

inline bool is_well_formed(AggregateExpression const &e) {
    return std::all_of(e.tuple.begin(), e.tuple.end(), [](Term const &t) { return is_well_formed(t); }) &&
           is_well_formed(e.conditions) && is_well_formed(e.guard);
}

inline bool is_well_formed(Rule const &r) {
    for (auto const &h : r.heads) {
        if (!is_well_formed(h)) { return false; }
    }
    for (auto const &b : r.body) {
        if (!std::visit([](auto const &x) { return is_well_formed(x); }, b)) { return false; }
    }
    return true;
}

/// Well-formed, and every operand that must be arithmetical (comparison
/// operands, aggregate guards) is. Substitution can break the latter.
inline bool is_valid(Literal const &l) {
    if (!is_well_formed(l)) { return false; }
    if (!l.is_predicate() && l.rel != Relation::Eq) { return l.lhs.is_arithmetical() && l.rhs.is_arithmetical(); }
    return true;
}

inline bool is_valid(std::vector<Literal> const &ls) {
    return std::all_of(ls.begin(), ls.end(), [](Literal const &l) { return is_valid(l); });
}

inline bool is_valid(ConditionalLiteral const &c) {
    return (!c.head || is_valid(*c.head)) && is_valid(c.conditions);
}

inline bool is_valid(AggregateExpression const &e) {
    return is_well_formed(e) && is_valid(e.conditions) && e.guard.is_arithmetical();
}

inline bool is_valid(Rule const &r) {
    for (auto const &h : r.heads) {
        if (!is_valid(h)) { return false; }
    }
    for (auto const &b : r.body) {
        if (!std::visit([](auto const &x) { return is_valid(x); }, b)) { return false; }
    }
    return true;
}

// }}}
// {{{ evaluation

/// Evaluates all arithmetical functions of a ground well-formed term.
inline PrecomputedTerm eval_term(Term const &t) {
    switch (t.kind()) {
        case Term::Kind::Numeral:
        case Term::Kind::Symbol:
            return PrecomputedTerm(t);
        case Term::Kind::Variable:
            throw EvalError("cannot evaluate non-ground term " + to_string(t));
        case Term::Kind::Function: {
            std::vector<PrecomputedTerm> args;
            args.reserve(t.args().size());
            for (auto const &a : t.args()) { args.push_back(eval_term(a)); }
            return PrecomputedTerm::function(t.name(), std::move(args));
        }
        case Term::Kind::Arith: {
            auto l = eval_term(t.left());
            auto r = eval_term(t.right());
            if (!l.is_numeral() || !r.is_numeral()) {
                throw EvalError("term is not well-formed: " + to_string(t));
            }
            std::int64_t v = 0;
            bool overflow = false;
            switch (t.op()) {
                case ArithOp::Add: overflow = __builtin_add_overflow(l.value(), r.value(), &v); break;
                case ArithOp::Sub: overflow = __builtin_sub_overflow(l.value(), r.value(), &v); break;
                case ArithOp::Mul: overflow = __builtin_mul_overflow(l.value(), r.value(), &v); break;
            }
            if (overflow) { throw EvalError("integer overflow evaluating " + to_string(t)); }
            return PrecomputedTerm::numeral(v);
        }
    }
    throw EvalError("unreachable");
}

// }}}
// {{{ global variables and instances

/// Variables of `H` that do not occur in the conditions.
inline VarSet global_vars(ConditionalLiteral const &c) {
    VarSet out;
    if (!c.head) { return out; }
    auto local = vars_of(c.conditions);
    for (auto const &v : vars_of(*c.head)) {
        if (!local.count(v)) { out.insert(v); }
    }
    return out;
}

inline VarSet global_vars(AggregateExpression const &e) { return vars_of(e.guard); }

inline VarSet global_vars(Rule const &r) {
    VarSet out;
    for (auto const &h : r.heads) { out.merge(global_vars(h)); }
    for (auto const &b : r.body) {
        out.merge(std::visit([](auto const &x) { return global_vars(x); }, b));
    }
    return out;
}

/// Calls `fn(binding)` for every assignment of `terms` to `vars`, in
/// lexicographic order with the first variable most significant.
template <class F>
void for_each_binding(VarSet const &vars, std::vector<PrecomputedTerm> const &terms, F &&fn) {
    std::vector<std::string> names(vars.begin(), vars.end());
    if (!names.empty() && terms.empty()) { return; }
    std::vector<std::size_t> idx(names.size(), 0);
    for (;;) {
        Binding b;
        for (std::size_t i = 0; i < names.size(); ++i) { b.emplace(names[i], terms[idx[i]]); }
        fn(b);
        std::size_t k = names.size();
        while (k > 0 && ++idx[k - 1] == terms.size()) { idx[--k] = 0; }
        if (k == 0) { return; }
    }
}

inline std::vector<Rule> instances(Rule const &r, std::vector<PrecomputedTerm> const &terms) {
    std::vector<Rule> out;
    for_each_binding(global_vars(r), terms, [&](Binding const &b) {
        auto inst = substitute(r, b);
        if (is_valid(inst)) { out.push_back(std::move(inst)); }
    });
    return out;
}

/// Closed valid rules obtained by substituting universe terms for the
/// global variables of `r`.
inline std::vector<Rule> instances(Rule const &r, Universe const &u) { return instances(r, u.precomputed_terms()); }

// }}}
// {{{ default universe and configuration

namespace detail {

inline void collect_signature(Term const &t, Universe &u) {
    if (t.is(Term::Kind::Symbol)) { u.consts.insert(t.name()); }
    if (t.is(Term::Kind::Function)) { u.funcs.emplace(t.name(), t.args().size()); }
    for (auto const &a : t.args()) { collect_signature(a, u); }
}

inline void collect_signature(Literal const &l, Universe &u) {
    for (auto const &a : l.args) { collect_signature(a, u); }
    if (!l.is_predicate()) {
        collect_signature(l.lhs, u);
        collect_signature(l.rhs, u);
    }
}

} // namespace detail

/// Numerals -8..8, the symbolic constants and function symbols occurring in
/// the program, depth 1.
inline Universe default_universe(Program const &p) {
    Universe u;
    auto lits = [&](std::vector<Literal> const &ls) {
        for (auto const &l : ls) { detail::collect_signature(l, u); }
    };
    for (auto const &r : p.rules) {
        for (auto const &h : r.heads) {
            if (h.head) { detail::collect_signature(*h.head, u); }
            lits(h.conditions);
        }
        for (auto const &b : r.body) {
            if (auto const *c = std::get_if<ConditionalLiteral>(&b)) {
                if (c->head) { detail::collect_signature(*c->head, u); }
                lits(c->conditions);
            }
            else {
                auto const &e = std::get<AggregateExpression>(b);
                for (auto const &t : e.tuple) { detail::collect_signature(t, u); }
                lits(e.conditions);
            }
        }
    }
    return u;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) { s.remove_prefix(1); }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) { s.remove_suffix(1); }
    return s;
}

inline std::int64_t parse_int(std::string_view s) {
    s = trim(s);
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
        throw std::invalid_argument("invalid integer '" + std::string(s) + "'");
    }
    return v;
}

inline std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    while (!trim(s).empty()) {
        auto pos = s.find(',');
        auto item = trim(s.substr(0, pos));
        if (item.empty()) { throw std::invalid_argument("empty list item"); }
        out.emplace_back(item);
        if (pos == std::string_view::npos) { break; }
        s.remove_prefix(pos + 1);
    }
    return out;
}

} // namespace detail

/// `LO..HI`
inline std::pair<std::int64_t, std::int64_t> parse_int_range(std::string_view s) {
    auto pos = s.find("..");
    if (pos == std::string_view::npos) { throw std::invalid_argument("expected LO..HI, got '" + std::string(s) + "'"); }
    auto lo = detail::parse_int(s.substr(0, pos));
    auto hi = detail::parse_int(s.substr(pos + 2));
    if (lo > hi) { throw std::invalid_argument("empty range '" + std::string(s) + "'"); }
    return {lo, hi};
}

inline std::set<std::string> parse_const_list(std::string_view s) {
    std::set<std::string> out;
    for (auto &c : detail::split_list(s)) {
        if (!std::islower(static_cast<unsigned char>(c.front())) ||
            !std::all_of(c.begin(), c.end(), [](char x) { return std::isalnum(static_cast<unsigned char>(x)) || x == '_'; })) {
            throw std::invalid_argument("invalid symbolic constant '" + c + "'");
        }
        out.insert(std::move(c));
    }
    return out;
}

/// `name/arity` items, e.g. `f/1,g/2`.
inline std::set<std::pair<std::string, std::size_t>> parse_func_list(std::string_view s) {
    std::set<std::pair<std::string, std::size_t>> out;
    for (auto const &item : detail::split_list(s)) {
        auto slash = item.find('/');
        if (slash == std::string::npos) { throw std::invalid_argument("expected name/arity, got '" + item + "'"); }
        auto arity = detail::parse_int(std::string_view(item).substr(slash + 1));
        if (arity < 1) { throw std::invalid_argument("arity must be positive in '" + item + "'"); }
        out.emplace(item.substr(0, slash), static_cast<std::size_t>(arity));
    }
    return out;
}

/// Applies `key = value` lines (`ints`, `consts`, `funcs`, `depth`) on top
/// of `base`. `#` and `%` start comments.
inline Universe parse_universe_config(std::string_view text, Universe base = {}) {
    std::size_t lineno = 0;
    while (!text.empty()) {
        auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++lineno;
        if (auto c = line.find_first_of("#%"); c != std::string_view::npos) { line = line.substr(0, c); }
        line = detail::trim(line);
        if (line.empty()) { continue; }
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("universe config line " + std::to_string(lineno) + ": expected key = value");
        }
        auto key = detail::trim(line.substr(0, eq));
        auto value = detail::trim(line.substr(eq + 1));
        if (key == "ints") { std::tie(base.int_lo, base.int_hi) = parse_int_range(value); }
        else if (key == "consts") { base.consts = parse_const_list(value); }
        else if (key == "funcs") { base.funcs = parse_func_list(value); }
        else if (key == "depth") {
            auto d = detail::parse_int(value);
            if (d < 0) { throw std::invalid_argument("depth must be nonnegative"); }
            base.depth = static_cast<std::size_t>(d);
        }
        else {
            throw std::invalid_argument("universe config line " + std::to_string(lineno) + ": unknown key '" +
                                        std::string(key) + "'");
        }
    }
    base.validate();
    return base;
}

// }}}

} // namespace gsem
