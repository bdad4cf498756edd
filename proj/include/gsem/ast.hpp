#pragma once

#include <gsem/term.hpp>

#include <optional>
#include <string_view>
#include <variant>

namespace gsem {

enum class Relation : std::uint8_t { Eq, Lt, Gt, Le, Ge };

inline std::string_view relation_symbol(Relation rel) {
    switch (rel) {
        case Relation::Eq: return "=";
        case Relation::Lt: return "<";
        case Relation::Gt: return ">";
        case Relation::Le: return "<=";
        case Relation::Ge: return ">=";
    }
    return "?";
}

template <class T>
bool holds(Relation rel, T const &a, T const &b) {
    switch (rel) {
        case Relation::Eq: return a == b;
        case Relation::Lt: return a < b;
        case Relation::Gt: return a > b;
        case Relation::Le: return a <= b;
        case Relation::Ge: return a >= b;
    }
    return false;
}

/// `p(t1,...,tk)`, `t1 = t2`, or `t1 < t2` (and friends), each possibly
/// under `not`. Comparisons other than `=` require arithmetical operands.
struct Literal {
    enum class Kind : std::uint8_t { Predicate, Comparison };

    Kind kind = Kind::Predicate;
    bool negated = false;
    std::string name;
    std::vector<Term> args;
    Relation rel = Relation::Eq;
    Term lhs;
    Term rhs;

    static Literal predicate(std::string name, std::vector<Term> args = {}, bool negated = false) {
        Literal l;
        l.kind = Kind::Predicate;
        l.name = std::move(name);
        l.args = std::move(args);
        l.negated = negated;
        return l;
    }
    static Literal comparison(Relation rel, Term lhs, Term rhs, bool negated = false) {
        Literal l;
        l.kind = Kind::Comparison;
        l.rel = rel;
        l.lhs = std::move(lhs);
        l.rhs = std::move(rhs);
        l.negated = negated;
        return l;
    }

    bool is_predicate() const { return kind == Kind::Predicate; }

    friend bool operator==(Literal const &, Literal const &) = default;
};

/// `H : L1, ..., Ln`. An empty `head` stands for falsity.
struct ConditionalLiteral {
    std::optional<Literal> head;
    std::vector<Literal> conditions;

    bool is_bottom() const { return !head.has_value(); }

    friend bool operator==(ConditionalLiteral const &, ConditionalLiteral const &) = default;
};

/// `#name{t1,...,tk : L1,...,Ln} rel guard`.
struct AggregateExpression {
    std::string name;
    std::vector<Term> tuple;
    std::vector<Literal> conditions;
    Relation rel = Relation::Eq;
    Term guard;

    friend bool operator==(AggregateExpression const &, AggregateExpression const &) = default;
};

using BodyElement = std::variant<ConditionalLiteral, AggregateExpression>;

/// `H1 | ... | Hm :- B1, ..., Bn` with m, n >= 0.
struct Rule {
    std::vector<ConditionalLiteral> heads;
    std::vector<BodyElement> body;

    friend bool operator==(Rule const &, Rule const &) = default;
};

struct Program {
    std::vector<Rule> rules;

    friend bool operator==(Program const &, Program const &) = default;
};

/// Propositional atom `p(t)` with precomputed arguments.
struct GroundAtom {
    std::string name;
    std::vector<PrecomputedTerm> args;

    friend bool operator==(GroundAtom const &, GroundAtom const &) = default;
    friend std::strong_ordering operator<=>(GroundAtom const &a, GroundAtom const &b) {
        if (auto c = a.name <=> b.name; c != 0) { return c; }
        for (std::size_t i = 0; i < a.args.size() && i < b.args.size(); ++i) {
            if (auto c = a.args[i] <=> b.args[i]; c != 0) { return c; }
        }
        return a.args.size() <=> b.args.size();
    }
};

// {{{ variables

inline void collect_vars(Literal const &l, VarSet &out) {
    if (l.is_predicate()) {
        for (auto const &a : l.args) { collect_vars(a, out); }
    }
    else {
        collect_vars(l.lhs, out);
        collect_vars(l.rhs, out);
    }
}

inline void collect_vars(std::vector<Literal> const &ls, VarSet &out) {
    for (auto const &l : ls) { collect_vars(l, out); }
}

inline void collect_vars(ConditionalLiteral const &c, VarSet &out) {
    if (c.head) { collect_vars(*c.head, out); }
    collect_vars(c.conditions, out);
}

inline void collect_vars(AggregateExpression const &e, VarSet &out) {
    for (auto const &t : e.tuple) { collect_vars(t, out); }
    collect_vars(e.conditions, out);
    collect_vars(e.guard, out);
}

inline void collect_vars(BodyElement const &b, VarSet &out) {
    std::visit([&](auto const &x) { collect_vars(x, out); }, b);
}

inline void collect_vars(Rule const &r, VarSet &out) {
    for (auto const &h : r.heads) { collect_vars(h, out); }
    for (auto const &b : r.body) { collect_vars(b, out); }
}

template <class T>
VarSet vars_of(T const &x) {
    VarSet out;
    collect_vars(x, out);
    return out;
}

// }}}
// {{{ substitution

inline Literal substitute(Literal const &l, Binding const &b) {
    Literal r = l;
    for (auto &a : r.args) { a = substitute(a, b); }
    if (!r.is_predicate()) {
        r.lhs = substitute(l.lhs, b);
        r.rhs = substitute(l.rhs, b);
    }
    return r;
}

inline std::vector<Literal> substitute(std::vector<Literal> const &ls, Binding const &b) {
    std::vector<Literal> out;
    out.reserve(ls.size());
    for (auto const &l : ls) { out.push_back(substitute(l, b)); }
    return out;
}

inline ConditionalLiteral substitute(ConditionalLiteral const &c, Binding const &b) {
    ConditionalLiteral r;
    if (c.head) { r.head = substitute(*c.head, b); }
    r.conditions = substitute(c.conditions, b);
    return r;
}

inline AggregateExpression substitute(AggregateExpression const &e, Binding const &b) {
    AggregateExpression r;
    r.name = e.name;
    r.tuple.reserve(e.tuple.size());
    for (auto const &t : e.tuple) { r.tuple.push_back(substitute(t, b)); }
    r.conditions = substitute(e.conditions, b);
    r.rel = e.rel;
    r.guard = substitute(e.guard, b);
    return r;
}

inline BodyElement substitute(BodyElement const &x, Binding const &b) {
    return std::visit([&](auto const &y) -> BodyElement { return substitute(y, b); }, x);
}

inline Rule substitute(Rule const &r, Binding const &b) {
    Rule out;
    out.heads.reserve(r.heads.size());
    for (auto const &h : r.heads) { out.heads.push_back(substitute(h, b)); }
    out.body.reserve(r.body.size());
    for (auto const &x : r.body) { out.body.push_back(substitute(x, b)); }
    return out;
}

// }}}
// {{{ printing

namespace detail {

template <class It, class F>
void print_joined(std::ostream &out, It begin, It end, std::string_view sep, F &&f) {
    for (auto it = begin; it != end; ++it) {
        if (it != begin) { out << sep; }
        f(*it);
    }
}

} // namespace detail

inline std::ostream &operator<<(std::ostream &out, Literal const &l) {
    if (l.is_predicate()) {
        if (l.negated) { out << "not "; }
        out << l.name;
        if (!l.args.empty()) {
            out << '(';
            detail::print_joined(out, l.args.begin(), l.args.end(), ",", [&](Term const &t) { out << t; });
            out << ')';
        }
        return out;
    }
    if (l.negated && l.rel == Relation::Eq) { return out << l.lhs << "!=" << l.rhs; }
    if (l.negated) { out << "not "; }
    return out << l.lhs << relation_symbol(l.rel) << l.rhs;
}

inline void print_conditions(std::ostream &out, std::vector<Literal> const &ls) {
    detail::print_joined(out, ls.begin(), ls.end(), ", ", [&](Literal const &l) { out << l; });
}

inline std::ostream &operator<<(std::ostream &out, ConditionalLiteral const &c) {
    if (c.head) { out << *c.head; }
    else { out << "#false"; }
    if (!c.conditions.empty()) {
        out << " : ";
        print_conditions(out, c.conditions);
    }
    return out;
}

inline std::ostream &operator<<(std::ostream &out, AggregateExpression const &e) {
    out << '#' << e.name << '{';
    detail::print_joined(out, e.tuple.begin(), e.tuple.end(), ",", [&](Term const &t) { out << t; });
    if (!e.conditions.empty()) {
        out << (e.tuple.empty() ? ": " : " : ");
        print_conditions(out, e.conditions);
    }
    return out << "} " << relation_symbol(e.rel) << ' ' << e.guard;
}

inline std::ostream &operator<<(std::ostream &out, BodyElement const &b) {
    std::visit([&](auto const &x) { out << x; }, b);
    return out;
}

inline std::ostream &operator<<(std::ostream &out, Rule const &r) {
    detail::print_joined(out, r.heads.begin(), r.heads.end(), " | ", [&](auto const &h) { out << h; });
    if (!r.body.empty()) {
        out << (r.heads.empty() ? ":- " : " :- ");
        detail::print_joined(out, r.body.begin(), r.body.end(), "; ", [&](auto const &b) { out << b; });
    }
    else if (r.heads.empty()) {
        out << ":-";
    }
    return out << '.';
}

inline std::ostream &operator<<(std::ostream &out, Program const &p) {
    for (auto const &r : p.rules) { out << r << '\n'; }
    return out;
}

inline std::ostream &operator<<(std::ostream &out, GroundAtom const &a) {
    out << a.name;
    if (!a.args.empty()) {
        out << '(';
        detail::print_joined(out, a.args.begin(), a.args.end(), ",", [&](auto const &t) { out << t; });
        out << ')';
    }
    return out;
}

template <class T>
std::string to_string(T const &x) {
    std::ostringstream out;
    out << x;
    return out.str();
}

// }}}

} // namespace gsem
