#pragma once

#include <gsem/aggregates.hpp>
#include <gsem/formula.hpp>
#include <gsem/ground.hpp>

namespace gsem {

/// Finitization controls shared by all translation steps.
class TranslationContext {
public:
    explicit TranslationContext(Universe universe, std::size_t admissible_cap = 12,
                                AggregateRegistry const &registry = AggregateRegistry::standard())
    : universe_(std::move(universe))
    , terms_(universe_.precomputed_terms())
    , admissible_cap_(admissible_cap)
    , registry_(&registry) {
        if (admissible_cap_ == 0) { throw std::invalid_argument("admissible cap must be positive"); }
    }

    Universe const &universe() const { return universe_; }
    std::vector<PrecomputedTerm> const &terms() const { return terms_; }
    std::size_t admissible_cap() const { return admissible_cap_; }
    AggregateRegistry const &registry() const { return *registry_; }

    /// Whether tau_rule and tau_program simplify truth constants.
    bool simplify = true;

private:
    Universe universe_;
    std::vector<PrecomputedTerm> terms_;
    std::size_t admissible_cap_;
    AggregateRegistry const *registry_;
};

// {{{ literals

/// Ground literal to formula. Comparisons evaluate to truth or falsity;
/// `not` on a comparison flips the constant.
inline Formula tau_lit(Literal const &l) {
    if (!vars_of(l).empty()) { throw EvalError("cannot translate non-ground literal " + to_string(l)); }
    if (l.is_predicate()) {
        std::vector<PrecomputedTerm> args;
        args.reserve(l.args.size());
        for (auto const &t : l.args) { args.push_back(eval_term(t)); }
        auto a = Formula::atom(l.name, std::move(args));
        return l.negated ? Formula::neg(std::move(a)) : a;
    }
    auto lhs = eval_term(l.lhs);
    auto rhs = eval_term(l.rhs);
    bool truth = false;
    if (l.rel == Relation::Eq) { truth = lhs == rhs; }
    else {
        if (!lhs.is_numeral() || !rhs.is_numeral()) {
            throw EvalError("comparison with non-arithmetical operand: " + to_string(l));
        }
        truth = holds(l.rel, lhs.value(), rhs.value());
    }
    return truth != l.negated ? Formula::top() : Formula::bottom();
}

inline Formula tau_list(std::vector<Literal> const &ls) {
    std::vector<Formula> kids;
    kids.reserve(ls.size());
    for (auto const &l : ls) { kids.push_back(tau_lit(l)); }
    return Formula::conj(std::move(kids));
}

// }}}
// {{{ conditional literals

namespace detail {

inline void require_closed(VarSet const &globals, std::string const &what) {
    if (!globals.empty()) { throw std::invalid_argument(what + " is not closed (global variable " + *globals.begin() + ")"); }
}

// Calls fn(conditions, head) for every valid substitution of the variables
// of c; head is empty for falsity.
template <class F>
void for_each_cond_instance(ConditionalLiteral const &c, TranslationContext const &ctx, F &&fn) {
    require_closed(global_vars(c), "conditional literal " + to_string(c));
    for_each_binding(vars_of(c), ctx.terms(), [&](Binding const &b) {
        auto conds = substitute(c.conditions, b);
        if (!is_valid(conds)) { return; }
        std::optional<Literal> head;
        if (c.head) {
            head = substitute(*c.head, b);
            if (!is_valid(*head)) { return; }
        }
        fn(conds, head);
    });
}

} // namespace detail

/// Body reading: conjunction over substitutions of (tau L -> tau H).
inline Formula tau_cond(ConditionalLiteral const &c, TranslationContext const &ctx) {
    std::vector<Formula> kids;
    detail::for_each_cond_instance(c, ctx, [&](auto const &conds, auto const &head) {
        kids.push_back(Formula::impl(tau_list(conds), head ? tau_lit(*head) : Formula::bottom()));
    });
    return Formula::conj(std::move(kids));
}

/// Head reading: disjunction over substitutions of (tau L and tau H).
inline Formula tau_cond_head(ConditionalLiteral const &c, TranslationContext const &ctx) {
    std::vector<Formula> kids;
    detail::for_each_cond_instance(c, ctx, [&](auto const &conds, auto const &head) {
        std::vector<Formula> parts;
        parts.reserve(conds.size() + 1);
        for (auto const &l : conds) { parts.push_back(tau_lit(l)); }
        parts.push_back(head ? tau_lit(*head) : Formula::bottom());
        kids.push_back(Formula::conj(std::move(parts)));
    });
    return Formula::disj(std::move(kids));
}

// }}}
// {{{ aggregates

/// Admissible tuples of a closed aggregate: values for `vars` (sorted)
/// under which the tuple terms and conditions are valid.
struct AdmissibleTuples {
    std::vector<std::string> vars;
    std::vector<Tuple> tuples;

    Binding binding(Tuple const &r) const {
        Binding b;
        for (std::size_t i = 0; i < vars.size(); ++i) { b.emplace(vars[i], r[i]); }
        return b;
    }
};

inline AdmissibleTuples admissible_tuples(AggregateExpression const &e, TranslationContext const &ctx) {
    detail::require_closed(global_vars(e), "aggregate " + to_string(e));
    auto vars = vars_of(e);
    AdmissibleTuples out{{vars.begin(), vars.end()}, {}};
    for_each_binding(vars, ctx.terms(), [&](Binding const &b) {
        auto inst = substitute(e, b);
        if (!is_valid(inst)) { return; }
        Tuple r;
        r.reserve(out.vars.size());
        for (auto const &v : out.vars) { r.push_back(b.at(v)); }
        out.tuples.push_back(std::move(r));
        if (out.tuples.size() > ctx.admissible_cap()) {
            throw CapExceeded("admissible tuples of " + to_string(e), out.tuples.size(), ctx.admissible_cap());
        }
    });
    return out;
}

namespace detail {

inline Tuple tuple_image(AggregateExpression const &e, Binding const &b) {
    Tuple img;
    img.reserve(e.tuple.size());
    for (auto const &t : e.tuple) { img.push_back(eval_term(substitute(t, b))); }
    return img;
}

inline std::int64_t guard_value(AggregateExpression const &e) {
    auto g = eval_term(e.guard);
    if (!g.is_numeral()) { throw EvalError("aggregate guard does not evaluate to an integer: " + to_string(e)); }
    return g.value();
}

} // namespace detail

/// Whether the aggregate of the images of `delta` stands in the relation
/// to the guard.
inline bool justifies(std::span<Tuple const> delta, AggregateExpression const &e, TranslationContext const &ctx) {
    detail::require_closed(global_vars(e), "aggregate " + to_string(e));
    auto vars = vars_of(e);
    AdmissibleTuples shape{{vars.begin(), vars.end()}, {}};
    TupleSet images;
    for (auto const &r : delta) {
        if (r.size() != shape.vars.size()) { throw std::invalid_argument("tuple length does not match aggregate variables"); }
        images.insert(detail::tuple_image(e, shape.binding(r)));
    }
    return agg_compare(ctx.registry().apply(e.name, images), e.rel, detail::guard_value(e));
}

/// Conjunction, over every set D of admissible tuples that does not justify
/// the aggregate, of (AND_{r in D} tau L_r -> OR_{r in A\D} tau L_r).
inline Formula tau_aggregate(AggregateExpression const &e, TranslationContext const &ctx) {
    auto adm = admissible_tuples(e, ctx);
    std::size_t const n = adm.tuples.size();
    if (n > 30) { throw CapExceeded("subsets of admissible tuples of " + to_string(e), n, 30); }
    std::vector<Tuple> images;
    std::vector<Formula> conds;
    for (auto const &r : adm.tuples) {
        auto b = adm.binding(r);
        images.push_back(detail::tuple_image(e, b));
        conds.push_back(tau_list(substitute(e.conditions, b)));
    }
    auto const *fn = ctx.registry().find(e.name);
    if (fn == nullptr) { throw std::invalid_argument("unknown aggregate #" + e.name); }
    auto guard = detail::guard_value(e);

    std::vector<Formula> kids;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        TupleSet selected;
        for (std::size_t i = 0; i < n; ++i) {
            if ((mask >> i) & 1U) { selected.insert(images[i]); }
        }
        if (agg_compare((*fn)(selected), e.rel, guard)) { continue; }
        std::vector<Formula> in, out;
        for (std::size_t i = 0; i < n; ++i) { ((mask >> i) & 1U ? in : out).push_back(conds[i]); }
        kids.push_back(Formula::impl(Formula::conj(std::move(in)), Formula::disj(std::move(out))));
    }
    return Formula::conj(std::move(kids));
}

// }}}
// {{{ rules and programs

inline Formula tau_body_element(BodyElement const &b, TranslationContext const &ctx) {
    if (auto const *c = std::get_if<ConditionalLiteral>(&b)) { return tau_cond(*c, ctx); }
    return tau_aggregate(std::get<AggregateExpression>(b), ctx);
}

/// Translation of a closed instance: body conjunction implies head disjunction.
inline Formula tau_instance(Rule const &inst, TranslationContext const &ctx) {
    std::vector<Formula> body, head;
    for (auto const &b : inst.body) { body.push_back(tau_body_element(b, ctx)); }
    for (auto const &h : inst.heads) { head.push_back(tau_cond_head(h, ctx)); }
    return Formula::impl(Formula::conj(std::move(body)), Formula::disj(std::move(head)));
}

/// Conjunction over all instances of the rule.
inline Formula tau_rule(Rule const &r, TranslationContext const &ctx) {
    std::vector<Formula> kids;
    for (auto const &inst : instances(r, ctx.terms())) { kids.push_back(tau_instance(inst, ctx)); }
    auto f = Formula::conj(std::move(kids));
    return ctx.simplify ? simplify(f) : f;
}

/// One formula per rule.
inline std::vector<Formula> tau_program(Program const &p, TranslationContext const &ctx) {
    std::vector<Formula> out;
    out.reserve(p.rules.size());
    for (auto const &r : p.rules) { out.push_back(tau_rule(r, ctx)); }
    return out;
}

// }}}

} // namespace gsem
