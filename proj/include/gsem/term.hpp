#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gsem {

enum class ArithOp : char { Add = '+', Sub = '-', Mul = '*' };

/// A term of the input language: numeral, symbolic constant, variable,
/// symbolic function application, or a binary arithmetical operation.
///
/// Terms are plain values. A symbolic function always has arity >= 1;
/// `function(name, {})` yields a symbolic constant.
class Term {
public:
    enum class Kind : std::uint8_t { Numeral, Symbol, Variable, Function, Arith };

    Term() = default;

    static Term numeral(std::int64_t value) {
        Term t;
        t.kind_ = Kind::Numeral;
        t.value_ = value;
        return t;
    }
    static Term symbol(std::string name) {
        Term t;
        t.kind_ = Kind::Symbol;
        t.name_ = std::move(name);
        return t;
    }
    static Term variable(std::string name) {
        Term t;
        t.kind_ = Kind::Variable;
        t.name_ = std::move(name);
        return t;
    }
    static Term function(std::string name, std::vector<Term> args) {
        if (args.empty()) { return symbol(std::move(name)); }
        Term t;
        t.kind_ = Kind::Function;
        t.name_ = std::move(name);
        t.args_ = std::move(args);
        return t;
    }
    static Term arith(ArithOp op, Term left, Term right) {
        Term t;
        t.kind_ = Kind::Arith;
        t.op_ = op;
        t.args_.reserve(2);
        t.args_.push_back(std::move(left));
        t.args_.push_back(std::move(right));
        return t;
    }

    Kind kind() const { return kind_; }
    bool is(Kind k) const { return kind_ == k; }
    std::int64_t value() const { return value_; }
    std::string const &name() const { return name_; }
    std::vector<Term> const &args() const { return args_; }
    ArithOp op() const { return op_; }
    Term const &left() const { return args_[0]; }
    Term const &right() const { return args_[1]; }

    /// Symbolic constant or symbolic function application.
    bool is_symbolic() const { return kind_ == Kind::Symbol || kind_ == Kind::Function; }

    bool is_ground() const {
        if (kind_ == Kind::Variable) { return false; }
        for (auto const &a : args_) {
            if (!a.is_ground()) { return false; }
        }
        return true;
    }

    /// No symbolic object or function constants anywhere.
    bool is_arithmetical() const {
        if (is_symbolic()) { return false; }
        for (auto const &a : args_) {
            if (!a.is_arithmetical()) { return false; }
        }
        return true;
    }

    /// Ground and free of arithmetical functions.
    bool is_precomputed() const {
        if (kind_ == Kind::Variable || kind_ == Kind::Arith) { return false; }
        for (auto const &a : args_) {
            if (!a.is_precomputed()) { return false; }
        }
        return true;
    }

    friend bool operator==(Term const &, Term const &) = default;

private:
    Kind kind_ = Kind::Numeral;
    std::int64_t value_ = 0;
    std::string name_;
    std::vector<Term> args_;
    ArithOp op_ = ArithOp::Add;
};

// Order: numerals by value < symbolic terms (name, then args; constants are
// nullary functions) < variables < arithmetic. Only the first two groups
// matter for precomputed terms.
inline std::strong_ordering compare(Term const &a, Term const &b) {
    auto rank = [](Term const &t) {
        switch (t.kind()) {
            case Term::Kind::Numeral:  return 0;
            case Term::Kind::Symbol:
            case Term::Kind::Function: return 1;
            case Term::Kind::Variable: return 2;
            case Term::Kind::Arith:    return 3;
        }
        return 4;
    };
    if (auto c = rank(a) <=> rank(b); c != 0) { return c; }
    switch (a.kind()) {
        case Term::Kind::Numeral: return a.value() <=> b.value();
        case Term::Kind::Variable: return a.name() <=> b.name();
        case Term::Kind::Arith:
            if (a.op() != b.op()) { return static_cast<char>(a.op()) <=> static_cast<char>(b.op()); }
            break;
        default:
            if (auto c = a.name() <=> b.name(); c != 0) { return c; }
            break;
    }
    auto const &x = a.args();
    auto const &y = b.args();
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (auto c = compare(x[i], y[i]); c != 0) { return c; }
    }
    return x.size() <=> y.size();
}

struct TermLess {
    bool operator()(Term const &a, Term const &b) const { return compare(a, b) < 0; }
};

namespace detail {

inline int precedence(ArithOp op) { return op == ArithOp::Mul ? 2 : 1; }

inline void print_operand(std::ostream &out, Term const &t, int min_prec);

inline void print_term(std::ostream &out, Term const &t) {
    switch (t.kind()) {
        case Term::Kind::Numeral:
            out << t.value();
            break;
        case Term::Kind::Symbol:
        case Term::Kind::Variable:
            out << t.name();
            break;
        case Term::Kind::Function: {
            out << t.name() << '(';
            bool first = true;
            for (auto const &a : t.args()) {
                if (!first) { out << ','; }
                first = false;
                print_term(out, a);
            }
            out << ')';
            break;
        }
        case Term::Kind::Arith: {
            int p = precedence(t.op());
            print_operand(out, t.left(), p);
            out << static_cast<char>(t.op());
            // operators are left-associative, so an equal-precedence right
            // operand needs parentheses
            print_operand(out, t.right(), p + 1);
            break;
        }
    }
}

inline void print_operand(std::ostream &out, Term const &t, int min_prec) {
    bool paren = (t.is(Term::Kind::Arith) && precedence(t.op()) < min_prec) ||
                 (t.is(Term::Kind::Numeral) && t.value() < 0);
    if (paren) { out << '('; }
    print_term(out, t);
    if (paren) { out << ')'; }
}

} // namespace detail

inline std::ostream &operator<<(std::ostream &out, Term const &t) {
    detail::print_term(out, t);
    return out;
}

inline std::string to_string(Term const &t) {
    std::ostringstream out;
    out << t;
    return out.str();
}

/// A ground term without arithmetical functions. These are the values
/// variables range over and the arguments of propositional atoms.
class PrecomputedTerm {
public:
    explicit PrecomputedTerm(Term t) : term_(std::move(t)) {
        if (!term_.is_precomputed()) {
            throw std::invalid_argument("not a precomputed term: " + to_string(term_));
        }
    }
    static PrecomputedTerm numeral(std::int64_t v) { return PrecomputedTerm(Term::numeral(v)); }
    static PrecomputedTerm symbol(std::string name) { return PrecomputedTerm(Term::symbol(std::move(name))); }
    static PrecomputedTerm function(std::string name, std::vector<PrecomputedTerm> args) {
        std::vector<Term> ts;
        ts.reserve(args.size());
        for (auto &a : args) { ts.push_back(std::move(a.term_)); }
        return PrecomputedTerm(Term::function(std::move(name), std::move(ts)));
    }

    Term const &term() const { return term_; }
    bool is_numeral() const { return term_.is(Term::Kind::Numeral); }
    std::int64_t value() const { return term_.value(); }

    friend bool operator==(PrecomputedTerm const &, PrecomputedTerm const &) = default;
    friend std::strong_ordering operator<=>(PrecomputedTerm const &a, PrecomputedTerm const &b) {
        return compare(a.term_, b.term_);
    }

private:
    Term term_;
};

inline std::ostream &operator<<(std::ostream &out, PrecomputedTerm const &t) { return out << t.term(); }

/// Variable name -> precomputed term.
using Binding = std::map<std::string, PrecomputedTerm>;
using VarSet = std::set<std::string>;

inline void collect_vars(Term const &t, VarSet &out) {
    if (t.is(Term::Kind::Variable)) {
        out.insert(t.name());
        return;
    }
    for (auto const &a : t.args()) { collect_vars(a, out); }
}

inline VarSet vars_of(Term const &t) {
    VarSet out;
    collect_vars(t, out);
    return out;
}

inline Term substitute(Term const &t, Binding const &binding) {
    switch (t.kind()) {
        case Term::Kind::Variable: {
            auto it = binding.find(t.name());
            return it == binding.end() ? t : it->second.term();
        }
        case Term::Kind::Function: {
            std::vector<Term> args;
            args.reserve(t.args().size());
            for (auto const &a : t.args()) { args.push_back(substitute(a, binding)); }
            return Term::function(t.name(), std::move(args));
        }
        case Term::Kind::Arith:
            return Term::arith(t.op(), substitute(t.left(), binding), substitute(t.right(), binding));
        default:
            return t;
    }
}

} // namespace gsem
