#pragma once

#include <gsem/aggregates.hpp>
#include <gsem/ast.hpp>
#include <gsem/error.hpp>

#include <cctype>
#include <charconv>
#include <string_view>

namespace gsem {

struct SourceProgram {
    std::string text;
    std::string filename = "<input>";
};

namespace detail {

enum class Tok : std::uint8_t {
    Ident, Var, Number, Hash, Not,
    If, Colon, Dot, Comma, Semi, Bar,
    LParen, RParen, LBrace, RBrace,
    Plus, Minus, Star,
    Eq, Neq, Lt, Le, Gt, Ge,
    End
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

inline std::vector<Token> tokenize(std::string_view src, std::string const &file) {
    std::vector<Token> out;
    std::size_t i = 0, line = 1, col = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') { ++line; col = 1; }
            else { ++col; }
        }
    };
    auto is_ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) { advance(1); continue; }
        if (c == '%') {
            while (i < src.size() && src[i] != '\n') { advance(1); }
            continue;
        }
        std::size_t l = line, cl = col, start = i;
        auto push = [&](Tok k, std::size_t n) {
            out.push_back({k, std::string(src.substr(start, n)), l, cl});
            advance(n);
        };
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t n = 0;
            while (start + n < src.size() && std::isdigit(static_cast<unsigned char>(src[start + n]))) { ++n; }
            push(Tok::Number, n);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t n = 0;
            while (start + n < src.size() && is_ident(src[start + n])) { ++n; }
            auto word = src.substr(start, n);
            Tok k = word == "not" ? Tok::Not
                  : (std::isupper(static_cast<unsigned char>(c)) || c == '_') ? Tok::Var
                  : Tok::Ident;
            push(k, n);
            continue;
        }
        if (c == '#') {
            std::size_t n = 1;
            while (start + n < src.size() && is_ident(src[start + n])) { ++n; }
            if (n == 1) { throw ParseError(file, l, cl, "expected directive name after '#'"); }
            out.push_back({Tok::Hash, std::string(src.substr(start + 1, n - 1)), l, cl});
            advance(n);
            continue;
        }
        auto two = src.substr(i, 2);
        if (two == ":-") { push(Tok::If, 2); continue; }
        if (two == "!=") { push(Tok::Neq, 2); continue; }
        if (two == "<=") { push(Tok::Le, 2); continue; }
        if (two == ">=") { push(Tok::Ge, 2); continue; }
        if (two == "==") { throw ParseError(file, l, cl, "'==' is not supported, use '='"); }
        switch (c) {
            case ':': push(Tok::Colon, 1); continue;
            case '.': push(Tok::Dot, 1); continue;
            case ',': push(Tok::Comma, 1); continue;
            case ';': push(Tok::Semi, 1); continue;
            case '|': push(Tok::Bar, 1); continue;
            case '(': push(Tok::LParen, 1); continue;
            case ')': push(Tok::RParen, 1); continue;
            case '{': push(Tok::LBrace, 1); continue;
            case '}': push(Tok::RBrace, 1); continue;
            case '+': push(Tok::Plus, 1); continue;
            case '-': push(Tok::Minus, 1); continue;
            case '*': push(Tok::Star, 1); continue;
            case '=': push(Tok::Eq, 1); continue;
            case '<': push(Tok::Lt, 1); continue;
            case '>': push(Tok::Gt, 1); continue;
            default: break;
        }
        throw ParseError(file, l, cl, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    Parser(std::string_view text, std::string file, AggregateRegistry const &registry)
    : file_(std::move(file)), registry_(registry), toks_(tokenize(text, file_)) {}

    Program program() {
        Program p;
        while (!at(Tok::End)) { p.rules.push_back(rule()); }
        return p;
    }

    Term whole_term() {
        Term t = term();
        expect(Tok::End, "end of input");
        return t;
    }

    Literal whole_literal() {
        Literal l = literal();
        expect(Tok::End, "end of input");
        return l;
    }

private:
    Token const &peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at(Tok k) const { return peek().kind == k; }
    bool accept(Tok k) {
        if (!at(k)) { return false; }
        ++pos_;
        return true;
    }

    [[noreturn]] void fail(std::string const &msg) const { fail_at(peek(), msg); }
    [[noreturn]] void fail_at(Token const &t, std::string const &msg) const {
        if (t.kind == Tok::End) { throw ParseError(file_, t.line, t.column, "unterminated rule: " + msg); }
        throw ParseError(file_, t.line, t.column, msg);
    }

    void expect(Tok k, char const *what) {
        if (!accept(k)) {
            fail(std::string("expected ") + what + (at(Tok::End) ? "" : " but found '" + peek().text + "'"));
        }
    }

    Rule rule() {
        Rule r;
        if (accept(Tok::LBrace)) {
            Token const &start = peek();
            Literal atom = literal();
            if (!atom.is_predicate() || atom.negated) { fail_at(start, "choice element must be an atom"); }
            expect(Tok::RBrace, "'}'");
            Literal neg = atom;
            neg.negated = true;
            r.heads.push_back({std::move(atom), {}});
            r.heads.push_back({std::move(neg), {}});
        }
        else if (!at(Tok::If)) {
            r.heads.push_back(conditional_literal());
            while (accept(Tok::Bar)) { r.heads.push_back(conditional_literal()); }
        }
        if (accept(Tok::If)) { body(r.body); }
        expect(Tok::Dot, "'.'");
        return r;
    }

    void body(std::vector<BodyElement> &out) {
        if (at(Tok::Dot)) { return; }
        for (;;) {
            bool has_condition = false;
            if (at(Tok::Hash) && peek().text != "false") { out.emplace_back(aggregate()); }
            else {
                auto c = conditional_literal();
                has_condition = !c.conditions.empty();
                out.emplace_back(std::move(c));
            }
            if (accept(Tok::Semi)) { continue; }
            // after a condition list, commas were consumed as condition separators
            if (!has_condition && accept(Tok::Comma)) { continue; }
            if (at(Tok::Dot)) { return; }
            fail("expected ';', ',' or '.' in rule body");
        }
    }

    ConditionalLiteral conditional_literal() {
        ConditionalLiteral c;
        if (at(Tok::Hash)) {
            if (peek().text != "false") { fail("aggregate not allowed here"); }
            ++pos_;
        }
        else {
            c.head = literal();
        }
        if (accept(Tok::Colon)) {
            c.conditions.push_back(literal());
            while (accept(Tok::Comma)) { c.conditions.push_back(literal()); }
        }
        return c;
    }

    AggregateExpression aggregate() {
        Token const &name = peek();
        ++pos_;
        if (!registry_.contains(name.text)) { fail_at(name, "unknown aggregate name '#" + name.text + "'"); }
        AggregateExpression e;
        e.name = name.text;
        expect(Tok::LBrace, "'{'");
        if (!at(Tok::Colon) && !at(Tok::RBrace)) {
            e.tuple.push_back(term());
            while (accept(Tok::Comma)) { e.tuple.push_back(term()); }
        }
        if (accept(Tok::Colon)) {
            e.conditions.push_back(literal());
            while (accept(Tok::Comma)) { e.conditions.push_back(literal()); }
        }
        expect(Tok::RBrace, "'}'");
        auto rel = relation();
        if (!rel || rel->second) { fail("expected one of '=', '<', '>', '<=', '>=' after aggregate"); }
        e.rel = rel->first;
        Token const &g = peek();
        e.guard = term();
        if (!e.guard.is_arithmetical()) { fail_at(g, "aggregate guard must be an arithmetical term"); }
        return e;
    }

    // relation token, if any; second is true for '!='
    std::optional<std::pair<Relation, bool>> relation() {
        std::optional<std::pair<Relation, bool>> r;
        switch (peek().kind) {
            case Tok::Eq:  r = {Relation::Eq, false}; break;
            case Tok::Neq: r = {Relation::Eq, true}; break;
            case Tok::Lt:  r = {Relation::Lt, false}; break;
            case Tok::Le:  r = {Relation::Le, false}; break;
            case Tok::Gt:  r = {Relation::Gt, false}; break;
            case Tok::Ge:  r = {Relation::Ge, false}; break;
            default: return r;
        }
        ++pos_;
        return r;
    }

    Literal literal() {
        bool negated = accept(Tok::Not);
        if (at(Tok::LParen)) {
            // `not (t1 = t2)`; falls back to a parenthesized term on failure
            auto saved = pos_;
            try {
                ++pos_;
                Literal l = comparison_or_atom(negated);
                if (!l.is_predicate() && accept(Tok::RParen)) { return l; }
            }
            catch (ParseError const &) {
            }
            pos_ = saved;
        }
        return comparison_or_atom(negated);
    }

    Literal comparison_or_atom(bool negated) {
        Token const &start = peek();
        Term lhs = term();
        if (at(Tok::Hash)) { fail("unexpected aggregate"); }
        if (auto rel = relation()) {
            if (at(Tok::Hash)) { fail("aggregate guards on the left are not supported"); }
            Token const &rtok = peek();
            Term rhs = term();
            if (rel->second && negated) { fail_at(start, "'not' cannot be combined with '!='"); }
            if (rel->first != Relation::Eq) {
                if (!lhs.is_arithmetical()) { fail_at(start, "comparison with non-arithmetical operand"); }
                if (!rhs.is_arithmetical()) { fail_at(rtok, "comparison with non-arithmetical operand"); }
            }
            return Literal::comparison(rel->first, std::move(lhs), std::move(rhs), negated || rel->second);
        }
        if (!lhs.is_symbolic()) { fail_at(start, "expected an atom or a comparison"); }
        std::string name = lhs.name();
        std::vector<Term> args = lhs.args();
        return Literal::predicate(std::move(name), std::move(args), negated);
    }

    Term term() {
        Term t = product();
        for (;;) {
            if (accept(Tok::Plus)) { t = Term::arith(ArithOp::Add, std::move(t), product()); }
            else if (accept(Tok::Minus)) { t = Term::arith(ArithOp::Sub, std::move(t), product()); }
            else { return t; }
        }
    }

    Term product() {
        Term t = unary();
        while (accept(Tok::Star)) { t = Term::arith(ArithOp::Mul, std::move(t), unary()); }
        return t;
    }

    Term unary() {
        if (accept(Tok::Minus)) {
            if (at(Tok::Number)) { return numeral(true); }
            return Term::arith(ArithOp::Sub, Term::numeral(0), unary());
        }
        return primary();
    }

    Term numeral(bool negative) {
        Token const &t = peek();
        std::uint64_t mag = 0;
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), mag);
        std::uint64_t limit = negative ? std::uint64_t{1} << 63 : (std::uint64_t{1} << 63) - 1;
        if (ec != std::errc() || mag > limit) { fail("integer literal out of range"); }
        ++pos_;
        if (negative) { return Term::numeral(mag == limit ? INT64_MIN : -static_cast<std::int64_t>(mag)); }
        return Term::numeral(static_cast<std::int64_t>(mag));
    }

    Term primary() {
        Token const &t = peek();
        switch (t.kind) {
            case Tok::Number: return numeral(false);
            case Tok::Var: ++pos_; return Term::variable(t.text);
            case Tok::Ident: {
                ++pos_;
                if (!accept(Tok::LParen)) { return Term::symbol(t.text); }
                std::vector<Term> args;
                args.push_back(term());
                while (accept(Tok::Comma)) { args.push_back(term()); }
                expect(Tok::RParen, "')'");
                return Term::function(t.text, std::move(args));
            }
            case Tok::LParen: {
                ++pos_;
                Term inner = term();
                expect(Tok::RParen, "')'");
                return inner;
            }
            default:
                fail(t.kind == Tok::End ? "expected a term" : "expected a term but found '" + t.text + "'");
        }
    }

    std::string file_;
    AggregateRegistry const &registry_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Program parse_program(SourceProgram const &src,
                             AggregateRegistry const &registry = AggregateRegistry::standard()) {
    return detail::Parser(src.text, src.filename, registry).program();
}

inline Program parse_program(std::string_view text, std::string filename = "<input>") {
    return detail::Parser(text, std::move(filename), AggregateRegistry::standard()).program();
}

inline Term parse_term(std::string_view text) {
    return detail::Parser(text, "<term>", AggregateRegistry::standard()).whole_term();
}

inline Literal parse_literal(std::string_view text) {
    return detail::Parser(text, "<literal>", AggregateRegistry::standard()).whole_literal();
}

/// Canonical concrete syntax; `parse_program(render(p)) == p`.
template <class T>
std::string render(T const &x) {
    return to_string(x);
}

} // namespace gsem
