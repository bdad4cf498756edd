#include "support.hpp"

#include <gsem/corpus.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace gsem;
using namespace gsem::test;

TEST_CASE("well-formedness") {
    CHECK_FALSE(is_well_formed(parse_term("c+2")));
    CHECK(is_well_formed(parse_term("f(2+2)")));
    CHECK(is_well_formed(parse_term("3")));
    CHECK_FALSE(is_well_formed(parse_term("f(1)*2")));
    CHECK(is_well_formed(parse_term("X+1")));
}

TEST_CASE("evaluation") {
    CHECK(eval_term(parse_term("f(2+2)")) == PrecomputedTerm::function("f", {PrecomputedTerm::numeral(4)}));
    CHECK(eval_term(parse_term("7")) == PrecomputedTerm::numeral(7));
    CHECK(eval_term(parse_term("(2*3)-10")) == PrecomputedTerm::numeral((2 * 3) - 10));
    CHECK(eval_term(parse_term("2-3-4")) == PrecomputedTerm::numeral(2 - 3 - 4));
    CHECK_THROWS_AS(eval_term(parse_term("X+1")), EvalError);
    CHECK_THROWS_AS(eval_term(parse_term("c+1")), EvalError);
    CHECK_THROWS_AS(eval_term(parse_term("9223372036854775807+1")), EvalError);
    CHECK_THROWS_AS(eval_term(parse_term("4611686018427387904*2")), EvalError);
}

TEST_CASE("global variables") {
    CHECK(global_vars(rule("total_hours(N) :- #sum{H,C : enroll(C), hours(H,C)} = N.")) == VarSet{"N"});
    CHECK(global_vars(corpus::program("sort").rules[0]) == VarSet{"X", "Y"});
    CHECK(global_vars(rule("q :- #count{X : p(X)} = 0.")).empty());
    auto c = std::get<ConditionalLiteral>(rule(":- available(X) : person(X).").body[0]);
    CHECK(global_vars(c).empty());
    auto d = std::get<ConditionalLiteral>(rule(":- p(X,Y) : q(Y).").body[0]);
    CHECK(global_vars(d) == VarSet{"X"});
}

TEST_CASE("instances of the sum-free constraint bind numerals only") {
    auto r = rule(":- p(X), p(Y), p(X+Y).");
    auto inst = instances(r, ints(1, 2, {"c"}));
    REQUIRE(inst.size() == 4);
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    for (auto const &i : inst) {
        auto const &x = std::get<ConditionalLiteral>(i.body[0]).head->args[0];
        auto const &y = std::get<ConditionalLiteral>(i.body[1]).head->args[0];
        REQUIRE(x.kind() == Term::Kind::Numeral);
        REQUIRE(y.kind() == Term::Kind::Numeral);
        seen.emplace(x.value(), y.value());
    }
    CHECK(seen == std::set<std::pair<std::int64_t, std::int64_t>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}});
}

TEST_CASE("instances of closed and aggregate rules") {
    auto closed = rule("q :- #count{X : p(X)} = 0.");
    CHECK(instances(closed, ints(0, 3)) == std::vector<Rule>{closed});

    auto th = rule("total_hours(N) :- #sum{H,C : enroll(C), hours(H,C)} = N.");
    auto inst = instances(th, ints(6, 6));
    REQUIRE(inst.size() == 1);
    CHECK(render(inst[0]) == "total_hours(6) :- #sum{H,C : enroll(C), hours(H,C)} = 6.");

    // A symbolic guard is not arithmetical, so those bindings are dropped.
    CHECK(instances(th, ints(6, 6, {"a"})).size() == 1);
}

TEST_CASE("universe terms") {
    Universe u = ints(0, 1, {"a"});
    u.funcs = {{"f", 1}};
    auto ts = u.precomputed_terms();
    CHECK(ts.size() == 6);
    CHECK(std::is_sorted(ts.begin(), ts.end()));
    u.depth = 2;
    CHECK(u.precomputed_terms().size() == 9);
    CHECK_THROWS_AS(ints(2, 1).precomputed_terms(), std::invalid_argument);

    auto d = default_universe(parse_program("p(f(a)) :- q(b, 1)."));
    CHECK(d.int_lo == -8);
    CHECK(d.int_hi == 8);
    CHECK(d.consts == std::set<std::string>{"a", "b"});
    CHECK(d.funcs == std::set<std::pair<std::string, std::size_t>>{{"f", 1}});
    CHECK(d.depth == 1);
}

TEST_CASE("universe configuration") {
    auto u = parse_universe_config("ints = -1..2 # range\nconsts = a, b\n\nfuncs = f/1,g/2\ndepth = 0\n");
    CHECK(u.int_lo == -1);
    CHECK(u.int_hi == 2);
    CHECK(u.consts == std::set<std::string>{"a", "b"});
    CHECK(u.funcs.size() == 2);
    CHECK(u.depth == 0);
    CHECK_THROWS_AS(parse_universe_config("ints = 3..1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_universe_config("colour = red"), std::invalid_argument);
    CHECK_THROWS_AS(parse_int_range("1-3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_const_list("A"), std::invalid_argument);
}

TEST_CASE("property: instances are closed, valid, bounded and monotone in the universe") {
    std::vector<std::string> rules{
        ":- p(X), p(Y), p(X+Y).",
        "order(X,Y) :- p(X); p(Y); X<Y; not p(Z) : p(Z), X<Z, Z<Y.",
        "total_hours(N) :- #sum{H,C : enroll(C), hours(H,C)} = N.",
        "p(X*2) :- q(X, f(Y)).",
        "r(X) :- X = Y+1, s(Y).",
        "q(X) :- p(X) : r(X).",
    };
    std::vector<Universe> chain{ints(0, 0), ints(0, 1), ints(-1, 1, {"a"}), ints(-2, 2, {"a", "b"})};
    for (auto const &text : rules) {
        auto r = rule(text);
        std::vector<Rule> prev;
        for (auto u : chain) {
            u.funcs = {{"f", 1}};
            auto inst = instances(r, u);
            auto n_terms = static_cast<double>(u.precomputed_terms().size());
            CHECK(static_cast<double>(inst.size()) <= std::pow(n_terms, static_cast<double>(global_vars(r).size())));
            for (auto const &i : inst) {
                CHECK(global_vars(i).empty());
                CHECK(is_well_formed(i));
                CHECK(is_valid(i));
            }
            for (auto const &p : prev) { CHECK(std::find(inst.begin(), inst.end(), p) != inst.end()); }
            prev = inst;
        }
    }
}
