#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace gsem;
using namespace gsem::test;

namespace {

PrecomputedTerm n(std::int64_t v) { return PrecomputedTerm::numeral(v); }
PrecomputedTerm s(std::string c) { return PrecomputedTerm::symbol(std::move(c)); }

TupleSet random_set(FormulaGen &g) {
    TupleSet out;
    int size = g.uniform(0, 8);
    for (int i = 0; i < size; ++i) {
        Tuple t;
        t.push_back(g.uniform(0, 4) == 0 ? s("c") : n(g.uniform(-4, 6)));
        t.push_back(n(g.uniform(0, 3)));
        out.insert(std::move(t));
    }
    return out;
}

} // namespace

TEST_CASE("count") {
    CHECK(agg_count({}) == AggValue::integer(0));
    CHECK(agg_count({{n(3), s("cs101")}, {n(3), s("cs102")}}) == AggValue::integer(2));
    CHECK(agg_count({{n(1)}, {n(2)}, {n(3)}}) == AggValue::integer(3));
}

TEST_CASE("sum counts positive integer first components") {
    CHECK(agg_sum({{n(3), s("cs101")}, {n(3), s("cs102")}}) == AggValue::integer(6));
    CHECK(agg_sum({}) == AggValue::integer(0));
    CHECK(agg_sum({{n(-2), s("a")}, {n(5), s("b")}, {n(0), s("c")}}) == AggValue::integer(5));
    CHECK(agg_sum({{s("a")}}) == AggValue::integer(0));
}

TEST_CASE("max is the least upper bound of integer first components") {
    CHECK(agg_max({}) == AggValue::minus_inf());
    CHECK(agg_max({{n(3), s("a")}, {n(7), s("b")}, {s("c"), s("d")}}) == AggValue::integer(7));
    CHECK(agg_max({{s("c"), s("d")}}) == AggValue::minus_inf());
}

TEST_CASE("comparison with infinities") {
    CHECK(agg_compare(AggValue::integer(6), Relation::Eq, 6));
    CHECK(agg_compare(AggValue::minus_inf(), Relation::Lt, 0));
    CHECK_FALSE(agg_compare(AggValue::plus_inf(), Relation::Eq, 6));
    CHECK(agg_compare(AggValue::plus_inf(), Relation::Gt, 1000));
    CHECK(agg_compare(AggValue::integer(2), Relation::Le, 2));
    CHECK_FALSE(agg_compare(AggValue::integer(2), Relation::Ge, 3));
}

TEST_CASE("registry") {
    auto const &reg = AggregateRegistry::standard();
    CHECK(reg.contains("count"));
    CHECK(reg.contains("sum"));
    CHECK(reg.contains("max"));
    CHECK_FALSE(reg.contains("avg"));
    CHECK_THROWS_AS(reg.apply("avg", {}), std::invalid_argument);

    AggregateRegistry custom = reg;
    custom.define("min", [](TupleSet const &) { return AggValue::plus_inf(); });
    CHECK(custom.apply("min", {}) == AggValue::plus_inf());
}

TEST_CASE("property: aggregates agree with brute force and are monotone") {
    FormulaGen g(3, 1);
    for (int i = 0; i < 1000; ++i) {
        auto t = random_set(g);
        std::int64_t count = 0, sum = 0;
        std::optional<std::int64_t> max;
        for (auto const &tup : t) {
            ++count;
            if (tup[0].is_numeral()) {
                if (tup[0].value() > 0) { sum += tup[0].value(); }
                max = std::max(max.value_or(tup[0].value()), tup[0].value());
            }
        }
        CHECK(agg_count(t) == AggValue::integer(count));
        CHECK(agg_sum(t) == AggValue::integer(sum));
        CHECK(agg_max(t) == (max ? AggValue::integer(*max) : AggValue::minus_inf()));
        CHECK(agg_sum(t) >= AggValue::integer(0));

        auto sub = t;
        for (auto it = sub.begin(); it != sub.end();) { it = g.uniform(0, 1) ? sub.erase(it) : std::next(it); }
        CHECK(agg_count(sub) <= agg_count(t));
        CHECK(agg_sum(sub) <= agg_sum(t));
        CHECK(agg_max(sub) <= agg_max(t));
    }
}
