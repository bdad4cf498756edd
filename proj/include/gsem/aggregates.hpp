#pragma once

#include <gsem/ast.hpp>
#include <gsem/error.hpp>

#include <algorithm>
#include <functional>
#include <limits>

namespace gsem {

/// Element of Z extended with +/- infinity.
class AggValue {
public:
    enum class Kind : std::uint8_t { MinusInf, Int, PlusInf };

    static AggValue integer(std::int64_t v) { return AggValue(Kind::Int, v); }
    static AggValue plus_inf() { return AggValue(Kind::PlusInf, 0); }
    static AggValue minus_inf() { return AggValue(Kind::MinusInf, 0); }

    Kind kind() const { return kind_; }
    bool is_int() const { return kind_ == Kind::Int; }
    std::int64_t value() const { return value_; }

    friend bool operator==(AggValue const &, AggValue const &) = default;
    friend std::strong_ordering operator<=>(AggValue const &a, AggValue const &b) {
        if (auto c = a.kind_ <=> b.kind_; c != 0) { return c; }
        return a.value_ <=> b.value_;
    }

private:
    AggValue(Kind k, std::int64_t v) : kind_(k), value_(v) {}
    Kind kind_;
    std::int64_t value_;
};

inline std::ostream &operator<<(std::ostream &out, AggValue const &v) {
    switch (v.kind()) {
        case AggValue::Kind::MinusInf: return out << "-inf";
        case AggValue::Kind::PlusInf:  return out << "inf";
        case AggValue::Kind::Int:      return out << v.value();
    }
    return out;
}

using Tuple = std::vector<PrecomputedTerm>;
using TupleSet = std::set<Tuple>;

inline AggValue agg_count(TupleSet const &ts) {
    return AggValue::integer(static_cast<std::int64_t>(ts.size()));
}

/// Sum of the first components that are positive integers.
inline AggValue agg_sum(TupleSet const &ts) {
    std::int64_t sum = 0;
    for (auto const &t : ts) {
        if (!t.empty() && t.front().is_numeral() && t.front().value() > 0) {
            if (__builtin_add_overflow(sum, t.front().value(), &sum)) {
                throw EvalError("integer overflow in #sum");
            }
        }
    }
    return AggValue::integer(sum);
}

/// Least upper bound of the integer first components; -inf when there are none.
inline AggValue agg_max(TupleSet const &ts) {
    auto best = AggValue::minus_inf();
    for (auto const &t : ts) {
        if (!t.empty() && t.front().is_numeral()) {
            best = std::max(best, AggValue::integer(t.front().value()));
        }
    }
    return best;
}

inline bool agg_compare(AggValue v, Relation rel, std::int64_t n) {
    return holds(rel, v, AggValue::integer(n));
}

using AggregateFunction = std::function<AggValue(TupleSet const &)>;

/// Aggregate names mapped to total functions over finite tuple sets.
class AggregateRegistry {
public:
    void define(std::string name, AggregateFunction fn) { functions_[std::move(name)] = std::move(fn); }

    AggregateFunction const *find(std::string const &name) const {
        auto it = functions_.find(name);
        return it == functions_.end() ? nullptr : &it->second;
    }

    bool contains(std::string const &name) const { return functions_.count(name) > 0; }

    AggValue apply(std::string const &name, TupleSet const &ts) const {
        auto const *fn = find(name);
        if (fn == nullptr) { throw std::invalid_argument("unknown aggregate #" + name); }
        return (*fn)(ts);
    }

    static AggregateRegistry const &standard() {
        static AggregateRegistry const reg = [] {
            AggregateRegistry r;
            r.define("count", agg_count);
            r.define("sum", agg_sum);
            r.define("max", agg_max);
            return r;
        }();
        return reg;
    }

private:
    std::map<std::string, AggregateFunction> functions_;
};

} // namespace gsem
