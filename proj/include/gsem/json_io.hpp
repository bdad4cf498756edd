#pragma once

// Machine-readable documents. Requires nlohmann/json (vendor/json.hpp).

#include <gsem/equiv.hpp>

#include <json.hpp>

namespace gsem {

inline nlohmann::json to_json(Formula const &f) {
    using nlohmann::json;
    switch (f.kind()) {
        case FormulaKind::Atom: return json{{"kind", "atom"}, {"atom", to_string(f.atom())}};
        case FormulaKind::Bottom: return json{{"kind", "bot"}};
        case FormulaKind::Conj:
        case FormulaKind::Disj: {
            json kids = json::array();
            for (auto const &g : f.children()) { kids.push_back(to_json(g)); }
            return json{{"kind", f.is(FormulaKind::Conj) ? "conj" : "disj"}, {"children", std::move(kids)}};
        }
        case FormulaKind::Impl:
            return json{{"kind", "impl"}, {"antecedent", to_json(f.antecedent())}, {"consequent", to_json(f.consequent())}};
    }
    return json{};
}

inline nlohmann::json to_json(Interpretation const &i) {
    auto out = nlohmann::json::array();
    for (auto const &a : i) { out.push_back(to_string(a)); }
    return out;
}

inline nlohmann::json to_json(EquivReport const &r) {
    nlohmann::json out{{"mode", mode_name(r.mode)}, {"verdict", r.verdict}, {"signature", to_json(r.signature_used)}};
    if (r.witness) {
        if (auto const *i = std::get_if<Interpretation>(&*r.witness)) { out["witness"] = {{"model", to_json(*i)}}; }
        else {
            auto const &p = std::get<HTPair>(*r.witness);
            out["witness"] = {{"here", to_json(p.here)}, {"there", to_json(p.there)}};
        }
        out["witness_of"] = r.witness_of_first ? "first" : "second";
    }
    else {
        out["witness"] = nullptr;
    }
    return out;
}

} // namespace gsem
