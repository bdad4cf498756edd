// gsem: command-line front end for the parser, grounder, translator and
// model/equivalence checkers.

#include <gsem/corpus.hpp>
#include <gsem/gsem.hpp>
#include <gsem/json_io.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

enum Exit { Ok = 0, VerdictFalse = 1, Usage = 2, Cap = 3 };

struct Config {
    std::string command;
    std::vector<std::string> inputs;
    std::string ints, consts, funcs, universe_file, context;
    std::optional<std::size_t> depth;
    std::size_t max_atoms = gsem::default_atom_cap;
    std::size_t max_admissible = 12;
    std::string format = "text";
    std::string mode = "stable";
    bool raw = false;
    bool json = false;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(std::string const &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) { throw UsageError("cannot read " + path); }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

gsem::Program load(std::string const &path) { return gsem::parse_program(gsem::SourceProgram{read_file(path), path}); }

gsem::Universe make_universe(Config const &cfg, gsem::Program const &p) {
    bool explicit_flags = !cfg.ints.empty() || !cfg.consts.empty() || !cfg.funcs.empty() || cfg.depth ||
                          !cfg.universe_file.empty();
    auto u = gsem::default_universe(p);
    if (!cfg.universe_file.empty()) { u = gsem::parse_universe_config(read_file(cfg.universe_file), u); }
    if (!cfg.ints.empty()) { std::tie(u.int_lo, u.int_hi) = gsem::parse_int_range(cfg.ints); }
    if (!cfg.consts.empty()) { u.consts = gsem::parse_const_list(cfg.consts); }
    if (!cfg.funcs.empty()) { u.funcs = gsem::parse_func_list(cfg.funcs); }
    if (cfg.depth) { u.depth = *cfg.depth; }
    u.validate();
    std::cerr << (explicit_flags ? "universe: " : "universe (default): ") << u << '\n';
    return u;
}

gsem::TranslationContext make_context(Config const &cfg, gsem::Program const &p) {
    gsem::TranslationContext ctx(make_universe(cfg, p), cfg.max_admissible);
    ctx.simplify = !cfg.raw;
    return ctx;
}

void need_inputs(Config const &cfg, std::size_t n) {
    if (cfg.inputs.size() != n) {
        throw UsageError(cfg.command + " expects " + std::to_string(n) + " input file" + (n == 1 ? "" : "s"));
    }
}

// tau of each rule; a cap error names the rule that caused it.
std::vector<gsem::Formula> translate(gsem::Program const &p, gsem::TranslationContext const &ctx) {
    std::vector<gsem::Formula> out;
    for (auto const &r : p.rules) {
        try {
            out.push_back(gsem::tau_rule(r, ctx));
        }
        catch (gsem::CapExceeded const &) {
            std::cerr << "gsem: in rule '" << r << "'\n";
            throw;
        }
    }
    return out;
}

int cmd_parse(Config const &cfg, std::ostream &out) {
    need_inputs(cfg, 1);
    for (auto const &r : load(cfg.inputs[0]).rules) { out << r << '\n'; }
    return Ok;
}

int cmd_ground(Config const &cfg, std::ostream &out) {
    need_inputs(cfg, 1);
    auto p = load(cfg.inputs[0]);
    auto terms = make_universe(cfg, p).precomputed_terms();
    for (auto const &r : p.rules) {
        out << "% " << r << '\n';
        for (auto const &inst : gsem::instances(r, terms)) { out << inst << '\n'; }
    }
    return Ok;
}

int cmd_translate(Config const &cfg, std::ostream &out) {
    need_inputs(cfg, 1);
    auto p = load(cfg.inputs[0]);
    auto ctx = make_context(cfg, p);
    auto formulas = translate(p, ctx);
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
        auto const &f = formulas[i];
        out << "% " << p.rules[i] << '\n';
        if (cfg.format == "tree") { gsem::print_tree(out, f); }
        else if (cfg.json) { out << gsem::to_json(f).dump() << '\n'; }
        else { out << f << '\n'; }
    }
    return Ok;
}

int cmd_models(Config const &cfg, std::ostream &out) {
    need_inputs(cfg, 1);
    auto p = load(cfg.inputs[0]);
    auto ctx = make_context(cfg, p);
    auto gamma = translate(p, ctx);
    auto models = gsem::stable_models(gamma, gsem::atoms_of(gamma), cfg.max_atoms);
    if (cfg.json) {
        auto doc = nlohmann::json::array();
        for (auto const &m : models) { doc.push_back(gsem::to_json(m)); }
        out << doc.dump(2) << '\n';
    }
    else {
        for (auto const &m : models) { out << m << '\n'; }
    }
    return Ok;
}

int cmd_equiv(Config const &cfg, std::ostream &out) {
    need_inputs(cfg, 2);
    auto p1 = load(cfg.inputs[0]);
    auto p2 = load(cfg.inputs[1]);
    gsem::Program context;
    if (cfg.mode == "under") {
        if (cfg.context.empty()) { throw UsageError("--mode under requires --context FILE"); }
        context = load(cfg.context);
    }
    else if (!cfg.context.empty()) {
        throw UsageError("--context is only meaningful with --mode under");
    }
    auto ctx = make_context(cfg, p1 + p2 + context);
    auto f1 = translate(p1 + context, ctx);
    auto f2 = translate(p2 + context, ctx);
    auto rep = cfg.mode == "strong" ? gsem::strong_equiv(f1, f2, cfg.max_atoms) : gsem::stable_equiv(f1, f2, cfg.max_atoms);
    if (cfg.mode == "under") { rep.mode = gsem::EquivMode::StableUnderContext; }
    if (cfg.json) { out << gsem::to_json(rep).dump(2) << '\n'; }
    else { out << rep; }
    return rep.verdict ? Ok : VerdictFalse;
}

int cmd_corpus(Config const &cfg, std::ostream &out) {
    if (!cfg.inputs.empty()) { throw UsageError("corpus takes no input files"); }
    bool all = true;
    for (auto const &c : gsem::corpus::run_claims(cfg.max_atoms)) {
        out << (c.passed ? "PASS " : "FAIL ") << c.id << ": " << c.description << " (" << c.detail << ")\n";
        all = all && c.passed;
    }
    return all ? Ok : VerdictFalse;
}

int run(Config const &cfg, std::ostream &out) {
    if (cfg.command == "parse") { return cmd_parse(cfg, out); }
    if (cfg.command == "ground") { return cmd_ground(cfg, out); }
    if (cfg.command == "translate") { return cmd_translate(cfg, out); }
    if (cfg.command == "models") { return cmd_models(cfg, out); }
    if (cfg.command == "equiv") { return cmd_equiv(cfg, out); }
    return cmd_corpus(cfg, out);
}

} // namespace

int main(int argc, char **argv) {
    Config cfg;
    CLI::App app{"Semantics tool for a fragment of the gringo input language"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    auto *uni = "Universe";
    app.add_option("--ints", cfg.ints, "integer range LO..HI")->group(uni);
    app.add_option("--consts", cfg.consts, "symbolic constants a,b,c")->group(uni);
    app.add_option("--funcs", cfg.funcs, "function symbols f/1,g/2")->group(uni);
    app.add_option("--depth", cfg.depth, "nesting depth of function terms")->group(uni);
    app.add_option("--universe", cfg.universe_file, "universe config file (key = value lines)")->group(uni);
    app.add_option("--max-atoms", cfg.max_atoms, "cap on enumerated atoms")->capture_default_str();
    app.add_option("--max-admissible", cfg.max_admissible, "cap on admissible tuples per aggregate")
        ->capture_default_str();
    app.add_flag("--json", cfg.json, "machine-readable output");

    struct Sub {
        char const *name;
        char const *help;
        std::size_t files;
    };
    for (auto const &s : {Sub{"parse", "print the normalized program", 1},
                          Sub{"ground", "print all instances rule by rule", 1},
                          Sub{"translate", "print the formula of each rule", 1},
                          Sub{"models", "print the stable models", 1},
                          Sub{"equiv", "compare two programs", 2},
                          Sub{"corpus", "check the bundled claims", 0}}) {
        auto *sub = app.add_subcommand(s.name, s.help);
        sub->callback([&cfg, name = std::string(s.name)] { cfg.command = name; });
        if (s.files > 0) { sub->add_option("files", cfg.inputs, "input .lp files")->required(); }
        if (std::string_view(s.name) == "translate") {
            sub->add_option("--format", cfg.format, "text or tree")->check(CLI::IsMember({"text", "tree"}));
            sub->add_flag("--raw", cfg.raw, "skip truth-constant simplification");
        }
        if (std::string_view(s.name) == "models") {
            sub->add_flag("--raw", cfg.raw, "skip truth-constant simplification");
        }
        if (std::string_view(s.name) == "equiv") {
            sub->add_option("--mode", cfg.mode, "stable, strong or under")
                ->check(CLI::IsMember({"stable", "strong", "under"}))
                ->capture_default_str();
            sub->add_option("--context", cfg.context, "context program for --mode under");
        }
    }

    try {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const &e) {
        int rc = app.exit(e);
        return rc == 0 ? Ok : Usage;
    }

    std::ostringstream out;
    int rc = Ok;
    try {
        rc = run(cfg, out);
    }
    catch (gsem::CapExceeded const &e) {
        std::cerr << "gsem: cap exceeded: " << e.what() << '\n';
        return Cap;
    }
    catch (gsem::ParseError const &e) {
        std::cerr << e.what() << '\n';
        return Usage;
    }
    catch (std::exception const &e) {
        std::cerr << "gsem: " << e.what() << '\n';
        return Usage;
    }
    std::cout << out.str();
    return rc;
}
