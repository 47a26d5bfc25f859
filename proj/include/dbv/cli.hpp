#ifndef DBV_CLI_HPP
#define DBV_CLI_HPP

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "axioms.hpp"
#include "examples.hpp"
#include "homology.hpp"
#include "io.hpp"
#include "lifting.hpp"
#include "obstruction.hpp"
#include "qdelta.hpp"
#include "solver.hpp"
#include "verify.hpp"

namespace dbv {

enum ExitCode { kSuccess = 0, kNegative = 1, kUsage = 2 };

struct RunConfig
{
    std::string command;
    std::string spec_path;
    std::string solution_path;
    int t_order = 3;
    int hbar_order = 3;
    bool hbar_order_given = false;
    Window window;
    std::string out_path;
    bool pretty = false;
    bool skip_axioms = false;
    std::string flavor;
    std::string vector_json;
    // example generator
    std::string example_kind;
    std::string potential = "x^3";
    std::size_t dim = 6;
    std::uint64_t seed = 0;
};

/// "min:max:xdeg", e.g. "-4:4:8"; used as the default window when set.
inline constexpr const char *kWindowEnv = "DBVQ_WINDOW";

inline Window window_from_env()
{
    Window w;
    if (const char *env = std::getenv(kWindowEnv)) {
        int lo = 0;
        int hi = 0;
        int x = 0;
        char c1 = 0;
        char c2 = 0;
        std::istringstream in(env);
        if (in >> lo >> c1 >> hi >> c2 >> x && c1 == ':' && c2 == ':') {
            w.min_degree = lo;
            w.max_degree = hi;
            w.x_degree = x;
        } else {
            throw InputError(std::string(kWindowEnv) + " must look like min:max:xdeg");
        }
    }
    return w;
}

namespace cli_detail {

struct Outcome
{
    Json report;
    int code = kSuccess;
};

inline Json axiom_report_json(const AxiomReport &rep)
{
    Json results = Json::array();
    for (const auto &r : rep.results) {
        Json w = Json::array();
        for (const auto &n : r.witness) {
            w.push_back(n);
        }
        results.push_back({{"name", r.name},
                           {"passed", r.passed},
                           {"informational", r.informational},
                           {"checked", r.checked},
                           {"witness", w},
                           {"detail", r.detail}});
    }
    return {{"all_passed", rep.all_passed()}, {"window", rep.window_note}, {"results", results}};
}

template <DBVBackend A>
Json lift_json(const A &alg, const LiftResult &r)
{
    Json j = Json::object();
    j["lifts"] = r.ok();
    if (r.ok()) {
        j["exact"] = r.exact;
        j["order"] = r.exact ? Json("exact") : Json(r.order);
        j["series"] = series_to_json(alg, *r.lift);
    } else {
        j["obstruction_stage"] = r.obstruction->stage;
        j["witness"] = vector_to_json(alg, r.obstruction->witness);
        j["witness_text"] = "[" + to_string(alg, r.obstruction->witness) + "]";
    }
    return j;
}

template <DBVBackend A>
Json degeneration_json(const A &alg, const DegenerationResult &d)
{
    Json classes = Json::array();
    for (const auto &c : d.classes) {
        Json j = lift_json(alg, c.result);
        j["class"] = c.class_name;
        classes.push_back(j);
    }
    return {{"degenerate", d.degenerate},
            {"exact", d.exact},
            {"order", d.order == kUnbounded ? Json("exact") : Json(d.order)},
            {"classes", classes}};
}

template <DBVBackend A>
Json grid_json(const A &alg, const ObstructionReport &g)
{
    Json cells = Json::array();
    for (const auto &[k, c] : g.cells) {
        Json j = {{"t_order", k.first}, {"hbar_order", k.second}, {"status", to_string(c.status)}};
        if (c.witness) {
            j["witness"] = vector_to_json(alg, *c.witness);
            j["witness_text"] = "[" + to_string(alg, *c.witness) + "]";
        }
        if (!c.detail.empty()) {
            j["detail"] = c.detail;
        }
        cells.push_back(j);
    }
    return {{"t_order", g.t_order},
            {"hbar_order", g.hbar_order},
            {"all_computed_vanish", g.all_computed_vanish()},
            {"cells", cells}};
}

template <DBVBackend A>
Json qdelta_json(const A &alg, const QDeltaResult &q)
{
    Json spaces = Json::array();
    for (const auto &s : q.spaces) {
        Json basis = Json::array();
        for (const auto &v : s.space.basis()) {
            basis.push_back(vector_to_json(alg, v));
        }
        spaces.push_back({{"name", s.name}, {"dim", s.space.dim()}, {"basis", basis}});
    }
    auto form = [&](const QDeltaForm &f) {
        Json comps = Json::array();
        for (const auto &c : f.comparisons) {
            Json j = {{"left", c.left}, {"right", c.right}, {"equal", c.equal}};
            if (c.witness) {
                j["witness"] = vector_to_json(alg, *c.witness);
                j["witness_text"] = to_string(alg, *c.witness);
                j["witness_in"] = c.witness_side;
            }
            comps.push_back(j);
        }
        return Json{{"label", f.label}, {"holds", f.holds}, {"comparisons", comps}};
    };
    return {{"holds", q.holds()},
            {"window", q.window_note},
            {"standard", form(q.standard)},
            {"literal", form(q.literal)},
            {"forms_differ", q.forms_differ()},
            {"spaces", spaces}};
}

inline std::string class_names(const HomologyBasis &h)
{
    std::string s;
    for (const auto &c : h) {
        s += (s.empty() ? "" : ", ") + c.name;
    }
    return s;
}

template <DBVBackend A>
Json homology_json(const A &alg, const HomologyBasis &classes, const Window &w)
{
    std::map<int, std::size_t> dims;
    for (BasisIndex i : alg.window_basis(alg.finite() ? Window{-1000000, 1000000, w.x_degree} : w)) {
        dims[alg.degree(i)];
    }
    for (const auto &c : classes) {
        ++dims[c.degree];
    }
    Json d = Json::object();
    for (const auto &[deg, n] : dims) {
        d[std::to_string(deg)] = n;
    }
    Json out = {{"dimensions", d}, {"total", classes.size()}, {"classes", homology_to_json(alg, classes)}};
    if (!alg.finite()) {
        Json cross = Json::object();
        for (const auto &[deg, n] : windowed_homology_dims(alg, w)) {
            cross[std::to_string(deg)] = n;
        }
        out["windowed_elimination"] = cross;
    }
    return out;
}

template <DBVBackend A>
Outcome run_on(const A &alg, const RunConfig &cfg, const std::string &hash)
{
    Outcome o;
    Json &r = o.report;
    r["command"] = cfg.command;
    r["algebra_hash"] = hash;
    const auto dec = adapted_decomposition(alg);

    if (cfg.command == "check-axioms") {
        const AxiomReport rep = alg.finite() ? check_axioms(alg) : check_axioms(alg, alg.window_basis(Window{
                                                                                         -1000000, 1000000, cfg.window.x_degree}));
        r["axioms"] = axiom_report_json(rep);
        o.code = rep.all_passed() ? kSuccess : kNegative;
    } else if (cfg.command == "homology") {
        r["homology"] = homology_json(alg, dec.homology(), cfg.window);
    } else if (cfg.command == "degeneration") {
        const int order = cfg.hbar_order_given ? cfg.hbar_order : kUnbounded;
        const DegenerationResult d = degeneration_check(alg, dec, order);
        r["degeneration"] = degeneration_json(alg, d);
        o.code = d.degenerate ? kSuccess : kNegative;
    } else if (cfg.command == "obstructions") {
        const ObstructionReport g = obstruction_grid(alg, dec, cfg.t_order, cfg.hbar_order);
        r["grid"] = grid_json(alg, g);
        o.code = g.all_computed_vanish() ? kSuccess : kNegative;
    } else if (cfg.command == "qdelta") {
        const QDeltaResult q = qdelta_lemma_check(alg, cfg.window);
        r["qdelta"] = qdelta_json(alg, q);
        o.code = q.holds() ? kSuccess : kNegative;
    } else if (cfg.command == "solve-classical") {
        const Flavor flavor = cfg.flavor.empty() ? Flavor::ClassicalDelta : *parse_flavor(cfg.flavor);
        if (flavor != Flavor::ClassicalDelta && flavor != Flavor::ClassicalQPlusDelta) {
            throw InputError("solve-classical needs --flavor classical-delta or classical-q+delta");
        }
        const HomologyBasis classes = homology_basis(alg, differential_of(flavor));
        const VersalSolution sol = classical_solve_log(alg, classes, cfg.t_order, flavor);
        const Residual res = residual(alg, sol.gamma, flavor);
        r["solution"] = solution_to_json(alg, sol, hash);
        r["residual_zero"] = res.zero();
        o.code = res.zero() ? kSuccess : kNegative;
    } else if (cfg.command == "solve-qme") {
        const DegenerationResult d = degeneration_check(alg, dec, cfg.hbar_order + cfg.t_order);
        if (!d.degenerate) {
            r["degeneration"] = degeneration_json(alg, d);
            r["error"] = "spectral sequence does not degenerate; no splitting beta exists";
            o.code = kNegative;
        } else {
            const auto beta = build_beta(alg, dec, d);
            SolverTrace trace;
            const VersalSolution sol = quantum_solve(beta, cfg.t_order, cfg.hbar_order, &trace);
            const Residual res = residual(alg, sol.gamma, Flavor::Quantum);
            r["solution"] = solution_to_json(alg, sol, hash);
            r["residual_zero"] = res.zero();
            r["identities_checked"] = trace.identities_checked;
            o.code = res.zero() ? kSuccess : kNegative;
        }
    } else if (cfg.command == "verify") {
        Json raw = read_json_file(cfg.solution_path);
        if (raw.is_object() && raw.contains("solution")) {
            raw = raw["solution"];
        }
        if (raw.is_object() && raw.contains("algebra_hash") && raw["algebra_hash"].is_string()) {
            const std::string claimed = raw["algebra_hash"].get<std::string>();
            if (!claimed.empty() && claimed != hash) {
                throw InputError("solution was computed for algebra " + claimed + ", not " + hash);
            }
        }
        const SolutionFile file = solution_from_json(alg, raw);
        VersalSolution sol = file.solution;
        const Flavor flavor = cfg.flavor.empty() ? sol.flavor : *parse_flavor(cfg.flavor);
        if (flavor == Flavor::Quantum && sol.flavor != Flavor::Quantum) {
            // a classical solution has no hbar terms at all, so it is exact in hbar
            sol.gamma = sol.gamma.with_truncation({sol.t_order, cfg.hbar_order});
        }
        const VerifyResult v = verify_solution(alg, sol, flavor, cfg.window);
        r["flavor"] = to_string(flavor);
        r["accepted"] = v.accepted();
        r["residual_zero"] = v.residual_zero;
        if (v.first_nonzero_cell) {
            r["first_nonzero_cell"] = {{"t_order", v.first_nonzero_cell->first},
                                       {"hbar_order", v.first_nonzero_cell->second}};
        }
        r["versal"] = v.versal;
        r["versality"] = v.versality_detail;
        if (v.projection_ok) {
            r["projection_solves_maurer_cartan"] = *v.projection_ok;
        }
        o.code = v.accepted() ? kSuccess : kNegative;
    } else if (cfg.command == "observable") {
        if (cfg.vector_json.empty()) {
            throw InputError("observable needs --vector '{\"name\": \"num/den\"}'");
        }
        Json vj;
        try {
            vj = Json::parse(cfg.vector_json);
        } catch (const Json::parse_error &e) {
            throw InputError(std::string("--vector is not valid JSON: ") + e.what());
        }
        const Vector o0 = vector_from_json(alg, vj);
        if (!apply_q(alg, o0).empty()) {
            throw InputError("O0 is not Q-closed");
        }
        const LiftResult lr = observable_extend(alg, dec, o0, cfg.hbar_order_given ? cfg.hbar_order : kUnbounded);
        r["observable"] = lift_json(alg, lr);
        o.code = lr.ok() ? kSuccess : kNegative;
    }
    return o;
}

inline void add_common(CLI::App *sub, RunConfig &cfg)
{
    sub->add_option("--t-order,-N", cfg.t_order, "maximal t-order N (>= 1)")->check(CLI::PositiveNumber);
    sub->add_option_function<int>(
           "--hbar-order,-R",
           [&cfg](const int &r) {
               cfg.hbar_order = r;
               cfg.hbar_order_given = true;
           },
           "maximal hbar-order R (>= 0)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--min-degree", cfg.window.min_degree, "lowest degree of the window");
    sub->add_option("--max-degree", cfg.window.max_degree, "highest degree of the window");
    sub->add_option("--x-degree", cfg.window.x_degree, "x-degree cap for Landau-Ginzburg windows")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--out,-o", cfg.out_path, "write the report here instead of stdout");
    sub->add_flag("--pretty", cfg.pretty, "indent the JSON report");
    sub->add_flag("--skip-axioms", cfg.skip_axioms, "do not verify the axioms when loading the spec");
}

inline void emit(const Json &report, const RunConfig &cfg, std::ostream &out)
{
    const std::string text = report.dump(cfg.pretty ? 2 : -1) + "\n";
    if (cfg.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out_path);
    if (!f) {
        throw InputError("cannot write '" + cfg.out_path + "'");
    }
    f << text;
}

inline AnyAlgebra generate_example(const RunConfig &cfg)
{
    if (cfg.example_kind == "lg") {
        return landau_ginzburg_example(cfg.potential);
    }
    if (cfg.example_kind == "square-zero") {
        return square_zero_example();
    }
    if (cfg.example_kind == "random-finite") {
        return random_finite_dbv(cfg.dim, cfg.seed);
    }
    throw InputError("unknown example '" + cfg.example_kind + "' (lg, square-zero, random-finite)");
}

} // namespace cli_detail

/// Entry point of the dbvq tool: exit 0 on success, 1 when the mathematics says no, 2 on bad input.
inline int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    using namespace cli_detail;
    RunConfig cfg;
    try {
        cfg.window = window_from_env();
    } catch (const InputError &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    CLI::App app{"dbvq: exact computations in differential BV algebras"};
    app.require_subcommand(1);

    struct Spec
    {
        const char *name;
        const char *help;
    };
    const std::vector<Spec> spec_commands = {
        {"check-axioms", "verify the dBV axioms exhaustively"},
        {"homology", "H(V, Q) with chosen representatives"},
        {"degeneration", "decide E1-degeneration by lifting every class"},
        {"obstructions", "the grid of obstructions by (t-order, hbar-order)"},
        {"qdelta", "check the Q-Delta lemma"},
        {"solve-classical", "versal solution of Delta G + 1/2 [G, G] = 0 via log"},
        {"solve-qme", "versal solution of the quantum master equation"},
        {"verify", "verify a solution file"},
        {"observable", "extend a classical observable to a quantum one"},
    };
    for (const auto &s : spec_commands) {
        CLI::App *sub = app.add_subcommand(s.name, s.help);
        sub->add_option("spec", cfg.spec_path, "algebra spec (JSON)")->required();
        add_common(sub, cfg);
        const std::string name = s.name;
        sub->callback([&cfg, name]() { cfg.command = name; });
        if (name == "verify") {
            sub->add_option("solution", cfg.solution_path, "solution file (JSON)")->required();
        }
        if (name == "verify" || name == "solve-classical") {
            sub->add_option("--flavor", cfg.flavor, "classical-delta, classical-q+delta, classical-q or quantum")
                ->check(CLI::IsMember({"classical-delta", "classical-q+delta", "classical-q", "quantum"}));
        }
        if (name == "observable") {
            sub->add_option("--vector", cfg.vector_json, "O0 as a JSON object {basis_name: \"num/den\"}");
        }
    }
    CLI::App *ex = app.add_subcommand("example", "emit a built-in algebra spec");
    ex->add_option("kind", cfg.example_kind, "lg, square-zero or random-finite")->required();
    ex->add_option("--potential", cfg.potential, "Landau-Ginzburg potential, e.g. \"x^3 - x\"");
    ex->add_option("--dim", cfg.dim, "dimension of the random algebra")->check(CLI::PositiveNumber);
    ex->add_option("--seed", cfg.seed, "seed of the random algebra");
    ex->add_option("--out,-o", cfg.out_path, "write the spec here instead of stdout");
    ex->add_flag("--pretty", cfg.pretty, "indent the JSON");
    ex->callback([&cfg]() { cfg.command = "example"; });

    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) {
        args.emplace_back(argv[i]);
    }
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (cfg.window.min_degree > cfg.window.max_degree) {
            throw InputError("empty degree window");
        }
        if (cfg.command == "example") {
            emit(algebra_to_json(generate_example(cfg)), cfg, out);
            return kSuccess;
        }
        const AnyAlgebra alg = algebra_from_json(read_json_file(cfg.spec_path));
        const std::string hash = algebra_hash(alg);
        if (!cfg.skip_axioms && cfg.command != "check-axioms") {
            const AxiomReport rep = std::visit(
                [&](const auto &a) {
                    return a.finite() ? check_axioms(a)
                                      : check_axioms(a, a.window_basis(Window{-1000000, 1000000, cfg.window.x_degree}));
                },
                alg);
            if (const AxiomResult *bad = rep.first_failure()) {
                std::string w;
                for (const auto &n : bad->witness) {
                    w += (w.empty() ? "" : ", ") + n;
                }
                throw InputError("spec violates axiom " + bad->name + " (witness: " + w + ")");
            }
        }
        const Outcome o = std::visit([&](const auto &a) { return run_on(a, cfg, hash); }, alg);
        emit(o.report, cfg, out);
        return o.code;
    } catch (const InputError &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const BasisMismatch &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const NotDegenerate &e) {
        err << "error: " << e.what() << "\n";
        return kNegative;
    }
}

} // namespace dbv

#endif // DBV_CLI_HPP
