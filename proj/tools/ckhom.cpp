// Command-line front end: solve and verify cycle homomorphism instances,
// generate hardness-construction instances, and report structural checks.
// Exit codes follow solver conventions: 0 = SAT / valid, 1 = UNSAT /
// invalid, 2 = usage or structural error. Identical inputs and flags give
// byte-identical stdout and output files.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cyclehom/gadgets.hpp"
#include "cyclehom/graph_io.hpp"
#include "cyclehom/oracle.hpp"
#include "cyclehom/solver.hpp"

namespace {

using namespace cyclehom;

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return read_graph(in);
}

ListAssignment load_lists(const std::string& path, int n, int k) {
    if (path.empty()) return ListAssignment::full(k, n);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open list file: " + path);
    return read_lists(in, n, k);
}

FormulaInput load_formula(const std::string& path, FormulaKind kind) {
    if (path.empty()) throw std::invalid_argument("this gadget needs --formula");
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open formula file: " + path);
    return read_formula(in, kind);
}

void emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << payload;
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

struct SolveOpts {
    std::string graph, lists, algo = "auto", out;
    int k = 0;
    bool bench = false;
};

int cmd_solve(const SolveOpts& opt) {
    Graph g = load_graph(opt.graph);
    ListAssignment l = load_lists(opt.lists, g.n, opt.k);
    SolveStats stats;
    std::optional<Coloring> answer;
    auto t0 = std::chrono::steady_clock::now();
    if (opt.algo == "oracle") {
        answer = solve_exact(g, l);
    } else if (opt.algo == "auto") {
        try {
            answer = solve(g, l, &stats);
        } catch (const NotP9FreeError& e) {
            std::cerr << "warning: " << e.what() << "; falling back to the exact solver\n";
            answer = solve_exact(g, l);
        } catch (const UnsupportedError& e) {
            std::cerr << "warning: " << e.what() << "; falling back to the exact solver\n";
            answer = solve_exact(g, l);
        }
    } else if (opt.algo == "p9") {
        if (opt.k != 5 && opt.k != 7 && opt.k != 9)
            throw std::invalid_argument("--algo p9 requires k in {5,7,9}");
        if (find_induced_path(g, 9))
            throw NotP9FreeError("input contains an induced path on 9 vertices");
        answer = solve(g, l, &stats);
    } else if (opt.algo == "localized") {
        answer = solve_localized(g, l, &stats);
    } else {
        throw std::invalid_argument("unknown --algo value: " + opt.algo);
    }
    double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (answer && !verify(g, *answer, l))
        throw std::logic_error("solver returned a coloring that fails verification");
    std::ostringstream body;
    if (answer) {
        body << "SAT\n";
        write_coloring(body, *answer);
    } else {
        body << "UNSAT\n";
    }
    emit(opt.out, body.str());
    if (opt.bench) {
        std::cerr << "bench: seed-search " << stats.seed_seconds << "s, branching "
                  << stats.branch_seconds << "s, 2-sat " << stats.twosat_seconds << "s, total "
                  << total << "s\n";
        std::cerr << "bench: seed-size " << stats.seed_size << ", seed-colorings "
                  << stats.seed_colorings << ", branches " << stats.branches_explored
                  << ", max-round " << stats.max_round << ", subinstances "
                  << stats.subinstances_solved << "\n";
    }
    return answer ? 0 : 1;
}

struct VerifyOpts {
    std::string graph, coloring, lists;
    int k = 0;
};

int cmd_verify(const VerifyOpts& opt) {
    Graph g = load_graph(opt.graph);
    ListAssignment l = load_lists(opt.lists, g.n, opt.k);
    std::ifstream in(opt.coloring);
    if (!in) throw std::runtime_error("cannot open coloring file: " + opt.coloring);
    Coloring f = read_coloring(in, g.n);
    bool ok = verify(g, f, l);
    std::cout << (ok ? "valid\n" : "invalid\n");
    return ok ? 0 : 1;
}

struct GenerateOpts {
    std::string gadget, graph, formula, out;
    int k = 0, m = 0, d = 0, s = 0, g = 0;
    unsigned seed = 0;  // reserved: every current gadget is deterministic
};

int cmd_generate(const GenerateOpts& opt) {
    if (opt.out.empty()) throw std::invalid_argument("generate needs --out <basename>");
    GadgetInstance gi;
    if (opt.gadget == "subdivide" || opt.gadget == "degree-reduce") {
        if (opt.graph.empty()) throw std::invalid_argument("this gadget needs --graph");
        Graph src = load_graph(opt.graph);
        if (opt.gadget == "subdivide") {
            if (opt.m < 1) throw std::invalid_argument("subdivide needs --m >= 1");
            gi.graph = subdivide(src, opt.m);
            int sg = girth(src), og = girth(gi.graph);
            if (og != (sg == -1 ? -1 : sg * opt.m))
                throw std::logic_error("subdivide: girth did not scale by m");
            if (!is_in_gamma_p(gi.graph, opt.m))
                throw std::logic_error("subdivide: output escapes Gamma_m");
            gi.metadata = {
                {"gadget", "subdivide"},
                {"m", std::to_string(opt.m)},
                {"source-vertices", std::to_string(src.n)},
                {"source-edges", std::to_string(src.edge_count())},
                {"vertices", std::to_string(gi.graph.n)},
                {"edges", std::to_string(gi.graph.edge_count())},
                {"gamma-p", std::to_string(opt.m)},
            };
            if (opt.m % 2 == 1 && opt.m >= 3) {
                int k = opt.m + 2;
                gi.k = k;
                gi.metadata.emplace_back(
                    "equivalence", "the source is properly " + std::to_string(k) +
                                       "-colorable iff the output maps into C_" +
                                       std::to_string(k));
            }
        } else {
            if (opt.k < 5 || opt.k % 2 == 0)
                throw std::invalid_argument("degree-reduce needs odd --k >= 5");
            gi.graph = reduce_degree(src, opt.k);
            if (max_degree(gi.graph) > 3)
                throw std::logic_error("degree-reduce: output is not subcubic");
            gi.k = opt.k;
            gi.metadata = {
                {"gadget", "degree-reduce"},
                {"k", std::to_string(opt.k)},
                {"source-vertices", std::to_string(src.n)},
                {"source-edges", std::to_string(src.edge_count())},
                {"vertices", std::to_string(gi.graph.n)},
                {"edges", std::to_string(gi.graph.edge_count())},
                {"max-degree", std::to_string(max_degree(gi.graph))},
                {"equivalence", "the source is C_k-colorable iff the output is"},
            };
        }
    } else if (opt.gadget == "chain") {
        if (opt.d < 1) throw std::invalid_argument("chain needs --d >= 1");
        if (opt.k < 5 || opt.k % 2 == 0) throw std::invalid_argument("chain needs odd --k >= 5");
        gi = build_chain_gadget(opt.d, opt.k);
    } else if (opt.gadget == "nonrainbow") {
        if (opt.s < 2) throw std::invalid_argument("nonrainbow needs --s >= 2");
        FormulaInput fi = load_formula(opt.formula, FormulaKind::NonRainbowHypergraph);
        gi = nonrainbow_to_extension(fi.formula, fi.partial, opt.s);
    } else if (opt.gadget == "nae") {
        if (opt.s < 2) throw std::invalid_argument("nae needs --s >= 2");
        FormulaInput fi = load_formula(opt.formula, FormulaKind::NaeThreeSat);
        gi = nae3sat_to_coloring(fi.formula, opt.s, opt.d);
    } else if (opt.gadget == "monotone-list") {
        if (opt.s < 3) throw std::invalid_argument("monotone-list needs --s >= 3");
        if (opt.g < 4 || opt.g % 2 != 0)
            throw std::invalid_argument("monotone-list needs even --g >= 4");
        FormulaInput fi = load_formula(opt.formula, FormulaKind::MonotoneThreeSat);
        gi = monotone3sat_to_listinstance(fi.formula, opt.s, opt.g);
    } else {
        throw std::invalid_argument("unknown gadget: " + opt.gadget +
                                    " (expected subdivide, chain, degree-reduce, nonrainbow, "
                                    "nae, or monotone-list)");
    }

    {
        std::ofstream out(opt.out + ".graph");
        if (!out) throw std::runtime_error("cannot write " + opt.out + ".graph");
        write_graph(out, gi.graph);
        std::cout << "wrote " << opt.out << ".graph\n";
    }
    if (gi.lists || !gi.precoloring.empty()) {
        std::ofstream out(opt.out + ".lists");
        if (!out) throw std::runtime_error("cannot write " + opt.out + ".lists");
        write_lists(out, instance_lists(gi));
        std::cout << "wrote " << opt.out << ".lists\n";
    }
    {
        std::ofstream out(opt.out + ".meta");
        if (!out) throw std::runtime_error("cannot write " + opt.out + ".meta");
        write_metadata(out, gi.metadata);
        std::cout << "wrote " << opt.out << ".meta\n";
    }
    return 0;
}

struct CheckOpts {
    std::string graph, variant = "plain";
    std::vector<int> ts{9};
    std::vector<int> ps;
    bool forbidden = false;
    int k = 0;
};

int cmd_check(const CheckOpts& opt) {
    Graph g = load_graph(opt.graph);
    std::ostringstream os;
    os << "vertices: " << g.n << '\n';
    os << "edges: " << g.edge_count() << '\n';
    os << "connected: " << yesno(is_connected(g)) << '\n';
    os << "max-degree: " << max_degree(g) << '\n';
    os << "triangle-free: " << yesno(is_triangle_free(g)) << '\n';
    int gr = girth(g);
    if (gr == -1)
        os << "girth: inf\n";
    else
        os << "girth: " << gr << '\n';
    os << "bipartite: " << yesno(is_bipartite(g)) << '\n';
    for (int t : opt.ts) os << "p" << t << "-free: " << yesno(is_pt_free(g, t)) << '\n';
    for (int p : opt.ps) os << "gamma-" << p << ": " << yesno(is_in_gamma_p(g, p)) << '\n';
    if (opt.forbidden) {
        if (opt.k == 0)
            throw std::invalid_argument("--forbidden needs --k");
        Variant v;
        if (opt.variant == "plain")
            v = Variant::Plain;
        else if (opt.variant == "extension")
            v = Variant::Extension;
        else if (opt.variant == "list")
            v = Variant::List;
        else
            throw std::invalid_argument("unknown --variant value: " + opt.variant);
        os << "classify: " << to_string(classify(g, opt.k, v)) << '\n';
    }
    std::cout << os.str();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cycle homomorphism toolkit"};
    app.require_subcommand(1);

    SolveOpts so;
    CLI::App* solve_cmd = app.add_subcommand("solve", "solve a (list) C_k homomorphism instance");
    solve_cmd->add_option("graph", so.graph, "graph file")->required();
    solve_cmd->add_option("--k", so.k, "cycle length")->required();
    solve_cmd->add_option("--lists", so.lists, "list assignment file");
    solve_cmd->add_option("--algo", so.algo, "auto | p9 | localized | oracle");
    solve_cmd->add_option("--out", so.out, "write the result here instead of stdout");
    solve_cmd->add_flag("--bench", so.bench, "report per-phase wall time on stderr");

    VerifyOpts vo;
    CLI::App* verify_cmd = app.add_subcommand("verify", "check a coloring against an instance");
    verify_cmd->add_option("graph", vo.graph, "graph file")->required();
    verify_cmd->add_option("coloring", vo.coloring, "coloring file")->required();
    verify_cmd->add_option("--k", vo.k, "cycle length")->required();
    verify_cmd->add_option("--lists", vo.lists, "list assignment file");

    GenerateOpts go;
    CLI::App* gen_cmd = app.add_subcommand(
        "generate", "emit a hardness-construction instance plus metadata sidecar");
    gen_cmd->add_option("gadget", go.gadget,
                        "subdivide | chain | degree-reduce | nonrainbow | nae | monotone-list")
        ->required();
    gen_cmd->add_option("--out", go.out, "output basename (.graph/.lists/.meta)")->required();
    gen_cmd->add_option("--graph", go.graph, "source graph (subdivide, degree-reduce)");
    gen_cmd->add_option("--formula", go.formula, "source formula (nonrainbow, nae, monotone-list)");
    gen_cmd->add_option("--k", go.k, "target cycle length (chain, degree-reduce)");
    gen_cmd->add_option("--m", go.m, "edges per subdivided path (subdivide)");
    gen_cmd->add_option("--d", go.d, "copies (chain) or branch spacing (nae; 0 = minimum)");
    gen_cmd->add_option("--s", go.s, "half cycle length parameter (nonrainbow, nae, monotone-list)");
    gen_cmd->add_option("--g", go.g, "girth parameter (monotone-list)");
    gen_cmd->add_option("--seed", go.seed,
                        "reserved for randomized generators; current gadgets are deterministic");

    CheckOpts co;
    CLI::App* check_cmd = app.add_subcommand("check", "report structural facts about a graph");
    check_cmd->add_option("graph", co.graph, "graph file")->required();
    check_cmd->add_option("--t", co.ts, "report P_t-freeness for these t");
    check_cmd->add_option("--p", co.ps, "report Gamma_p membership for these p");
    check_cmd->add_flag("--forbidden", co.forbidden,
                        "treat the graph as a forbidden subgraph and classify");
    check_cmd->add_option("--k", co.k, "cycle length for --forbidden");
    check_cmd->add_option("--variant", co.variant, "plain | extension | list (for --forbidden)");

    int rc = 0;
    solve_cmd->callback([&] { rc = cmd_solve(so); });
    verify_cmd->callback([&] { rc = cmd_verify(vo); });
    gen_cmd->callback([&] { rc = cmd_generate(go); });
    check_cmd->callback([&] { rc = cmd_check(co); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return rc;
}
