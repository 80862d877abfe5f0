// mimlab: widths, traces, OBDDs and the verification harness from the command line.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mimlab/cnf.hpp"
#include "mimlab/generators.hpp"
#include "mimlab/graph_io.hpp"
#include "mimlab/harness.hpp"
#include "mimlab/obdd.hpp"
#include "mimlab/traces.hpp"
#include "mimlab/width.hpp"

using namespace mimlab;
using json = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, check_failed = 1, usage = 2, budget_exhausted = 3 };

struct Globals {
    long long budget = 0;
    std::uint64_t seed = 0;
    int threads = 1;
    bool json = false;
    bool strict = false;

    Budget limits() const {
        Budget b = Budget::from_env();
        if (budget > 0) b.matching_nodes = static_cast<std::uint64_t>(budget);
        return b;
    }
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// a path, "-" for stdin, or an instance descriptor such as fixture:c4
Graph load_graph(const std::string& input, std::uint64_t seed) {
    if (input == "-") return read_edge_list(std::cin);
    if (!std::filesystem::exists(input) && input.find(':') != std::string::npos) {
        auto inst = resolve_instances(input, seed);
        if (inst.size() != 1) throw UsageError("descriptor must name a single graph: " + input);
        return inst.front().graph;
    }
    return read_edge_list_file(input);
}

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    fn(out);
}

std::string order_text(const Graph& g, const std::vector<int>& perm) {
    std::string s;
    for (std::size_t i = 0; i < perm.size(); ++i) s += (i ? " " : "") + g.label(perm[i]);
    return s;
}

std::string set_text(const Graph& g, const VertexSet& s) {
    std::string out = "{";
    bool first = true;
    s.for_each([&](int v) {
        out += (first ? "" : ",") + g.label(v);
        first = false;
    });
    return out + "}";
}

json set_json(const VertexSet& s) {
    json a = json::array();
    s.for_each([&](int v) { a.push_back(v + 1); });
    return a;
}

std::string join(const std::vector<int>& v, const char* sep = " ") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

// ---- gen

struct GenArgs {
    int p = 0, q = 0, r = 0, k = 0;
    bool auto_p = false;
    std::string name;
    std::string out;
};

std::vector<std::string> grid_meta(const SkewGrid& sg) {
    const auto& m = sg.meta;
    std::vector<std::string> lines = {
        "skew-grid p=" + std::to_string(m.p) + " q=" + std::to_string(m.q) + " r=" + std::to_string(m.r),
        "meta columns vertex layer coordinate kind block",
    };
    for (int v = 0; v < sg.graph.n(); ++v) {
        const auto idx = static_cast<std::size_t>(v);
        lines.push_back("meta " + std::to_string(v + 1) + " " + std::to_string(m.layer_of[idx]) + " " +
                        std::to_string(m.coordinate_of[idx]) + " " +
                        (m.kind_of[idx] == VertexKind::main ? "main" : "aux") + " " + std::to_string(m.block_of[idx]));
    }
    return lines;
}

void add_gen(CLI::App& app) {
    auto* gen = app.add_subcommand("gen", "Generate a graph family as an edge list");
    gen->require_subcommand(1);
    gen->fallthrough();
    auto args = std::make_shared<GenArgs>();
    auto emit = [args](const Graph& graph, std::vector<std::string> comments) {
        with_output(args->out, [&](std::ostream& os) { write_edge_list(os, graph, comments); });
    };

    auto* sg = gen->add_subcommand("skew-grid", "p,q,r-grid of skewed graphs");
    sg->add_option("--p", args->p, "layers (omit or pass --auto-p for 2r*ceil(log2 q))");
    sg->add_flag("--auto-p", args->auto_p, "compute p from q and r");
    sg->add_option("--q", args->q)->required();
    sg->add_option("--r", args->r)->required();
    sg->add_option("-o,--output", args->out);
    sg->callback([args, emit] {
        const int p = args->auto_p || args->p == 0 ? lower_bound_layer_count(args->q, args->r) : args->p;
        SkewGrid grid = skew_grid(p, args->q, args->r);
        emit(grid.graph, grid_meta(grid));
    });

    auto* sp = gen->add_subcommand("skew-path", "p,q-path of skewed graphs");
    sp->add_option("--p", args->p)->required();
    sp->add_option("--q", args->q)->required();
    sp->add_option("-o,--output", args->out);
    sp->callback([args, emit] {
        emit(skew_path(args->p, args->q).graph,
             {"skew-path p=" + std::to_string(args->p) + " q=" + std::to_string(args->q),
              "meta vertex (l,j) = (l-1)*q + j"});
    });

    auto* sk = gen->add_subcommand("skew", "SKEW(U,V) with |U| = |V| = q");
    sk->add_option("--q", args->q)->required();
    sk->add_option("-o,--output", args->out);
    sk->callback([args, emit] { emit(skew(args->q), {"skew q=" + std::to_string(args->q), "meta U = 1.." + std::to_string(args->q)}); });

    auto* pm = gen->add_subcommand("matching", "perfect matching on 2k vertices");
    pm->add_option("--k", args->k)->required();
    pm->add_option("-o,--output", args->out);
    pm->callback([args, emit] { emit(perfect_matching(args->k), {"matching k=" + std::to_string(args->k), "meta U = 1.." + std::to_string(args->k)}); });

    auto* h = gen->add_subcommand("h", "r cliques threaded by r paths");
    h->add_option("--r", args->r)->required();
    h->add_option("-o,--output", args->out);
    h->callback([args, emit] { emit(h_graph(args->r), {"h r=" + std::to_string(args->r), "meta vertex (i,j) = (i-1)*r + j"}); });

    auto* gr = gen->add_subcommand("grid", "p x r grid");
    gr->add_option("--p", args->p)->required();
    gr->add_option("--r", args->r)->required();
    gr->add_option("-o,--output", args->out);
    gr->callback([args, emit] {
        emit(grid(args->p, args->r), {"grid p=" + std::to_string(args->p) + " r=" + std::to_string(args->r)});
    });

    auto* ce = gen->add_subcommand("counterexample", "independent U matched into a clique V");
    ce->add_option("--k", args->k)->required();
    ce->add_option("-o,--output", args->out);
    ce->callback([args, emit] {
        emit(matching_counterexample(args->k),
             {"counterexample k=" + std::to_string(args->k), "meta U = 1.." + std::to_string(args->k)});
    });

    auto* fx = gen->add_subcommand("fixture", "named fixture graph");
    fx->add_option("name", args->name)->required()->check(CLI::IsMember(fixture_names()));
    fx->add_option("-o,--output", args->out);
    fx->callback([args, emit] {
        Graph graph = fixture(args->name);
        std::vector<std::string> comments = {"fixture " + args->name};
        std::string labels = "meta labels";
        for (int v = 0; v < graph.n(); ++v) labels += " " + graph.label(v);
        comments.push_back(labels);
        emit(graph, comments);
    });
}

// ---- width

void add_width(CLI::App& app, Globals& g, int& code) {
    auto* cmd = app.add_subcommand("width", "lu / lmim / lsim width of a graph");
    struct Args {
        std::string input, variant = "lu", order;
        bool exact = false, heuristic = false;
        long long evals = 0;
    };
    auto a = std::make_shared<Args>();
    cmd->add_option("-i,--input", a->input, "edge list, '-' or a descriptor like fixture:c4")->required();
    cmd->add_option("--variant", a->variant)->check(CLI::IsMember({"lu", "lmim", "lsim"}));
    auto* ex = cmd->add_flag("--exact", a->exact, "subset DP (n <= 24)");
    cmd->add_flag("--heuristic", a->heuristic, "local search upper bound")->excludes(ex);
    cmd->add_option("--order", a->order, "evaluate this ordering (1-based, comma separated) instead");
    cmd->add_option("--evals", a->evals, "prefix evaluations for --heuristic (default: --budget or 2000)");
    cmd->callback([a, &g, &code] {
        const Graph graph = load_graph(a->input, g.seed);
        const WidthVariant variant = parse_width_variant(a->variant);
        const Budget limits = g.limits();
        WidthReport rep;
        std::string mode;
        if (!a->order.empty()) {
            VertexOrdering pi(parse_index_list(a->order), graph.n());
            auto w = width_of_ordering(graph, pi, variant, limits);
            rep = WidthReport{variant, w.value, pi, w.per_prefix, true};
            mode = "ordering";
        } else if (a->heuristic || (!a->exact && graph.n() > limits.max_dp_vertices)) {
            const long long evals = a->evals > 0 ? a->evals : (g.budget > 0 ? g.budget : 2000);
            rep = heuristic_width_upper(graph, variant, g.seed, static_cast<std::uint64_t>(evals), limits);
            mode = "heuristic";
        } else {
            rep = exact_width(graph, variant, limits);
            mode = "exact";
        }
        if (g.json) {
            json j;
            j["variant"] = std::string(to_string(variant));
            j["mode"] = mode;
            j["exact"] = mode != "heuristic";
            j["value"] = rep.value;
            std::vector<int> order;
            for (int v : rep.witness.perm()) order.push_back(v + 1);
            j["witness"] = order;
            j["per_prefix"] = rep.per_prefix;
            j["seed"] = g.seed;
            std::cout << j.dump(2) << '\n';
        } else {
            std::cout << to_string(variant) << " width: " << rep.value << " (" << mode << ")\n";
            std::cout << "ordering: " << order_text(graph, rep.witness.perm()) << '\n';
            std::cout << "per prefix: " << join(rep.per_prefix) << '\n';
        }
        code = ok;
    });
}

// ---- traces

void add_traces(CLI::App& app, Globals& g, int& code) {
    auto* cmd = app.add_subcommand("traces", "trace family of a vertex set");
    struct Args {
        std::string input, side;
    };
    auto a = std::make_shared<Args>();
    cmd->add_option("-i,--input", a->input)->required();
    cmd->add_option("--side", a->side, "U as 1-based indices, e.g. \"1,2\"")->required();
    cmd->callback([a, &g, &code] {
        const Graph graph = load_graph(a->input, g.seed);
        const VertexSet u = parse_vertex_list(graph, a->side);
        const Budget limits = g.limits();
        TraceSet ts = traces(graph, u, limits);
        const CutMatching cm = max_induced_cut_matching(graph, u, limits);
        const bool v_independent = is_independent(graph, u.complement());
        std::optional<TraceBoundReport> t1;
        if (v_independent) t1 = trace_bound_check(graph, u, limits);
        const bool u_independent = is_independent(graph, u);
        std::optional<int> vc;
        if (v_independent && u_independent) vc = vc_dimension(ts, limits);
        if (g.json) {
            json j;
            j["side_u"] = set_json(u);
            j["trace_count"] = ts.size();
            json fam = json::array();
            for (const auto& t : ts.traces) fam.push_back(set_json(t));
            j["traces"] = fam;
            j["r"] = cm.size;
            json w = json::array();
            for (const Edge& e : cm.witness) w.push_back({e.u + 1, e.v + 1});
            j["matching"] = w;
            j["complement_independent"] = v_independent;
            if (t1) {
                j["binomial_bound"] = t1->binomial_bound;
                j["power_bound"] = t1->power_bound;
                j["within_binomial"] = t1->within_binomial;
                j["within_power"] = t1->within_power;
                j["small_sets_generate"] = t1->small_sets_generate;
            }
            if (vc) j["vc_dimension"] = *vc;
            std::cout << j.dump(2) << '\n';
        } else {
            std::cout << "U = " << set_text(graph, u) << '\n';
            std::cout << "traces (" << ts.size() << "):";
            for (const auto& t : ts.traces) std::cout << ' ' << set_text(graph, t);
            std::cout << "\nmax induced matching r = " << cm.size << ':';
            for (const Edge& e : cm.witness) std::cout << ' ' << graph.label(e.u) << '-' << graph.label(e.v);
            std::cout << '\n';
            if (t1) {
                std::cout << "bound: " << t1->trace_count << " <= " << t1->binomial_bound << " (binomial) "
                          << (t1->within_binomial ? "ok" : "VIOLATED") << ", <= " << t1->power_bound << " (n^{r+1}) "
                          << (t1->within_power ? "ok" : "VIOLATED") << ", sets of size <= r generate all: "
                          << (t1->small_sets_generate ? "yes" : "NO") << '\n';
            } else {
                std::cout << "bound: not applicable (complement of U is not independent)\n";
            }
            if (vc) std::cout << "vc dimension: " << *vc << '\n';
        }
        code = t1 && !t1->passed() ? check_failed : ok;
    });
}

// ---- obdd

void add_obdd(CLI::App& app, Globals& g, int& code) {
    auto* cmd = app.add_subcommand("obdd", "compile the monotone 2-CNF of a graph into an OBDD");
    struct Args {
        std::string input, order, minimize, dot, cnf;
    };
    auto a = std::make_shared<Args>();
    cmd->add_option("-i,--input", a->input)->required();
    auto* ord = cmd->add_option("--order", a->order, "variable order, 1-based, comma separated");
    cmd->add_option("--minimize", a->minimize, "search for a minimum-size order")
        ->check(CLI::IsMember({"exact", "factorial", "dp"}))
        ->excludes(ord);
    cmd->add_option("--dot", a->dot, "write the reduced OBDD as DOT");
    cmd->add_option("--cnf", a->cnf, "write the formula in DIMACS CNF");
    cmd->callback([a, &g, &code] {
        const Graph graph = load_graph(a->input, g.seed);
        const Budget limits = g.limits();
        if (!a->cnf.empty()) with_output(a->cnf, [&](std::ostream& os) { cnf_of_graph(graph).write_dimacs(os); });
        VertexOrdering order = a->order.empty() ? VertexOrdering::identity(graph.n())
                                                : VertexOrdering(parse_index_list(a->order), graph.n());
        std::optional<MinObddSize> min;
        if (!a->minimize.empty()) {
            min = min_obdd_size_exact(graph, parse_minimize_method(a->minimize), limits);
            order = min->order_total;
        }
        Obdd z = build_obdd(graph, order);
        if (!a->dot.empty()) with_output(a->dot, [&](std::ostream& os) { write_dot(os, z); });
        const std::uint64_t models = count_accepting(z);
        if (g.json) {
            json j;
            std::vector<int> perm;
            for (int v : order.perm()) perm.push_back(v + 1);
            j["order"] = perm;
            j["size_total"] = z.size_total();
            j["size_internal"] = z.size_internal();
            j["size_quasi_reduced"] = z.size_quasi_reduced();
            j["level_counts"] = z.quasi_level_counts();
            j["models"] = models;
            if (min) {
                j["min_size_total"] = min->size_total;
                j["min_size_quasi"] = min->size_quasi;
                std::vector<int> q;
                for (int v : min->order_quasi.perm()) q.push_back(v + 1);
                j["order_quasi"] = q;
                j["method"] = std::string(to_string(parse_minimize_method(a->minimize)));
            }
            std::cout << j.dump(2) << '\n';
        } else {
            std::cout << "order: " << order_text(graph, order.perm()) << '\n';
            std::cout << "size: " << z.size_total() << " nodes (" << z.size_internal() << " internal), quasi-reduced "
                      << z.size_quasi_reduced() << '\n';
            std::cout << "models: " << models << '\n';
            if (min) {
                std::cout << "minimum reduced size " << min->size_total << ", minimum quasi-reduced size "
                          << min->size_quasi << " under " << order_text(graph, min->order_quasi.perm()) << '\n';
            }
        }
        code = ok;
    });
}

// ---- verify / export

void print_failures(const std::vector<ReportRow>& rows) {
    for (const auto& r : rows) {
        if (r.status != CheckStatus::fail) continue;
        std::cerr << "--- " << r.check << " on " << r.instance << '\n'
                  << "-   expected: " << r.bound << '\n'
                  << "+   observed: " << (r.detail.empty() ? "violated" : r.detail) << '\n';
    }
}

void add_verify(CLI::App& app, Globals& g, int& code) {
    auto* cmd = app.add_subcommand("verify", "run verification checks over instances");
    struct Args {
        std::vector<std::string> instances, checks;
        std::string out = "-", format;
        bool timing = false;
        int mixed = 10, orderings = 5;
    };
    auto a = std::make_shared<Args>();
    cmd->add_option("--instance", a->instances, "instance descriptor (repeatable), e.g. corpus:connected:6")
        ->required();
    cmd->add_option("--check", a->checks, "check name (repeatable or comma separated)")
        ->required()
        ->delimiter(',')
        ->check(CLI::IsMember(known_checks()));
    cmd->add_option("-o,--output", a->out, "report path, '-' for stdout");
    cmd->add_option("--format", a->format, "csv or json (default csv, or json with --json)")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--timing", a->timing, "include wall time per row");
    cmd->add_option("--mixed-samples", a->mixed, "seeded mixed-layer horizontal subgraphs");
    cmd->add_option("--random-orderings", a->orderings, "seeded random orderings for lemma3-core");
    cmd->callback([a, &g, &code] {
        ExperimentSpec spec;
        spec.instances = a->instances;
        spec.checks = a->checks;
        spec.budget = g.limits();
        spec.seed = g.seed;
        spec.threads = g.threads;
        spec.mixed_samples = a->mixed;
        spec.random_orderings = a->orderings;
        auto rows = verify(spec);
        const auto format = a->format.empty() ? (g.json ? ExportFormat::json : ExportFormat::csv)
                                              : parse_export_format(a->format);
        export_rows(rows, format, a->out, a->timing);
        print_failures(rows);
        if (any_failed(rows)) code = check_failed;
        else if (g.strict && any_skipped(rows)) code = budget_exhausted;
        else code = ok;
    });
}

void add_export(CLI::App& app, Globals& g, int& code) {
    auto* cmd = app.add_subcommand("export", "convert a JSON report to CSV or JSON");
    struct Args {
        std::string input, out = "-", format = "csv";
        bool timing = false;
    };
    auto a = std::make_shared<Args>();
    cmd->add_option("-i,--input", a->input, "JSON report written by verify")->required();
    cmd->add_option("--format", a->format)->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("-o,--output", a->out);
    cmd->add_flag("--timing", a->timing);
    cmd->callback([a, &g, &code] {
        std::vector<ReportRow> rows;
        if (a->input == "-") {
            rows = read_json(std::cin);
        } else {
            std::ifstream in(a->input);
            if (!in) throw std::runtime_error("cannot open " + a->input);
            rows = read_json(in);
        }
        export_rows(rows, parse_export_format(a->format), a->out, a->timing);
        code = any_failed(rows) ? check_failed : (g.strict && any_skipped(rows) ? budget_exhausted : ok);
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linear induced-matching widths, traces and OBDDs of monotone 2-CNFs"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    int code = ok;
    app.add_option("--budget", g.budget, "search-node budget for the induced-matching search (overrides MIMLAB_BUDGET)");
    app.add_option("--seed", g.seed, "seed for random corpora and heuristics");
    app.add_option("--threads", g.threads, "worker threads for verify")->check(CLI::PositiveNumber);
    app.add_flag("--json", g.json, "machine-readable output");
    app.add_flag("--strict", g.strict, "exit 3 when a budget is exhausted");
    add_gen(app);
    add_width(app, g, code);
    add_traces(app, g, code);
    add_obdd(app, g, code);
    add_verify(app, g, code);
    add_export(app, g, code);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << '\n';
        return g.strict ? budget_exhausted : ok;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
    return code;
}
