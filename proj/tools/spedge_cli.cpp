#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <spedge/selftest.hpp>
#include <spedge/spedge.hpp>

namespace {

using namespace spedge;

enum exit_code : int { ok = 0, answer_no = 1, usage = 2, not_sp = 3 };

multigraph load_graph(const std::string& path) {
    if (path == "-") return io::read_graph(std::cin);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return io::read_graph(in);
}

template <class F>
void with_output(const std::string& path, F&& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write(out);
}

int verdict_exit(const verdict& v) {
    switch (v.kind) {
        case verdict_kind::yes: return ok;
        case verdict_kind::no: return answer_no;
        default: return not_sp;
    }
}

std::string set_string(const std::vector<vertex_id>& set) {
    std::string out = "U={";
    for (std::size_t i = 0; i < set.size(); ++i) out += (i ? "," : "") + std::to_string(set[i] + 1);
    return out + "}";
}

int run_decide(const std::string& file, count_t k, const std::string& trace_path) {
    multigraph g = load_graph(file);
    std::vector<reduction_frame> trace;
    decide_options options;
    options.trace = &trace;
    verdict v = decide(g, k, options);
    std::cout << v.describe(k) << '\n';
    if (!trace_path.empty()) with_output(trace_path, [&](std::ostream& os) { write_trace(os, trace); });
    return verdict_exit(v);
}

int run_color(const std::string& file, count_t k, const std::string& out_path) {
    multigraph g = load_graph(file);
    verdict v;
    auto col = color(g, k, &v);
    if (!col) {
        std::cout << v.describe(k) << '\n';
        return verdict_exit(v);
    }
    with_output(out_path, [&](std::ostream& os) { io::write_coloring(os, g, *col); });
    if (!out_path.empty() && out_path != "-") std::cout << "YES\n";
    return ok;
}

int run_chi(const std::string& file) {
    multigraph g = load_graph(file);
    if (is_series_parallel(g)) {
        std::cerr << "method: reducer\n";
        std::cout << chromatic_index(g) << '\n';
        return ok;
    }
    std::cerr << "method: exhaustive search (not series-parallel)\n";
    try {
        std::cout << oracle::chi_exact(g) << '\n';
    } catch (const budget_exceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return not_sp;
    }
    return ok;
}

int run_gamma(const std::string& file, bool pruned) {
    multigraph g = load_graph(file);
    auto report = oracle::gamma_exact(g, pruned);
    std::cout << report.density.to_string() << ' ' << set_string(report.set) << '\n';
    return ok;
}

int run_verify(const std::string& graph_path, const std::string& coloring_path) {
    multigraph g = load_graph(graph_path);
    std::ifstream in(coloring_path);
    if (!in) throw std::runtime_error("cannot open " + coloring_path);
    coloring col = io::read_coloring(in, g);
    if (auto bad = find_conflict(g, col.k, col)) {
        const auto& c = g.classes()[bad->class_index];
        std::cout << "INVALID";
        if (bad->v != no_vertex) std::cout << " vertex " << bad->v + 1;
        std::cout << " class " << c.u + 1 << '-' << c.v + 1 << " colour " << bad->color << ": " << bad->message << '\n';
        return answer_no;
    }
    std::cout << "VALID k=" << col.k << '\n';
    return ok;
}

int run_gen(std::size_t n, count_t max_mult, std::uint64_t seed, const std::string& out_path) {
    multigraph g = oracle::gen_sp(n, max_mult, seed);
    with_output(out_path, [&](std::ostream& os) {
        os << "c series-parallel n=" << n << " max_mult=" << max_mult << " seed=" << seed << '\n';
        io::write_graph(os, g);
    });
    return ok;
}

int run_selftest(const selftest::config& cfg) {
    if (cfg.max_vertices < 2) throw std::invalid_argument("--max-vertices must be at least 2");
    bool all = true;
    for (const auto& r : selftest::run_all(cfg)) {
        all = all && r.passed();
        std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks, " << r.failures
                  << " failures)\n";
        if (!r.passed() && !r.first_failure.empty()) std::cout << r.first_failure << '\n';
    }
    return all ? ok : answer_no;
}

int run_bench(const std::vector<std::size_t>& sizes, count_t max_mult, std::uint64_t seed, int runs) {
    for (std::size_t n : sizes) {
        multigraph g = oracle::gen_sp(n, max_mult, seed);
        const count_t k = (3 * g.max_degree() + 1) / 2;
        std::vector<double> times;
        decide_stats stats;
        for (int r = 0; r < runs; ++r) {
            decide_options options;
            options.stats = &stats;
            auto start = std::chrono::steady_clock::now();
            decide(g, k, options);
            times.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
        }
        std::sort(times.begin(), times.end());
        std::cout << "n=" << n << " classes=" << g.class_count() << " k=" << k << " time_ms=" << times[times.size() / 2]
                  << " iterations=" << stats.iterations << " potential=" << stats.final_potential << '/'
                  << stats.initial_potential << '\n';
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Edge-colouring of series-parallel multigraphs"};
    app.require_subcommand(1);

    std::string file, second, out_path, trace_path;
    count_t k = 0;
    bool pruned = false;
    std::size_t n = 0;
    count_t max_mult = 4;
    std::uint64_t seed = 1;
    selftest::config st;
    std::vector<std::size_t> sizes;
    int runs = 1;

    auto* decide_cmd = app.add_subcommand("decide", "decide k-edge-colourability");
    decide_cmd->add_option("-k", k, "number of colours")->required();
    decide_cmd->add_option("--trace", trace_path, "write the reduction trace to this file");
    decide_cmd->add_option("file", file, "graph file ('-' for stdin)")->required();

    auto* color_cmd = app.add_subcommand("color", "write a k-edge-colouring");
    color_cmd->add_option("-k", k, "number of colours")->required();
    color_cmd->add_option("-o", out_path, "colouring output file");
    color_cmd->add_option("file", file, "graph file")->required();

    auto* chi_cmd = app.add_subcommand("chi", "print the chromatic index");
    chi_cmd->add_option("file", file, "graph file")->required();

    auto* gamma_cmd = app.add_subcommand("gamma", "print the odd-set density and a densest set");
    gamma_cmd->add_flag("--pruned", pruned, "only sets without low-degree vertices");
    gamma_cmd->add_option("file", file, "graph file")->required();

    auto* verify_cmd = app.add_subcommand("verify", "check a colouring file against a graph");
    verify_cmd->add_option("graph", file, "graph file")->required();
    verify_cmd->add_option("coloring", second, "colouring file")->required();

    auto* gen_cmd = app.add_subcommand("gen", "generate a random series-parallel multigraph");
    gen_cmd->add_option("-n", n, "vertex count")->required()->check(CLI::Range(std::size_t{2}, std::size_t{1} << 31));
    gen_cmd->add_option("--max-mult", max_mult, "largest multiplicity")->required()->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", seed, "random seed")->required();
    gen_cmd->add_option("-o", out_path, "output file");

    auto* selftest_cmd = app.add_subcommand("selftest", "cross-check against the exhaustive oracles");
    selftest_cmd->add_option("--instances", st.instances, "corpus size")->required();
    selftest_cmd->add_option("--max-vertices", st.max_vertices, "largest instance")->required()->check(CLI::Range(2, 10));
    selftest_cmd->add_option("--seed", st.seed, "random seed")->required();
    selftest_cmd->add_option("--max-mult", st.max_mult, "largest multiplicity")->check(CLI::PositiveNumber);

    auto* bench_cmd = app.add_subcommand("bench", "time decide on generated instances");
    bench_cmd->add_option("--sizes", sizes, "vertex counts, comma separated")->required()->delimiter(',');
    bench_cmd->add_option("--max-mult", max_mult, "largest multiplicity")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", seed, "random seed");
    bench_cmd->add_option("--runs", runs, "runs per size (median reported)")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (*decide_cmd) return run_decide(file, k, trace_path);
        if (*color_cmd) return run_color(file, k, out_path);
        if (*chi_cmd) return run_chi(file);
        if (*gamma_cmd) return run_gamma(file, pruned);
        if (*verify_cmd) return run_verify(file, second);
        if (*gen_cmd) return run_gen(n, max_mult, seed, out_path);
        if (*selftest_cmd) return run_selftest(st);
        if (*bench_cmd) return run_bench(sizes, max_mult, seed, runs);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return usage;
    } catch (const graph_error& e) {
        std::cerr << "invalid graph: " << e.what() << '\n';
        return usage;
    } catch (const shape_mismatch& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const budget_exceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
    return usage;
}
