#pragma once

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "colorer.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "reducer.hpp"
#include "series_parallel.hpp"

// Randomised cross-checks of the linear-time path against the exponential
// oracles. Shared by `spedge selftest` and the acceptance suite.

namespace spedge::selftest {

struct config {
    std::size_t instances = 1000;
    std::size_t max_vertices = 8;
    count_t max_mult = 4;
    std::uint64_t seed = 1;
};

struct suite_result {
    explicit suite_result(std::string name_) : name(std::move(name_)) {}

    std::string name;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::string first_failure;

    bool passed() const { return failures == 0 && checks > 0; }

    void fail(const std::string& what) {
        if (failures++ == 0) first_failure = what;
    }
};

/// Instance i uses seed + i and a vertex count drawn from [2, max_vertices].
inline std::vector<multigraph> corpus(const config& cfg) {
    std::vector<multigraph> out;
    out.reserve(cfg.instances);
    for (std::size_t i = 0; i < cfg.instances; ++i) {
        std::mt19937_64 rng(cfg.seed + i);
        std::size_t n = 2 + oracle::uniform_below(rng, cfg.max_vertices - 1);
        out.push_back(oracle::gen_sp(n, cfg.max_mult, rng()));
    }
    return out;
}

inline oracle::budget budget_for(const config& cfg) {
    return {cfg.max_vertices, static_cast<count_t>(cfg.max_vertices) * cfg.max_vertices * cfg.max_mult};
}

/// k from max(0, D - 1) to ceil(3D/2) + 1.
inline std::pair<count_t, count_t> k_range(const multigraph& g) {
    const count_t d = g.max_degree();
    return {d == 0 ? 0 : d - 1, (3 * d + 1) / 2 + 1};
}

inline std::string label(std::size_t index, const multigraph& g, count_t k) {
    std::ostringstream os;
    os << "instance " << index << " k=" << k << "\n" << io::graph_to_string(g);
    return os.str();
}

inline suite_result decide_agreement(const std::vector<multigraph>& graphs, const oracle::budget& limits) {
    suite_result r{"decide agrees with exhaustive search"};
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        auto [lo, hi] = k_range(graphs[i]);
        for (count_t k = lo; k <= hi; ++k) {
            ++r.checks;
            verdict v = decide(graphs[i], k);
            bool exact = oracle::is_k_colorable_exact(graphs[i], k, limits);
            if (v.kind == verdict_kind::not_series_parallel || v.yes() != exact)
                r.fail(label(i, graphs[i], k) + "decide: " + v.describe(k) + ", exact: " + (exact ? "YES" : "NO"));
        }
    }
    return r;
}

inline suite_result chromatic_identity(const std::vector<multigraph>& graphs, const oracle::budget& limits) {
    suite_result r{"chromatic index = exact = max(D, ceil(Gamma))"};
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        ++r.checks;
        count_t fast = chromatic_index(graphs[i]);
        count_t exact = oracle::chi_exact(graphs[i], limits);
        count_t bound = oracle::lower_bound(graphs[i]);
        if (fast != exact || exact != bound)
            r.fail(label(i, graphs[i], fast) + "reducer " + std::to_string(fast) + ", exact " + std::to_string(exact) +
                   ", bound " + std::to_string(bound));
    }
    return r;
}

inline suite_result coloring_soundness(const std::vector<multigraph>& graphs) {
    suite_result r{"replayed colourings verify"};
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        auto [lo, hi] = k_range(graphs[i]);
        for (count_t k = lo; k <= hi; ++k) {
            std::vector<reduction_frame> trace;
            decide_options options;
            options.trace = &trace;
            if (!decide(graphs[i], k, options).yes()) continue;
            ++r.checks;
            try {
                coloring col = replay_color(graphs[i], k, trace);
                if (auto bad = find_conflict(graphs[i], k, col)) r.fail(label(i, graphs[i], k) + bad->message);
            } catch (const std::exception& e) {
                r.fail(label(i, graphs[i], k) + e.what());
            }
        }
    }
    return r;
}

inline suite_result potential_monotone(const std::vector<multigraph>& graphs) {
    suite_result r{"potential strictly decreases"};
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        auto [lo, hi] = k_range(graphs[i]);
        for (count_t k = lo; k <= hi; ++k) {
            decide_stats stats;
            decide_options options;
            options.stats = &stats;
            decide(graphs[i], k, options);
            r.checks += stats.iterations;
            if (stats.potential_violations)
                r.fail(label(i, graphs[i], k) + std::to_string(stats.potential_violations) + " non-decreasing steps");
        }
    }
    return r;
}

// --- shadow model of the represented graph ---------------------------------------

/// Tracks the graph an encoding should represent by applying each reduction to
/// a plain edge map, then compares with expand() after every step.
class shadow_observer : public reduction_observer {
public:
    explicit shadow_observer(const multigraph& g) {
        for (vertex_id v = 0; v < g.vertex_count(); ++v) vertices_.insert(v);
        for (const auto& c : g.classes()) edges_[pair_key(c.u, c.v)] = c.mult;
    }

    std::size_t steps = 0;
    std::size_t violations = 0;
    std::size_t configurations = 0;
    std::size_t configuration_violations = 0;
    std::string first_problem;

    void on_configuration(const encoding_state& state, const configuration& conf) override {
        ++configurations;
        if (auto bad = oracle::configuration_mismatch(state.expand(), conf)) {
            if (configuration_violations++ == 0 && first_problem.empty()) first_problem = "configuration: " + *bad;
        }
    }

    void on_step(const encoding_state& state, const step_event& event) override {
        ++steps;
        if (event.frame) apply(*event.frame);
        std::string problem = compare(state);
        if (!problem.empty() && violations++ == 0 && first_problem.empty()) first_problem = problem;
    }

private:
    void change(vertex_id a, vertex_id b, long long delta) {
        if (delta == 0) return;
        auto& m = edges_[pair_key(a, b)];
        m = static_cast<count_t>(static_cast<long long>(m) + delta);
        if (m == 0) edges_.erase(pair_key(a, b));
    }

    void drop_vertex(vertex_id v) {
        for (auto it = edges_.begin(); it != edges_.end();) {
            if ((it->first >> 32) == v || (it->first & 0xffffffffu) == v)
                it = edges_.erase(it);
            else
                ++it;
        }
        vertices_.erase(v);
    }

    void apply(const reduction_frame& frame) {
        std::visit(
            [&](const auto& c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, isolated_vertex>) {
                    drop_vertex(c.v);
                } else if constexpr (std::is_same_v<T, pendant_class>) {
                    drop_vertex(c.v);
                } else if constexpr (std::is_same_v<T, twin_pair>) {
                    drop_vertex(c.v);
                    const auto& p = std::get<twin_payload>(frame.payload);
                    change(c.u, c.x, -static_cast<long long>(p.moved));
                    change(c.u, c.y, static_cast<long long>(p.moved));
                    if (p.u_dropped) drop_vertex(c.u);
                } else if constexpr (std::is_same_v<T, triple_path>) {
                    drop_vertex(c.v1);
                } else {
                    const auto& p = std::get<fan_payload>(frame.payload);
                    drop_vertex(c.v1);
                    if (c.v2 != no_vertex) drop_vertex(c.v2);
                    if (p.small_sum) return;
                    drop_vertex(c.w);
                    change(c.u1, c.u2, static_cast<long long>(p.z1 + p.z2));
                    auto fresh = [&](vertex_id v, count_t to_u1, count_t to_u2) {
                        if (v == no_vertex || to_u1 == 0 || to_u2 == 0) return;
                        vertices_.insert(v);
                        change(v, c.u1, static_cast<long long>(to_u1));
                        change(v, c.u2, static_cast<long long>(to_u2));
                    };
                    fresh(p.x, p.x_u1, p.x_u2);
                    fresh(p.y, p.y_u1, p.y_u2);
                }
            },
            frame.config);
    }

    std::string compare(const encoding_state& state) const {
        const multigraph expanded = state.expand();
        std::map<std::uint64_t, count_t> actual;
        for (const auto& c : expanded.classes()) actual[pair_key(c.u, c.v)] = c.mult;
        if (actual != edges_) return "edge multiset differs from shadow after step " + std::to_string(steps);
        auto listed = state.vertices();
        if (std::set<vertex_id>(listed.begin(), listed.end()) != vertices_)
            return "vertex set differs from shadow after step " + std::to_string(steps);
        return {};
    }

    std::set<vertex_id> vertices_;
    std::map<std::uint64_t, count_t> edges_;
};

inline suite_result encoding_shadow(const std::vector<multigraph>& graphs, std::size_t runs) {
    suite_result r{"encoding matches shadow graph"};
    for (std::size_t i = 0; i < graphs.size() && i < runs; ++i) {
        const count_t k = (3 * graphs[i].max_degree() + 1) / 2;
        shadow_observer shadow(graphs[i]);
        decide_options options;
        options.observer = &shadow;
        decide(graphs[i], k, options);
        r.checks += shadow.steps;
        if (shadow.violations) r.fail(label(i, graphs[i], k) + shadow.first_problem);
    }
    return r;
}

inline suite_result configurations_literal(const std::vector<multigraph>& graphs) {
    suite_result r{"detected configurations hold literally"};
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        auto [lo, hi] = k_range(graphs[i]);
        for (count_t k = lo; k <= hi; ++k) {
            shadow_observer shadow(graphs[i]);
            decide_options options;
            options.observer = &shadow;
            decide(graphs[i], k, options);
            r.checks += shadow.configurations;
            if (shadow.configuration_violations) r.fail(label(i, graphs[i], k) + shadow.first_problem);
        }
    }
    return r;
}

// --- graph-level oracles ----------------------------------------------------------

/// Random multigraph (not necessarily series-parallel): each pair present with
/// probability 1/2, multiplicity uniform in [1, max_mult].
inline multigraph random_multigraph(std::size_t n, count_t max_mult, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<edge_class> classes;
    for (vertex_id u = 0; u < n; ++u)
        for (vertex_id v = u + 1; v < n; ++v)
            if (oracle::uniform_below(rng, 2)) classes.push_back({u, v, 1 + oracle::uniform_below(rng, max_mult)});
    return multigraph::build(n, std::move(classes));
}

inline suite_result odd_set_pruning(std::size_t count, std::size_t max_vertices, std::uint64_t seed) {
    suite_result r{"pruned odd sets give the same max(D, Gamma)"};
    for (std::size_t i = 0; i < count; ++i) {
        std::mt19937_64 rng(seed + i);
        std::size_t n = 1 + oracle::uniform_below(rng, max_vertices);
        multigraph g = random_multigraph(n, 4, rng());
        ++r.checks;
        oracle::rational degree{g.max_degree(), 1};
        auto full = oracle::max(degree, oracle::gamma_exact(g, false).density);
        auto pruned = oracle::max(degree, oracle::gamma_exact(g, true).density);
        if (!(full == pruned))
            r.fail(label(i, g, 0) + "full " + full.to_string() + ", pruned " + pruned.to_string());
    }
    return r;
}

inline suite_result structural_search(std::size_t count, std::size_t max_vertices, std::uint64_t seed) {
    suite_result r{"every simple series-parallel graph has a structural witness"};
    for (std::size_t i = 0; i < count; ++i) {
        std::mt19937_64 rng(seed + i);
        std::size_t n = 2 + oracle::uniform_below(rng, max_vertices - 1);
        multigraph s = underlying_simple(oracle::gen_sp(n, 1, rng()));
        ++r.checks;
        if (!oracle::find_config_bruteforce(s)) r.fail(label(i, s, 0) + "no witness");
    }
    return r;
}

inline std::vector<suite_result> run_all(const config& cfg) {
    const auto graphs = corpus(cfg);
    const auto limits = budget_for(cfg);
    return {
        decide_agreement(graphs, limits),
        chromatic_identity(graphs, limits),
        coloring_soundness(graphs),
        potential_monotone(graphs),
        encoding_shadow(graphs, graphs.size()),
        configurations_literal(graphs),
        odd_set_pruning(cfg.instances, std::min<std::size_t>(cfg.max_vertices + 1, oracle::max_gamma_vertices), cfg.seed),
        structural_search(cfg.instances, std::max<std::size_t>(cfg.max_vertices, 2), cfg.seed),
    };
}

}  // namespace spedge::selftest
