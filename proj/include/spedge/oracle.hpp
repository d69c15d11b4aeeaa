#pragma once

#include <bit>
#include <bitset>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "multigraph.hpp"
#include "reducer.hpp"

// Exponential ground truth for desk-scale instances, plus the random
// series-parallel generator used to build test corpora.

namespace spedge::oracle {

// --- exact rationals -------------------------------------------------------------

struct rational {
    count_t num = 0;
    count_t den = 1;

    static rational make(count_t num, count_t den) {
        count_t g = std::gcd(num, den);
        if (g == 0) return {0, 1};
        return {num / g, den / g};
    }

    count_t ceil() const { return num / den + (num % den != 0); }

    std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

    friend bool operator==(const rational& a, const rational& b) {
        return static_cast<unsigned __int128>(a.num) * b.den == static_cast<unsigned __int128>(b.num) * a.den;
    }
    friend bool operator<(const rational& a, const rational& b) {
        return static_cast<unsigned __int128>(a.num) * b.den < static_cast<unsigned __int128>(b.num) * a.den;
    }
};

inline rational max(const rational& a, const rational& b) { return a < b ? b : a; }

// --- exact chromatic index -----------------------------------------------------------

struct budget {
    std::size_t max_vertices = 10;
    count_t max_total_mult = 32;
};

inline constexpr count_t max_exact_colors = 128;

namespace detail {

using palette = std::bitset<max_exact_colors>;

/// Backtracking over edge classes; each class receives a colour set of size
/// mult. Colours never used so far are interchangeable, so a class may only
/// open new colours as the next unused indices.
class exact_search {
public:
    exact_search(const multigraph& g, count_t k) : g_(g), k_(k), used_(g.vertex_count()) {
        done_.assign(g.class_count(), 0);
        for (count_t c = 0; c < k; ++c) all_.set(c);
    }

    bool run() { return dfs(0, 0); }

private:
    count_t free_for(const edge_class& c) const { return (all_ & ~(used_[c.u] | used_[c.v])).count(); }

    // Most constrained class first; ties by larger endpoint degree, then id.
    std::size_t pick() const {
        std::size_t best = g_.class_count();
        long long best_slack = 0;
        count_t best_deg = 0;
        const auto classes = g_.classes();
        for (std::size_t i = 0; i < classes.size(); ++i) {
            if (done_[i]) continue;
            long long slack = static_cast<long long>(free_for(classes[i])) - static_cast<long long>(classes[i].mult);
            count_t deg = std::max(g_.degree(classes[i].u), g_.degree(classes[i].v));
            if (best == classes.size() || slack < best_slack || (slack == best_slack && deg > best_deg)) {
                best = i;
                best_slack = slack;
                best_deg = deg;
            }
        }
        return best;
    }

    bool feasible_around(const edge_class& c) const {
        for (vertex_id end : {c.u, c.v})
            for (const auto& inc : g_.neighbors(end)) {
                if (done_[inc.class_index]) continue;
                if (free_for(g_.classes()[inc.class_index]) < inc.mult) return false;
            }
        return true;
    }

    bool dfs(std::size_t colored, count_t opened) {
        if (colored == g_.class_count()) return true;
        const std::size_t i = pick();
        const edge_class& c = g_.classes()[i];
        palette old_free = ~(used_[c.u] | used_[c.v]);
        std::vector<count_t> reusable;
        for (count_t col = 0; col < opened; ++col)
            if (old_free.test(col)) reusable.push_back(col);

        done_[i] = 1;
        const count_t max_new = std::min<count_t>(c.mult, k_ - opened);
        for (count_t fresh = 0; fresh <= max_new; ++fresh) {
            const count_t from_old = c.mult - fresh;
            if (from_old > reusable.size()) continue;
            palette chosen;
            for (count_t j = 0; j < fresh; ++j) chosen.set(opened + j);
            if (choose(reusable, 0, from_old, chosen, c, colored, opened + fresh)) return true;
        }
        done_[i] = 0;
        return false;
    }

    bool choose(const std::vector<count_t>& pool, std::size_t start, count_t left, palette& chosen,
                const edge_class& c, std::size_t colored, count_t opened) {
        if (left == 0) {
            used_[c.u] |= chosen;
            used_[c.v] |= chosen;
            bool ok = feasible_around(c) && dfs(colored + 1, opened);
            used_[c.u] &= ~chosen;
            used_[c.v] &= ~chosen;
            return ok;
        }
        for (std::size_t p = start; p + left <= pool.size(); ++p) {
            chosen.set(pool[p]);
            if (choose(pool, p + 1, left - 1, chosen, c, colored, opened)) return true;
            chosen.reset(pool[p]);
        }
        return false;
    }

    const multigraph& g_;
    count_t k_;
    std::vector<palette> used_;
    std::vector<char> done_;
    palette all_;
};

inline void check_budget(const multigraph& g, const budget& limits) {
    if (g.vertex_count() > limits.max_vertices)
        throw budget_exceeded("exact search limited to " + std::to_string(limits.max_vertices) + " vertices");
    if (g.total_multiplicity() > limits.max_total_mult)
        throw budget_exceeded("exact search limited to total multiplicity " + std::to_string(limits.max_total_mult));
}

}  // namespace detail

inline bool is_k_colorable_exact(const multigraph& g, count_t k, const budget& limits = {}) {
    detail::check_budget(g, limits);
    if (g.max_degree() > k) return false;
    if (g.class_count() == 0) return true;
    if (k > max_exact_colors) throw budget_exceeded("exact search limited to " + std::to_string(max_exact_colors) + " colours");
    return detail::exact_search(g, k).run();
}

inline count_t chi_exact(const multigraph& g, const budget& limits = {}) {
    detail::check_budget(g, limits);
    count_t k = g.max_degree();
    while (!is_k_colorable_exact(g, k, limits)) ++k;
    return k;
}

// --- odd-set density -------------------------------------------------------------------

struct odd_set_report {
    std::vector<vertex_id> set;  // empty when no odd set of size >= 3 exists
    count_t edges_inside = 0;
    rational density;
};

inline constexpr std::size_t max_gamma_vertices = 20;

/// Maximum of 2|E(G[U])| / (|U| - 1) over odd U with |U| >= 3, or 0 when there
/// is no such U. `pruned` restricts U to sets whose induced underlying graph has
/// minimum degree at least two.
inline odd_set_report gamma_exact(const multigraph& g, bool pruned = false) {
    const std::size_t n = g.vertex_count();
    if (n > max_gamma_vertices)
        throw budget_exceeded("odd-set enumeration limited to " + std::to_string(max_gamma_vertices) + " vertices");
    std::vector<std::uint32_t> adjacent(n, 0);
    std::vector<std::vector<count_t>> mult(n, std::vector<count_t>(n, 0));
    for (const auto& c : g.classes()) {
        adjacent[c.u] |= 1u << c.v;
        adjacent[c.v] |= 1u << c.u;
        mult[c.u][c.v] = mult[c.v][c.u] = c.mult;
    }
    const std::uint32_t limit = n == 0 ? 1u : (1u << n);
    std::vector<count_t> edges(limit, 0);
    odd_set_report best;
    std::uint32_t best_mask = 0;
    for (std::uint32_t mask = 1; mask < limit; ++mask) {
        const int low = std::countr_zero(mask);
        const std::uint32_t rest = mask & (mask - 1);
        count_t added = 0;
        for (std::uint32_t r = rest; r; r &= r - 1) added += mult[low][std::countr_zero(r)];
        edges[mask] = edges[rest] + added;

        const int size = std::popcount(mask);
        if (size < 3 || size % 2 == 0) continue;
        if (pruned) {
            bool ok = true;
            for (std::uint32_t r = mask; r && ok; r &= r - 1)
                ok = std::popcount(adjacent[std::countr_zero(r)] & mask) >= 2;
            if (!ok) continue;
        }
        rational d = rational::make(2 * edges[mask], static_cast<count_t>(size - 1));
        if (best_mask == 0 || best.density < d) {
            best.density = d;
            best.edges_inside = edges[mask];
            best_mask = mask;
        }
    }
    for (std::uint32_t r = best_mask; r; r &= r - 1) best.set.push_back(static_cast<vertex_id>(std::countr_zero(r)));
    return best;
}

/// max(Delta, ceil(Gamma)), the lower bound on the chromatic index.
inline count_t lower_bound(const multigraph& g) { return std::max(g.max_degree(), gamma_exact(g).density.ceil()); }

// --- structural witnesses ----------------------------------------------------------

enum class witness_case { low_degree, twin_pair, triple_path, fan };

/// Vertices witnessing one of the four structural cases in a simple graph:
///   low_degree  {v}                  deg v <= 1
///   twin_pair   {u, v}               deg u = deg v = 2, N(u) = N(v)
///   triple_path {u, v, w, z}         N(v) = {u, w}, N(u) within {v, w, z}
///   fan         {w, v1, v2, u1, u2}  N(w) = {u1, u2, v1, v2}, N(vi) = {w, ui}
struct structural_witness {
    witness_case kind;
    std::vector<vertex_id> vertices;
};

namespace detail {

inline std::vector<std::vector<vertex_id>> simple_neighbors(const multigraph& g) {
    std::vector<std::vector<vertex_id>> nb(g.vertex_count());
    for (vertex_id v = 0; v < g.vertex_count(); ++v) {
        for (const auto& inc : g.neighbors(v)) nb[v].push_back(inc.neighbor);
        std::sort(nb[v].begin(), nb[v].end());
    }
    return nb;
}

inline bool within(const std::vector<vertex_id>& set, std::initializer_list<vertex_id> allowed) {
    for (vertex_id x : set)
        if (std::find(allowed.begin(), allowed.end(), x) == allowed.end()) return false;
    return true;
}

}  // namespace detail

/// Exhaustive search for a structural witness; nullopt only for the null graph
/// or graphs that are not series-parallel.
inline std::optional<structural_witness> find_config_bruteforce(const multigraph& s) {
    const auto nb = detail::simple_neighbors(s);
    const vertex_id n = static_cast<vertex_id>(s.vertex_count());
    for (vertex_id v = 0; v < n; ++v)
        if (nb[v].size() <= 1) return structural_witness{witness_case::low_degree, {v}};
    for (vertex_id u = 0; u < n; ++u)
        for (vertex_id v = u + 1; v < n; ++v)
            if (nb[u].size() == 2 && nb[u] == nb[v]) return structural_witness{witness_case::twin_pair, {u, v}};
    for (vertex_id v = 0; v < n; ++v) {
        if (nb[v].size() != 2) continue;
        for (int side = 0; side < 2; ++side) {
            vertex_id u = nb[v][side], w = nb[v][1 - side];
            std::vector<vertex_id> rest;
            for (vertex_id x : nb[u])
                if (x != v && x != w) rest.push_back(x);
            if (rest.size() > 1) continue;
            vertex_id z = rest.empty() ? w : rest.front();
            if (z == u || z == v) continue;
            if (detail::within(nb[u], {v, w, z})) return structural_witness{witness_case::triple_path, {u, v, w, z}};
        }
    }
    for (vertex_id w = 0; w < n; ++w) {
        if (nb[w].size() != 4) continue;
        for (vertex_id v1 : nb[w]) {
            if (nb[v1].size() != 2) continue;
            vertex_id u1 = nb[v1][0] == w ? nb[v1][1] : nb[v1][0];
            for (vertex_id v2 : nb[w]) {
                if (v2 == v1 || nb[v2].size() != 2) continue;
                vertex_id u2 = nb[v2][0] == w ? nb[v2][1] : nb[v2][0];
                std::vector<vertex_id> five{w, v1, v2, u1, u2};
                std::sort(five.begin(), five.end());
                if (std::adjacent_find(five.begin(), five.end()) != five.end()) continue;
                if (detail::within(nb[w], {u1, u2, v1, v2}))
                    return structural_witness{witness_case::fan, {w, v1, v2, u1, u2}};
            }
        }
    }
    return std::nullopt;
}

/// Checks in g the neighbourhood conditions and multiplicities a configuration
/// claims. Returns a description of the first mismatch.
inline std::optional<std::string> configuration_mismatch(const multigraph& g, const configuration& conf) {
    auto in_range = [&](vertex_id v) { return v != no_vertex && v < g.vertex_count(); };
    // Neighbourhood of v must be exactly the listed (vertex, multiplicity) pairs with positive multiplicity.
    auto exact = [&](vertex_id v, std::initializer_list<std::pair<vertex_id, count_t>> expected) -> std::optional<std::string> {
        if (!in_range(v)) return "vertex " + std::to_string(v) + " missing";
        std::size_t positive = 0;
        for (auto [x, m] : expected) {
            if (m == 0) continue;
            ++positive;
            if (!in_range(x) || g.multiplicity(v, x) != m)
                return "mult(" + std::to_string(v) + "," + std::to_string(x) + ") != " + std::to_string(m);
        }
        if (g.neighbors(v).size() != positive) return "vertex " + std::to_string(v) + " has extra neighbours";
        return std::nullopt;
    };
    auto distinct = [](std::vector<vertex_id> vs) {
        std::sort(vs.begin(), vs.end());
        return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
    };
    return std::visit(
        [&](const auto& c) -> std::optional<std::string> {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, isolated_vertex>) {
                return exact(c.v, {});
            } else if constexpr (std::is_same_v<T, pendant_class>) {
                if (c.m == 0) return "empty pendant class";
                return exact(c.v, {{c.x, c.m}});
            } else if constexpr (std::is_same_v<T, twin_pair>) {
                if (!distinct({c.x, c.y, c.u, c.v})) return "twin vertices not distinct";
                if (c.a == 0 || c.b == 0 || c.c == 0 || c.d == 0) return "twin multiplicity zero";
                if (c.a < c.d) return "twin roles not normalised";
                if (auto e = exact(c.u, {{c.x, c.a}, {c.y, c.b}})) return e;
                return exact(c.v, {{c.x, c.c}, {c.y, c.d}});
            } else if constexpr (std::is_same_v<T, triple_path>) {
                if (!distinct({c.w, c.u1, c.v1})) return "triple vertices not distinct";
                if (c.a == 0 || c.c == 0) return "triple multiplicity zero";
                if (auto e = exact(c.v1, {{c.w, c.c}, {c.u1, c.a}})) return e;
                return exact(c.w, {{c.v1, c.c}, {c.u1, c.b}});
            } else {
                if (c.c + c.d == 0) return "fan needs c + d > 0";
                if (c.v2 == no_vertex) {
                    if (c.d != 0 || c.f != 0) return "absent v2 with edges";
                    if (!distinct({c.w, c.u1, c.u2, c.v1})) return "fan vertices not distinct";
                } else if (!distinct({c.w, c.u1, c.u2, c.v1, c.v2})) {
                    return "fan vertices not distinct";
                }
                if (auto e = exact(c.w, {{c.u1, c.b}, {c.u2, c.e}, {c.v1, c.c}, {c.v2, c.d}})) return e;
                if (auto e = exact(c.v1, {{c.w, c.c}, {c.u1, c.a}})) return e;
                if (c.v2 != no_vertex)
                    if (auto e = exact(c.v2, {{c.w, c.d}, {c.u2, c.f}})) return e;
                return std::nullopt;
            }
        },
        conf);
}

// --- random series-parallel multigraphs --------------------------------------------------

/// Uniform integer in [0, bound) by rejection; identical on every platform.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do x = rng();
    while (x >= limit);
    return x % bound;
}

namespace detail {

struct composer {
    std::mt19937_64& rng;
    std::vector<std::pair<vertex_id, vertex_id>> edges;
    vertex_id next = 0;

    // Two-terminal graph with exactly n vertices (terminals included) between s and t.
    void compose(vertex_id s, vertex_id t, std::size_t n) {
        while (true) {
            if (n == 2) {
                edges.emplace_back(s, t);
                return;
            }
            if (uniform_below(rng, 2) == 0) {
                std::size_t left = 2 + uniform_below(rng, n - 2);  // [2, n-1]
                vertex_id mid = next++;
                compose(s, mid, left);
                s = mid;
                n = n - left + 1;
            } else {
                std::size_t left = 2 + uniform_below(rng, n - 1);  // [2, n]
                compose(s, t, left);
                n = n + 2 - left;
            }
        }
    }
};

}  // namespace detail

/// Random series-parallel multigraph with exactly n_target vertices: a random
/// series/parallel composition tree, shuffled ids, and independent uniform
/// multiplicities in [1, max_mult]. Deterministic per seed.
inline multigraph gen_sp(std::size_t n_target, count_t max_mult, std::uint64_t seed) {
    if (n_target < 2) throw std::invalid_argument("gen_sp needs at least two vertices");
    if (max_mult < 1) throw std::invalid_argument("gen_sp needs max_mult >= 1");
    std::mt19937_64 rng(seed);
    detail::composer c{rng, {}, 2};
    c.edges.reserve(2 * n_target);
    c.compose(0, 1, n_target);

    std::vector<vertex_id> label(n_target);
    std::iota(label.begin(), label.end(), 0);
    for (std::size_t i = n_target - 1; i > 0; --i) std::swap(label[i], label[uniform_below(rng, i + 1)]);

    std::vector<std::uint64_t> keys;
    keys.reserve(c.edges.size());
    for (auto [a, b] : c.edges) keys.push_back(pair_key(label[a], label[b]));
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    std::vector<edge_class> classes;
    classes.reserve(keys.size());
    for (std::uint64_t key : keys)
        classes.push_back({static_cast<vertex_id>(key >> 32), static_cast<vertex_id>(key & 0xffffffffu),
                           1 + uniform_below(rng, max_mult)});
    return multigraph::build(n_target, std::move(classes));
}

}  // namespace spedge::oracle
