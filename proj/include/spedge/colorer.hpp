#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "multigraph.hpp"
#include "reducer.hpp"

namespace spedge {

using color_t = std::uint64_t;
using color_set = std::set<color_t>;

/// Colours per edge class, aligned with multigraph::classes(); each list sorted.
struct coloring {
    count_t k = 0;
    std::vector<std::vector<color_t>> classes;
};

namespace detail {

inline std::size_t union_size(const color_set& a, const color_set& b) {
    std::size_t common = 0;
    for (color_t c : a) common += b.count(c);
    return a.size() + b.size() - common;
}

inline bool in_any(color_t c, std::initializer_list<const color_set*> sets) {
    for (const color_set* s : sets)
        if (s && s->count(c)) return true;
    return false;
}

/// Smallest `count` colours in 1..k outside every given set.
inline std::vector<color_t> smallest_free(count_t k, count_t count, std::initializer_list<const color_set*> avoid) {
    std::vector<color_t> out;
    out.reserve(count);
    for (color_t c = 1; out.size() < count && c <= k; ++c)
        if (!in_any(c, avoid)) out.push_back(c);
    if (out.size() < count) throw trace_mismatch("not enough free colours");
    return out;
}

}  // namespace detail

struct fan_extension {
    std::vector<color_t> first;
    std::vector<color_t> second;
};

/// Colours m1 parallel edges u0-u1 and m2 parallel edges u0-u2 given the
/// colour sets seen at u0, u1, u2. The first group avoids S0 and S1 and takes
/// as many colours of S2 as it can; the second avoids S0, S2 and the first group.
inline fan_extension two_fan_extend(count_t k, count_t m1, count_t m2, const color_set& s0, const color_set& s1,
                                   const color_set& s2) {
    color_set s0_or_s1 = s0;
    s0_or_s1.insert(s1.begin(), s1.end());
    color_set s1_and_s2;
    for (color_t c : s1)
        if (s2.count(c)) s1_and_s2.insert(c);

    if (m1 + s0_or_s1.size() > k)
        throw precondition_violated("m1 + |S0 u S1| = " + std::to_string(m1 + s0_or_s1.size()) + " > " +
                                    std::to_string(k));
    if (m2 + detail::union_size(s0, s2) > k)
        throw precondition_violated("m2 + |S0 u S2| = " + std::to_string(m2 + detail::union_size(s0, s2)) + " > " +
                                    std::to_string(k));
    if (std::size_t third = m1 + m2 + detail::union_size(s0, s1_and_s2); third > k)
        throw precondition_violated("m1 + m2 + |S0 u (S1 n S2)| = " + std::to_string(third) + " > " +
                                    std::to_string(k));

    fan_extension out;
    for (color_t c : s2) {
        if (out.first.size() == m1) break;
        if (!s0_or_s1.count(c)) out.first.push_back(c);
    }
    color_set first_set(out.first.begin(), out.first.end());
    for (color_t c = 1; out.first.size() < m1 && c <= k; ++c)
        if (!s0_or_s1.count(c) && !first_set.count(c)) {
            out.first.push_back(c);
            first_set.insert(c);
        }
    out.second = detail::smallest_free(k, m2, {&s0, &s2, &first_set});
    std::sort(out.first.begin(), out.first.end());
    return out;
}

namespace detail {

/// Colouring of the graph being rebuilt during replay, keyed by vertex pair.
class partial_coloring {
public:
    partial_coloring(count_t k, std::size_t vertex_capacity) : k_(k), seen_(vertex_capacity) {}

    count_t k() const { return k_; }

    const color_set& seen(vertex_id v) {
        grow(v);
        return seen_[v];
    }

    std::vector<color_t> colors(vertex_id a, vertex_id b) const {
        auto it = pairs_.find(pair_key(a, b));
        return it == pairs_.end() ? std::vector<color_t>{} : it->second;
    }

    void add(vertex_id a, vertex_id b, color_t c) {
        grow(std::max(a, b));
        if (c == 0 || c > k_) throw trace_mismatch("colour out of range");
        if (!seen_[a].insert(c).second || !seen_[b].insert(c).second)
            throw trace_mismatch("colour " + std::to_string(c) + " clashes at edge " + std::to_string(a) + "-" +
                                 std::to_string(b));
        pairs_[pair_key(a, b)].push_back(c);
    }

    void add(vertex_id a, vertex_id b, std::span<const color_t> cs) {
        for (color_t c : cs) add(a, b, c);
    }

    /// Removes and returns `count` colours of the ab class, smallest first.
    std::vector<color_t> take(vertex_id a, vertex_id b, count_t count) {
        auto it = pairs_.find(pair_key(a, b));
        std::vector<color_t> taken;
        if (count == 0) return taken;
        if (it == pairs_.end() || it->second.size() < count)
            throw trace_mismatch("class " + std::to_string(a) + "-" + std::to_string(b) + " has too few edges");
        auto& list = it->second;
        std::sort(list.begin(), list.end());
        taken.assign(list.begin(), list.begin() + static_cast<std::ptrdiff_t>(count));
        list.erase(list.begin(), list.begin() + static_cast<std::ptrdiff_t>(count));
        for (color_t c : taken) {
            seen_[a].erase(c);
            seen_[b].erase(c);
        }
        if (list.empty()) pairs_.erase(it);
        return taken;
    }

    void take_exact(vertex_id a, vertex_id b, std::span<const color_t> cs) {
        auto it = pairs_.find(pair_key(a, b));
        if (it == pairs_.end()) throw trace_mismatch("missing class");
        auto& list = it->second;
        for (color_t c : cs) {
            auto pos = std::find(list.begin(), list.end(), c);
            if (pos == list.end()) throw trace_mismatch("missing colour");
            list.erase(pos);
            seen_[a].erase(c);
            seen_[b].erase(c);
        }
        if (list.empty()) pairs_.erase(it);
    }

    /// Colours all `count` ab edges with the smallest colours free at both ends.
    void add_greedy(vertex_id a, vertex_id b, count_t count) {
        if (count == 0) return;
        grow(std::max(a, b));
        add(a, b, smallest_free(k_, count, {&seen_[a], &seen_[b]}));
    }

    count_t size(vertex_id a, vertex_id b) const {
        auto it = pairs_.find(pair_key(a, b));
        return it == pairs_.end() ? 0 : it->second.size();
    }

private:
    void grow(vertex_id v) {
        if (v >= seen_.size()) seen_.resize(static_cast<std::size_t>(v) + 1);
    }

    count_t k_;
    std::unordered_map<std::uint64_t, std::vector<color_t>> pairs_;
    std::vector<color_set> seen_;
};

inline void expect_size(const partial_coloring& col, vertex_id a, vertex_id b, count_t expected) {
    if (col.size(a, b) != expected)
        throw trace_mismatch("class " + std::to_string(a) + "-" + std::to_string(b) + " has " +
                             std::to_string(col.size(a, b)) + " edges, frame expects " + std::to_string(expected));
}

/// Two-fan extension at centre u0 with groups toward n1 (m1 edges) and n2 (m2 edges).
inline void extend_fan(partial_coloring& col, vertex_id u0, vertex_id n1, count_t m1, vertex_id n2, count_t m2) {
    static const color_set empty;
    const color_set& s2 = n2 == no_vertex ? empty : col.seen(n2);
    fan_extension ext;
    try {
        ext = two_fan_extend(col.k(), m1, m2, col.seen(u0), col.seen(n1), s2);
    } catch (const precondition_violated& e) {
        throw trace_mismatch(std::string("fan extension failed: ") + e.what());
    }
    col.add(u0, n1, ext.first);
    if (m2 > 0) col.add(u0, n2, ext.second);
}

inline void replay(partial_coloring& col, const pendant_class& c) { col.add_greedy(c.v, c.x, c.m); }

inline void replay(partial_coloring& col, const triple_path& c) {
    // u1 has room for the a edges; then a + b + c <= k leaves room for v1-w.
    col.add_greedy(c.u1, c.v1, c.a);
    col.add_greedy(c.v1, c.w, c.c);
}

inline void replay(partial_coloring& col, const twin_pair& t, const twin_payload& p) {
    const count_t d = t.d;
    if (p.u_dropped) col.add_greedy(t.u, t.y, t.b + d);
    expect_size(col, t.u, t.x, t.a - d);
    expect_size(col, t.u, t.y, t.b + d);

    // Pick A: d colours of the uy class, as few as possible seen at x.
    std::vector<color_t> uy = col.colors(t.u, t.y);
    std::sort(uy.begin(), uy.end());
    std::vector<color_t> chosen;
    const color_set& at_x = col.seen(t.x);
    for (color_t c : uy)
        if (chosen.size() < d && !at_x.count(c)) chosen.push_back(c);
    for (color_t c : uy)
        if (chosen.size() < d && at_x.count(c)) chosen.push_back(c);
    col.take_exact(t.u, t.y, chosen);

    // Recolour d ux edges: A-colours free at x first, then anything free at x and u.
    std::vector<color_t> reuse;
    for (color_t c : chosen)
        if (!col.seen(t.x).count(c)) reuse.push_back(c);
    col.add(t.u, t.x, reuse);
    col.add_greedy(t.u, t.x, d - reuse.size());

    extend_fan(col, t.v, t.x, t.c, t.y, d);
}

inline void replay(partial_coloring& col, const fan& f, const fan_payload& p) {
    if (p.small_sum) {
        col.add_greedy(f.u1, f.v1, f.a);
        if (f.v2 != no_vertex) col.add_greedy(f.u2, f.v2, f.f);
        extend_fan(col, f.w, f.v1, f.c, f.v2, f.d);
        return;
    }

    // Restore fresh vertices dropped as pendants.
    auto restore = [&](vertex_id fresh, count_t to_u1, count_t to_u2) {
        if (fresh == no_vertex || (to_u1 > 0 && to_u2 > 0)) return;
        col.add_greedy(fresh, to_u1 > 0 ? f.u1 : f.u2, to_u1 + to_u2);
    };
    restore(p.x, p.x_u1, p.x_u2);
    restore(p.y, p.y_u1, p.y_u2);

    auto take_fresh = [&](vertex_id fresh, vertex_id end, count_t count) {
        if (count == 0) return std::vector<color_t>{};
        expect_size(col, fresh, end, count);
        return col.take(fresh, end, count);
    };
    const auto x1 = take_fresh(p.x, f.u1, p.x_u1);
    const auto x2 = take_fresh(p.x, f.u2, p.x_u2);
    const auto y1 = take_fresh(p.y, f.u1, p.y_u1);
    const auto y2 = take_fresh(p.y, f.u2, p.y_u2);
    const auto z = col.take(f.u1, f.u2, p.z1 + p.z2);
    const std::span<const color_t> z1(z.data(), p.z1);
    const std::span<const color_t> z2(z.data() + p.z1, p.z2);

    col.add(f.u1, f.v1, x1);
    col.add(f.u1, f.v1, z1);
    col.add(f.w, f.u1, y1);
    col.add(f.w, f.u1, z2);
    col.add(f.w, f.u2, y2);
    col.add(f.w, f.u2, z1);
    if (f.v2 != no_vertex) {
        col.add(f.u2, f.v2, x2);
        col.add(f.u2, f.v2, z2);
    }
    // u_i is the only neighbour of v_i here, so the leftovers only need colours free at u_i.
    col.add_greedy(f.u1, f.v1, p.s1);
    if (f.v2 != no_vertex) col.add_greedy(f.u2, f.v2, p.s2);

    extend_fan(col, f.w, f.v1, f.c, f.v2, f.d);
}

}  // namespace detail

/// Builds a k-edge-colouring of g by unwinding the frames of a yes-run of decide.
inline coloring replay_color(const multigraph& g, count_t k, std::span<const reduction_frame> trace) {
    std::size_t capacity = g.vertex_count();
    for (const auto& frame : trace)
        if (const auto* p = std::get_if<fan_payload>(&frame.payload))
            for (vertex_id fresh : {p->x, p->y})
                if (fresh != no_vertex) capacity = std::max<std::size_t>(capacity, std::size_t{fresh} + 1);
    // Sized up front: seen() hands out references that must survive add().
    detail::partial_coloring col(k, capacity);
    for (auto it = trace.rbegin(); it != trace.rend(); ++it) {
        const auto& frame = *it;
        std::visit(
            [&](const auto& c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, isolated_vertex>) {
                } else if constexpr (std::is_same_v<T, pendant_class> || std::is_same_v<T, triple_path>) {
                    detail::replay(col, c);
                } else if constexpr (std::is_same_v<T, twin_pair>) {
                    detail::replay(col, c, std::get<twin_payload>(frame.payload));
                } else {
                    detail::replay(col, c, std::get<fan_payload>(frame.payload));
                }
            },
            frame.config);
    }

    coloring out;
    out.k = k;
    out.classes.reserve(g.class_count());
    for (const auto& c : g.classes()) {
        auto colors = col.colors(c.u, c.v);
        if (colors.size() != c.mult)
            throw trace_mismatch("replay left class " + std::to_string(c.u) + "-" + std::to_string(c.v) + " with " +
                                 std::to_string(colors.size()) + " of " + std::to_string(c.mult) + " edges coloured");
        std::sort(colors.begin(), colors.end());
        out.classes.push_back(std::move(colors));
    }
    return out;
}

/// decide followed by replay; empty when g is not k-edge-colourable.
inline std::optional<coloring> color(const multigraph& g, count_t k, verdict* result = nullptr) {
    std::vector<reduction_frame> trace;
    decide_options options;
    options.trace = &trace;
    verdict v = decide(g, k, options);
    if (result) *result = v;
    if (!v.yes()) return std::nullopt;
    return replay_color(g, k, trace);
}

struct coloring_conflict {
    vertex_id v = no_vertex;  // no_vertex for a per-class defect
    std::size_t class_index = 0;
    color_t color = 0;
    std::string message;
};

/// First defect of col as a k-edge-colouring of g, if any.
inline std::optional<coloring_conflict> find_conflict(const multigraph& g, count_t k, const coloring& col) {
    if (col.classes.size() != g.class_count())
        throw shape_mismatch("colouring has " + std::to_string(col.classes.size()) + " classes, graph has " +
                             std::to_string(g.class_count()));
    const auto classes = g.classes();
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& list = col.classes[i];
        if (list.size() != classes[i].mult)
            return coloring_conflict{no_vertex, i, 0, "class has " + std::to_string(list.size()) + " colours, expected " +
                                                          std::to_string(classes[i].mult)};
        for (color_t c : list)
            if (c == 0 || c > k) return coloring_conflict{no_vertex, i, c, "colour out of range 1.." + std::to_string(k)};
    }
    std::vector<color_t> seen;
    for (vertex_id v = 0; v < g.vertex_count(); ++v) {
        seen.clear();
        for (const auto& inc : g.neighbors(v))
            for (color_t c : col.classes[inc.class_index]) seen.push_back(c);
        std::sort(seen.begin(), seen.end());
        if (auto dup = std::adjacent_find(seen.begin(), seen.end()); dup != seen.end()) {
            std::size_t idx = 0;
            for (const auto& inc : g.neighbors(v)) {
                const auto& list = col.classes[inc.class_index];
                if (std::find(list.begin(), list.end(), *dup) != list.end()) {
                    idx = inc.class_index;
                    break;
                }
            }
            return coloring_conflict{v, idx, *dup, "colour " + std::to_string(*dup) + " repeated at vertex"};
        }
    }
    return std::nullopt;
}

inline bool verify_coloring(const multigraph& g, count_t k, const coloring& col) {
    return !find_conflict(g, k, col).has_value();
}

}  // namespace spedge
