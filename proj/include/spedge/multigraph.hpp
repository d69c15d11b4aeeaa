#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "errors.hpp"

namespace spedge {

using vertex_id = std::uint32_t;
/// Multiplicities, degrees and k. Sums of six multiplicities below 2^32 cannot overflow.
using count_t = std::uint64_t;

inline constexpr vertex_id no_vertex = std::numeric_limits<vertex_id>::max();

struct edge_class {
    vertex_id u = 0;
    vertex_id v = 0;
    count_t mult = 0;

    friend bool operator==(const edge_class&, const edge_class&) = default;
};

struct incidence {
    vertex_id neighbor;
    count_t mult;
    std::size_t class_index;
};

inline std::uint64_t pair_key(vertex_id a, vertex_id b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

/// Loop-free multigraph stored as edge classes (vertex pair plus multiplicity).
/// Immutable after build; adjacency is kept in compressed rows.
class multigraph {
public:
    multigraph() = default;

    static multigraph build(std::size_t vertex_count, std::vector<edge_class> classes) {
        if (vertex_count > static_cast<std::size_t>(no_vertex))
            throw graph_error(graph_errc::bad_vertex_id, "too many vertices");
        multigraph g;
        g.vertex_count_ = vertex_count;
        std::vector<std::uint64_t> keys;
        keys.reserve(classes.size());
        for (const auto& c : classes) {
            if (c.u >= vertex_count || c.v >= vertex_count)
                throw graph_error(graph_errc::bad_vertex_id,
                                  "class (" + std::to_string(c.u) + "," + std::to_string(c.v) + ")");
            if (c.u == c.v) throw graph_error(graph_errc::loop_edge, "at vertex " + std::to_string(c.u));
            if (c.mult == 0)
                throw graph_error(graph_errc::zero_multiplicity,
                                  "class (" + std::to_string(c.u) + "," + std::to_string(c.v) + ")");
            keys.push_back(pair_key(c.u, c.v));
        }
        std::sort(keys.begin(), keys.end());
        if (auto dup = std::adjacent_find(keys.begin(), keys.end()); dup != keys.end())
            throw graph_error(graph_errc::duplicate_class, "pair (" + std::to_string(*dup >> 32) + "," +
                                                               std::to_string(*dup & 0xffffffffu) + ")");

        g.classes_ = std::move(classes);
        g.offsets_.assign(vertex_count + 1, 0);
        g.degree_.assign(vertex_count, 0);
        for (const auto& c : g.classes_) {
            ++g.offsets_[c.u + 1];
            ++g.offsets_[c.v + 1];
            g.degree_[c.u] += c.mult;
            g.degree_[c.v] += c.mult;
        }
        for (std::size_t i = 0; i < vertex_count; ++i) g.offsets_[i + 1] += g.offsets_[i];
        g.rows_.resize(g.offsets_.back());
        std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
        for (std::size_t i = 0; i < g.classes_.size(); ++i) {
            const auto& c = g.classes_[i];
            g.rows_[fill[c.u]++] = {c.v, c.mult, i};
            g.rows_[fill[c.v]++] = {c.u, c.mult, i};
        }
        for (count_t d : g.degree_) g.max_degree_ = std::max(g.max_degree_, d);
        return g;
    }

    std::size_t vertex_count() const { return vertex_count_; }
    std::size_t class_count() const { return classes_.size(); }
    std::span<const edge_class> classes() const { return classes_; }

    std::span<const incidence> neighbors(vertex_id v) const {
        check(v);
        return {rows_.data() + offsets_[v], rows_.data() + offsets_[v + 1]};
    }

    count_t degree(vertex_id v) const {
        check(v);
        return degree_[v];
    }

    count_t max_degree() const { return max_degree_; }

    count_t total_multiplicity() const {
        count_t total = 0;
        for (const auto& c : classes_) total += c.mult;
        return total;
    }

    /// Multiplicity of uv, zero when not adjacent. O(deg).
    count_t multiplicity(vertex_id u, vertex_id v) const {
        for (const auto& inc : neighbors(u))
            if (inc.neighbor == v) return inc.mult;
        return 0;
    }

    /// Classes as sorted (min, max, mult) triples; equal for graphs with identical edge multisets.
    std::vector<edge_class> canonical_classes() const {
        std::vector<edge_class> out;
        out.reserve(classes_.size());
        for (auto c : classes_) {
            if (c.u > c.v) std::swap(c.u, c.v);
            out.push_back(c);
        }
        std::sort(out.begin(), out.end(), [](const edge_class& a, const edge_class& b) {
            return std::tie(a.u, a.v) < std::tie(b.u, b.v);
        });
        return out;
    }

private:
    void check(vertex_id v) const {
        if (v >= vertex_count_) throw graph_error(graph_errc::bad_vertex_id, std::to_string(v));
    }

    std::size_t vertex_count_ = 0;
    std::vector<edge_class> classes_;
    std::vector<std::size_t> offsets_{0};
    std::vector<incidence> rows_;
    std::vector<count_t> degree_;
    count_t max_degree_ = 0;
};

inline multigraph underlying_simple(const multigraph& g) {
    std::vector<edge_class> classes(g.classes().begin(), g.classes().end());
    for (auto& c : classes) c.mult = 1;
    return multigraph::build(g.vertex_count(), std::move(classes));
}

/// G[U] relabelled so that U[i] becomes vertex i.
inline multigraph induced(const multigraph& g, std::span<const vertex_id> subset) {
    std::vector<vertex_id> local(g.vertex_count(), no_vertex);
    for (std::size_t i = 0; i < subset.size(); ++i) {
        vertex_id v = subset[i];
        if (v >= g.vertex_count()) throw graph_error(graph_errc::bad_vertex_id, std::to_string(v));
        if (local[v] != no_vertex) throw graph_error(graph_errc::bad_vertex_id, "repeated " + std::to_string(v));
        local[v] = static_cast<vertex_id>(i);
    }
    std::vector<edge_class> classes;
    for (const auto& c : g.classes())
        if (local[c.u] != no_vertex && local[c.v] != no_vertex) classes.push_back({local[c.u], local[c.v], c.mult});
    return multigraph::build(subset.size(), std::move(classes));
}

}  // namespace spedge
