#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "encoding.hpp"
#include "errors.hpp"
#include "multigraph.hpp"

namespace spedge {

// Local configurations around an active vertex. Multiplicity names follow
// the reduction they drive; absent vertices are no_vertex with zero counts.

struct isolated_vertex {
    vertex_id v = no_vertex;
};

/// v has the single neighbour x, joined by m edges.
struct pendant_class {
    vertex_id v = no_vertex;
    vertex_id x = no_vertex;
    count_t m = 0;
};

/// u and v both have exactly the neighbours x and y.
/// a = mult(ux), b = mult(uy), c = mult(vx), d = mult(vy); always a >= d.
struct twin_pair {
    vertex_id x = no_vertex, y = no_vertex, u = no_vertex, v = no_vertex;
    count_t a = 0, b = 0, c = 0, d = 0;
};

/// v1 has exactly the neighbours w and u1; w has no neighbour besides v1 and u1.
/// a = mult(u1 v1), b = mult(u1 w), c = mult(v1 w).
struct triple_path {
    vertex_id w = no_vertex, u1 = no_vertex, v1 = no_vertex;
    count_t a = 0, b = 0, c = 0;
};

/// w has neighbours among u1, u2, v1, v2; each vi has exactly the neighbours w and ui.
/// a = u1v1, b = u1w, c = v1w, d = v2w, e = u2w, f = u2v2. v2 may be absent (d = f = 0).
struct fan {
    vertex_id w = no_vertex, u1 = no_vertex, u2 = no_vertex, v1 = no_vertex, v2 = no_vertex;
    count_t a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;

    count_t sum() const { return a + b + c + d + e + f; }
};

using configuration = std::variant<isolated_vertex, pendant_class, twin_pair, triple_path, fan>;

struct needs_compress {};
struct not_local {};
using detection = std::variant<configuration, needs_compress, not_local>;

struct twin_payload {
    count_t moved = 0;
    /// a == d left u with edges to y only; u was removed as a pendant of y.
    bool u_dropped = false;
};

/// Fresh vertices x and y replace w, v1, v2 when the fan sum exceeds k. A fresh
/// vertex with edges on one side only is removed as a pendant straight away.
struct fan_payload {
    bool small_sum = false;
    count_t z1 = 0, z2 = 0, s = 0, s1 = 0, s2 = 0;
    vertex_id x = no_vertex, y = no_vertex;
    count_t x_u1 = 0, x_u2 = 0, y_u1 = 0, y_u2 = 0;
};

struct reduction_frame {
    configuration config;
    std::variant<std::monostate, twin_payload, fan_payload> payload;
};

/// A violated triangle bound 2|E(G[U])| <= k(|U|-1) with |U| = 3.
struct local_violation {
    std::string set;
    vertex_id members[3] = {no_vertex, no_vertex, no_vertex};
    count_t edges = 0;
    count_t k = 0;

    std::string describe() const {
        return "2|E(" + set + ")| = " + std::to_string(2 * edges) + " > " + std::to_string(k) + "*2";
    }
};

enum class verdict_kind { yes, no, not_series_parallel };

struct degree_exceeded {
    vertex_id v = no_vertex;
    count_t degree = 0;
};

struct local_check {
    configuration config;
    local_violation violation;
    std::size_t frame_depth = 0;
};

struct verdict {
    verdict_kind kind = verdict_kind::yes;
    std::variant<std::monostate, degree_exceeded, local_check> reason;

    bool yes() const { return kind == verdict_kind::yes; }
    bool no() const { return kind == verdict_kind::no; }

    /// `YES`, `NO <reason>` or `NOT-SERIES-PARALLEL`; vertex ids printed 1-based.
    std::string describe(count_t k) const {
        switch (kind) {
            case verdict_kind::yes: return "YES";
            case verdict_kind::not_series_parallel: return "NOT-SERIES-PARALLEL";
            case verdict_kind::no: break;
        }
        if (auto* d = std::get_if<degree_exceeded>(&reason))
            return "NO degree deg(" + std::to_string(d->v + 1) + ") = " + std::to_string(d->degree) + " > " +
                   std::to_string(k);
        return "NO local-check " + std::get<local_check>(reason).violation.describe();
    }
};

// --- detection ---------------------------------------------------------------

namespace detail {

inline twin_pair twin_from(const h_record& rec, vertex_id x_end) {
    auto it = rec.lambda.begin();
    const subdivision_entry& p = *it++;
    const subdivision_entry& q = *it;
    twin_pair t;
    t.x = x_end;
    t.y = rec.other(x_end);
    t.u = p.vertex;
    t.v = q.vertex;
    t.a = rec.toward(p, t.x);
    t.b = rec.toward(p, t.y);
    t.c = rec.toward(q, t.x);
    t.d = rec.toward(q, t.y);
    if (t.a < t.d) t = twin_pair{t.y, t.x, t.v, t.u, t.d, t.c, t.b, t.a};
    return t;
}

}  // namespace detail

/// Dedupes v, then decodes its records into a configuration. Returns
/// needs_compress for a plain series vertex and not_local when deg_H(v) > 2.
inline detection detect(encoding_state& state, vertex_id v) {
    if (!state.contains(v)) throw vertex_absent("vertex " + std::to_string(v) + " is not in H");
    state.dedupe(v);
    const auto inc = state.incident(v);
    if (inc.empty()) return configuration{isolated_vertex{v}};
    if (inc.size() > 2) return not_local{};

    const h_record& r1 = state.record(inc[0]);
    if (inc.size() == 1) {
        vertex_id x = r1.other(v);
        if (r1.lambda.empty()) return configuration{pendant_class{v, x, r1.mu}};
        if (r1.lambda.size() >= 2) return configuration{detail::twin_from(r1, v)};
        const auto& e = r1.lambda.front();
        return configuration{triple_path{v, x, e.vertex, r1.toward(e, x), r1.mu, r1.toward(e, v)}};
    }

    const h_record* first = &r1;
    const h_record* second = &state.record(inc[1]);
    if (first->lambda.size() >= 2) return configuration{detail::twin_from(*first, v)};
    if (second->lambda.size() >= 2) return configuration{detail::twin_from(*second, v)};
    if (first->lambda.empty() && second->lambda.empty()) return needs_compress{};
    if (first->lambda.empty()) std::swap(first, second);

    fan cfg;
    cfg.w = v;
    cfg.u1 = first->other(v);
    cfg.u2 = second->other(v);
    const auto& e1 = first->lambda.front();
    cfg.v1 = e1.vertex;
    cfg.a = first->toward(e1, cfg.u1);
    cfg.c = first->toward(e1, v);
    cfg.b = first->mu;
    cfg.e = second->mu;
    if (!second->lambda.empty()) {
        const auto& e2 = second->lambda.front();
        cfg.v2 = e2.vertex;
        cfg.d = second->toward(e2, v);
        cfg.f = second->toward(e2, cfg.u2);
    }
    return configuration{cfg};
}

// --- local feasibility ---------------------------------------------------------

inline std::optional<local_violation> local_feasible(const configuration& conf, count_t k) {
    if (auto* t = std::get_if<triple_path>(&conf)) {
        count_t edges = t->a + t->b + t->c;
        if (edges > k) return local_violation{"{u,v,w}", {t->w, t->v1, t->u1}, edges, k};
        return std::nullopt;
    }
    if (auto* f = std::get_if<fan>(&conf)) {
        if (f->sum() <= k) return std::nullopt;
        if (count_t left = f->a + f->b + f->c; left > k) return local_violation{"{u1,v1,w}", {f->u1, f->v1, f->w}, left, k};
        if (count_t right = f->d + f->e + f->f; right > k)
            return local_violation{"{u2,v2,w}", {f->u2, f->v2, f->w}, right, k};
    }
    return std::nullopt;
}

// --- reductions ------------------------------------------------------------------

namespace detail {

inline count_t saturating_sub(count_t x, count_t y) { return x > y ? x - y : 0; }

inline encoding_state::entry_iterator find_entry(encoding_state& state, record_id r, vertex_id p) {
    for (auto it = state.entries_begin(r); it != state.entries_end(r); ++it)
        if (it->vertex == p) return it;
    throw precondition_violated("entry " + std::to_string(p) + " not on record");
}

inline record_id require_record(const encoding_state& state, vertex_id a, vertex_id b) {
    record_id r = state.find_record(a, b);
    if (r == no_record)
        throw precondition_violated("no record between " + std::to_string(a) + " and " + std::to_string(b));
    return r;
}

inline void assert_degree(count_t degree, count_t k, const char* what) {
    if (degree > k) throw std::logic_error(std::string("reduction broke the degree bound at ") + what);
}

inline reduction_frame reduce_twin(encoding_state& state, const twin_pair& t) {
    record_id r = require_record(state, t.x, t.y);
    auto v_it = find_entry(state, r, t.v);
    state.remove_entry(r, v_it);
    auto u_it = find_entry(state, r, t.u);
    twin_payload p{t.d, t.a == t.d};
    if (p.u_dropped)
        state.remove_entry(r, u_it);
    else
        state.set_entry(r, u_it, t.x, t.a - t.d, t.b + t.d);
    state.erase_if_hollow(r);
    return {t, p};
}

inline reduction_frame reduce_fan(encoding_state& state, const fan& f, count_t k) {
    record_id r1 = require_record(state, f.w, f.u1);
    record_id r2 = require_record(state, f.w, f.u2);
    fan_payload p;
    if (f.sum() <= k) {
        // Drop v1 and v2 only; w keeps its b and e edges.
        p.small_sum = true;
        state.remove_entry(r1, find_entry(state, r1, f.v1));
        if (f.v2 != no_vertex) state.remove_entry(r2, find_entry(state, r2, f.v2));
        state.erase_if_hollow(r1);
        state.erase_if_hollow(r2);
        return {f, p};
    }

    if (f.b + f.c + f.d + f.e > k) throw precondition_violated("fan centre exceeds the degree bound");
    p.z1 = saturating_sub(f.a + f.b + f.c + f.e, k);
    p.z2 = saturating_sub(f.b + f.d + f.e + f.f, k);
    p.s = k - (f.b + f.c + f.d + f.e);
    if (p.z1 > f.e || p.z2 > f.b || p.z1 > f.a || p.z2 > f.f)
        throw std::logic_error("fan reduction: z1/z2 out of range");
    p.s1 = std::min(p.s, f.a - p.z1);
    p.s2 = p.s - p.s1;
    if (p.s2 > f.f - p.z2) throw std::logic_error("fan reduction: no valid split of s");

    p.x_u1 = f.a - p.z1 - p.s1;
    p.x_u2 = f.f - p.z2 - p.s2;
    p.y_u1 = f.b - p.z2;
    p.y_u2 = f.e - p.z1;
    assert_degree(p.x_u1 + p.x_u2, k, "x");
    assert_degree(p.y_u1 + p.y_u2, k, "y");

    state.erase_record(r1);
    state.touch(f.u1);
    state.erase_record(r2);
    state.touch(f.u2);
    state.remove_vertex(f.w);

    std::vector<entry_spec> entries;
    if (p.x_u1 + p.x_u2 > 0) {
        p.x = state.allocate_vertex();
        if (p.x_u1 > 0 && p.x_u2 > 0) entries.push_back({p.x, p.x_u1, p.x_u2});
    }
    if (p.y_u1 + p.y_u2 > 0) {
        p.y = state.allocate_vertex();
        if (p.y_u1 > 0 && p.y_u2 > 0) entries.push_back({p.y, p.y_u1, p.y_u2});
    }
    if (p.z1 + p.z2 > 0 || !entries.empty()) {
        state.add_record(f.u1, f.u2, p.z1 + p.z2, entries);
        state.touch(f.u1);
        state.touch(f.u2);
    }
    return {f, p};
}

}  // namespace detail

/// Rewrites the encoding to the reduced graph and returns the replay frame.
/// Requires local_feasible(conf, k) to hold.
inline reduction_frame apply_reduction(encoding_state& state, const configuration& conf, count_t k) {
    if (local_feasible(conf, k)) throw precondition_violated("configuration fails its local check");
    return std::visit(
        [&](const auto& c) -> reduction_frame {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, isolated_vertex>) {
                state.remove_vertex(c.v);
                return {c, {}};
            } else if constexpr (std::is_same_v<T, pendant_class>) {
                state.erase_record(detail::require_record(state, c.v, c.x));
                state.touch(c.x);
                state.remove_vertex(c.v);
                return {c, {}};
            } else if constexpr (std::is_same_v<T, twin_pair>) {
                return detail::reduce_twin(state, c);
            } else if constexpr (std::is_same_v<T, triple_path>) {
                record_id r = detail::require_record(state, c.w, c.u1);
                state.remove_entry(r, detail::find_entry(state, r, c.v1));
                state.erase_if_hollow(r);
                return {c, {}};
            } else {
                return detail::reduce_fan(state, c, k);
            }
        },
        conf);
}

// --- driver ------------------------------------------------------------------------

enum class step_kind { stale, dedupe, compress, reduction };

struct step_event {
    step_kind kind = step_kind::stale;
    vertex_id v = no_vertex;
    const reduction_frame* frame = nullptr;
    count_t potential_before = 0;
    count_t potential_after = 0;
};

/// Hooks for instrumentation; default implementations do nothing.
class reduction_observer {
public:
    virtual ~reduction_observer() = default;
    /// Called with the state the configuration was read from, before it is reduced.
    virtual void on_configuration(const encoding_state&, const configuration&) {}
    virtual void on_step(const encoding_state&, const step_event&) {}
};

struct decide_stats {
    std::size_t iterations = 0;
    count_t initial_potential = 0;
    count_t final_potential = 0;
    std::size_t potential_violations = 0;
    std::size_t frames = 0;
};

struct decide_options {
    /// Receives the frame stack; complete (and replayable) when the verdict is yes.
    std::vector<reduction_frame>* trace = nullptr;
    decide_stats* stats = nullptr;
    reduction_observer* observer = nullptr;
};

/// Decides whether a series-parallel multigraph is k-edge-colourable in time
/// linear in vertices plus edge classes.
inline verdict decide(const multigraph& g, count_t k, const decide_options& options = {}) {
    decide_stats local_stats;
    decide_stats& stats = options.stats ? *options.stats : local_stats;
    stats = {};
    // Without a trace only the latest frame is kept, for the observer.
    std::vector<reduction_frame>* frames = options.trace;
    if (frames) frames->clear();
    reduction_frame latest;
    std::size_t frame_count = 0;

    for (vertex_id v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) > k) return {verdict_kind::no, degree_exceeded{v, g.degree(v)}};

    encoding_state state = encoding_state::from_multigraph(g);
    stats.initial_potential = state.potential();

    while (auto popped = state.pop()) {
        const vertex_id v = *popped;
        step_event event;
        event.v = v;
        // The pop itself is part of the iteration.
        event.potential_before = state.potential() + 1;
        ++stats.iterations;

        if (!state.contains(v) || !state.is_active(v)) {
            event.kind = step_kind::stale;
        } else {
            detection found = detect(state, v);
            if (std::holds_alternative<not_local>(found)) {
                event.kind = step_kind::dedupe;
            } else if (std::holds_alternative<needs_compress>(found)) {
                event.kind = step_kind::compress;
                state.series_compress(v);
            } else {
                const auto& conf = std::get<configuration>(found);
                if (options.observer) options.observer->on_configuration(state, conf);
                if (auto violation = local_feasible(conf, k)) {
                    stats.final_potential = state.potential();
                    stats.frames = frame_count;
                    return {verdict_kind::no, local_check{conf, *violation, frame_count}};
                }
                ++frame_count;
                if (frames) {
                    frames->push_back(apply_reduction(state, conf, k));
                    event.frame = &frames->back();
                } else {
                    latest = apply_reduction(state, conf, k);
                    event.frame = &latest;
                }
                event.kind = step_kind::reduction;
                if (state.contains(v) && state.is_active(v)) state.push(v);
            }
        }
        event.potential_after = state.potential();
        if (event.potential_after >= event.potential_before) ++stats.potential_violations;
        if (options.observer) options.observer->on_step(state, event);
    }

    stats.final_potential = state.potential();
    stats.frames = frame_count;
    if (state.vertex_count() > 0) return {verdict_kind::not_series_parallel, {}};
    return {verdict_kind::yes, {}};
}

/// Least k with decide(g, k) = yes: start at the maximum degree, grow the step
/// geometrically until yes, then bisect.
inline count_t chromatic_index(const multigraph& g) {
    auto colourable = [&](count_t k) {
        verdict v = decide(g, k);
        if (v.kind == verdict_kind::not_series_parallel) throw not_series_parallel();
        return v.yes();
    };
    count_t lo = g.max_degree();
    if (colourable(lo)) return lo;
    count_t step = 1;
    count_t hi = lo + step;
    while (!colourable(hi)) {
        lo = hi;
        step *= 2;
        hi = lo + step;
    }
    // decide(lo) = no, decide(hi) = yes
    while (hi - lo > 1) {
        count_t mid = lo + (hi - lo) / 2;
        if (colourable(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

// --- trace serialization -------------------------------------------------------

namespace detail {
inline std::uint64_t ext(vertex_id v) { return v == no_vertex ? 0 : static_cast<std::uint64_t>(v) + 1; }
}  // namespace detail

/// One line per frame: case tag then payload integers, vertex ids 1-based (0 = absent).
inline std::string to_string(const reduction_frame& frame) {
    using detail::ext;
    std::ostringstream os;
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, isolated_vertex>) {
                os << "isolated " << ext(c.v);
            } else if constexpr (std::is_same_v<T, pendant_class>) {
                os << "pendant " << ext(c.v) << ' ' << ext(c.x) << ' ' << c.m;
            } else if constexpr (std::is_same_v<T, twin_pair>) {
                const auto& p = std::get<twin_payload>(frame.payload);
                os << "twin " << ext(c.x) << ' ' << ext(c.y) << ' ' << ext(c.u) << ' ' << ext(c.v) << ' ' << c.a << ' '
                   << c.b << ' ' << c.c << ' ' << c.d << ' ' << p.moved << ' ' << (p.u_dropped ? 1 : 0);
            } else if constexpr (std::is_same_v<T, triple_path>) {
                os << "triple " << ext(c.w) << ' ' << ext(c.u1) << ' ' << ext(c.v1) << ' ' << c.a << ' ' << c.b << ' '
                   << c.c;
            } else {
                const auto& p = std::get<fan_payload>(frame.payload);
                os << (p.small_sum ? "fan-small " : "fan ") << ext(c.w) << ' ' << ext(c.u1) << ' ' << ext(c.u2) << ' '
                   << ext(c.v1) << ' ' << ext(c.v2) << ' ' << c.a << ' ' << c.b << ' ' << c.c << ' ' << c.d << ' '
                   << c.e << ' ' << c.f;
                if (!p.small_sum)
                    os << ' ' << p.z1 << ' ' << p.z2 << ' ' << p.s << ' ' << p.s1 << ' ' << p.s2 << ' ' << ext(p.x)
                       << ' ' << ext(p.y);
            }
        },
        frame.config);
    return os.str();
}

inline void write_trace(std::ostream& os, const std::vector<reduction_frame>& frames) {
    for (const auto& f : frames) os << to_string(f) << '\n';
}

}  // namespace spedge
