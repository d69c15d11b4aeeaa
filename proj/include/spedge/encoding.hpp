#pragma once

#include <algorithm>
#include <deque>
#include <list>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "errors.hpp"
#include "multigraph.hpp"

namespace spedge {

/// A vertex of the represented graph that is not in H: it has m0 edges to the
/// record's end0 and m1 edges to its end1, and no other neighbours.
struct subdivision_entry {
    vertex_id vertex = no_vertex;
    count_t m0 = 0;
    count_t m1 = 0;

    friend bool operator==(const subdivision_entry&, const subdivision_entry&) = default;
};

using record_id = std::uint32_t;
inline constexpr record_id no_record = std::numeric_limits<record_id>::max();

/// One edge of H. Ends are stored with end0 < end1, so all records between
/// the same pair share an orientation and entry lists splice without flipping.
struct h_record {
    vertex_id end0 = no_vertex;
    vertex_id end1 = no_vertex;
    count_t mu = 0;
    std::list<subdivision_entry> lambda;
    std::uint32_t slot0 = 0;
    std::uint32_t slot1 = 0;
    bool alive = false;

    vertex_id other(vertex_id v) const { return v == end0 ? end1 : end0; }
    count_t toward(const subdivision_entry& e, vertex_id end) const { return end == end0 ? e.m0 : e.m1; }
};

/// Entry given relative to the (first, second) argument order of add_record.
struct entry_spec {
    vertex_id vertex;
    count_t toward_first;
    count_t toward_second;
};

/// Weight of a vertex in the potential; the worst per-iteration credit is 10.
inline constexpr count_t potential_constant = 16;

/// The encoding (H, lambda, mu) of the current graph together with the
/// counter C and the worklist L.
class encoding_state {
public:
    using entry_iterator = std::list<subdivision_entry>::iterator;

    encoding_state() = default;

    static encoding_state from_multigraph(const multigraph& g) {
        encoding_state s;
        const std::size_t n = g.vertex_count();
        s.resize(n);
        for (auto& slot : s.slots_) slot.present = true;
        s.vertex_count_ = n;
        s.records_.reserve(g.class_count());
        for (vertex_id v = 0; v < n; ++v) s.slots_[v].incident.reserve(g.neighbors(v).size());
        for (const auto& c : g.classes()) s.link(c.u, c.v, c.mult);
        for (vertex_id v = 0; v < n; ++v)
            if (s.is_active(v)) s.worklist_.push_back(v);
        return s;
    }

    // --- construction and raw mutation ---------------------------------

    /// Fresh id that is part of H.
    vertex_id add_vertex() {
        vertex_id v = allocate_vertex();
        slots_[v].present = true;
        ++vertex_count_;
        return v;
    }

    /// Fresh id outside H (subdivision entries, dropped pendants). Never reused.
    vertex_id allocate_vertex() {
        if (slots_.size() >= static_cast<std::size_t>(no_vertex))
            throw graph_error(graph_errc::bad_vertex_id, "vertex id space exhausted");
        vertex_id v = static_cast<vertex_id>(slots_.size());
        resize(slots_.size() + 1);
        return v;
    }

    record_id add_record(vertex_id a, vertex_id b, count_t mu, std::span<const entry_spec> entries = {}) {
        require_present(a);
        require_present(b);
        if (a == b) throw precondition_violated("record would be a loop");
        if (mu == 0 && entries.empty()) throw precondition_violated("record with mu = 0 needs an entry");
        record_id r = link(a, b, mu);
        auto& rec = records_[r];
        for (const auto& e : entries) {
            if (e.toward_first == 0 || e.toward_second == 0)
                throw precondition_violated("subdivision entry needs both multiplicities positive");
            if (e.vertex >= slots_.size() || slots_[e.vertex].present)
                throw precondition_violated("entry vertex must be allocated and outside H");
            if (a < b)
                rec.lambda.push_back({e.vertex, e.toward_first, e.toward_second});
            else
                rec.lambda.push_back({e.vertex, e.toward_second, e.toward_first});
            ++lambda_total_;
        }
        return r;
    }

    void erase_record(record_id r) {
        auto& rec = live(r);
        unlink(rec.end0, rec.slot0);
        unlink(rec.end1, rec.slot1);
        lambda_total_ -= rec.lambda.size();
        rec.lambda.clear();
        rec.alive = false;
        free_records_.push_back(r);
    }

    /// Erases a record that no longer carries edges (mu = 0, empty lambda) and
    /// charges both ends. Returns whether it was erased.
    bool erase_if_hollow(record_id r) {
        auto& rec = live(r);
        if (rec.mu != 0 || !rec.lambda.empty()) return false;
        vertex_id a = rec.end0, b = rec.end1;
        erase_record(r);
        touch(a);
        touch(b);
        return true;
    }

    void remove_vertex(vertex_id v) {
        require_present(v);
        if (!slots_[v].incident.empty()) throw precondition_violated("vertex still has incident records");
        slots_[v].present = false;
        --vertex_count_;
        counter_total_ -= slots_[v].counter;
        slots_[v].counter = 0;
    }

    entry_iterator entries_begin(record_id r) { return live(r).lambda.begin(); }
    entry_iterator entries_end(record_id r) { return live(r).lambda.end(); }

    void remove_entry(record_id r, entry_iterator it) {
        live(r).lambda.erase(it);
        --lambda_total_;
    }

    /// Rewrites an entry's multiplicities, given toward `end` and toward the other end.
    void set_entry(record_id r, entry_iterator it, vertex_id end, count_t toward_end, count_t toward_other) {
        auto& rec = live(r);
        if (toward_end == 0 || toward_other == 0) throw precondition_violated("entry multiplicity must stay positive");
        if (end == rec.end0) {
            it->m0 = toward_end;
            it->m1 = toward_other;
        } else {
            it->m0 = toward_other;
            it->m1 = toward_end;
        }
    }

    /// C(v) += 1 and v joins the worklist; applied to each end of an added or deleted H edge.
    void touch(vertex_id v) {
        if (!slots_[v].present) return;
        ++slots_[v].counter;
        ++counter_total_;
        worklist_.push_back(v);
    }

    void push(vertex_id v) { worklist_.push_back(v); }

    std::optional<vertex_id> pop() {
        if (worklist_.empty()) return std::nullopt;
        vertex_id v = worklist_.front();
        worklist_.pop_front();
        return v;
    }

    // --- queries -------------------------------------------------------

    bool contains(vertex_id v) const { return v < slots_.size() && slots_[v].present; }
    std::size_t capacity() const { return slots_.size(); }
    std::size_t vertex_count() const { return vertex_count_; }
    std::size_t lambda_total() const { return lambda_total_; }
    count_t counter_total() const { return counter_total_; }
    const std::deque<vertex_id>& worklist() const { return worklist_; }

    std::size_t degree(vertex_id v) const {
        require_present(v);
        return slots_[v].incident.size();
    }

    std::size_t valence(vertex_id v) const {
        require_present(v);
        std::unordered_set<vertex_id> seen;
        for (record_id r : slots_[v].incident) seen.insert(records_[r].other(v));
        return seen.size();
    }

    count_t counter(vertex_id v) const {
        require_present(v);
        return slots_[v].counter;
    }

    std::span<const record_id> incident(vertex_id v) const {
        require_present(v);
        return slots_[v].incident;
    }

    const h_record& record(record_id r) const {
        if (r >= records_.size() || !records_[r].alive) throw precondition_violated("dead record");
        return records_[r];
    }

    /// Record between a and b, scanning the shorter incidence list.
    record_id find_record(vertex_id a, vertex_id b) const {
        require_present(a);
        require_present(b);
        vertex_id from = slots_[a].incident.size() <= slots_[b].incident.size() ? a : b;
        vertex_id to = from == a ? b : a;
        for (record_id r : slots_[from].incident)
            if (records_[r].other(from) == to) return r;
        return no_record;
    }

    bool is_active(vertex_id v) const {
        require_present(v);
        const count_t deg = slots_[v].incident.size();
        return deg <= 2 || deg <= 3 * slots_[v].counter;
    }

    // --- iteration rules -----------------------------------------------

    /// Merges parallel records at v (mu summed, entry lists concatenated),
    /// resets C(v) and queues every vertex whose degree dropped.
    void dedupe(vertex_id v) {
        require_present(v);
        auto& inc = slots_[v].incident;
        std::vector<record_id> duplicates;
        for (record_id r : inc) {
            vertex_id x = records_[r].other(v);
            if (slots_[x].mark == no_record)
                slots_[x].mark = r;
            else
                duplicates.push_back(r);
        }
        for (record_id r : duplicates) {
            auto& rec = records_[r];
            vertex_id x = rec.other(v);
            auto& keep = records_[slots_[x].mark];
            keep.mu += rec.mu;
            keep.lambda.splice(keep.lambda.end(), rec.lambda);
            erase_record(r);
            worklist_.push_back(x);
        }
        for (record_id r : inc) slots_[records_[r].other(v)].mark = no_record;
        if (!duplicates.empty()) worklist_.push_back(v);
        counter_total_ -= slots_[v].counter;
        slots_[v].counter = 0;
    }

    /// Suppresses a vertex with two distinct H-neighbours whose records carry
    /// no entries: v becomes the sole entry of a new mu = 0 record xy.
    void series_compress(vertex_id v) {
        require_present(v);
        const auto& inc = slots_[v].incident;
        if (inc.size() != 2) throw precondition_violated("series compression needs deg_H(v) = 2");
        record_id r1 = inc[0], r2 = inc[1];
        const auto& a = records_[r1];
        const auto& b = records_[r2];
        if (!a.lambda.empty() || !b.lambda.empty())
            throw precondition_violated("series compression needs empty lambda on both records");
        vertex_id x = a.other(v), y = b.other(v);
        if (x == y) throw precondition_violated("series compression needs two distinct neighbours");
        count_t mu1 = a.mu, mu2 = b.mu;
        erase_record(r1);
        erase_record(r2);
        remove_vertex(v);
        entry_spec e{v, mu1, mu2};
        add_record(x, y, 0, std::span<const entry_spec>(&e, 1));
        touch(x);
        touch(y);
    }

    count_t potential(count_t weight = potential_constant) const {
        return 2 * weight * vertex_count_ + weight * lambda_total_ + worklist_.size() + 4 * counter_total_;
    }

    // --- views ---------------------------------------------------------

    /// The represented multigraph over the full id space (removed ids are isolated).
    multigraph expand() const {
        std::unordered_map<std::uint64_t, count_t> mult;
        auto add = [&](vertex_id a, vertex_id b, count_t m) {
            if (m) mult[pair_key(a, b)] += m;
        };
        for (const auto& rec : records_) {
            if (!rec.alive) continue;
            add(rec.end0, rec.end1, rec.mu);
            for (const auto& e : rec.lambda) {
                add(e.vertex, rec.end0, e.m0);
                add(e.vertex, rec.end1, e.m1);
            }
        }
        std::vector<std::pair<std::uint64_t, count_t>> sorted(mult.begin(), mult.end());
        std::sort(sorted.begin(), sorted.end());
        std::vector<edge_class> classes;
        classes.reserve(sorted.size());
        for (auto [key, m] : sorted)
            classes.push_back({static_cast<vertex_id>(key >> 32), static_cast<vertex_id>(key & 0xffffffffu), m});
        return multigraph::build(capacity(), std::move(classes));
    }

    /// Vertex set of the represented graph: H vertices plus entry vertices, sorted.
    std::vector<vertex_id> vertices() const {
        std::vector<vertex_id> out;
        for (vertex_id v = 0; v < slots_.size(); ++v)
            if (slots_[v].present) out.push_back(v);
        for (const auto& rec : records_)
            if (rec.alive)
                for (const auto& e : rec.lambda) out.push_back(e.vertex);
        std::sort(out.begin(), out.end());
        return out;
    }

    /// One line per record: `end0 end1 mu p:m0:m1 ...`.
    std::string dump() const {
        std::ostringstream os;
        for (const auto& rec : records_) {
            if (!rec.alive) continue;
            os << rec.end0 << ' ' << rec.end1 << ' ' << rec.mu;
            for (const auto& e : rec.lambda) os << ' ' << e.vertex << ':' << e.m0 << ':' << e.m1;
            os << '\n';
        }
        return os.str();
    }

    /// Full structural audit; returns the first violated invariant. O(size).
    std::optional<std::string> check_invariants() const {
        std::size_t lambda = 0, alive_vertices = 0;
        count_t counters = 0;
        std::unordered_set<vertex_id> entry_vertices;
        for (record_id r = 0; r < records_.size(); ++r) {
            const auto& rec = records_[r];
            if (!rec.alive) continue;
            std::string id = "record " + std::to_string(r);
            if (!(rec.end0 < rec.end1)) return id + ": ends not ordered";
            if (!contains(rec.end0) || !contains(rec.end1)) return id + ": end not in H";
            if (slots_[rec.end0].incident.size() <= rec.slot0 || slots_[rec.end0].incident[rec.slot0] != r)
                return id + ": bad slot at end0";
            if (slots_[rec.end1].incident.size() <= rec.slot1 || slots_[rec.end1].incident[rec.slot1] != r)
                return id + ": bad slot at end1";
            if (rec.mu == 0 && rec.lambda.empty()) return id + ": hollow record kept";
            for (const auto& e : rec.lambda) {
                if (e.m0 == 0 || e.m1 == 0) return id + ": zero entry multiplicity";
                if (contains(e.vertex)) return id + ": entry vertex is in H";
                if (!entry_vertices.insert(e.vertex).second) return id + ": entry vertex repeated";
            }
            lambda += rec.lambda.size();
        }
        if (lambda != lambda_total_) return "lambda total out of sync";
        std::unordered_set<vertex_id> queued(worklist_.begin(), worklist_.end());
        for (vertex_id v = 0; v < slots_.size(); ++v) {
            if (!slots_[v].present) {
                if (slots_[v].counter != 0) return "counter left on removed vertex " + std::to_string(v);
                continue;
            }
            ++alive_vertices;
            counters += slots_[v].counter;
            if (slots_[v].incident.size() - valence(v) > slots_[v].counter)
                return "counter too small at " + std::to_string(v);
            if (is_active(v) && !queued.count(v)) return "active vertex missing from L: " + std::to_string(v);
        }
        if (alive_vertices != vertex_count_) return "vertex count out of sync";
        if (counters != counter_total_) return "counter total out of sync";
        return std::nullopt;
    }

private:
    void resize(std::size_t n) {
        slots_.resize(n);
    }

    void require_present(vertex_id v) const {
        if (!contains(v)) throw vertex_absent("vertex " + std::to_string(v) + " is not in H");
    }

    h_record& live(record_id r) {
        if (r >= records_.size() || !records_[r].alive) throw precondition_violated("dead record");
        return records_[r];
    }

    record_id link(vertex_id a, vertex_id b, count_t mu) {
        record_id r;
        if (!free_records_.empty()) {
            r = free_records_.back();
            free_records_.pop_back();
        } else {
            r = static_cast<record_id>(records_.size());
            records_.emplace_back();
        }
        auto& rec = records_[r];
        rec.end0 = std::min(a, b);
        rec.end1 = std::max(a, b);
        rec.mu = mu;
        rec.alive = true;
        rec.slot0 = static_cast<std::uint32_t>(slots_[rec.end0].incident.size());
        slots_[rec.end0].incident.push_back(r);
        rec.slot1 = static_cast<std::uint32_t>(slots_[rec.end1].incident.size());
        slots_[rec.end1].incident.push_back(r);
        return r;
    }

    void unlink(vertex_id v, std::uint32_t slot) {
        auto& list = slots_[v].incident;
        record_id moved = list.back();
        list[slot] = moved;
        list.pop_back();
        if (slot < list.size()) {
            auto& m = records_[moved];
            (m.end0 == v ? m.slot0 : m.slot1) = slot;
        }
    }

    std::vector<h_record> records_;
    std::vector<record_id> free_records_;
    // Per-vertex data kept together: most steps read all of it for one vertex.
    struct vertex_slot {
        std::vector<record_id> incident;
        count_t counter = 0;
        record_id mark = no_record;
        bool present = false;
    };
    std::vector<vertex_slot> slots_;
    std::deque<vertex_id> worklist_;
    std::size_t vertex_count_ = 0;
    std::size_t lambda_total_ = 0;
    count_t counter_total_ = 0;
};

}  // namespace spedge
