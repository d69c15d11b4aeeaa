#include <gtest/gtest.h>

#include <spedge/encoding.hpp>
#include <spedge/oracle.hpp>

using namespace spedge;

namespace {

std::vector<vertex_id> queued(const encoding_state& s) { return {s.worklist().begin(), s.worklist().end()}; }

encoding_state path(count_t left, count_t right) {
    return encoding_state::from_multigraph(multigraph::build(3, {{0, 1, left}, {1, 2, right}}));
}

}  // namespace

TEST(Encoding, FromTriangle) {
    auto s = encoding_state::from_multigraph(multigraph::build(3, {{0, 1, 2}, {1, 2, 1}, {0, 2, 1}}));
    EXPECT_EQ(s.vertex_count(), 3u);
    EXPECT_EQ(s.lambda_total(), 0u);
    EXPECT_EQ(s.counter_total(), 0u);
    EXPECT_EQ(queued(s), (std::vector<vertex_id>{0, 1, 2}));
    EXPECT_EQ(s.dump(), "0 1 2\n1 2 1\n0 2 1\n");
    EXPECT_FALSE(s.check_invariants());
}

TEST(Encoding, FromSingleClass) {
    auto s = encoding_state::from_multigraph(multigraph::build(2, {{0, 1, 7}}));
    EXPECT_EQ(s.dump(), "0 1 7\n");
    EXPECT_EQ(queued(s), (std::vector<vertex_id>{0, 1}));
}

TEST(Encoding, Empty) {
    auto s = encoding_state::from_multigraph(multigraph::build(0, {}));
    EXPECT_EQ(s.vertex_count(), 0u);
    EXPECT_TRUE(s.worklist().empty());
    EXPECT_EQ(s.potential(), 0u);
}

TEST(Encoding, ExpandUnfoldsEntries) {
    auto s = encoding_state::from_multigraph(multigraph::build(2, {}));
    vertex_id v = s.allocate_vertex();
    entry_spec e{v, 3, 1};
    s.add_record(0, 1, 2, std::span<const entry_spec>(&e, 1));
    auto g = s.expand();
    EXPECT_EQ(g.multiplicity(0, 1), 2u);
    EXPECT_EQ(g.multiplicity(0, v), 3u);
    EXPECT_EQ(g.multiplicity(v, 1), 1u);
    EXPECT_EQ(s.vertices(), (std::vector<vertex_id>{0, 1, 2}));
}

TEST(Encoding, ExpandRoundTrip) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto g = oracle::gen_sp(2 + seed % 30, 5, seed);
        EXPECT_EQ(encoding_state::from_multigraph(g).expand().canonical_classes(), g.canonical_classes());
    }
}

TEST(Encoding, Activity) {
    // Star centre with four leaves.
    auto s = encoding_state::from_multigraph(multigraph::build(5, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}}));
    EXPECT_FALSE(s.is_active(0));
    EXPECT_TRUE(s.is_active(1));
    s.touch(0);
    EXPECT_EQ(s.counter(0), 1u);
    EXPECT_FALSE(s.is_active(0));  // 4 > 3

    auto big = encoding_state::from_multigraph(
        multigraph::build(7, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}, {0, 5, 1}, {0, 6, 1}}));
    big.touch(0);
    big.touch(0);
    EXPECT_TRUE(big.is_active(0));  // 6 <= 6
}

TEST(Encoding, DedupeSumsMu) {
    auto s = encoding_state::from_multigraph(multigraph::build(2, {{0, 1, 1}}));
    s.add_record(1, 0, 2);
    s.touch(0);
    s.dedupe(0);
    EXPECT_EQ(s.dump(), "0 1 3\n");
    EXPECT_EQ(s.counter(0), 0u);
    EXPECT_FALSE(s.check_invariants());
}

TEST(Encoding, DedupeKeepsEntryOrientation) {
    // v = 0, x = 1; p and q are entry vertices.
    auto s = encoding_state::from_multigraph(multigraph::build(2, {}));
    vertex_id p = s.allocate_vertex(), q = s.allocate_vertex();
    entry_spec ep{p, 1, 1}, eq{q, 2, 1};
    s.add_record(0, 1, 1, std::span<const entry_spec>(&ep, 1));
    s.add_record(1, 0, 2, std::span<const entry_spec>(&eq, 1));
    auto before = s.expand().canonical_classes();
    s.dedupe(0);
    ASSERT_EQ(s.degree(0), 1u);
    const auto& rec = s.record(s.incident(0)[0]);
    EXPECT_EQ(rec.mu, 3u);
    ASSERT_EQ(rec.lambda.size(), 2u);
    const auto& second = rec.lambda.back();
    EXPECT_EQ(second.vertex, q);
    EXPECT_EQ(rec.toward(second, 0), 1u);
    EXPECT_EQ(rec.toward(second, 1), 2u);
    EXPECT_EQ(s.expand().canonical_classes(), before);
}

TEST(Encoding, DedupeWithoutParallels) {
    auto s = path(1, 1);
    s.touch(1);
    auto dump = s.dump();
    s.dedupe(1);
    EXPECT_EQ(s.dump(), dump);
    EXPECT_EQ(s.counter(1), 0u);
}

TEST(Encoding, SeriesCompress) {
    auto s = path(1, 1);
    s.series_compress(1);
    EXPECT_EQ(s.dump(), "0 2 0 1:1:1\n");
    EXPECT_FALSE(s.check_invariants());

    auto t = path(3, 2);
    t.series_compress(1);
    EXPECT_EQ(t.dump(), "0 2 0 1:3:2\n");
    EXPECT_EQ(t.expand().canonical_classes(), multigraph::build(3, {{0, 1, 3}, {1, 2, 2}}).canonical_classes());
}

TEST(Encoding, SeriesCompressPreconditions) {
    auto s = path(1, 1);
    s.series_compress(1);
    // Vertex 0 is now on a record that carries an entry.
    auto t = encoding_state::from_multigraph(multigraph::build(4, {{0, 1, 1}, {1, 2, 1}, {0, 3, 1}}));
    t.series_compress(1);
    EXPECT_THROW(t.series_compress(0), precondition_violated);
    EXPECT_THROW(s.series_compress(1), vertex_absent);
}

TEST(Encoding, Potential) {
    auto s = encoding_state::from_multigraph(multigraph::build(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}));
    EXPECT_EQ(s.potential(16), 99u);

    auto p = path(1, 1);
    count_t before = p.potential(16);
    p.series_compress(1);
    EXPECT_EQ(before - p.potential(16), 16u - 10u);
}
