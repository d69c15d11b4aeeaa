#include <gtest/gtest.h>

#include <spedge/io.hpp>
#include <spedge/oracle.hpp>
#include <spedge/series_parallel.hpp>

using namespace spedge;
using oracle::rational;

namespace {

multigraph triangle(count_t a, count_t b, count_t c) { return multigraph::build(3, {{0, 1, a}, {1, 2, b}, {0, 2, c}}); }

multigraph cycle(std::size_t n, count_t m) {
    std::vector<edge_class> classes;
    for (vertex_id i = 0; i < n; ++i) classes.push_back({i, static_cast<vertex_id>((i + 1) % n), m});
    return multigraph::build(n, std::move(classes));
}

multigraph petersen() {
    std::vector<edge_class> classes;
    for (vertex_id i = 0; i < 5; ++i) {
        classes.push_back({i, (i + 1) % 5, 1});
        classes.push_back({i, i + 5, 1});
        classes.push_back({5 + i, 5 + (i + 2) % 5, 1});
    }
    return multigraph::build(10, std::move(classes));
}

multigraph k4() { return multigraph::build(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}}); }

}  // namespace

TEST(Rational, Arithmetic) {
    EXPECT_EQ(rational::make(30, 4).to_string(), "15/2");
    EXPECT_EQ(rational::make(30, 4).ceil(), 8u);
    EXPECT_EQ(rational::make(8, 2).ceil(), 4u);
    EXPECT_TRUE(rational::make(7, 2) < rational::make(4, 1));
    EXPECT_TRUE(rational::make(6, 4) == rational::make(3, 2));
}

TEST(ChiExact, SmallGraphs) {
    EXPECT_EQ(oracle::chi_exact(triangle(1, 1, 1)), 3u);
    EXPECT_EQ(oracle::chi_exact(triangle(2, 1, 1)), 4u);
    EXPECT_EQ(oracle::chi_exact(k4()), 3u);
    EXPECT_FALSE(oracle::is_k_colorable_exact(triangle(2, 1, 1), 3));
    EXPECT_TRUE(oracle::is_k_colorable_exact(triangle(2, 1, 1), 4));
}

TEST(ChiExact, Petersen) {
    auto g = petersen();
    EXPECT_EQ(oracle::chi_exact(g), 4u);
    EXPECT_EQ(oracle::lower_bound(g), 3u);
}

TEST(ChiExact, FiveCycleTripled) {
    oracle::budget wide{10, 64};
    EXPECT_FALSE(oracle::is_k_colorable_exact(cycle(5, 3), 7, wide));
    EXPECT_TRUE(oracle::is_k_colorable_exact(cycle(5, 3), 8, wide));
}

TEST(ChiExact, Budget) {
    EXPECT_THROW(oracle::chi_exact(cycle(11, 1)), budget_exceeded);
    EXPECT_THROW(oracle::chi_exact(cycle(5, 7)), budget_exceeded);
}

TEST(Gamma, Examples) {
    auto t = oracle::gamma_exact(triangle(2, 1, 1));
    EXPECT_EQ(t.density.to_string(), "4/1");
    EXPECT_EQ(t.set, (std::vector<vertex_id>{0, 1, 2}));

    auto c = oracle::gamma_exact(cycle(5, 3));
    EXPECT_EQ(c.density.to_string(), "15/2");
    EXPECT_EQ(c.set.size(), 5u);

    auto none = oracle::gamma_exact(multigraph::build(2, {{0, 1, 4}}));
    EXPECT_EQ(none.density.num, 0u);
    EXPECT_TRUE(none.set.empty());
}

TEST(Gamma, PrunedSkipsPendants) {
    // Triangle with a heavy pendant at vertex 0.
    auto g = multigraph::build(4, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {0, 3, 5}});
    EXPECT_EQ(oracle::gamma_exact(g, false).density.to_string(), "6/1");
    EXPECT_EQ(oracle::gamma_exact(g, true).density.to_string(), "3/1");
    // The degree term absorbs the difference.
    EXPECT_EQ(g.max_degree(), 7u);
}

TEST(Witness, Examples) {
    auto c5 = oracle::find_config_bruteforce(cycle(5, 1));
    ASSERT_TRUE(c5);
    EXPECT_EQ(c5->kind, oracle::witness_case::triple_path);

    auto star = oracle::find_config_bruteforce(multigraph::build(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}}));
    ASSERT_TRUE(star);
    EXPECT_EQ(star->kind, oracle::witness_case::low_degree);

    EXPECT_FALSE(oracle::find_config_bruteforce(k4()));

    auto square = oracle::find_config_bruteforce(cycle(4, 1));
    ASSERT_TRUE(square);
    EXPECT_EQ(square->kind, oracle::witness_case::twin_pair);
}

TEST(Witness, FanShape) {
    // Two fans on w = 0 and w' = 5 sharing u1 = 1, u2 = 2. Every degree-2 vertex
    // hangs off a degree-4 centre, so only the fan case applies.
    auto g = multigraph::build(8, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}, {3, 1, 1}, {4, 2, 1},
                                   {5, 1, 1}, {5, 2, 1}, {5, 6, 1}, {5, 7, 1}, {6, 1, 1}, {7, 2, 1},
                                   {1, 2, 1}});
    ASSERT_TRUE(is_series_parallel(g));
    auto w = oracle::find_config_bruteforce(g);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->kind, oracle::witness_case::fan);
    EXPECT_EQ(w->vertices.front(), 0u);
}

TEST(GenSp, Examples) {
    auto two = oracle::gen_sp(2, 5, 7);
    ASSERT_EQ(two.class_count(), 1u);
    EXPECT_GE(two.classes()[0].mult, 1u);
    EXPECT_LE(two.classes()[0].mult, 5u);

    auto g = oracle::gen_sp(8, 4, 42);
    EXPECT_EQ(g.vertex_count(), 8u);
    EXPECT_TRUE(is_series_parallel(g));
    EXPECT_EQ(io::graph_to_string(g), io::graph_to_string(oracle::gen_sp(8, 4, 42)));
    EXPECT_NE(io::graph_to_string(g), io::graph_to_string(oracle::gen_sp(8, 4, 43)));
}

TEST(GenSp, Connected) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto g = oracle::gen_sp(3 + seed % 50, 2, seed);
        for (vertex_id v = 0; v < g.vertex_count(); ++v) ASSERT_GT(g.degree(v), 0u);
        EXPECT_GE(g.class_count(), g.vertex_count() - 1);
        EXPECT_LE(g.class_count(), 2 * g.vertex_count() - 3);
    }
}
