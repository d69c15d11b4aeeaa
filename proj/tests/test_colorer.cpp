#include <gtest/gtest.h>

#include <spedge/colorer.hpp>
#include <spedge/oracle.hpp>

using namespace spedge;

namespace {

multigraph triangle(count_t a, count_t b, count_t c) { return multigraph::build(3, {{0, 1, a}, {1, 2, b}, {0, 2, c}}); }

multigraph cycle(std::size_t n, count_t m) {
    std::vector<edge_class> classes;
    for (vertex_id i = 0; i < n; ++i) classes.push_back({i, static_cast<vertex_id>((i + 1) % n), m});
    return multigraph::build(n, std::move(classes));
}

}  // namespace

TEST(TwoFan, Examples) {
    auto plain = two_fan_extend(3, 1, 1, {}, {}, {});
    EXPECT_EQ(plain.first, std::vector<color_t>{1});
    EXPECT_EQ(plain.second, std::vector<color_t>{2});

    auto greedy = two_fan_extend(3, 1, 1, {}, {1, 2}, {1});
    EXPECT_EQ(greedy.first, std::vector<color_t>{3});
    EXPECT_EQ(greedy.second, std::vector<color_t>{2});

    try {
        two_fan_extend(3, 1, 1, {1}, {2}, {2});
        FAIL() << "third inequality not enforced";
    } catch (const precondition_violated& e) {
        EXPECT_NE(std::string(e.what()).find("= 4 > 3"), std::string::npos);
    }
}

TEST(TwoFan, ReusesColoursSeenAtSecondNeighbour) {
    auto ext = two_fan_extend(4, 2, 2, {}, {1}, {2, 3});
    EXPECT_EQ(ext.first, (std::vector<color_t>{2, 3}));
    EXPECT_EQ(ext.second, (std::vector<color_t>{1, 4}));
}

TEST(Color, Triangle) {
    auto g = triangle(2, 1, 1);
    auto col = color(g, 4);
    ASSERT_TRUE(col);
    EXPECT_TRUE(verify_coloring(g, 4, *col));
    EXPECT_EQ(col->classes[0].size(), 2u);
    EXPECT_FALSE(color(g, 3));
}

TEST(Color, SingleClassUsesAllColours) {
    auto g = multigraph::build(2, {{0, 1, 6}});
    auto col = color(g, 6);
    ASSERT_TRUE(col);
    EXPECT_EQ(col->classes[0], (std::vector<color_t>{1, 2, 3, 4, 5, 6}));
}

TEST(Color, FiveCycle) {
    auto g = cycle(5, 3);
    auto col = color(g, 8);
    ASSERT_TRUE(col);
    EXPECT_TRUE(verify_coloring(g, 8, *col));
}

TEST(Color, RandomInstancesAtChromaticIndex) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto g = oracle::gen_sp(2 + seed % 60, 1 + seed % 7, seed);
        count_t k = chromatic_index(g);
        auto col = color(g, k);
        ASSERT_TRUE(col) << seed;
        ASSERT_FALSE(find_conflict(g, k, *col)) << seed;
    }
}

TEST(Verify, Examples) {
    auto g = triangle(1, 1, 1);
    EXPECT_TRUE(verify_coloring(g, 3, {3, {{1}, {2}, {3}}}));
    auto clash = find_conflict(g, 3, {3, {{1}, {2}, {1}}});
    ASSERT_TRUE(clash);
    EXPECT_EQ(clash->v, 0u);

    auto pair = multigraph::build(2, {{0, 1, 2}});
    EXPECT_FALSE(verify_coloring(pair, 2, {2, {{1, 1}}}));
    EXPECT_FALSE(verify_coloring(pair, 2, {2, {{1, 3}}}));
    EXPECT_FALSE(verify_coloring(pair, 2, {2, {{1}}}));
    EXPECT_THROW(verify_coloring(pair, 2, {2, {}}), shape_mismatch);
}

TEST(Replay, RejectsForeignTrace) {
    std::vector<reduction_frame> trace;
    decide_options options;
    options.trace = &trace;
    ASSERT_TRUE(decide(triangle(2, 1, 1), 4, options).yes());
    EXPECT_THROW(replay_color(triangle(1, 1, 1), 4, trace), trace_mismatch);
}
