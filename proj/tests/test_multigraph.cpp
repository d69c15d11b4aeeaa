#include <gtest/gtest.h>

#include <spedge/multigraph.hpp>
#include <spedge/oracle.hpp>
#include <spedge/series_parallel.hpp>

using namespace spedge;

namespace {

multigraph triangle(count_t a, count_t b, count_t c) { return multigraph::build(3, {{0, 1, a}, {1, 2, b}, {0, 2, c}}); }

multigraph k4() { return multigraph::build(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}}); }

graph_errc build_error(std::size_t n, std::vector<edge_class> classes) {
    try {
        multigraph::build(n, std::move(classes));
    } catch (const graph_error& e) {
        return e.code();
    }
    ADD_FAILURE() << "build accepted invalid input";
    return graph_errc::loop_edge;
}

}  // namespace

TEST(Multigraph, SingleClass) {
    auto g = multigraph::build(2, {{0, 1, 5}});
    EXPECT_EQ(g.max_degree(), 5u);
    EXPECT_EQ(g.multiplicity(1, 0), 5u);
    EXPECT_EQ(g.total_multiplicity(), 5u);
}

TEST(Multigraph, TriangleDegrees) {
    auto g = triangle(2, 1, 1);
    EXPECT_EQ(g.degree(0), 3u);
    EXPECT_EQ(g.degree(1), 3u);
    EXPECT_EQ(g.degree(2), 2u);
    EXPECT_EQ(g.max_degree(), 3u);
    EXPECT_EQ(g.neighbors(2).size(), 2u);
}

TEST(Multigraph, RejectsBadInput) {
    EXPECT_EQ(build_error(3, {{0, 0, 1}}), graph_errc::loop_edge);
    EXPECT_EQ(build_error(3, {{0, 1, 1}, {1, 0, 2}}), graph_errc::duplicate_class);
    EXPECT_EQ(build_error(3, {{0, 3, 1}}), graph_errc::bad_vertex_id);
    EXPECT_EQ(build_error(3, {{0, 1, 0}}), graph_errc::zero_multiplicity);
}

TEST(Multigraph, OutOfRangeQuery) { EXPECT_THROW(triangle(1, 1, 1).degree(7), graph_error); }

TEST(Multigraph, UnderlyingSimple) {
    auto s = underlying_simple(triangle(2, 1, 1));
    EXPECT_EQ(s.canonical_classes(), triangle(1, 1, 1).canonical_classes());
}

TEST(Multigraph, Induced) {
    auto g = triangle(2, 1, 1);
    std::vector<vertex_id> pair{0, 1};
    auto h = induced(g, pair);
    ASSERT_EQ(h.class_count(), 1u);
    EXPECT_EQ(h.classes()[0].mult, 2u);

    auto empty = induced(g, {});
    EXPECT_EQ(empty.vertex_count(), 0u);
    EXPECT_EQ(empty.class_count(), 0u);

    std::vector<vertex_id> repeated{1, 1};
    EXPECT_THROW(induced(g, repeated), graph_error);
}

TEST(SeriesParallel, Recognises) {
    EXPECT_FALSE(is_series_parallel(k4()));
    EXPECT_TRUE(is_series_parallel(triangle(2, 1, 1)));
    EXPECT_TRUE(is_series_parallel(multigraph::build(0, {})));
    // K4 with one edge subdivided is still a K4 subdivision.
    auto sub = multigraph::build(5, {{0, 4, 1}, {4, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}});
    EXPECT_FALSE(is_series_parallel(sub));
    // K_{2,3} is series-parallel.
    auto k23 = multigraph::build(5, {{0, 2, 1}, {0, 3, 1}, {0, 4, 1}, {1, 2, 1}, {1, 3, 1}, {1, 4, 1}});
    EXPECT_TRUE(is_series_parallel(k23));
}

TEST(SeriesParallel, GeneratorOutputs) {
    for (std::uint64_t seed = 0; seed < 300; ++seed)
        ASSERT_TRUE(is_series_parallel(oracle::gen_sp(2 + seed % 40, 3, seed))) << seed;
}
