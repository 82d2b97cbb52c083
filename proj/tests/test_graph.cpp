#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hetnet/edge_list.hpp"
#include "hetnet/graph.hpp"
#include "support/test_support.hpp"

using namespace hetnet;

namespace {

WeightedEdge e(int t1, int i1, int t2, int i2, double w = 1.0) {
    return {NodeRef{t1, i1}, NodeRef{t2, i2}, w};
}

} // namespace

TEST_CASE("build: two types with one homo and one cross edge") {
    const HetGraph g = HetGraph::build(2, {2, 1}, {e(0, 0, 0, 1), e(0, 0, 1, 0)});
    CHECK(g.homo_edge_total(0) == 1.0);
    CHECK(g.cross_edge_total(0, 1) == 1.0);
    CHECK(g.homo_degree(0, 0) == 1.0);
    CHECK(g.homo_degree(0, 1) == 1.0);
    CHECK(g.cross_degree(0, 0, 1) == 1.0);
    CHECK(g.cross_degree(0, 1, 1) == 0.0);
    CHECK(g.cross_degree(1, 0, 0) == 1.0);
}

TEST_CASE("build: triangle degrees") {
    const HetGraph g = HetGraph::build(1, {3}, {e(0, 0, 0, 1), e(0, 1, 0, 2), e(0, 0, 0, 2)});
    CHECK(g.homo_edge_total(0) == 3.0);
    for (int i = 0; i < 3; ++i) CHECK(g.homo_degree(0, i) == 2.0);
}

TEST_CASE("build: three types, one edge per pair, no homo edges") {
    const HetGraph g =
        HetGraph::build(3, {2, 2, 2}, {e(0, 0, 1, 0), e(0, 1, 2, 0), e(1, 1, 2, 1)});
    CHECK(g.cross_edge_total(0, 1) == 1.0);
    CHECK(g.cross_edge_total(0, 2) == 1.0);
    CHECK(g.cross_edge_total(1, 2) == 1.0);
    for (int t = 0; t < 3; ++t) CHECK(g.homo_edge_total(t) == 0.0);
}

TEST_CASE("build: rejects bad input") {
    CHECK_THROWS(HetGraph::build(1, {2}, {e(0, 0, 0, 2)}));          // out of range
    CHECK_THROWS(HetGraph::build(1, {2}, {e(0, 0, 0, 0)}));          // self-loop, simple
    CHECK_THROWS(HetGraph::build(1, {3}, {e(0, 0, 0, 1), e(0, 1, 0, 0)})); // duplicate
    CHECK_THROWS(HetGraph::build(1, {2}, {e(0, 0, 0, 1, -1.0)}, GraphMode::Weighted));
    CHECK_THROWS(HetGraph::build(1, {2}, {e(0, 0, 0, 1, 2.0)}));     // non-unit, simple
}

TEST_CASE("weighted mode accumulates duplicates and keeps loops") {
    const HetGraph g = HetGraph::build(
        1, {2}, {e(0, 0, 0, 1, 1.5), e(0, 1, 0, 0, 0.5), e(0, 0, 0, 0, 2.0)},
        GraphMode::Weighted);
    CHECK(g.weight(NodeRef{0, 0}, NodeRef{0, 1}) == 2.0);
    CHECK(g.self_loop(0, 0) == 2.0);
    CHECK(g.homo_degree(0, 0) == doctest::Approx(2.0 + 4.0)); // loop counts twice
    CHECK(g.homo_edge_total(0) == doctest::Approx(4.0));
}

TEST_CASE("degree identities hold on fuzzed graphs") {
    Rng rng(7011);
    for (int rep = 0; rep < 60; ++rep) {
        const HetGraph g =
            rep % 2 == 0 ? test::random_graph_mixed(rng) : test::random_weighted_graph(rng);
        for (int t = 0; t < g.num_types(); ++t) {
            double sum = 0;
            for (int i = 0; i < g.type_size(t); ++i) sum += g.homo_degree(t, i);
            CHECK(sum == doctest::Approx(2.0 * g.homo_edge_total(t)).epsilon(1e-12));
        }
        for (int t1 = 0; t1 < g.num_types(); ++t1)
            for (int t2 = 0; t2 < g.num_types(); ++t2) {
                if (t1 == t2) continue;
                double sum = 0;
                for (int i = 0; i < g.type_size(t1); ++i) sum += g.cross_degree(t1, i, t2);
                CHECK(sum == doctest::Approx(g.cross_edge_total(t1, t2)).epsilon(1e-12));
            }
    }
}

TEST_CASE("weight queries are symmetric") {
    Rng rng(7012);
    const HetGraph g = test::random_weighted_graph(rng);
    for (int t1 = 0; t1 < g.num_types(); ++t1)
        for (int i = 0; i < g.type_size(t1); ++i)
            for (int t2 = 0; t2 < g.num_types(); ++t2)
                for (int j = 0; j < g.type_size(t2); ++j)
                    CHECK(g.weight(NodeRef{t1, i}, NodeRef{t2, j}) ==
                          g.weight(NodeRef{t2, j}, NodeRef{t1, i}));
}

TEST_CASE("edge list: well-formed file") {
    std::istringstream in("# users/events demo\n"
                          "user\tu1\tuser\tu2\n"
                          "user\tu1\tevent\te1\n");
    const EdgeListGraph data = read_edge_list(in);
    CHECK(data.graph.num_types() == 2);
    CHECK(data.graph.total_nodes() == 3);
    CHECK(data.graph.homo_edge_total(0) == 1.0);
    CHECK(data.graph.cross_edge_total(0, 1) == 1.0);
    CHECK(data.names.type_names[0] == "user");
    CHECK(data.names.node_names[1][0] == "e1");
}

TEST_CASE("edge list: self-loop rejected with line number") {
    std::istringstream in("author\ta1\tauthor\ta1\n");
    try {
        read_edge_list(in);
        FAIL("expected ParseError");
    } catch (const ParseError& err) {
        CHECK(err.line() == 1);
    }
}

TEST_CASE("edge list: duplicate edge rejected with line number") {
    std::istringstream in("a\tx\ta\ty\n"
                          "# comment\n"
                          "a\ty\ta\tx\n");
    try {
        read_edge_list(in);
        FAIL("expected ParseError");
    } catch (const ParseError& err) {
        CHECK(err.line() == 3);
    }
}

TEST_CASE("edge list: malformed lines") {
    std::istringstream bad_fields("a\tx\ta\n");
    CHECK_THROWS_AS(read_edge_list(bad_fields), ParseError);
    std::istringstream bad_weight("a\tx\ta\ty\tnope\n");
    CHECK_THROWS_AS(read_edge_list(bad_weight), ParseError);
    std::istringstream non_unit("a\tx\ta\ty\t3\n");
    CHECK_THROWS_AS(read_edge_list(non_unit), ParseError);
    std::istringstream comments_only("# nothing here\n\n# still nothing\n");
    CHECK_THROWS_AS(read_edge_list(comments_only), ParseError);
}

TEST_CASE("edge list round-trips graphs without isolated nodes") {
    // the format carries only edges, so isolated nodes cannot round-trip;
    // dense-ish instances keep them rare and we skip the few that occur.
    // The reader assigns indices by first appearance, so compare through
    // the name tables rather than by raw index.
    Rng rng(7013);
    int tested = 0;
    for (int rep = 0; rep < 60 && tested < 25; ++rep) {
        std::vector<int> sizes;
        const int L = 1 + rng.below_int(3);
        for (int t = 0; t < L; ++t) sizes.push_back(2 + rng.below_int(5));
        const HetGraph g = test::random_simple_graph(rng, L, sizes, 0.7);
        bool any_isolated = false;
        for (int t = 0; t < L; ++t)
            for (int i = 0; i < g.type_size(t); ++i) {
                double deg = g.homo_degree(t, i);
                for (int t2 = 0; t2 < L; ++t2)
                    if (t2 != t) deg += g.cross_degree(t, i, t2);
                if (deg == 0.0) any_isolated = true;
            }
        if (any_isolated) continue;

        const NodeNames names = default_names(g);
        std::ostringstream out;
        write_edge_list(out, g, names);
        std::istringstream in(out.str());
        const EdgeListGraph back = read_edge_list(in);

        // rebuild with the original indices recovered from the names
        REQUIRE(back.graph.num_types() == g.num_types());
        std::vector<int> type_of(back.graph.num_types());
        for (int tb = 0; tb < back.graph.num_types(); ++tb)
            type_of[tb] = std::stoi(back.names.type_names[tb]) - 1;
        std::vector<WeightedEdge> edges;
        auto orig = [&](int tb, int ib) {
            return NodeRef{type_of[tb], std::stoi(back.names.node_names[tb][ib])};
        };
        for (int tb = 0; tb < back.graph.num_types(); ++tb)
            for (int i = 0; i < back.graph.type_size(tb); ++i)
                for (const Neighbor& nb : back.graph.homo_neighbors(tb, i))
                    if (nb.index > i)
                        edges.push_back({orig(tb, i), orig(tb, nb.index), nb.weight});
        for (int t1 = 0; t1 < back.graph.num_types(); ++t1)
            for (int t2 = t1 + 1; t2 < back.graph.num_types(); ++t2)
                for (int i = 0; i < back.graph.type_size(t1); ++i)
                    for (const Neighbor& nb : back.graph.cross_neighbors(t1, i, t2))
                        edges.push_back({orig(t1, i), orig(t2, nb.index), nb.weight});
        const HetGraph rebuilt =
            HetGraph::build(g.num_types(), g.type_sizes(), edges, GraphMode::Simple);
        CHECK(rebuilt == g);
        ++tested;
    }
    CHECK(tested >= 10);
}

TEST_CASE("degree summary: empty and star graphs") {
    const HetGraph empty = HetGraph::build(2, {3, 2}, {});
    for (const BlockSummary& s : degree_summary(empty)) {
        CHECK(s.edge_total == 0.0);
        CHECK(s.max_degree == 0.0);
    }

    const HetGraph star = HetGraph::build(
        1, {5}, {e(0, 0, 0, 1), e(0, 0, 0, 2), e(0, 0, 0, 3), e(0, 0, 0, 4)});
    const auto rows = degree_summary(star);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].max_degree == 4.0);
    CHECK(rows[0].edge_total == 4.0);
    CHECK_FALSE(rows[0].density_ok); // max degree far above (log 5)^(1/3)
}
