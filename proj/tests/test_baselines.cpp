#include <doctest.h>

#include "hetnet/baselines.hpp"
#include "hetnet/metrics.hpp"
#include "hetnet/oracle.hpp"
#include "hetnet/sbm.hpp"
#include "support/test_support.hpp"

using namespace hetnet;

namespace {

WeightedEdge e(int t1, int i1, int t2, int i2, double w = 1.0) {
    return {NodeRef{t1, i1}, NodeRef{t2, i2}, w};
}

} // namespace

TEST_CASE("flatten: the identity on single-type graphs") {
    Rng rng(9001);
    const HetGraph g = test::random_simple_graph(rng, 1, {8}, 0.5);
    CHECK(flatten(g) == g);
}

TEST_CASE("flatten: objective agreement on fixed partitions") {
    Rng rng(9002);
    for (int rep = 0; rep < 30; ++rep) {
        const HetGraph g = test::random_simple_graph(rng, 1, {10}, 0.4);
        const Partition p = test::random_partition(rng, g, 4);
        CHECK(modularity(flatten(g), p) == doctest::Approx(modularity(g, p)).epsilon(1e-12));
    }
}

TEST_CASE("method1: two disconnected flattened components") {
    // one typed clique and one separate cross-linked pair
    const HetGraph g = HetGraph::build(
        2, {3, 2}, {e(0, 0, 0, 1), e(0, 0, 1, 0), e(0, 1, 1, 0), e(0, 2, 1, 1)});
    LouvainConfig cfg;
    cfg.restarts = 10;
    cfg.seed = 2;
    const BaselineResult res = method1(g, cfg);
    CHECK(res.k == 2);
    // components: {A0, A1, B0} and {A2, B1}
    CHECK(res.global.labels[0][0] == res.global.labels[0][1]);
    CHECK(res.global.labels[0][0] == res.global.labels[1][0]);
    CHECK(res.global.labels[0][2] == res.global.labels[1][1]);
    CHECK(res.global.labels[0][0] != res.global.labels[0][2]);

    CHECK_THROWS(method1(HetGraph::build(1, {0}, {}), cfg));
}

TEST_CASE("method2: per-type cliques, empty second type") {
    std::vector<WeightedEdge> edges;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            edges.push_back(e(0, i, 0, j));
            edges.push_back(e(0, 4 + i, 0, 4 + j));
        }
    const HetGraph g = HetGraph::build(2, {8, 3}, edges);
    LouvainConfig cfg;
    cfg.restarts = 10;
    cfg.seed = 3;
    const BaselineResult res = method2(g, cfg);
    REQUIRE(res.per_type_labels.size() == 2);
    CHECK_FALSE(res.zero_edge_type[0]);
    CHECK(res.zero_edge_type[1]);
    CHECK(res.k_per_type[0] == 2); // the two 4-cliques
    CHECK(res.k_per_type[1] == 3); // singletons for the empty block
    CHECK(res.q_per_type[1] == 0.0);

    std::vector<int> truth{0, 0, 0, 0, 1, 1, 1, 1};
    CHECK(nmi(res.per_type_labels[0], truth) == doctest::Approx(1.0));
}

TEST_CASE("method2: graph with no homo edges at all") {
    const HetGraph g = HetGraph::build(2, {2, 2}, {e(0, 0, 1, 0), e(0, 1, 1, 1)});
    LouvainConfig cfg;
    cfg.restarts = 4;
    cfg.seed = 1;
    const BaselineResult res = method2(g, cfg);
    CHECK(res.zero_edge_type[0]);
    CHECK(res.zero_edge_type[1]);
    CHECK(res.per_type_labels[0] == std::vector<int>{0, 1});
    CHECK(res.per_type_labels[1] == std::vector<int>{0, 1});
}

TEST_CASE("method1 on an L=1 graph matches the heterogeneous method") {
    Rng rng(9003);
    const HetGraph g = test::random_simple_graph(rng, 1, {12}, 0.35);
    LouvainConfig cfg;
    cfg.restarts = 12;
    cfg.seed = 77;
    const BaselineResult base = method1(g, cfg);
    const LouvainResult het = run_louvain(g, cfg);
    // same graph, same objective, same engine, same seeds
    CHECK(base.q == doctest::Approx(het.modularity).epsilon(1e-12));
    CHECK(base.global.labels[0] == het.partition.labels[0]);
}

TEST_CASE("setting 3: method 2 recovers nothing, the proposed method does") {
    const SbmSpec spec = setting_spec(3, 0.20, 40, 25);
    double m2_nmi = 0, prop_nmi = 0;
    const int reps = 5;
    for (int rep = 0; rep < reps; ++rep) {
        const SbmSample s = sample_sbm(spec, 4000 + rep);
        LouvainConfig cfg;
        cfg.restarts = 20;
        cfg.seed = rep;
        const BaselineResult m2 = method2(s.graph, cfg);
        const LouvainResult prop = run_louvain(s.graph, cfg);
        for (int t = 0; t < 2; ++t) {
            m2_nmi += m2.zero_edge_type[t]
                          ? 0.0
                          : nmi(m2.per_type_labels[t], s.planted.labels[t]);
            prop_nmi += nmi(prop.partition.labels[t], s.planted.labels[t]);
        }
    }
    m2_nmi /= 2 * reps;
    prop_nmi /= 2 * reps;
    CHECK(m2_nmi < 0.1);       // no structure in the homo blocks
    CHECK(prop_nmi > m2_nmi);  // cross-block structure is recoverable
}
