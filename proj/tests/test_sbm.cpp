#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hetnet/sbm.hpp"
#include "support/test_support.hpp"

using namespace hetnet;

namespace {

SbmSpec tiny_spec(double p_homo, double p_cross) {
    SbmSpec spec;
    spec.num_types = 2;
    spec.num_communities = 2;
    spec.community_sizes = {{3, 3}, {2, 2}};
    spec.homo_probs = {std::vector<double>(4, p_homo), std::vector<double>(4, p_homo)};
    spec.cross_probs[{0, 1}] = std::vector<double>(4, p_cross);
    return spec;
}

bool same_homo_block(const HetGraph& a, const HetGraph& b, int t) {
    if (a.type_size(t) != b.type_size(t)) return false;
    for (int i = 0; i < a.type_size(t); ++i) {
        const auto na = a.homo_neighbors(t, i);
        const auto nb = b.homo_neighbors(t, i);
        if (!std::equal(na.begin(), na.end(), nb.begin(), nb.end())) return false;
    }
    return true;
}

bool same_cross_block(const HetGraph& a, const HetGraph& b, int t1, int t2) {
    for (int i = 0; i < a.type_size(t1); ++i) {
        const auto na = a.cross_neighbors(t1, i, t2);
        const auto nb = b.cross_neighbors(t1, i, t2);
        if (!std::equal(na.begin(), na.end(), nb.begin(), nb.end())) return false;
    }
    return true;
}

} // namespace

TEST_CASE("sample: degenerate probabilities") {
    const SbmSample empty = sample_sbm(tiny_spec(0.0, 0.0), 1);
    CHECK(empty.graph.total_edge_weight() == 0.0);

    SbmSpec full;
    full.num_types = 1;
    full.num_communities = 1;
    full.community_sizes = {{4}};
    full.homo_probs = {{1.0}};
    const SbmSample complete = sample_sbm(full, 1);
    CHECK(complete.graph.homo_edge_total(0) == 6.0); // K_4
}

TEST_CASE("sample: planted labels follow the exact sizes") {
    const SbmSpec spec = setting_spec(1, 0.05);
    const Partition p = planted_partition(spec);
    CHECK(p.labels[0].size() == 600);
    CHECK(p.labels[1].size() == 300);
    CHECK(p.labels[0][0] == 0);
    CHECK(p.labels[0][199] == 0);
    CHECK(p.labels[0][200] == 1);
    CHECK(p.labels[0][599] == 2);
    CHECK(p.labels[1][100] == 1);
}

TEST_CASE("sample: setting 1 edge counts sit near their binomial means") {
    // E[m1] = 3 C(200,2) 0.15 + 3 * 200*200 * 0.1 = 8955 + 12000 = 20955
    const double mean_m1 = 20955.0;
    const double var_m1 = 3 * 19900 * 0.15 * 0.85 + 3 * 40000 * 0.1 * 0.9;
    // E[m12] = 600*300*(0.05 + 0.05/3) = 12000 at r3 = 0.05
    const double mean_m12 = 12000.0;
    const double var_m12 = 180000.0 * ((2.0 / 3) * 0.05 * 0.95 + (1.0 / 3) * 0.1 * 0.9);
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        const SbmSample s = sample_sbm(setting_spec(1, 0.05), seed);
        CHECK(std::abs(s.graph.homo_edge_total(0) - mean_m1) <= 4.0 * std::sqrt(var_m1));
        CHECK(std::abs(s.graph.cross_edge_total(0, 1) - mean_m12) <=
              3.0 * std::sqrt(var_m12));
        // the same totals surface through the per-block summary table
        const auto rows = degree_summary(s.graph);
        REQUIRE(rows.size() == 3);
        CHECK(rows[2].block == "cross[1,2]");
        CHECK(rows[2].edge_total == s.graph.cross_edge_total(0, 1));
        CHECK_FALSE(rows[2].density_ok); // far denser than the asymptotic regime
    }
}

TEST_CASE("sample: identical seeds reproduce the graph") {
    const SbmSpec spec = tiny_spec(0.4, 0.3);
    const SbmSample a = sample_sbm(spec, 77);
    const SbmSample b = sample_sbm(spec, 77);
    CHECK(a.graph == b.graph);
    const SbmSample c = sample_sbm(spec, 78);
    CHECK(a.graph != c.graph);
}

TEST_CASE("sample: adding a type leaves existing blocks' draws untouched") {
    SbmSpec two = tiny_spec(0.4, 0.3);
    SbmSpec three = two;
    three.num_types = 3;
    three.community_sizes.push_back({2, 3});
    three.homo_probs.push_back(std::vector<double>(4, 0.5));
    three.cross_probs[{0, 2}] = std::vector<double>(4, 0.25);
    three.cross_probs[{1, 2}] = std::vector<double>(4, 0.25);

    const SbmSample a = sample_sbm(two, 2024);
    const SbmSample b = sample_sbm(three, 2024);
    CHECK(same_homo_block(a.graph, b.graph, 0));
    CHECK(same_homo_block(a.graph, b.graph, 1));
    CHECK(same_cross_block(a.graph, b.graph, 0, 1));
}

TEST_CASE("setting_spec: parameter matrices") {
    const SbmSpec s1 = setting_spec(1, 0.05);
    CHECK(s1.homo_p(0, 0, 0) == doctest::Approx(0.15));
    CHECK(s1.homo_p(0, 0, 1) == doctest::Approx(0.10));
    CHECK(s1.homo_p(1, 2, 2) == doctest::Approx(0.30));
    CHECK(s1.cross_p(0, 1, 1, 1) == doctest::Approx(0.10));

    const SbmSpec s2 = setting_spec(2, 0.10);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) CHECK(s2.homo_p(1, a, b) == doctest::Approx(0.20));

    const SbmSpec s3 = setting_spec(3, 0.20);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            CHECK(s3.homo_p(0, a, b) == doctest::Approx(0.10));
            CHECK(s3.homo_p(1, a, b) == doctest::Approx(0.20));
            CHECK(s3.cross_p(0, 1, a, b) == doctest::Approx(a == b ? 0.25 : 0.05));
        }

    CHECK_THROWS(setting_spec(4, 0.10));   // unknown setting
    CHECK_THROWS(setting_spec(1, 0.20));   // outside the sweep range
    CHECK_THROWS(setting_spec(3, 0.25));
    CHECK_NOTHROW(setting_spec(3, 0.20));
}

TEST_CASE("check_consistency: L=1 separated blocks satisfy the conditions") {
    SbmSpec spec;
    spec.num_types = 1;
    spec.num_communities = 2;
    spec.community_sizes = {{50, 50}};
    spec.homo_probs = {{0.15, 0.10, 0.10, 0.30}};
    const ConsistencyReport rep = check_consistency(spec);
    CHECK(rep.satisfied); // P11 P22 = 0.045 > 0.01 = P12^2
    CHECK(rep.condition_sum[0] > 0);
    CHECK(rep.condition_sum[3] > 0);
    CHECK(rep.condition_sum[1] < 0);
}

TEST_CASE("check_consistency: setting 3 carries structure only in the cross block") {
    const ConsistencyReport rep = check_consistency(setting_spec(3, 0.10));
    CHECK(rep.satisfied);
    // both homo blocks are flat: their W matrices vanish
    for (const BlockCondition& bc : rep.blocks) {
        if (bc.block.rfind("homo", 0) != 0) continue;
        for (double w : bc.W) CHECK(std::abs(w) <= 1e-12);
    }
}

TEST_CASE("check_consistency: constant probabilities sit on the boundary") {
    SbmSpec spec;
    spec.num_types = 1;
    spec.num_communities = 2;
    spec.community_sizes = {{10, 10}};
    spec.homo_probs = {std::vector<double>(4, 0.2)};
    const ConsistencyReport rep = check_consistency(spec);
    CHECK_FALSE(rep.satisfied);
}

TEST_CASE("check_consistency: T sums to one, W sums to zero, W rows vanish") {
    const ConsistencyReport rep = check_consistency(setting_spec(1, 0.10));
    const int k = rep.num_communities;
    for (const BlockCondition& bc : rep.blocks) {
        REQUIRE_FALSE(bc.skipped);
        double t_sum = 0, w_sum = 0;
        for (double v : bc.T) t_sum += v;
        for (double v : bc.W) w_sum += v;
        CHECK(t_sum == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(w_sum) <= 1e-12);
        for (int a = 0; a < k; ++a) {
            double row = 0;
            for (int b = 0; b < k; ++b) row += bc.W[a * k + b];
            CHECK(std::abs(row) <= 1e-12);
        }
    }
}

TEST_CASE("check_consistency: verdict is invariant to scaling the probabilities") {
    for (double rho : {1.0, 0.5, 0.1}) {
        SbmSpec spec = setting_spec(1, 0.10);
        for (auto& P : spec.homo_probs)
            for (double& v : P) v *= rho;
        for (auto& [key, P] : spec.cross_probs)
            for (double& v : P) v *= rho;
        CHECK(check_consistency(spec).satisfied);

        SbmSpec flat;
        flat.num_types = 1;
        flat.num_communities = 2;
        flat.community_sizes = {{10, 10}};
        flat.homo_probs = {std::vector<double>(4, 0.2 * rho)};
        CHECK_FALSE(check_consistency(flat).satisfied);
    }
}

TEST_CASE("check_consistency: skipped zero-mass block is reported") {
    SbmSpec spec = tiny_spec(0.0, 0.3); // homo blocks carry no mass
    const ConsistencyReport rep = check_consistency(spec);
    CHECK(rep.skipped_blocks.size() == 2);
    CHECK(rep.blocks[0].skipped);
    CHECK(rep.blocks[1].skipped);
    CHECK_FALSE(rep.blocks[2].skipped);
}

TEST_CASE("check_consistency: L=1 K=2 grid matches the closed form") {
    // coarse version of the acceptance sweep
    int cells = 0;
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b)
            for (int c = 0; c < 8; ++c) {
                const double p11 = 0.07 + 0.11 * a;
                const double p22 = 0.07 + 0.11 * b;
                const double p12 = 0.07 + 0.11 * c;
                SbmSpec spec;
                spec.num_types = 1;
                spec.num_communities = 2;
                spec.community_sizes = {{30, 30}};
                spec.homo_probs = {{p11, p12, p12, p22}};
                const bool closed_form = p11 * p22 > p12 * p12;
                CHECK(check_consistency(spec).satisfied == closed_form);
                ++cells;
            }
    CHECK(cells == 512);
}

TEST_CASE("spec config: round trip and validation") {
    SbmSpec spec = setting_spec(2, 0.075);
    spec.rho = 0.5;
    spec.seed = 99;
    std::ostringstream out;
    write_spec_config(out, spec);
    std::istringstream in(out.str());
    const SbmSpec back = read_spec_config(in);
    CHECK(back.num_types == spec.num_types);
    CHECK(back.num_communities == spec.num_communities);
    CHECK(back.community_sizes == spec.community_sizes);
    CHECK(back.homo_probs == spec.homo_probs);
    CHECK(back.cross_probs == spec.cross_probs);
    CHECK(back.rho == spec.rho);
    CHECK(back.seed == spec.seed);

    std::istringstream bad_prob("L = 1\nK = 1\nsizes_1 = 4\nP_1 = 1.2\n");
    CHECK_THROWS(read_spec_config(bad_prob));
    std::istringstream missing("L = 1\nK = 1\nsizes_1 = 4\n");
    CHECK_THROWS(read_spec_config(missing));
    std::istringstream bad_num("L = 1\nK = 1\nsizes_1 = 4\nP_1 = zero\n");
    CHECK_THROWS(read_spec_config(bad_num));
    std::istringstream asym("L = 1\nK = 2\nsizes_1 = 2 2\nP_1 = 0.5 0.1 0.2 0.5\n");
    CHECK_THROWS(read_spec_config(asym));
}

TEST_CASE("sample: per-block totals within five sigma") {
    SbmSpec spec = tiny_spec(0.4, 0.3);
    spec.community_sizes = {{40, 40}, {30, 30}};
    // every pair has the same probability here, so the block totals are
    // plain binomials
    const double n1 = 80, n2 = 60;
    const double pairs1 = n1 * (n1 - 1) / 2, pairs2 = n2 * (n2 - 1) / 2;
    const double cross = n1 * n2;
    for (std::uint64_t seed : {5u, 6u, 7u, 8u}) {
        const SbmSample s = sample_sbm(spec, seed);
        CHECK(std::abs(s.graph.homo_edge_total(0) - pairs1 * 0.4) <=
              5.0 * std::sqrt(pairs1 * 0.4 * 0.6));
        CHECK(std::abs(s.graph.homo_edge_total(1) - pairs2 * 0.4) <=
              5.0 * std::sqrt(pairs2 * 0.4 * 0.6));
        CHECK(std::abs(s.graph.cross_edge_total(0, 1) - cross * 0.3) <=
              5.0 * std::sqrt(cross * 0.3 * 0.7));
    }
}
