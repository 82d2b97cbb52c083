#include <doctest.h>

#include <algorithm>
#include <vector>

#include "hetnet/metrics.hpp"
#include "support/test_support.hpp"

using namespace hetnet;

TEST_CASE("nmi: identical, independent, and the worked example") {
    const std::vector<int> a{0, 0, 1, 1, 2, 2};
    CHECK(nmi(a, a) == doctest::Approx(1.0).epsilon(1e-12));

    const std::vector<int> x{1, 1, 2, 2};
    const std::vector<int> y{1, 2, 1, 2};
    CHECK(nmi(x, y) == doctest::Approx(0.0));

    // joint (1,1):2/6 (1,2):1/6 (2,2):3/6, natural log
    const std::vector<int> u{1, 1, 1, 2, 2, 2};
    const std::vector<int> v{1, 1, 2, 2, 2, 2};
    CHECK(nmi(u, v) == doctest::Approx(0.47870397138568).epsilon(1e-12));
}

TEST_CASE("nmi: degenerate single-cluster conventions") {
    const std::vector<int> flat{3, 3, 3, 3};
    const std::vector<int> split{0, 0, 1, 1};
    CHECK(nmi(flat, flat) == 1.0);  // both single-cluster: identical
    CHECK(nmi(flat, split) == 0.0); // exactly one single-cluster
    CHECK(nmi(split, flat) == 0.0);
}

TEST_CASE("nmi: errors") {
    const std::vector<int> a{0, 1};
    const std::vector<int> b{0, 1, 2};
    CHECK_THROWS(nmi(a, b));
    CHECK_THROWS(nmi(std::vector<int>{}, std::vector<int>{}));
}

TEST_CASE("nmi: symmetry, relabeling invariance, and range on fuzzed labels") {
    Rng rng(6001);
    for (int rep = 0; rep < 300; ++rep) {
        const int n = 2 + rng.below_int(30);
        const int kx = 1 + rng.below_int(5);
        const int ky = 1 + rng.below_int(5);
        std::vector<int> x(n), y(n);
        for (int& v : x) v = rng.below_int(kx);
        for (int& v : y) v = rng.below_int(ky);

        const double forward = nmi(x, y);
        CHECK(forward == nmi(y, x)); // symmetric computation path

        // random bijective relabeling of x
        std::vector<int> perm(kx);
        for (int i = 0; i < kx; ++i) perm[i] = i;
        rng.shuffle(perm);
        std::vector<int> xr(n);
        for (int i = 0; i < n; ++i) xr[i] = perm[x[i]] + 100;
        CHECK(nmi(xr, y) == doctest::Approx(forward).epsilon(1e-12));

        CHECK(forward >= 0.0);
        CHECK(forward <= 1.0 + 1e-12);
    }
}

TEST_CASE("misclassification: identity, permutation, and a 3-of-30 case") {
    std::vector<int> truth(30);
    for (int i = 0; i < 30; ++i) truth[i] = i % 3;
    CHECK(misclassification(truth, truth).rate == 0.0);

    std::vector<int> permuted(30);
    for (int i = 0; i < 30; ++i) permuted[i] = (truth[i] + 1) % 3;
    CHECK(misclassification(permuted, truth).rate == 0.0);

    // flip exactly 3 positions; identity mapping stays optimal
    std::vector<int> pred = truth;
    pred[0] = (truth[0] + 1) % 3;
    pred[10] = (truth[10] + 1) % 3;
    pred[20] = (truth[20] + 1) % 3;
    CHECK(misclassification(pred, truth).rate == doctest::Approx(0.1));
}

TEST_CASE("misclassification: exact search beats or equals every bijection") {
    Rng rng(6002);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 10 + rng.below_int(20);
        const int k = 2 + rng.below_int(3);
        std::vector<int> pred(n), truth(n);
        for (int& v : pred) v = rng.below_int(k);
        for (int& v : truth) v = rng.below_int(k);
        const double rate = misclassification(pred, truth).rate;

        // brute force over all label bijections of the k pred labels
        std::vector<int> perm(k);
        for (int i = 0; i < k; ++i) perm[i] = i;
        std::sort(perm.begin(), perm.end());
        double best = 1.0;
        do {
            int wrong = 0;
            for (int i = 0; i < n; ++i)
                if (perm[pred[i]] != truth[i]) ++wrong;
            best = std::min(best, static_cast<double>(wrong) / n);
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(rate == doctest::Approx(best).epsilon(1e-12));
    }
}

TEST_CASE("misclassification: mismatched label counts and alignment bound") {
    Rng rng(6003);
    for (int rep = 0; rep < 80; ++rep) {
        const int n = 12 + rng.below_int(24);
        const int k = 2 + rng.below_int(4);
        std::vector<int> pred(n), truth(n);
        for (int& v : pred) v = rng.below_int(k);
        for (int& v : truth) v = rng.below_int(k);
        // with K_pred = K_truth, matching the largest cells keeps the rate
        // at or below 1 - 1/K
        const double rate = misclassification(pred, truth).rate;
        CHECK(rate <= 1.0 - 1.0 / k + 1e-12);
    }

    // more predicted labels than true labels: extras stay unmatched
    const std::vector<int> pred{0, 1, 2, 3, 0, 1};
    const std::vector<int> truth{0, 1, 0, 1, 0, 1};
    const Misclassification m = misclassification(pred, truth);
    CHECK(m.rate == doctest::Approx(2.0 / 6.0));
}

TEST_CASE("misclassification: greedy fallback for many labels") {
    // 14 labels per side forces the greedy path
    const int n = 14 * 5;
    std::vector<int> truth(n);
    for (int i = 0; i < n; ++i) truth[i] = i / 5;
    std::vector<int> pred(n);
    for (int i = 0; i < n; ++i) pred[i] = (truth[i] + 3) % 14;
    const Misclassification m = misclassification(pred, truth);
    CHECK_FALSE(m.exact);
    CHECK(m.rate == doctest::Approx(0.0)); // clean permutation: greedy finds it
}

TEST_CASE("score_partition: per-type and pooled scores") {
    Partition truth;
    truth.labels = {{0, 0, 1, 1}, {0, 1}};
    truth.num_communities = 2;
    Partition pred;
    pred.labels = {{1, 1, 0, 0}, {1, 1}}; // type 0 permuted-perfect, type 1 half right
    pred.num_communities = 2;

    const ScoreReport rep = score_partition(pred, truth);
    CHECK(rep.nmi_per_type[0] == doctest::Approx(1.0));
    CHECK(rep.nmi_per_type[1] == doctest::Approx(0.0));
    CHECK(rep.misclassification_per_type[0] == doctest::Approx(0.0));
    CHECK(rep.misclassification_per_type[1] == doctest::Approx(0.5));
    CHECK(rep.nmi_overall > 0.0);
    CHECK(rep.confusion.size() == 2);
}
