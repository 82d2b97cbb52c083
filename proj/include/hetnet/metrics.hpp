#pragma once

#include <span>
#include <vector>

#include "hetnet/modularity.hpp"

namespace hetnet {

// Normalized mutual information 2 I(X,Y) / (H(X) + H(Y)) from the empirical
// joint distribution, natural log. 1 for identical partitions, 0 in
// expectation for independent ones. Degenerate cases: 1 when both sides are
// single-cluster (they are then identical partitions), 0 when exactly one
// side is (the formula already gives 0 there).
double nmi(std::span<const int> x, std::span<const int> y);

struct Misclassification {
    double rate = 0.0;
    bool exact = true;            // false: greedy matching was used (K > 12)
    std::vector<int> mapping;     // dense pred label -> dense truth label, -1 unmatched
};

// Fraction of positions left unmatched under the best injective label
// mapping between the two sides (exact assignment search for up to 12
// labels per side, greedy beyond that).
Misclassification misclassification(std::span<const int> pred, std::span<const int> truth);

struct ScoreReport {
    double nmi_overall = 0.0;
    std::vector<double> nmi_per_type;
    std::vector<double> misclassification_per_type;
    std::vector<std::vector<int>> confusion; // [pred dense][truth dense], pooled over types
};

ScoreReport score_partition(const Partition& pred, const Partition& truth);

} // namespace hetnet
