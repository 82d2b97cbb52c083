#include "hetnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace hetnet {

namespace {

// relabel arbitrary ints to 0..K-1 by first appearance
std::vector<int> densify(std::span<const int> labels, int& k_out) {
    std::map<int, int> remap;
    std::vector<int> out;
    out.reserve(labels.size());
    for (int v : labels) {
        auto [it, inserted] = remap.emplace(v, static_cast<int>(remap.size()));
        out.push_back(it->second);
    }
    k_out = static_cast<int>(remap.size());
    return out;
}

std::vector<std::vector<int>> confusion_counts(std::span<const int> a, std::span<const int> b,
                                               int& ka, int& kb) {
    const auto da = densify(a, ka);
    const auto db = densify(b, kb);
    std::vector<std::vector<int>> counts(ka, std::vector<int>(kb, 0));
    for (std::size_t i = 0; i < da.size(); ++i) ++counts[da[i]][db[i]];
    return counts;
}

} // namespace

double nmi(std::span<const int> x, std::span<const int> y) {
    if (x.size() != y.size()) throw std::invalid_argument("nmi: length mismatch");
    if (x.empty()) throw std::invalid_argument("nmi: empty input");
    int kx = 0, ky = 0;
    const auto joint = confusion_counts(x, y, kx, ky);
    const double n = static_cast<double>(x.size());

    std::vector<double> px(kx, 0.0), py(ky, 0.0);
    for (int a = 0; a < kx; ++a)
        for (int b = 0; b < ky; ++b) {
            px[a] += joint[a][b] / n;
            py[b] += joint[a][b] / n;
        }
    // every sum runs over sorted terms: the term multisets are invariant
    // under argument swap and label bijections, so the value is exactly
    // symmetric and exactly relabeling-invariant
    auto sorted_entropy = [](const std::vector<double>& dist) {
        std::vector<double> terms;
        for (double p : dist)
            if (p > 0) terms.push_back(-p * std::log(p));
        std::sort(terms.begin(), terms.end());
        double h = 0;
        for (double t : terms) h += t;
        return h;
    };
    const double hx = sorted_entropy(px);
    const double hy = sorted_entropy(py);
    std::vector<double> terms;
    for (int a = 0; a < kx; ++a)
        for (int b = 0; b < ky; ++b) {
            if (joint[a][b] == 0) continue;
            const double p = joint[a][b] / n;
            terms.push_back(p * std::log(p / (px[a] * py[b])));
        }
    std::sort(terms.begin(), terms.end());
    double mi = 0;
    for (double t : terms) mi += t;
    if (hx + hy == 0.0) return 1.0; // both single-cluster: identical partitions
    const double v = 2.0 * mi / (hx + hy);
    return std::clamp(v, 0.0, 1.0);
}

namespace {

// exact max-weight injective mapping of the smaller label set into the
// larger one, by subset DP over the larger side (feasible for <= 12 labels)
int best_assignment_exact(const std::vector<std::vector<int>>& counts, std::vector<int>* mapping) {
    const int rows = static_cast<int>(counts.size());
    const int cols = static_cast<int>(counts[0].size());
    // dp over rows with a bitmask of used columns
    const int full = 1 << cols;
    std::vector<std::vector<int>> dp(rows + 1, std::vector<int>(full, -1));
    dp[0][0] = 0;
    for (int r = 0; r < rows; ++r)
        for (int mask = 0; mask < full; ++mask) {
            if (dp[r][mask] < 0) continue;
            // leave row r unmatched (only useful when rows > cols)
            dp[r + 1][mask] = std::max(dp[r + 1][mask], dp[r][mask]);
            for (int c = 0; c < cols; ++c) {
                if (mask & (1 << c)) continue;
                const int nm = mask | (1 << c);
                dp[r + 1][nm] = std::max(dp[r + 1][nm], dp[r][mask] + counts[r][c]);
            }
        }
    int best = 0, best_mask = 0;
    for (int mask = 0; mask < full; ++mask)
        if (dp[rows][mask] > best) {
            best = dp[rows][mask];
            best_mask = mask;
        }
    if (mapping) {
        mapping->assign(rows, -1);
        // walk the DP back to recover the chosen column per row
        int mask = best_mask, value = best;
        for (int r = rows; r > 0; --r) {
            if (dp[r - 1][mask] == value) continue; // row r-1 unmatched
            bool found = false;
            for (int c = 0; c < cols && !found; ++c) {
                if (!(mask & (1 << c))) continue;
                const int prev = mask ^ (1 << c);
                if (dp[r - 1][prev] >= 0 && dp[r - 1][prev] + counts[r - 1][c] == value) {
                    (*mapping)[r - 1] = c;
                    mask = prev;
                    value -= counts[r - 1][c];
                    found = true;
                }
            }
        }
    }
    return best;
}

int best_assignment_greedy(const std::vector<std::vector<int>>& counts, std::vector<int>* mapping) {
    const int rows = static_cast<int>(counts.size());
    const int cols = static_cast<int>(counts[0].size());
    std::vector<std::tuple<int, int, int>> cells; // (-count, row, col) for stable ordering
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) cells.emplace_back(-counts[r][c], r, c);
    std::sort(cells.begin(), cells.end());
    std::vector<char> row_used(rows, 0), col_used(cols, 0);
    if (mapping) mapping->assign(rows, -1);
    int total = 0;
    for (const auto& [neg, r, c] : cells) {
        if (row_used[r] || col_used[c]) continue;
        row_used[r] = col_used[c] = 1;
        total += -neg;
        if (mapping) (*mapping)[r] = c;
    }
    return total;
}

} // namespace

Misclassification misclassification(std::span<const int> pred, std::span<const int> truth) {
    if (pred.size() != truth.size())
        throw std::invalid_argument("misclassification: length mismatch");
    if (pred.empty()) throw std::invalid_argument("misclassification: empty input");
    int kp = 0, kt = 0;
    const auto counts = confusion_counts(pred, truth, kp, kt);

    Misclassification out;
    out.exact = kp <= 12 && kt <= 12;
    const int matched = out.exact ? best_assignment_exact(counts, &out.mapping)
                                  : best_assignment_greedy(counts, &out.mapping);
    out.rate = 1.0 - static_cast<double>(matched) / static_cast<double>(pred.size());
    return out;
}

ScoreReport score_partition(const Partition& pred, const Partition& truth) {
    if (pred.labels.size() != truth.labels.size())
        throw std::invalid_argument("score_partition: type count mismatch");
    ScoreReport rep;
    const auto pf = pred.flat();
    const auto tf = truth.flat();
    rep.nmi_overall = nmi(pf, tf);
    for (std::size_t t = 0; t < pred.labels.size(); ++t) {
        rep.nmi_per_type.push_back(nmi(pred.labels[t], truth.labels[t]));
        rep.misclassification_per_type.push_back(
            misclassification(pred.labels[t], truth.labels[t]).rate);
    }
    int kp = 0, kt = 0;
    rep.confusion = confusion_counts(pf, tf, kp, kt);
    return rep;
}

} // namespace hetnet
