#include "hetnet/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hetnet {

namespace {

// Flattened view of a tiny graph for fast repeated evaluation: per block,
// edge lists over flat node ids plus per-node degrees.
struct FlatView {
    int total = 0;
    int num_types = 0;
    std::vector<int> type_of;  // flat id -> type
    std::vector<int> index_of; // flat id -> index within type

    struct HomoBlock {
        double m = 0;
        std::vector<std::pair<std::pair<int, int>, double>> edges; // flat ids i < j
        std::vector<std::pair<int, double>> loops;                 // flat id, stored weight
        std::vector<std::pair<int, double>> degrees;               // flat id, degree
    };
    struct CrossBlockView {
        double m = 0;
        std::vector<std::pair<std::pair<int, int>, double>> edges; // (flat t1 side, flat t2 side)
        std::vector<std::pair<int, double>> deg_fwd, deg_rev;
    };
    std::vector<HomoBlock> homo;
    std::vector<CrossBlockView> cross;

    explicit FlatView(const HetGraph& g) {
        num_types = g.num_types();
        std::vector<int> offset(g.num_types(), 0);
        for (int t = 1; t < g.num_types(); ++t) offset[t] = offset[t - 1] + g.type_size(t - 1);
        total = g.total_nodes();
        type_of.resize(total);
        index_of.resize(total);
        for (int t = 0; t < g.num_types(); ++t)
            for (int i = 0; i < g.type_size(t); ++i) {
                type_of[offset[t] + i] = t;
                index_of[offset[t] + i] = i;
            }
        homo.resize(g.num_types());
        for (int t = 0; t < g.num_types(); ++t) {
            homo[t].m = g.homo_edge_total(t);
            for (int i = 0; i < g.type_size(t); ++i) {
                if (g.homo_degree(t, i) != 0)
                    homo[t].degrees.push_back({offset[t] + i, g.homo_degree(t, i)});
                if (g.self_loop(t, i) != 0)
                    homo[t].loops.push_back({offset[t] + i, g.self_loop(t, i)});
                for (const Neighbor& nb : g.homo_neighbors(t, i))
                    if (nb.index > i)
                        homo[t].edges.push_back(
                            {{offset[t] + i, offset[t] + nb.index}, nb.weight});
            }
        }
        cross.resize(g.cross_pair_count());
        for (int pr = 0; pr < g.cross_pair_count(); ++pr) {
            const int t1 = g.cross_pair_low(pr), t2 = g.cross_pair_high(pr);
            cross[pr].m = g.cross_edge_total_by_pair(pr);
            for (int i = 0; i < g.type_size(t1); ++i) {
                if (g.cross_degree(t1, i, t2) != 0)
                    cross[pr].deg_fwd.push_back({offset[t1] + i, g.cross_degree(t1, i, t2)});
                for (const Neighbor& nb : g.cross_neighbors(t1, i, t2))
                    cross[pr].edges.push_back({{offset[t1] + i, offset[t2] + nb.index}, nb.weight});
            }
            for (int j = 0; j < g.type_size(t2); ++j)
                if (g.cross_degree(t2, j, t1) != 0)
                    cross[pr].deg_rev.push_back({offset[t2] + j, g.cross_degree(t2, j, t1)});
        }
    }

    // Q for flat labels; scratch must hold at least `total` doubles per array
    double evaluate(const std::vector<int>& labels, std::vector<double>& acc_a,
                    std::vector<double>& acc_b) const {
        double q = 0;
        for (const HomoBlock& b : homo) {
            if (b.m <= 0) continue;
            double internal = 0;
            for (const auto& [ij, w] : b.edges)
                if (labels[ij.first] == labels[ij.second]) internal += 2.0 * w;
            for (const auto& [i, s] : b.loops) internal += 2.0 * s;
            std::fill(acc_a.begin(), acc_a.end(), 0.0);
            for (const auto& [i, d] : b.degrees) acc_a[labels[i]] += d;
            double degsq = 0;
            for (const auto& [i, d] : b.degrees) {
                // each community's total counted once: subtract as visited
                if (acc_a[labels[i]] != 0) {
                    degsq += acc_a[labels[i]] * acc_a[labels[i]];
                    acc_a[labels[i]] = 0;
                }
            }
            q += (internal - degsq / (2.0 * b.m)) / (2.0 * b.m);
        }
        for (const CrossBlockView& b : cross) {
            if (b.m <= 0) continue;
            double internal = 0;
            for (const auto& [ij, w] : b.edges)
                if (labels[ij.first] == labels[ij.second]) internal += w;
            std::fill(acc_a.begin(), acc_a.end(), 0.0);
            std::fill(acc_b.begin(), acc_b.end(), 0.0);
            for (const auto& [i, d] : b.deg_fwd) acc_a[labels[i]] += d;
            for (const auto& [j, d] : b.deg_rev) acc_b[labels[j]] += d;
            double prod = 0;
            for (const auto& [i, d] : b.deg_fwd) {
                if (acc_a[labels[i]] != 0) {
                    prod += acc_a[labels[i]] * acc_b[labels[i]];
                    acc_a[labels[i]] = 0;
                }
            }
            // communities with rev degree but no fwd degree add zero product
            q += 2.0 * (internal - prod / b.m) / b.m;
        }
        const double L = static_cast<double>(num_types);
        return q / (L * L);
    }
};

} // namespace

double oracle_modularity(const HetGraph& g, const Partition& p) {
    if (!p.matches(g)) throw std::invalid_argument("oracle_modularity: partition mismatch");
    FlatView view(g);
    std::vector<int> labels(view.total);
    int pos = 0;
    for (int t = 0; t < g.num_types(); ++t)
        for (int i = 0; i < g.type_size(t); ++i) labels[pos++] = p.labels[t][i];
    std::vector<double> a(view.total, 0.0), b(view.total, 0.0);
    return view.evaluate(labels, a, b);
}

OracleResult max_modularity_exhaustive(const HetGraph& g, int max_nodes,
                                       std::size_t maximizer_cap) {
    const int n = g.total_nodes();
    if (n < 1) throw std::invalid_argument("oracle: empty graph");
    if (n > max_nodes)
        throw std::invalid_argument("oracle: graph exceeds the exhaustive size cap");

    FlatView view(g);
    std::vector<double> acc_a(n, 0.0), acc_b(n, 0.0);

    // enumerate set partitions as restricted growth strings
    std::vector<int> labels(n, 0), maxima(n, 0);
    OracleResult res;
    res.best_q = -std::numeric_limits<double>::infinity();

    auto record = [&](const std::vector<int>& rgs) {
        const double q = view.evaluate(rgs, acc_a, acc_b);
        ++res.partitions_checked;
        if (q > res.best_q + 1e-12) {
            res.best_q = q;
            res.maximizers.clear();
            res.maximizer_total = 0;
        }
        if (q >= res.best_q - 1e-12) {
            ++res.maximizer_total;
            if (res.maximizers.size() < maximizer_cap) {
                Partition p;
                p.labels.resize(g.num_types());
                int pos = 0;
                for (int t = 0; t < g.num_types(); ++t) {
                    p.labels[t].resize(g.type_size(t));
                    for (int i = 0; i < g.type_size(t); ++i) p.labels[t][i] = rgs[pos++];
                }
                p.num_communities = 1 + *std::max_element(rgs.begin(), rgs.end());
                res.maximizers.push_back(std::move(p));
            }
        }
    };

    record(labels);
    for (;;) {
        int i = n - 1;
        while (i > 0 && labels[i] == maxima[i - 1] + 1) --i;
        if (i == 0) break;
        ++labels[i];
        maxima[i] = std::max(maxima[i], labels[i]);
        for (int j = i + 1; j < n; ++j) {
            labels[j] = 0;
            maxima[j] = maxima[i];
        }
        record(labels);
    }
    return res;
}

namespace {

constexpr int kMaxEnumSide = 8;

// Count simple homogeneous graphs with the given residual degrees by
// assigning vertex 0's neighbors and recursing; `blocked` marks one
// forbidden pair.
std::uint64_t homo_count_rec(std::vector<int>& residual, int from,
                             const std::pair<int, int>& blocked) {
    const int n = static_cast<int>(residual.size());
    int v = -1;
    for (int i = from; i < n; ++i)
        if (residual[i] > 0) {
            v = i;
            break;
        }
    if (v < 0) return 1; // all degrees satisfied
    // choose residual[v] neighbors among vertices after v with residual > 0
    std::vector<int> pool;
    for (int j = v + 1; j < n; ++j) {
        if (residual[j] <= 0) continue;
        if ((blocked.first == v && blocked.second == j)) continue;
        pool.push_back(j);
    }
    const int need = residual[v];
    if (need > static_cast<int>(pool.size())) return 0;
    std::uint64_t total = 0;
    std::vector<int> chosen;
    // iterate subsets of `pool` of size `need` by backtracking
    auto rec = [&](auto&& self, int start, int left) -> void {
        if (left == 0) {
            residual[v] = 0;
            for (int j : chosen) --residual[j];
            total += homo_count_rec(residual, v + 1, blocked);
            for (int j : chosen) ++residual[j];
            residual[v] = need;
            return;
        }
        for (int p = start; p <= static_cast<int>(pool.size()) - left; ++p) {
            chosen.push_back(pool[p]);
            self(self, p + 1, left - 1);
            chosen.pop_back();
        }
    };
    rec(rec, 0, need);
    return total;
}

std::uint64_t bip_count_rec(std::vector<int>& row_res, std::vector<int>& col_res, int row,
                            const std::pair<int, int>& blocked) {
    const int n1 = static_cast<int>(row_res.size());
    const int n2 = static_cast<int>(col_res.size());
    if (row == n1) {
        for (int c : col_res)
            if (c != 0) return 0;
        return 1;
    }
    // feasibility: remaining row demand must not exceed remaining column capacity
    std::vector<int> pool;
    for (int j = 0; j < n2; ++j) {
        if (col_res[j] <= 0) continue;
        if (blocked.first == row && blocked.second == j) continue;
        pool.push_back(j);
    }
    const int need = row_res[row];
    if (need > static_cast<int>(pool.size())) return 0;
    std::uint64_t total = 0;
    std::vector<int> chosen;
    auto rec = [&](auto&& self, int start, int left) -> void {
        if (left == 0) {
            for (int j : chosen) --col_res[j];
            total += bip_count_rec(row_res, col_res, row + 1, blocked);
            for (int j : chosen) ++col_res[j];
            return;
        }
        for (int p = start; p <= static_cast<int>(pool.size()) - left; ++p) {
            chosen.push_back(pool[p]);
            self(self, p + 1, left - 1);
            chosen.pop_back();
        }
    };
    rec(rec, 0, need);
    return total;
}

void check_homo_args(const std::vector<int>& degrees) {
    const int n = static_cast<int>(degrees.size());
    if (n < 1 || n > kMaxEnumSide)
        throw std::invalid_argument("oracle: homo enumeration limited to 1..8 nodes");
    int sum = 0;
    for (int d : degrees) {
        if (d < 0 || d >= n) throw std::invalid_argument("oracle: degree out of range");
        sum += d;
    }
    if (sum % 2 != 0) throw std::invalid_argument("oracle: odd degree sum");
}

void check_bip_args(const std::vector<int>& row_deg, const std::vector<int>& col_deg) {
    const int n1 = static_cast<int>(row_deg.size());
    const int n2 = static_cast<int>(col_deg.size());
    if (n1 < 1 || n1 > kMaxEnumSide || n2 < 1 || n2 > kMaxEnumSide)
        throw std::invalid_argument("oracle: bipartite enumeration limited to 1..8 per side");
    int rs = 0, cs = 0;
    for (int d : row_deg) {
        if (d < 0 || d > n2) throw std::invalid_argument("oracle: row degree out of range");
        rs += d;
    }
    for (int d : col_deg) {
        if (d < 0 || d > n1) throw std::invalid_argument("oracle: column degree out of range");
        cs += d;
    }
    if (rs != cs) throw std::invalid_argument("oracle: row and column degree sums differ");
}

} // namespace

std::uint64_t count_homo_graphs(const std::vector<int>& degrees) {
    check_homo_args(degrees);
    std::vector<int> residual = degrees;
    return homo_count_rec(residual, 0, {-1, -1});
}

std::uint64_t count_homo_graphs_with_edge(const std::vector<int>& degrees, int i, int j) {
    check_homo_args(degrees);
    const int n = static_cast<int>(degrees.size());
    if (i < 0 || j < 0 || i >= n || j >= n || i == j)
        throw std::invalid_argument("oracle: bad vertex pair");
    if (degrees[i] == 0 || degrees[j] == 0) return 0;
    // graphs containing {i, j} <-> graphs on reduced degrees avoiding {i, j}
    std::vector<int> residual = degrees;
    --residual[i];
    --residual[j];
    return homo_count_rec(residual, 0, {std::min(i, j), std::max(i, j)});
}

std::uint64_t count_bipartite_graphs(const std::vector<int>& row_deg,
                                     const std::vector<int>& col_deg) {
    check_bip_args(row_deg, col_deg);
    std::vector<int> r = row_deg, c = col_deg;
    return bip_count_rec(r, c, 0, {-1, -1});
}

std::uint64_t count_bipartite_graphs_with_edge(const std::vector<int>& row_deg,
                                               const std::vector<int>& col_deg, int i, int j) {
    check_bip_args(row_deg, col_deg);
    if (i < 0 || i >= static_cast<int>(row_deg.size()) || j < 0 ||
        j >= static_cast<int>(col_deg.size()))
        throw std::invalid_argument("oracle: bad vertex pair");
    if (row_deg[i] == 0 || col_deg[j] == 0) return 0;
    std::vector<int> r = row_deg, c = col_deg;
    --r[i];
    --c[j];
    return bip_count_rec(r, c, 0, {i, j});
}

double exact_null_expectation_homo(const std::vector<int>& degrees, int i, int j) {
    const std::uint64_t total = count_homo_graphs(degrees);
    if (total == 0) throw std::invalid_argument("oracle: infeasible degree sequence");
    return static_cast<double>(count_homo_graphs_with_edge(degrees, i, j)) /
           static_cast<double>(total);
}

double exact_null_expectation_cross(const std::vector<int>& row_deg,
                                    const std::vector<int>& col_deg, int i, int j) {
    const std::uint64_t total = count_bipartite_graphs(row_deg, col_deg);
    if (total == 0) throw std::invalid_argument("oracle: infeasible degree sequence");
    return static_cast<double>(count_bipartite_graphs_with_edge(row_deg, col_deg, i, j)) /
           static_cast<double>(total);
}

} // namespace hetnet
