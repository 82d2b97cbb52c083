#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

namespace hetnet {

// Address of a node: type in [0, num_types), index within its type.
struct NodeRef {
    int type = 0;
    int index = 0;
    friend bool operator==(const NodeRef&, const NodeRef&) = default;
    friend auto operator<=>(const NodeRef&, const NodeRef&) = default;
};

struct WeightedEdge {
    NodeRef a;
    NodeRef b;
    double weight = 1.0;
};

struct Neighbor {
    int index;
    double weight;
    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

enum class GraphMode {
    Simple,  // unit weights, no self-loops, no duplicate edges
    Weighted // arbitrary nonnegative weights, duplicates accumulate, self-loops allowed
};

// Immutable multi-type sparse graph. Same-type edges live in per-type
// homogeneous blocks; cross-type edges live in one bi-adjacency block per
// unordered type pair, with row and column views built from the same edge
// set so the transpose identity holds structurally.
//
// Self-loops appear only in aggregated graphs. A loop of stored weight s at
// node i stands for a diagonal entry of 2s: it adds 2s to the node's block
// degree and 2s to the block's entrywise total, which keeps the rank-1 sum
// identity (and hence Q = 0 for the one-community partition) intact on
// coarse graphs.
class HetGraph {
  public:
    HetGraph() = default;

    static HetGraph build(int num_types, std::vector<int> type_sizes,
                          const std::vector<WeightedEdge>& edges,
                          GraphMode mode = GraphMode::Simple);

    int num_types() const { return num_types_; }
    int type_size(int t) const { return type_sizes_[t]; }
    const std::vector<int>& type_sizes() const { return type_sizes_; }
    int total_nodes() const { return total_nodes_; }
    int cross_pair_count() const { return static_cast<int>(cross_.size()); }

    // --- homogeneous block t ---
    std::span<const Neighbor> homo_neighbors(int t, int i) const {
        return homo_adj_[t][i];
    }
    double self_loop(int t, int i) const { return self_loops_[t][i]; }
    double homo_degree(int t, int i) const { return homo_degrees_[t][i]; }
    const std::vector<double>& homo_degrees(int t) const { return homo_degrees_[t]; }
    // m^[t]: total edge weight of the block (a loop of stored weight s counts s)
    double homo_edge_total(int t) const { return homo_totals_[t]; }

    // --- cross block {t1, t2}, t1 != t2 ---
    // index of the unordered pair in [0, cross_pair_count())
    int cross_pair_index(int t1, int t2) const { return cross_index_[t1][t2]; }
    std::span<const Neighbor> cross_neighbors(int t_from, int i, int t_to) const;
    double cross_degree(int t_from, int i, int t_to) const;
    const std::vector<double>& cross_degrees(int t_from, int t_to) const;
    double cross_edge_total(int t1, int t2) const { return cross_[cross_index_[t1][t2]].total; }
    double cross_edge_total_by_pair(int pair) const { return cross_[pair].total; }
    int cross_pair_low(int pair) const { return cross_[pair].t1; }
    int cross_pair_high(int pair) const { return cross_[pair].t2; }

    // Matrix entry: off-diagonal stored weight, 2 * self_loop on the diagonal.
    // Symmetric in (u, v) by construction.
    double weight(NodeRef u, NodeRef v) const;

    double total_edge_weight() const; // across all blocks

    friend bool operator==(const HetGraph&, const HetGraph&) = default;

  private:
    int num_types_ = 0;
    int total_nodes_ = 0;
    std::vector<int> type_sizes_;

    // homo_adj_[t][i]: sorted (index, weight), off-diagonal, both directions
    std::vector<std::vector<std::vector<Neighbor>>> homo_adj_;
    std::vector<std::vector<double>> self_loops_;
    std::vector<std::vector<double>> homo_degrees_;
    std::vector<double> homo_totals_;

    struct CrossBlock {
        int t1, t2; // t1 < t2
        std::vector<std::vector<Neighbor>> fwd; // rows: t1 -> t2
        std::vector<std::vector<Neighbor>> rev; // rows: t2 -> t1
        std::vector<double> deg_fwd;            // d^[t1 t2]
        std::vector<double> deg_rev;            // d^[t2 t1]
        double total = 0;                       // m^[t1 t2]
        friend bool operator==(const CrossBlock&, const CrossBlock&) = default;
    };
    std::vector<CrossBlock> cross_;
    std::vector<std::vector<int>> cross_index_; // [t1][t2] -> pair index, -1 on diagonal

    void finalize();
};

struct BlockSummary {
    std::string block;     // "homo[1]", "cross[1,2]" (1-based display labels)
    double max_degree = 0; // row side
    double max_degree_rev = 0; // column side (== max_degree for homo blocks)
    double edge_total = 0;
    // Density diagnostic in the spirit of asymptotic degree-sequence counting:
    // max degrees at most (log n_min)^(1/3) and the block not too sparse.
    // Informational only; detection does not depend on it.
    bool density_ok = false;
};

std::vector<BlockSummary> degree_summary(const HetGraph& g);

} // namespace hetnet
