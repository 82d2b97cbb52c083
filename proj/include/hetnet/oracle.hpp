#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hetnet/graph.hpp"
#include "hetnet/modularity.hpp"

namespace hetnet {

struct OracleResult {
    double best_q = 0.0;
    std::vector<Partition> maximizers;   // capped; see maximizer_total
    std::uint64_t maximizer_total = 0;   // number of partitions attaining best_q
    std::uint64_t partitions_checked = 0;
};

// Exact maximum of the modularity over every set partition of the combined
// node set (communities may mix types). Feasible for at most `max_nodes`
// nodes; enumeration is over restricted growth strings.
OracleResult max_modularity_exhaustive(const HetGraph& g, int max_nodes = 12,
                                       std::size_t maximizer_cap = 4096);

// The evaluator the exhaustive search uses, exposed so that comparisons
// against its maximum share one code path and hold exactly.
double oracle_modularity(const HetGraph& g, const Partition& p);

// Exact counts of simple graphs with a fixed degree sequence, by
// backtracking over adjacency choices. Small n only (the counts themselves
// stay well inside 64 bits there).
std::uint64_t count_homo_graphs(const std::vector<int>& degrees);
std::uint64_t count_homo_graphs_with_edge(const std::vector<int>& degrees, int i, int j);
std::uint64_t count_bipartite_graphs(const std::vector<int>& row_deg,
                                     const std::vector<int>& col_deg);
std::uint64_t count_bipartite_graphs_with_edge(const std::vector<int>& row_deg,
                                               const std::vector<int>& col_deg, int i, int j);

// Exact uniform-null expectation of one entry, by enumeration. Throws when
// the degree sequence is infeasible or the block is too large (more than 8
// nodes per side).
double exact_null_expectation_homo(const std::vector<int>& degrees, int i, int j);
double exact_null_expectation_cross(const std::vector<int>& row_deg,
                                    const std::vector<int>& col_deg, int i, int j);

} // namespace hetnet
