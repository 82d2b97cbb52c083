#pragma once

#include <vector>

#include "hetnet/graph.hpp"
#include "hetnet/louvain.hpp"

namespace hetnet {

// Comparison methods sharing the Louvain engine:
//   method 1 drops the type structure and clusters the flattened
//   homogeneous graph under Newman-Girvan modularity;
//   method 2 clusters each type's homogeneous block separately and ignores
//   cross-type edges entirely.
struct BaselineResult {
    int method = 0;
    // method 1: one partition over all nodes, sliced per type
    Partition global;
    double q = 0.0;
    int k = 0;
    // method 2: independent per-type label vectors and per-type run stats
    std::vector<std::vector<int>> per_type_labels;
    std::vector<double> q_per_type;
    std::vector<int> k_per_type;
    std::vector<bool> zero_edge_type; // type had no homo edges: singleton labels, scored 0
};

BaselineResult method1(const HetGraph& g, const LouvainConfig& cfg);
BaselineResult method2(const HetGraph& g, const LouvainConfig& cfg);

// single-type graph over all nodes, union of every block (types concatenated
// in order); exposed for the objective-identity checks
HetGraph flatten(const HetGraph& g);

// single-type graph holding one homogeneous block
HetGraph homo_block_graph(const HetGraph& g, int type);

} // namespace hetnet
