#include "hetnet/baselines.hpp"

#include <numeric>
#include <stdexcept>

namespace hetnet {

HetGraph flatten(const HetGraph& g) {
    std::vector<int> offset(g.num_types(), 0);
    for (int t = 1; t < g.num_types(); ++t) offset[t] = offset[t - 1] + g.type_size(t - 1);
    std::vector<WeightedEdge> edges;
    for (int t = 0; t < g.num_types(); ++t)
        for (int i = 0; i < g.type_size(t); ++i) {
            if (g.self_loop(t, i) != 0.0)
                edges.push_back({NodeRef{0, offset[t] + i}, NodeRef{0, offset[t] + i},
                                 g.self_loop(t, i)});
            for (const Neighbor& nb : g.homo_neighbors(t, i))
                if (nb.index > i)
                    edges.push_back({NodeRef{0, offset[t] + i}, NodeRef{0, offset[t] + nb.index},
                                     nb.weight});
        }
    for (int t1 = 0; t1 < g.num_types(); ++t1)
        for (int t2 = t1 + 1; t2 < g.num_types(); ++t2)
            for (int i = 0; i < g.type_size(t1); ++i)
                for (const Neighbor& nb : g.cross_neighbors(t1, i, t2))
                    edges.push_back({NodeRef{0, offset[t1] + i},
                                     NodeRef{0, offset[t2] + nb.index}, nb.weight});
    return HetGraph::build(1, {g.total_nodes()}, edges, GraphMode::Weighted);
}

HetGraph homo_block_graph(const HetGraph& g, int type) {
    std::vector<WeightedEdge> edges;
    for (int i = 0; i < g.type_size(type); ++i) {
        if (g.self_loop(type, i) != 0.0)
            edges.push_back({NodeRef{0, i}, NodeRef{0, i}, g.self_loop(type, i)});
        for (const Neighbor& nb : g.homo_neighbors(type, i))
            if (nb.index > i) edges.push_back({NodeRef{0, i}, NodeRef{0, nb.index}, nb.weight});
    }
    return HetGraph::build(1, {g.type_size(type)}, edges, GraphMode::Weighted);
}

BaselineResult method1(const HetGraph& g, const LouvainConfig& cfg) {
    if (g.total_nodes() == 0) throw std::invalid_argument("method1: empty graph");
    const HetGraph flat = flatten(g);
    const LouvainResult res = run_louvain(flat, cfg);

    BaselineResult out;
    out.method = 1;
    out.q = res.modularity;
    out.k = res.num_communities;
    out.global.labels.resize(g.num_types());
    int off = 0;
    for (int t = 0; t < g.num_types(); ++t) {
        out.global.labels[t].assign(res.partition.labels[0].begin() + off,
                                    res.partition.labels[0].begin() + off + g.type_size(t));
        off += g.type_size(t);
    }
    out.global.num_communities = res.num_communities;
    return out;
}

BaselineResult method2(const HetGraph& g, const LouvainConfig& cfg) {
    BaselineResult out;
    out.method = 2;
    for (int t = 0; t < g.num_types(); ++t) {
        const HetGraph block = homo_block_graph(g, t);
        if (block.homo_edge_total(0) <= 0) {
            // nothing recoverable from this type on its own
            std::vector<int> labels(g.type_size(t));
            std::iota(labels.begin(), labels.end(), 0);
            out.per_type_labels.push_back(std::move(labels));
            out.q_per_type.push_back(0.0);
            out.k_per_type.push_back(g.type_size(t));
            out.zero_edge_type.push_back(true);
            continue;
        }
        const LouvainResult res = run_louvain(block, cfg);
        out.per_type_labels.push_back(res.partition.labels[0]);
        out.q_per_type.push_back(res.modularity);
        out.k_per_type.push_back(res.num_communities);
        out.zero_edge_type.push_back(false);
    }
    return out;
}

} // namespace hetnet
