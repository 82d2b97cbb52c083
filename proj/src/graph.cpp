#include "hetnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace hetnet {

namespace {

// disjoint bit fields: type < 2^8, index < 2^24
std::uint64_t pair_key(int t1, int i1, int t2, int i2) {
    // canonical order: lower type first, lower index first within a type
    if (t1 > t2 || (t1 == t2 && i1 > i2)) {
        std::swap(t1, t2);
        std::swap(i1, i2);
    }
    return (static_cast<std::uint64_t>(t1) << 56) | (static_cast<std::uint64_t>(i1) << 32) |
           (static_cast<std::uint64_t>(t2) << 24) | static_cast<std::uint64_t>(i2);
}

} // namespace

HetGraph HetGraph::build(int num_types, std::vector<int> type_sizes,
                         const std::vector<WeightedEdge>& edges, GraphMode mode) {
    if (num_types < 1) throw std::invalid_argument("graph: need at least one node type");
    if (static_cast<int>(type_sizes.size()) != num_types)
        throw std::invalid_argument("graph: type_sizes length does not match num_types");
    for (int n : type_sizes)
        if (n < 0) throw std::invalid_argument("graph: negative type size");

    HetGraph g;
    g.num_types_ = num_types;
    g.type_sizes_ = std::move(type_sizes);
    g.total_nodes_ = std::accumulate(g.type_sizes_.begin(), g.type_sizes_.end(), 0);

    g.homo_adj_.resize(num_types);
    g.self_loops_.resize(num_types);
    for (int t = 0; t < num_types; ++t) {
        g.homo_adj_[t].resize(g.type_sizes_[t]);
        g.self_loops_[t].assign(g.type_sizes_[t], 0.0);
    }
    g.cross_index_.assign(num_types, std::vector<int>(num_types, -1));
    for (int t1 = 0; t1 < num_types; ++t1) {
        for (int t2 = t1 + 1; t2 < num_types; ++t2) {
            CrossBlock b;
            b.t1 = t1;
            b.t2 = t2;
            b.fwd.resize(g.type_sizes_[t1]);
            b.rev.resize(g.type_sizes_[t2]);
            g.cross_index_[t1][t2] = g.cross_index_[t2][t1] = static_cast<int>(g.cross_.size());
            g.cross_.push_back(std::move(b));
        }
    }

    // accumulation maps keyed by canonical endpoint pair
    std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, double> acc;
    std::unordered_set<std::uint64_t> seen;

    for (const WeightedEdge& e : edges) {
        const NodeRef u = e.a, v = e.b;
        if (u.type < 0 || u.type >= num_types || v.type < 0 || v.type >= num_types)
            throw std::out_of_range("graph: node type out of range");
        if (u.index < 0 || u.index >= g.type_sizes_[u.type] || v.index < 0 ||
            v.index >= g.type_sizes_[v.type])
            throw std::out_of_range("graph: node index out of range");
        if (e.weight < 0) throw std::invalid_argument("graph: negative edge weight");
        if (mode == GraphMode::Simple) {
            if (u == v) throw std::invalid_argument("graph: self-loop in simple mode");
            if (e.weight != 1.0)
                throw std::invalid_argument("graph: non-unit weight in simple mode");
            if (!seen.insert(pair_key(u.type, u.index, v.type, v.index)).second)
                throw std::invalid_argument("graph: duplicate edge in simple mode");
        }
        NodeRef a = u, b = v;
        if (b < a) std::swap(a, b);
        acc[{{a.type, a.index}, {b.type, b.index}}] += e.weight;
    }

    for (const auto& [key, w] : acc) {
        const auto [ka, kb] = key;
        const NodeRef a{ka.first, ka.second}, b{kb.first, kb.second};
        if (a == b) {
            g.self_loops_[a.type][a.index] += w;
        } else if (a.type == b.type) {
            g.homo_adj_[a.type][a.index].push_back({b.index, w});
            g.homo_adj_[a.type][b.index].push_back({a.index, w});
        } else {
            CrossBlock& blk = g.cross_[g.cross_index_[a.type][b.type]];
            blk.fwd[a.index].push_back({b.index, w});
            blk.rev[b.index].push_back({a.index, w});
        }
    }

    g.finalize();
    return g;
}

void HetGraph::finalize() {
    homo_degrees_.resize(num_types_);
    homo_totals_.assign(num_types_, 0.0);
    for (int t = 0; t < num_types_; ++t) {
        const int n = type_sizes_[t];
        homo_degrees_[t].assign(n, 0.0);
        double deg_sum = 0;
        for (int i = 0; i < n; ++i) {
            auto& lst = homo_adj_[t][i];
            std::sort(lst.begin(), lst.end(),
                      [](const Neighbor& x, const Neighbor& y) { return x.index < y.index; });
            double d = 2.0 * self_loops_[t][i];
            for (const Neighbor& nb : lst) d += nb.weight;
            homo_degrees_[t][i] = d;
            deg_sum += d;
        }
        homo_totals_[t] = deg_sum / 2.0;
    }
    for (CrossBlock& b : cross_) {
        b.deg_fwd.assign(b.fwd.size(), 0.0);
        b.deg_rev.assign(b.rev.size(), 0.0);
        b.total = 0;
        for (std::size_t i = 0; i < b.fwd.size(); ++i) {
            auto& lst = b.fwd[i];
            std::sort(lst.begin(), lst.end(),
                      [](const Neighbor& x, const Neighbor& y) { return x.index < y.index; });
            double d = 0;
            for (const Neighbor& nb : lst) d += nb.weight;
            b.deg_fwd[i] = d;
            b.total += d;
        }
        for (std::size_t j = 0; j < b.rev.size(); ++j) {
            auto& lst = b.rev[j];
            std::sort(lst.begin(), lst.end(),
                      [](const Neighbor& x, const Neighbor& y) { return x.index < y.index; });
            double d = 0;
            for (const Neighbor& nb : lst) d += nb.weight;
            b.deg_rev[j] = d;
        }
    }
}

std::span<const Neighbor> HetGraph::cross_neighbors(int t_from, int i, int t_to) const {
    const CrossBlock& b = cross_[cross_index_[t_from][t_to]];
    return (t_from == b.t1) ? std::span<const Neighbor>(b.fwd[i])
                            : std::span<const Neighbor>(b.rev[i]);
}

double HetGraph::cross_degree(int t_from, int i, int t_to) const {
    const CrossBlock& b = cross_[cross_index_[t_from][t_to]];
    return (t_from == b.t1) ? b.deg_fwd[i] : b.deg_rev[i];
}

const std::vector<double>& HetGraph::cross_degrees(int t_from, int t_to) const {
    const CrossBlock& b = cross_[cross_index_[t_from][t_to]];
    return (t_from == b.t1) ? b.deg_fwd : b.deg_rev;
}

double HetGraph::weight(NodeRef u, NodeRef v) const {
    if (u == v) return 2.0 * self_loops_[u.type][u.index];
    if (u.type == v.type) {
        for (const Neighbor& nb : homo_adj_[u.type][u.index])
            if (nb.index == v.index) return nb.weight;
        return 0.0;
    }
    for (const Neighbor& nb : cross_neighbors(u.type, u.index, v.type))
        if (nb.index == v.index) return nb.weight;
    return 0.0;
}

double HetGraph::total_edge_weight() const {
    double s = std::accumulate(homo_totals_.begin(), homo_totals_.end(), 0.0);
    for (const CrossBlock& b : cross_) s += b.total;
    return s;
}

std::vector<BlockSummary> degree_summary(const HetGraph& g) {
    std::vector<BlockSummary> out;
    auto cube_root_log = [](int n) { return n > 1 ? std::cbrt(std::log(static_cast<double>(n))) : 0.0; };
    for (int t = 0; t < g.num_types(); ++t) {
        BlockSummary s;
        s.block = "homo[" + std::to_string(t + 1) + "]";
        for (int i = 0; i < g.type_size(t); ++i)
            s.max_degree = std::max(s.max_degree, g.homo_degree(t, i));
        s.max_degree_rev = s.max_degree;
        s.edge_total = g.homo_edge_total(t);
        s.density_ok =
            s.max_degree <= cube_root_log(g.type_size(t)) && s.edge_total > g.type_size(t);
        out.push_back(std::move(s));
    }
    for (int t1 = 0; t1 < g.num_types(); ++t1) {
        for (int t2 = t1 + 1; t2 < g.num_types(); ++t2) {
            BlockSummary s;
            s.block = "cross[" + std::to_string(t1 + 1) + "," + std::to_string(t2 + 1) + "]";
            for (double d : g.cross_degrees(t1, t2)) s.max_degree = std::max(s.max_degree, d);
            for (double d : g.cross_degrees(t2, t1))
                s.max_degree_rev = std::max(s.max_degree_rev, d);
            s.edge_total = g.cross_edge_total(t1, t2);
            const int nmin = std::min(g.type_size(t1), g.type_size(t2));
            const int nmax = std::max(g.type_size(t1), g.type_size(t2));
            const double bound = cube_root_log(nmin);
            s.density_ok = s.max_degree <= bound && s.max_degree_rev <= bound &&
                           s.edge_total > 2.0 * nmax;
            out.push_back(std::move(s));
        }
    }
    return out;
}

} // namespace hetnet
