#include "hetnet/louvain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace hetnet {

namespace {

constexpr double kGainEps = 1e-12; // smallest gain treated as an improvement
constexpr double kTieEps = 1e-12;  // gains this close to the best tie for random choice

} // namespace

std::vector<Unit> singleton_units(const HetGraph& g) {
    std::vector<Unit> units;
    units.reserve(g.total_nodes());
    for (int t = 0; t < g.num_types(); ++t)
        for (int i = 0; i < g.type_size(t); ++i) units.push_back(Unit{{NodeRef{t, i}}});
    return units;
}

Partition unit_singleton_partition(const HetGraph& g, const std::vector<Unit>& units) {
    Partition p;
    p.labels.resize(g.num_types());
    for (int t = 0; t < g.num_types(); ++t) p.labels[t].assign(g.type_size(t), -1);
    for (std::size_t u = 0; u < units.size(); ++u)
        for (const NodeRef& m : units[u].members) p.labels[m.type][m.index] = static_cast<int>(u);
    p.num_communities = static_cast<int>(units.size());
    for (const auto& v : p.labels)
        for (int c : v)
            if (c < 0) throw std::invalid_argument("units do not cover every node");
    return p;
}

PhaseResult local_move_phase(const HetGraph& g, const std::vector<Unit>& units, Partition& p,
                             Rng& rng, const PhaseOptions& opt) {
    CommunityStats stats = CommunityStats::build(g, p);
    PhaseResult res;
    res.q_start = stats.modularity();
    res.q_end = res.q_start;
    if (opt.stop_at_k && stats.community_count() == *opt.stop_at_k) {
        res.status = PhaseStatus::HitTargetK;
        return res;
    }

    std::vector<int> order(units.size());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    CommunityStats::UnitProfile prof;
    std::vector<int> ties;
    bool any_move = false;

    for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
        bool moved_this_sweep = false;
        for (int idx : order) {
            const Unit& unit = units[idx];
            const int from = p.label(unit.members.front());
            stats.profile_unit(unit.members, p, prof);
            double best = 0.0;
            ties.clear();
            for (int cand : prof.candidates) {
                if (cand == from) continue;
                const double dq = stats.delta_from_profile(prof, from, cand);
                if (dq > best + kTieEps) {
                    best = dq;
                    ties.clear();
                    ties.push_back(cand);
                } else if (!ties.empty() && dq >= best - kTieEps) {
                    ties.push_back(cand);
                }
            }
            if (best <= kGainEps || ties.empty()) continue;
            const int to = ties[ties.size() == 1 ? 0 : rng.below_int(static_cast<int>(ties.size()))];
            stats.apply_from_profile(prof, from, to);
            for (const NodeRef& m : unit.members) p.label(m) = to;
            moved_this_sweep = true;
            any_move = true;
            if (opt.stop_at_k && stats.community_count() == *opt.stop_at_k) {
                res.q_end = stats.modularity();
                res.status = PhaseStatus::HitTargetK;
                return res;
            }
        }
        if (!moved_this_sweep) break;
    }
    res.q_end = stats.modularity();
    res.status = any_move ? PhaseStatus::Improved : PhaseStatus::NoMove;
    return res;
}

AggregateResult aggregate(const HetGraph& g, const Partition& p_in) {
    if (!p_in.matches(g)) throw std::invalid_argument("aggregate: partition mismatch");
    Partition p = p_in;
    p.compact();
    const int L = g.num_types();
    const int C = p.num_communities;

    AggregateResult out;
    out.node_map.assign(L, {});
    std::vector<std::vector<int>> comm_node(L, std::vector<int>(C, -1)); // [type][c] -> new index
    std::vector<int> new_sizes(L, 0);
    for (int t = 0; t < L; ++t) {
        out.node_map[t].assign(g.type_size(t), -1);
        for (int i = 0; i < g.type_size(t); ++i) {
            const int c = p.labels[t][i];
            if (comm_node[t][c] < 0) comm_node[t][c] = new_sizes[t]++;
            out.node_map[t][i] = comm_node[t][c];
        }
    }

    out.units.resize(C);
    for (int c = 0; c < C; ++c)
        for (int t = 0; t < L; ++t)
            if (comm_node[t][c] >= 0) out.units[c].members.push_back(NodeRef{t, comm_node[t][c]});

    // accumulate coarse weights; a same-type within-community edge of weight w
    // adds w to the community's loop, matching fine loops which carry over as is
    std::vector<std::map<std::pair<int, int>, double>> homo_acc(L);
    std::vector<std::vector<double>> loop_acc(L);
    for (int t = 0; t < L; ++t) loop_acc[t].assign(new_sizes[t], 0.0);
    for (int t = 0; t < L; ++t) {
        for (int i = 0; i < g.type_size(t); ++i) {
            const int a = out.node_map[t][i];
            loop_acc[t][a] += g.self_loop(t, i);
            for (const Neighbor& nb : g.homo_neighbors(t, i)) {
                if (nb.index <= i) continue; // each fine edge once
                const int b = out.node_map[t][nb.index];
                if (a == b)
                    loop_acc[t][a] += nb.weight;
                else
                    homo_acc[t][{std::min(a, b), std::max(a, b)}] += nb.weight;
            }
        }
    }
    std::vector<std::map<std::pair<int, int>, double>> cross_acc(g.cross_pair_count());
    for (int pr = 0; pr < g.cross_pair_count(); ++pr) {
        const int t1 = g.cross_pair_low(pr), t2 = g.cross_pair_high(pr);
        for (int i = 0; i < g.type_size(t1); ++i) {
            const int a = out.node_map[t1][i];
            for (const Neighbor& nb : g.cross_neighbors(t1, i, t2))
                cross_acc[pr][{a, out.node_map[t2][nb.index]}] += nb.weight;
        }
    }

    std::vector<WeightedEdge> edges;
    for (int t = 0; t < L; ++t) {
        for (const auto& [key, w] : homo_acc[t])
            edges.push_back({NodeRef{t, key.first}, NodeRef{t, key.second}, w});
        for (int i = 0; i < new_sizes[t]; ++i)
            if (loop_acc[t][i] != 0.0) edges.push_back({NodeRef{t, i}, NodeRef{t, i}, loop_acc[t][i]});
    }
    for (int pr = 0; pr < g.cross_pair_count(); ++pr) {
        const int t1 = g.cross_pair_low(pr), t2 = g.cross_pair_high(pr);
        for (const auto& [key, w] : cross_acc[pr])
            edges.push_back({NodeRef{t1, key.first}, NodeRef{t2, key.second}, w});
    }
    out.graph = HetGraph::build(L, new_sizes, edges, GraphMode::Weighted);
    return out;
}

namespace {

// Merge continuation for fixed K: picks the move with the largest gain
// (least loss) among community-count-reducing candidates and applies it.
// Sole-unit communities move as units; once none remain, whole communities
// merge pairwise. Falls back to all community pairs when nothing is linked.
struct MergeStep {
    int from = -1, to = -1;
    double dq = 0;
    std::vector<NodeRef> members;
};

void collect_community_members(const Partition& p, int c, std::vector<NodeRef>& out) {
    out.clear();
    for (int t = 0; t < static_cast<int>(p.labels.size()); ++t)
        for (int i = 0; i < static_cast<int>(p.labels[t].size()); ++i)
            if (p.labels[t][i] == c) out.push_back(NodeRef{t, i});
}

bool best_merge(const std::vector<Unit>& units, const Partition& p,
                CommunityStats& stats, Rng& rng, MergeStep& out) {
    CommunityStats::UnitProfile prof;
    std::vector<MergeStep> ties;
    double best = -std::numeric_limits<double>::infinity();

    auto consider = [&](const std::vector<NodeRef>& members, int from, int to) {
        stats.profile_unit(members, p, prof);
        const double dq = stats.delta_from_profile(prof, from, to);
        if (dq > best + kTieEps) {
            best = dq;
            ties.clear();
            ties.push_back({from, to, dq, members});
        } else if (dq >= best - kTieEps) {
            ties.push_back({from, to, dq, members});
        }
    };

    // count units per community to find sole-unit communities
    std::vector<int> units_in(stats.community_slots(), 0);
    for (const Unit& u : units) ++units_in[p.label(u.members.front())];

    for (const Unit& u : units) {
        const int from = p.label(u.members.front());
        if (units_in[from] != 1) continue; // moving it would not reduce the count
        stats.profile_unit(u.members, p, prof);
        for (int cand : prof.candidates) {
            if (cand == from) continue;
            const double dq = stats.delta_from_profile(prof, from, cand);
            if (dq > best + kTieEps) {
                best = dq;
                ties.clear();
                ties.push_back({from, cand, dq, u.members});
            } else if (dq >= best - kTieEps) {
                ties.push_back({from, cand, dq, u.members});
            }
        }
    }

    if (ties.empty()) {
        // no linked sole-unit community; merge whole communities, trying all pairs
        std::vector<int> live;
        for (int c = 0; c < stats.community_slots(); ++c)
            if (stats.community_size(c) > 0) live.push_back(c);
        std::vector<NodeRef> members;
        for (int from : live) {
            collect_community_members(p, from, members);
            for (int to : live)
                if (to != from) consider(members, from, to);
        }
    }
    if (ties.empty()) return false;
    out = ties[ties.size() == 1 ? 0 : rng.below_int(static_cast<int>(ties.size()))];
    return true;
}

struct RestartOutcome {
    Partition partition;
    double q = 0;
    int levels = 0;
};

RestartOutcome run_restart(const HetGraph& g, const LouvainConfig& cfg, std::uint64_t seed) {
    Rng rng(seed);
    RestartOutcome out;

    const HetGraph* coarse = &g;
    HetGraph coarse_storage;
    std::vector<Unit> units = singleton_units(g);
    // original node -> current coarse node (types are preserved by merging)
    std::vector<std::vector<int>> orig_to_coarse(g.num_types());
    for (int t = 0; t < g.num_types(); ++t) {
        orig_to_coarse[t].resize(g.type_size(t));
        std::iota(orig_to_coarse[t].begin(), orig_to_coarse[t].end(), 0);
    }

    Partition coarse_labels;
    double prev_q = -std::numeric_limits<double>::infinity();
    bool hit_target = false;

    for (;;) {
        coarse_labels = unit_singleton_partition(*coarse, units);
        PhaseOptions opt;
        opt.max_sweeps = cfg.max_sweeps;
        opt.stop_at_k = cfg.target_k;
        const PhaseResult phase = local_move_phase(*coarse, units, coarse_labels, rng, opt);
        if (phase.q_end + 1e-9 < prev_q)
            throw std::logic_error("louvain: modularity decreased across a level");
        if (phase.status == PhaseStatus::HitTargetK) {
            hit_target = true;
            break;
        }
        if (phase.status == PhaseStatus::NoMove) break;
        prev_q = phase.q_end;
        AggregateResult agg = aggregate(*coarse, coarse_labels);
        for (int t = 0; t < g.num_types(); ++t)
            for (int i = 0; i < g.type_size(t); ++i)
                orig_to_coarse[t][i] = agg.node_map[t][orig_to_coarse[t][i]];
        coarse_storage = std::move(agg.graph);
        coarse = &coarse_storage;
        units = std::move(agg.units);
        ++out.levels;
        // after aggregation each unit is one community; labels refresh on loop entry
    }

    // fixed-K continuation: merge down while the count exceeds the target
    if (cfg.target_k && !hit_target) {
        CommunityStats stats = CommunityStats::build(*coarse, coarse_labels);
        while (stats.community_count() > *cfg.target_k) {
            MergeStep step;
            if (!best_merge(units, coarse_labels, stats, rng, step))
                throw std::logic_error("louvain: no merge available in fixed-K continuation");
            CommunityStats::UnitProfile prof;
            stats.profile_unit(step.members, coarse_labels, prof);
            stats.apply_from_profile(prof, step.from, step.to);
            for (const NodeRef& m : step.members) coarse_labels.label(m) = step.to;
        }
    }

    out.partition.labels.resize(g.num_types());
    for (int t = 0; t < g.num_types(); ++t) {
        out.partition.labels[t].resize(g.type_size(t));
        for (int i = 0; i < g.type_size(t); ++i)
            out.partition.labels[t][i] = coarse_labels.labels[t][orig_to_coarse[t][i]];
    }
    out.partition.num_communities = coarse_labels.num_communities;
    out.partition.compact();
    out.q = modularity(g, out.partition);
    return out;
}

} // namespace

LouvainResult run_louvain(const HetGraph& g, const LouvainConfig& cfg) {
    if (cfg.restarts < 1) throw std::invalid_argument("louvain: restarts must be >= 1");
    if (cfg.target_k) {
        if (*cfg.target_k < 1) throw std::invalid_argument("louvain: target_k must be >= 1");
        if (*cfg.target_k > g.total_nodes())
            throw std::invalid_argument("louvain: target_k exceeds the number of nodes");
    }
    if (g.total_nodes() == 0) throw std::invalid_argument("louvain: empty graph");

    LouvainResult best;
    best.modularity = -std::numeric_limits<double>::infinity();
    best.restart_modularity.reserve(cfg.restarts);
    for (int r = 0; r < cfg.restarts; ++r) {
        RestartOutcome oc = run_restart(g, cfg, cfg.seed + static_cast<std::uint64_t>(r));
        best.restart_modularity.push_back(oc.q);
        if (oc.q > best.modularity) { // strict: earliest restart wins ties
            best.modularity = oc.q;
            best.partition = std::move(oc.partition);
            best.levels = oc.levels;
        }
    }
    best.num_communities = best.partition.num_communities;
    return best;
}

} // namespace hetnet
