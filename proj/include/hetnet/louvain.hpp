#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hetnet/graph.hpp"
#include "hetnet/modularity.hpp"
#include "hetnet/rng.hpp"

namespace hetnet {

// The atomic movable object: at most one node per type in the current
// coarse graph, moved jointly.
struct Unit {
    std::vector<NodeRef> members;
};

struct LouvainConfig {
    int restarts = 100; // kappa: independent runs with random unit orderings
    std::uint64_t seed = 0;
    std::optional<int> target_k; // fixed community count, if set
    int max_sweeps = 1000;       // per local-move phase, safety cap
};

struct LouvainResult {
    Partition partition; // on the input graph's nodes, compact labels
    double modularity = 0.0;
    int num_communities = 0;
    std::vector<double> restart_modularity; // Q achieved by each restart
    int levels = 0;                         // aggregation levels of the winning restart
};

// one unit per node
std::vector<Unit> singleton_units(const HetGraph& g);

// each unit its own community, in unit order
Partition unit_singleton_partition(const HetGraph& g, const std::vector<Unit>& units);

enum class PhaseStatus {
    NoMove,    // full sweep without an accepted move on entry state
    Improved,  // at least one move accepted
    HitTargetK // stopped early: community count reached the requested K
};

struct PhaseOptions {
    int max_sweeps = 1000;
    std::optional<int> stop_at_k;
};

struct PhaseResult {
    PhaseStatus status = PhaseStatus::NoMove;
    double q_start = 0.0;
    double q_end = 0.0;
};

// Sweeps the units in one random order (fixed for the whole phase); each
// unit joins the neighboring community with the largest positive modularity
// gain, ties broken uniformly at random. Repeats until a sweep makes no
// move. `p` must enter with every unit in its own community.
PhaseResult local_move_phase(const HetGraph& g, const std::vector<Unit>& units, Partition& p,
                             Rng& rng, const PhaseOptions& opt = {});

struct AggregateResult {
    HetGraph graph;
    std::vector<Unit> units;                // one per community, in community order
    std::vector<std::vector<int>> node_map; // [type][old index] -> new index
};

// Merges the same-type nodes of each community into one super-node; each
// community becomes one unit. Coarse edges carry summed fine weights, with
// within-community same-type weight stored as a self-loop, so the coarse
// modularity of the unit-singleton partition equals the fine modularity of
// `p` exactly (up to rounding).
AggregateResult aggregate(const HetGraph& g, const Partition& p);

LouvainResult run_louvain(const HetGraph& g, const LouvainConfig& cfg);

} // namespace hetnet
