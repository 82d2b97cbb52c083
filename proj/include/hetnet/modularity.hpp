#pragma once

#include <span>
#include <utility>
#include <vector>

#include "hetnet/graph.hpp"

namespace hetnet {

// Community label per node, grouped by type. Labels are compact: every id in
// [0, num_communities) is used by at least one node. Communities may mix
// node types.
struct Partition {
    std::vector<std::vector<int>> labels; // [type][index] -> community id
    int num_communities = 0;

    static Partition single_community(const HetGraph& g);
    static Partition singletons(const HetGraph& g);

    int label(NodeRef u) const { return labels[u.type][u.index]; }
    int& label(NodeRef u) { return labels[u.type][u.index]; }

    bool matches(const HetGraph& g) const;
    bool is_compact() const;
    // relabel to 0..K-1 in order of first appearance (type-major node order)
    void compact();

    // concatenated labels in type-major order, for partition metrics
    std::vector<int> flat() const;

    friend bool operator==(const Partition&, const Partition&) = default;
};

// Null-model expectation of the (u, v) entry: d_u d_v / 2m within a type,
// d_u d_v / m across types. Throws if the block holding (u, v) has no edges
// (such blocks contribute zero to the modularity and have no defined
// per-entry expectation here).
double expected_weight(const HetGraph& g, NodeRef u, NodeRef v);

// Per-community degree and internal-weight totals for every block:
// sufficient statistics for Q and for the incremental change of moving one
// unit, with no per-entry work on the expectation matrix.
class CommunityStats {
  public:
    static CommunityStats build(const HetGraph& g, const Partition& p);

    // Q = (1/L^2) [ sum_t (1/2m_t)(I_t(c) - D_c^2/2m_t)
    //             + 2 sum_{t1<t2} (1/m)(I_12(c) - F_c R_c / m) ]
    // where I sums intra-community weight per block (ordered pairs within a
    // type, each cross edge once) and D/F/R are community degree totals.
    double modularity() const;

    int community_slots() const { return slots_; }
    int community_count() const { return nonempty_; } // nonempty communities
    int community_size(int c) const { return community_size_[c]; }

    double homo_degree_sum(int t, int c) const { return homo_deg_sum_[t][c]; }
    double cross_degree_sum(int t_from, int t_to, int c) const;
    double homo_internal(int t, int c) const { return homo_internal_[t][c]; }
    double cross_internal(int pair, int c) const { return cross_internal_[pair][c]; }

    // Links of one moving unit toward each community, split by block, with
    // intra-unit weight tracked separately. Reused across candidate targets.
    struct UnitProfile {
        std::vector<std::vector<std::pair<int, double>>> homo_links;  // [type]
        std::vector<std::vector<std::pair<int, double>>> cross_links; // [pair], both sides merged
        std::vector<double> homo_degree;     // [type]
        std::vector<double> homo_intra;      // [type] ordered-pair weight inside the unit
        std::vector<double> cross_deg_fwd;   // [pair] lower-type side
        std::vector<double> cross_deg_rev;   // [pair] higher-type side
        std::vector<double> cross_intra;     // [pair] intra-unit cross weight, each edge once
        std::vector<int> candidates;         // distinct neighboring communities
        int member_count = 0;
        void reset(int num_types, int num_pairs);
    };

    // All members must share the community `from` recorded in `p`.
    void profile_unit(std::span<const NodeRef> members, const Partition& p,
                      UnitProfile& out) const;
    double delta_from_profile(const UnitProfile& u, int from, int to) const;
    void apply_from_profile(const UnitProfile& u, int from, int to);

    // Q(after move) - Q(before move), exact up to rounding; 0 when to == from.
    double delta_move(std::span<const NodeRef> members, const Partition& p, int from,
                      int to) const;

  private:
    const HetGraph* g_ = nullptr;
    int slots_ = 0;
    int nonempty_ = 0;
    std::vector<int> community_size_;
    std::vector<std::vector<double>> homo_deg_sum_;   // [type][c]
    std::vector<std::vector<double>> homo_internal_;  // [type][c] ordered-pair sum
    std::vector<std::vector<double>> cross_deg_fwd_;  // [pair][c]
    std::vector<std::vector<double>> cross_deg_rev_;  // [pair][c]
    std::vector<std::vector<double>> cross_internal_; // [pair][c] each edge once
};

double modularity(const HetGraph& g, const Partition& p);

} // namespace hetnet
