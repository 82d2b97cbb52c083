#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hetnet/graph.hpp"
#include "hetnet/modularity.hpp"

namespace hetnet {

// Heterogeneous stochastic blockmodel: every potential edge is an
// independent Bernoulli draw whose probability depends only on the endpoint
// communities and the block. Community sizes are fixed exactly, not drawn.
struct SbmSpec {
    int num_types = 0;       // L
    int num_communities = 0; // K
    std::vector<std::vector<int>> community_sizes;             // [type][k]
    std::vector<std::vector<double>> homo_probs;               // [type], K*K row-major, symmetric
    std::map<std::pair<int, int>, std::vector<double>> cross_probs; // key t1 < t2
    double rho = 1.0; // sparsity scale multiplying all probabilities
    std::uint64_t seed = 0;

    int type_size(int t) const;
    int total_nodes() const;
    // expected-degree scale n * rho of the sparsity reparameterization
    double degree_scale() const { return rho * total_nodes(); }
    double homo_p(int t, int a, int b) const { return homo_probs[t][a * num_communities + b]; }
    // P^[t1 t2]_{ab}; the reverse orientation is the stored matrix transposed
    double cross_p(int t1, int t2, int a, int b) const;
    void validate() const; // throws std::invalid_argument
};

struct SbmSample {
    HetGraph graph;
    Partition planted;
};

// Pure in (spec, seed). Each block draws from its own stream derived from
// the master seed, so extending a spec with new blocks leaves existing
// blocks' draws untouched.
SbmSample sample_sbm(const SbmSpec& spec, std::uint64_t seed);

// planted labels implied by the exact community sizes
Partition planted_partition(const SbmSpec& spec);

// The three simulation designs: L=2, K=3,
//   P^[1] = p1 11' + r1 I,  P^[2] = p2 11' + r2 I,  P^[12] = p3 11' + r3 I
// with (p1, p2, p3) = (0.1, 0.2, 0.05) and
//   setting 1: r1 = 0.05, r2 = 0.1   (r3 in [0.05, 0.15])
//   setting 2: r1 = 0.05, r2 = 0     (r3 in [0.05, 0.15])
//   setting 3: r1 = 0,    r2 = 0     (r3 in [0.05, 0.20])
// Default sizes 3 x 200 type-1 nodes and 3 x 100 type-2 nodes; the
// per-community sizes can be overridden for scaled-down runs.
SbmSpec setting_spec(int which, double r3);
SbmSpec setting_spec(int which, double r3, int n1_per_community, int n2_per_community);

// Condition matrices for one block: T is the community-pair edge mass
// normalized to sum 1; W = T - (T1)(T1)'.
struct BlockCondition {
    std::string block; // "homo[l]" / "cross[l1,l2]" (1-based display labels)
    std::vector<double> T; // K*K row-major; empty when skipped
    std::vector<double> W;
    bool skipped = false; // all-zero probability mass: T undefined
};

struct ConsistencyReport {
    int num_communities = 0;
    std::vector<BlockCondition> blocks;
    // sum over types of W^[l] plus both orientations of every cross W
    std::vector<double> condition_sum; // K*K row-major
    bool satisfied = false;            // diagonal > 0 and off-diagonal < 0, over live blocks
    std::vector<std::string> skipped_blocks;
};

// Evaluates the blockmodel sign conditions under which the maximizer of the
// heterogeneous modularity recovers the planted labels asymptotically. The
// verdict is invariant to scaling all probabilities by a common factor.
ConsistencyReport check_consistency(const SbmSpec& spec);

// Flat key = value configuration:
//   L, K, rho, seed, sizes_<t> (K integers), P_<t> (K*K reals, row-major),
//   P_<t1>_<t2> (K*K reals, row-major), types 1-based in keys.
SbmSpec read_spec_config(std::istream& in);
SbmSpec read_spec_config_file(const std::string& path);
void write_spec_config(std::ostream& out, const SbmSpec& spec);

} // namespace hetnet
