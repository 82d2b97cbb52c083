#include "hetnet/sbm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hetnet/rng.hpp"

namespace hetnet {

namespace {

constexpr std::uint64_t kHomoTag = 1;
constexpr std::uint64_t kCrossTag = 2;

} // namespace

int SbmSpec::type_size(int t) const {
    return std::accumulate(community_sizes[t].begin(), community_sizes[t].end(), 0);
}

int SbmSpec::total_nodes() const {
    int n = 0;
    for (int t = 0; t < num_types; ++t) n += type_size(t);
    return n;
}

double SbmSpec::cross_p(int t1, int t2, int a, int b) const {
    if (t1 < t2) return cross_probs.at({t1, t2})[a * num_communities + b];
    return cross_probs.at({t2, t1})[b * num_communities + a];
}

void SbmSpec::validate() const {
    if (num_types < 1) throw std::invalid_argument("sbm: need at least one type");
    if (num_communities < 1) throw std::invalid_argument("sbm: need at least one community");
    if (static_cast<int>(community_sizes.size()) != num_types ||
        static_cast<int>(homo_probs.size()) != num_types)
        throw std::invalid_argument("sbm: per-type fields do not match L");
    if (rho <= 0 || rho > 1) throw std::invalid_argument("sbm: rho must be in (0, 1]");
    const int K = num_communities;
    for (int t = 0; t < num_types; ++t) {
        if (static_cast<int>(community_sizes[t].size()) != K)
            throw std::invalid_argument("sbm: community size list must have K entries");
        for (int s : community_sizes[t])
            if (s < 0) throw std::invalid_argument("sbm: negative community size");
        if (static_cast<int>(homo_probs[t].size()) != K * K)
            throw std::invalid_argument("sbm: homo probability matrix must be KxK");
        for (int a = 0; a < K; ++a)
            for (int b = 0; b < K; ++b) {
                const double p = homo_p(t, a, b);
                if (p < 0 || p * rho > 1.0)
                    throw std::invalid_argument("sbm: probability out of [0,1] after scaling");
                if (p != homo_p(t, b, a))
                    throw std::invalid_argument("sbm: homo probability matrix must be symmetric");
            }
    }
    for (int t1 = 0; t1 < num_types; ++t1)
        for (int t2 = t1 + 1; t2 < num_types; ++t2) {
            auto it = cross_probs.find({t1, t2});
            if (it == cross_probs.end())
                throw std::invalid_argument("sbm: missing cross probability matrix");
            if (static_cast<int>(it->second.size()) != K * K)
                throw std::invalid_argument("sbm: cross probability matrix must be KxK");
            for (double p : it->second)
                if (p < 0 || p * rho > 1.0)
                    throw std::invalid_argument("sbm: probability out of [0,1] after scaling");
        }
}

Partition planted_partition(const SbmSpec& spec) {
    Partition p;
    p.labels.resize(spec.num_types);
    for (int t = 0; t < spec.num_types; ++t) {
        for (int k = 0; k < spec.num_communities; ++k)
            p.labels[t].insert(p.labels[t].end(), spec.community_sizes[t][k], k);
    }
    p.num_communities = spec.num_communities;
    return p;
}

SbmSample sample_sbm(const SbmSpec& spec, std::uint64_t seed) {
    spec.validate();
    const Partition planted = planted_partition(spec);
    std::vector<WeightedEdge> edges;

    for (int t = 0; t < spec.num_types; ++t) {
        const int n = spec.type_size(t);
        Rng rng(derive_seed(seed, kHomoTag, static_cast<std::uint64_t>(t)));
        const auto& lab = planted.labels[t];
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.bernoulli(spec.rho * spec.homo_p(t, lab[i], lab[j])))
                    edges.push_back({NodeRef{t, i}, NodeRef{t, j}, 1.0});
    }
    for (int t1 = 0; t1 < spec.num_types; ++t1)
        for (int t2 = t1 + 1; t2 < spec.num_types; ++t2) {
            Rng rng(derive_seed(seed, kCrossTag, static_cast<std::uint64_t>(t1),
                                static_cast<std::uint64_t>(t2)));
            const auto& la = planted.labels[t1];
            const auto& lb = planted.labels[t2];
            for (int i = 0; i < spec.type_size(t1); ++i)
                for (int j = 0; j < spec.type_size(t2); ++j)
                    if (rng.bernoulli(spec.rho * spec.cross_p(t1, t2, la[i], lb[j])))
                        edges.push_back({NodeRef{t1, i}, NodeRef{t2, j}, 1.0});
        }

    std::vector<int> sizes(spec.num_types);
    for (int t = 0; t < spec.num_types; ++t) sizes[t] = spec.type_size(t);
    SbmSample out;
    out.graph = HetGraph::build(spec.num_types, sizes, edges, GraphMode::Simple);
    out.planted = planted;
    return out;
}

namespace {

std::vector<double> flat_plus_diag(int k, double off, double diag_extra) {
    std::vector<double> m(k * k, off);
    for (int a = 0; a < k; ++a) m[a * k + a] += diag_extra;
    return m;
}

} // namespace

SbmSpec setting_spec(int which, double r3, int n1_per_community, int n2_per_community) {
    double r1 = 0, r2 = 0, r3_max = 0;
    switch (which) {
        case 1: r1 = 0.05; r2 = 0.1; r3_max = 0.15; break;
        case 2: r1 = 0.05; r2 = 0.0; r3_max = 0.15; break;
        case 3: r1 = 0.0;  r2 = 0.0; r3_max = 0.20; break;
        default: throw std::invalid_argument("unknown simulation setting " + std::to_string(which));
    }
    if (r3 < 0.05 - 1e-9 || r3 > r3_max + 1e-9)
        throw std::invalid_argument("r3 outside the sweep range of setting " +
                                    std::to_string(which));
    SbmSpec spec;
    spec.num_types = 2;
    spec.num_communities = 3;
    spec.community_sizes = {{n1_per_community, n1_per_community, n1_per_community},
                            {n2_per_community, n2_per_community, n2_per_community}};
    spec.homo_probs = {flat_plus_diag(3, 0.1, r1), flat_plus_diag(3, 0.2, r2)};
    spec.cross_probs[{0, 1}] = flat_plus_diag(3, 0.05, r3);
    return spec;
}

SbmSpec setting_spec(int which, double r3) { return setting_spec(which, r3, 200, 100); }

namespace {

// T_ab = pi_a pi_b P_ab / sum (same for cross with the two type margins);
// returns false when the block carries no probability mass.
bool condition_matrices(const std::vector<double>& pi_a, const std::vector<double>& pi_b,
                        const std::vector<double>& P, int K, std::vector<double>& T,
                        std::vector<double>& W) {
    T.assign(K * K, 0.0);
    W.assign(K * K, 0.0);
    double total = 0;
    for (int a = 0; a < K; ++a)
        for (int b = 0; b < K; ++b) {
            T[a * K + b] = pi_a[a] * pi_b[b] * P[a * K + b];
            total += T[a * K + b];
        }
    if (total <= 0) return false;
    for (double& v : T) v /= total;
    std::vector<double> row_mass(K, 0.0);
    for (int a = 0; a < K; ++a)
        for (int b = 0; b < K; ++b) row_mass[a] += T[a * K + b];
    for (int a = 0; a < K; ++a)
        for (int b = 0; b < K; ++b) W[a * K + b] = T[a * K + b] - row_mass[a] * row_mass[b];
    return true;
}

} // namespace

ConsistencyReport check_consistency(const SbmSpec& spec) {
    spec.validate();
    const int K = spec.num_communities;
    const double n = spec.total_nodes();
    for (int t = 0; t < spec.num_types; ++t)
        for (int s : spec.community_sizes[t])
            if (s <= 0)
                throw std::invalid_argument("check_consistency: community proportions must be positive");

    // proportions relative to the total node count, per the blockmodel setup
    std::vector<std::vector<double>> pi(spec.num_types, std::vector<double>(K));
    for (int t = 0; t < spec.num_types; ++t)
        for (int k = 0; k < K; ++k) pi[t][k] = spec.community_sizes[t][k] / n;

    ConsistencyReport rep;
    rep.num_communities = K;
    rep.condition_sum.assign(K * K, 0.0);

    auto add_block = [&](const std::string& name, const std::vector<double>& pa,
                         const std::vector<double>& pb, const std::vector<double>& P,
                         bool both_orientations) {
        BlockCondition bc;
        bc.block = name;
        if (!condition_matrices(pa, pb, P, K, bc.T, bc.W)) {
            bc.skipped = true;
            bc.T.clear();
            bc.W.clear();
            rep.skipped_blocks.push_back(name);
        } else {
            for (int a = 0; a < K; ++a)
                for (int b = 0; b < K; ++b) {
                    rep.condition_sum[a * K + b] += bc.W[a * K + b];
                    if (both_orientations) rep.condition_sum[a * K + b] += bc.W[b * K + a];
                }
        }
        rep.blocks.push_back(std::move(bc));
    };

    for (int t = 0; t < spec.num_types; ++t)
        add_block("homo[" + std::to_string(t + 1) + "]", pi[t], pi[t], spec.homo_probs[t], false);
    for (int t1 = 0; t1 < spec.num_types; ++t1)
        for (int t2 = t1 + 1; t2 < spec.num_types; ++t2)
            add_block("cross[" + std::to_string(t1 + 1) + "," + std::to_string(t2 + 1) + "]",
                      pi[t1], pi[t2], spec.cross_probs.at({t1, t2}), true);

    bool ok = true;
    for (int a = 0; a < K && ok; ++a)
        if (!(rep.condition_sum[a * K + a] > 0)) ok = false;
    for (int a = 0; a < K && ok; ++a)
        for (int b = 0; b < K && ok; ++b)
            if (a != b && !(rep.condition_sum[a * K + b] < 0)) ok = false;
    rep.satisfied = ok;
    return rep;
}

namespace {

std::vector<double> parse_reals(const std::string& value, const std::string& key) {
    std::istringstream ss(value);
    std::vector<double> out;
    double v;
    while (ss >> v) out.push_back(v);
    if (!ss.eof()) // extraction stopped on a token that is not a number
        throw std::invalid_argument("spec config: bad number in '" + key + "'");
    return out;
}

} // namespace

SbmSpec read_spec_config(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("spec config line " + std::to_string(lineno) +
                                        ": expected key = value");
        auto trim = [](std::string s) {
            const std::size_t b = s.find_first_not_of(" \t");
            const std::size_t e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument("spec config line " + std::to_string(lineno) +
                                                     ": empty key");
        if (!kv.emplace(key, value).second)
            throw std::invalid_argument("spec config: duplicate key '" + key + "'");
    }

    auto require = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw std::invalid_argument("spec config: missing key '" + key + "'");
        return it->second;
    };

    SbmSpec spec;
    spec.num_types = static_cast<int>(std::stol(require("L")));
    spec.num_communities = static_cast<int>(std::stol(require("K")));
    if (spec.num_types < 1 || spec.num_communities < 1)
        throw std::invalid_argument("spec config: L and K must be positive");
    if (auto it = kv.find("rho"); it != kv.end()) spec.rho = std::stod(it->second);
    if (auto it = kv.find("seed"); it != kv.end()) spec.seed = std::stoull(it->second);

    for (int t = 0; t < spec.num_types; ++t) {
        const std::string key = "sizes_" + std::to_string(t + 1);
        auto vals = parse_reals(require(key), key);
        std::vector<int> sizes;
        for (double v : vals) {
            if (v < 0 || v != std::floor(v))
                throw std::invalid_argument("spec config: '" + key + "' must hold integers");
            sizes.push_back(static_cast<int>(v));
        }
        spec.community_sizes.push_back(std::move(sizes));
        const std::string pk = "P_" + std::to_string(t + 1);
        spec.homo_probs.push_back(parse_reals(require(pk), pk));
    }
    for (int t1 = 0; t1 < spec.num_types; ++t1)
        for (int t2 = t1 + 1; t2 < spec.num_types; ++t2) {
            const std::string pk = "P_" + std::to_string(t1 + 1) + "_" + std::to_string(t2 + 1);
            spec.cross_probs[{t1, t2}] = parse_reals(require(pk), pk);
        }
    spec.validate();
    return spec;
}

SbmSpec read_spec_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_spec_config(in);
}

void write_spec_config(std::ostream& out, const SbmSpec& spec) {
    const auto old_precision = out.precision(17); // round-trip doubles exactly
    out << "L = " << spec.num_types << "\n";
    out << "K = " << spec.num_communities << "\n";
    out << "rho = " << spec.rho << "\n";
    out << "seed = " << spec.seed << "\n";
    auto write_list = [&](const std::string& key, const auto& values) {
        out << key << " =";
        for (const auto& v : values) out << ' ' << v;
        out << "\n";
    };
    for (int t = 0; t < spec.num_types; ++t) {
        write_list("sizes_" + std::to_string(t + 1), spec.community_sizes[t]);
        write_list("P_" + std::to_string(t + 1), spec.homo_probs[t]);
    }
    for (const auto& [key, mat] : spec.cross_probs)
        write_list("P_" + std::to_string(key.first + 1) + "_" + std::to_string(key.second + 1),
                   mat);
    out.precision(old_precision);
}

} // namespace hetnet
