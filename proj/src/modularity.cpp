#include "hetnet/modularity.hpp"

#include <algorithm>
#include <stdexcept>

namespace hetnet {

Partition Partition::single_community(const HetGraph& g) {
    Partition p;
    p.labels.resize(g.num_types());
    for (int t = 0; t < g.num_types(); ++t) p.labels[t].assign(g.type_size(t), 0);
    p.num_communities = g.total_nodes() > 0 ? 1 : 0;
    return p;
}

Partition Partition::singletons(const HetGraph& g) {
    Partition p;
    p.labels.resize(g.num_types());
    int next = 0;
    for (int t = 0; t < g.num_types(); ++t) {
        p.labels[t].resize(g.type_size(t));
        for (int i = 0; i < g.type_size(t); ++i) p.labels[t][i] = next++;
    }
    p.num_communities = next;
    return p;
}

bool Partition::matches(const HetGraph& g) const {
    if (static_cast<int>(labels.size()) != g.num_types()) return false;
    for (int t = 0; t < g.num_types(); ++t)
        if (static_cast<int>(labels[t].size()) != g.type_size(t)) return false;
    return true;
}

bool Partition::is_compact() const {
    std::vector<char> used(num_communities, 0);
    for (const auto& v : labels)
        for (int c : v) {
            if (c < 0 || c >= num_communities) return false;
            used[c] = 1;
        }
    return std::all_of(used.begin(), used.end(), [](char u) { return u == 1; });
}

void Partition::compact() {
    std::vector<int> remap(num_communities, -1);
    int next = 0;
    for (auto& v : labels)
        for (int& c : v) {
            if (remap[c] < 0) remap[c] = next++;
            c = remap[c];
        }
    num_communities = next;
}

std::vector<int> Partition::flat() const {
    std::vector<int> out;
    for (const auto& v : labels) out.insert(out.end(), v.begin(), v.end());
    return out;
}

double expected_weight(const HetGraph& g, NodeRef u, NodeRef v) {
    if (u.type == v.type) {
        const double m = g.homo_edge_total(u.type);
        if (m <= 0) throw std::domain_error("expected_weight: block has no edges");
        return g.homo_degree(u.type, u.index) * g.homo_degree(v.type, v.index) / (2.0 * m);
    }
    const double m = g.cross_edge_total(u.type, v.type);
    if (m <= 0) throw std::domain_error("expected_weight: block has no edges");
    return g.cross_degree(u.type, u.index, v.type) * g.cross_degree(v.type, v.index, u.type) / m;
}

CommunityStats CommunityStats::build(const HetGraph& g, const Partition& p) {
    if (!p.matches(g)) throw std::invalid_argument("partition does not match graph");
    CommunityStats s;
    s.g_ = &g;
    s.slots_ = p.num_communities;
    s.community_size_.assign(s.slots_, 0);
    const int L = g.num_types();
    const int P = g.cross_pair_count();
    s.homo_deg_sum_.assign(L, std::vector<double>(s.slots_, 0.0));
    s.homo_internal_.assign(L, std::vector<double>(s.slots_, 0.0));
    s.cross_deg_fwd_.assign(P, std::vector<double>(s.slots_, 0.0));
    s.cross_deg_rev_.assign(P, std::vector<double>(s.slots_, 0.0));
    s.cross_internal_.assign(P, std::vector<double>(s.slots_, 0.0));

    for (int t = 0; t < L; ++t) {
        for (int i = 0; i < g.type_size(t); ++i) {
            const int c = p.labels[t][i];
            ++s.community_size_[c];
            s.homo_deg_sum_[t][c] += g.homo_degree(t, i);
            s.homo_internal_[t][c] += 2.0 * g.self_loop(t, i);
            for (const Neighbor& nb : g.homo_neighbors(t, i))
                if (p.labels[t][nb.index] == c) s.homo_internal_[t][c] += nb.weight;
        }
    }
    for (int pr = 0; pr < P; ++pr) {
        const int t1 = g.cross_pair_low(pr), t2 = g.cross_pair_high(pr);
        for (int i = 0; i < g.type_size(t1); ++i) {
            const int c = p.labels[t1][i];
            s.cross_deg_fwd_[pr][c] += g.cross_degree(t1, i, t2);
            for (const Neighbor& nb : g.cross_neighbors(t1, i, t2))
                if (p.labels[t2][nb.index] == c) s.cross_internal_[pr][c] += nb.weight;
        }
        for (int j = 0; j < g.type_size(t2); ++j)
            s.cross_deg_rev_[pr][p.labels[t2][j]] += g.cross_degree(t2, j, t1);
    }
    s.nonempty_ = 0;
    for (int c = 0; c < s.slots_; ++c)
        if (s.community_size_[c] > 0) ++s.nonempty_;
    return s;
}

double CommunityStats::cross_degree_sum(int t_from, int t_to, int c) const {
    const int pr = g_->cross_pair_index(t_from, t_to);
    return (t_from == g_->cross_pair_low(pr)) ? cross_deg_fwd_[pr][c] : cross_deg_rev_[pr][c];
}

double CommunityStats::modularity() const {
    const HetGraph& g = *g_;
    const int L = g.num_types();
    double total = 0;
    for (int t = 0; t < L; ++t) {
        const double m = g.homo_edge_total(t);
        if (m <= 0) continue; // zero-edge block contributes nothing
        double acc = 0;
        for (int c = 0; c < slots_; ++c) {
            const double d = homo_deg_sum_[t][c];
            acc += homo_internal_[t][c] - d * d / (2.0 * m);
        }
        total += acc / (2.0 * m);
    }
    for (int pr = 0; pr < g.cross_pair_count(); ++pr) {
        const double m = g.cross_edge_total_by_pair(pr);
        if (m <= 0) continue;
        double acc = 0;
        for (int c = 0; c < slots_; ++c)
            acc += cross_internal_[pr][c] - cross_deg_fwd_[pr][c] * cross_deg_rev_[pr][c] / m;
        total += 2.0 * acc / m; // both ordered directions of the pair
    }
    return total / (static_cast<double>(L) * L);
}

void CommunityStats::UnitProfile::reset(int num_types, int num_pairs) {
    homo_links.resize(num_types);
    for (auto& v : homo_links) v.clear(); // keep capacity across units
    cross_links.resize(num_pairs);
    for (auto& v : cross_links) v.clear();
    homo_degree.assign(num_types, 0.0);
    homo_intra.assign(num_types, 0.0);
    cross_deg_fwd.assign(num_pairs, 0.0);
    cross_deg_rev.assign(num_pairs, 0.0);
    cross_intra.assign(num_pairs, 0.0);
    candidates.clear();
    member_count = 0;
}

namespace {

void add_link(std::vector<std::pair<int, double>>& links, int c, double w) {
    for (auto& [cc, ww] : links) {
        if (cc == c) {
            ww += w;
            return;
        }
    }
    links.emplace_back(c, w);
}

bool in_unit(std::span<const NodeRef> members, int type, int index) {
    for (const NodeRef& m : members)
        if (m.type == type && m.index == index) return true;
    return false;
}

} // namespace

void CommunityStats::profile_unit(std::span<const NodeRef> members, const Partition& p,
                                  UnitProfile& out) const {
    const HetGraph& g = *g_;
    out.reset(g.num_types(), g.cross_pair_count());
    out.member_count = static_cast<int>(members.size());
    for (const NodeRef& u : members) {
        const int t = u.type;
        out.homo_degree[t] += g.homo_degree(t, u.index);
        out.homo_intra[t] += 2.0 * g.self_loop(t, u.index);
        for (const Neighbor& nb : g.homo_neighbors(t, u.index)) {
            if (in_unit(members, t, nb.index))
                out.homo_intra[t] += nb.weight; // both endpoints iterate: counts twice
            else
                add_link(out.homo_links[t], p.labels[t][nb.index], nb.weight);
        }
        for (int t2 = 0; t2 < g.num_types(); ++t2) {
            if (t2 == t) continue;
            const int pr = g.cross_pair_index(t, t2);
            if (t == g.cross_pair_low(pr))
                out.cross_deg_fwd[pr] += g.cross_degree(t, u.index, t2);
            else
                out.cross_deg_rev[pr] += g.cross_degree(t, u.index, t2);
            for (const Neighbor& nb : g.cross_neighbors(t, u.index, t2)) {
                if (in_unit(members, t2, nb.index)) {
                    if (t < t2) out.cross_intra[pr] += nb.weight; // count from one side only
                } else {
                    add_link(out.cross_links[pr], p.labels[t2][nb.index], nb.weight);
                }
            }
        }
    }
    for (const auto& links : out.homo_links)
        for (const auto& [c, w] : links)
            if (std::find(out.candidates.begin(), out.candidates.end(), c) ==
                out.candidates.end())
                out.candidates.push_back(c);
    for (const auto& links : out.cross_links)
        for (const auto& [c, w] : links)
            if (std::find(out.candidates.begin(), out.candidates.end(), c) ==
                out.candidates.end())
                out.candidates.push_back(c);
}

double CommunityStats::delta_from_profile(const UnitProfile& u, int from, int to) const {
    if (to == from) return 0.0;
    const HetGraph& g = *g_;
    const int L = g.num_types();
    auto link_to = [](const std::vector<std::pair<int, double>>& links, int c) {
        for (const auto& [cc, ww] : links)
            if (cc == c) return ww;
        return 0.0;
    };
    double total = 0;
    for (int t = 0; t < L; ++t) {
        const double m = g.homo_edge_total(t);
        if (m <= 0) continue;
        const double k_to = link_to(u.homo_links[t], to);
        const double k_from = link_to(u.homo_links[t], from);
        const double du = u.homo_degree[t];
        const double d_from = homo_deg_sum_[t][from];
        const double d_to = homo_deg_sum_[t][to];
        total += (2.0 * (k_to - k_from) -
                  2.0 * du * (d_to - d_from + du) / (2.0 * m)) /
                 (2.0 * m);
    }
    for (int pr = 0; pr < g.cross_pair_count(); ++pr) {
        const double m = g.cross_edge_total_by_pair(pr);
        if (m <= 0) continue;
        const double k_to = link_to(u.cross_links[pr], to);
        const double k_from = link_to(u.cross_links[pr], from);
        const double uf = u.cross_deg_fwd[pr], ur = u.cross_deg_rev[pr];
        const double f_from = cross_deg_fwd_[pr][from], f_to = cross_deg_fwd_[pr][to];
        const double r_from = cross_deg_rev_[pr][from], r_to = cross_deg_rev_[pr][to];
        const double deg_term = uf * (r_to - r_from) + ur * (f_to - f_from) + 2.0 * uf * ur;
        total += 2.0 * ((k_to - k_from) - deg_term / m) / m;
    }
    return total / (static_cast<double>(L) * L);
}

void CommunityStats::apply_from_profile(const UnitProfile& u, int from, int to) {
    if (to == from) return;
    const HetGraph& g = *g_;
    auto link_to = [](const std::vector<std::pair<int, double>>& links, int c) {
        for (const auto& [cc, ww] : links)
            if (cc == c) return ww;
        return 0.0;
    };
    for (int t = 0; t < g.num_types(); ++t) {
        homo_deg_sum_[t][from] -= u.homo_degree[t];
        homo_deg_sum_[t][to] += u.homo_degree[t];
        const double k_to = link_to(u.homo_links[t], to);
        const double k_from = link_to(u.homo_links[t], from);
        homo_internal_[t][from] -= 2.0 * k_from + u.homo_intra[t];
        homo_internal_[t][to] += 2.0 * k_to + u.homo_intra[t];
    }
    for (int pr = 0; pr < g.cross_pair_count(); ++pr) {
        cross_deg_fwd_[pr][from] -= u.cross_deg_fwd[pr];
        cross_deg_fwd_[pr][to] += u.cross_deg_fwd[pr];
        cross_deg_rev_[pr][from] -= u.cross_deg_rev[pr];
        cross_deg_rev_[pr][to] += u.cross_deg_rev[pr];
        const double k_to = link_to(u.cross_links[pr], to);
        const double k_from = link_to(u.cross_links[pr], from);
        cross_internal_[pr][from] -= k_from + u.cross_intra[pr];
        cross_internal_[pr][to] += k_to + u.cross_intra[pr];
    }
    if ((community_size_[from] -= u.member_count) == 0) --nonempty_;
    if ((community_size_[to] += u.member_count) == u.member_count) ++nonempty_;
}

double CommunityStats::delta_move(std::span<const NodeRef> members, const Partition& p,
                                  int from, int to) const {
    if (members.empty()) throw std::invalid_argument("delta_move: empty unit");
    for (const NodeRef& m : members)
        if (p.label(m) != from)
            throw std::invalid_argument("delta_move: unit is not wholly in 'from'");
    if (to == from) return 0.0;
    if (to < 0 || to >= slots_) throw std::out_of_range("delta_move: target out of range");
    UnitProfile prof;
    profile_unit(members, p, prof);
    return delta_from_profile(prof, from, to);
}

double modularity(const HetGraph& g, const Partition& p) {
    return CommunityStats::build(g, p).modularity();
}

} // namespace hetnet
