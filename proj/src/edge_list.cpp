#include "hetnet/edge_list.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace hetnet {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
        std::size_t tab = line.find('\t', pos);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(pos));
            break;
        }
        fields.push_back(line.substr(pos, tab - pos));
        pos = tab + 1;
    }
    return fields;
}

} // namespace

EdgeListGraph read_edge_list(std::istream& in) {
    NodeNames names;
    std::unordered_map<std::string, int> type_ids;
    std::vector<std::unordered_map<std::string, int>> node_ids;

    auto intern_type = [&](const std::string& name) {
        auto it = type_ids.find(name);
        if (it != type_ids.end()) return it->second;
        int id = static_cast<int>(names.type_names.size());
        type_ids.emplace(name, id);
        names.type_names.push_back(name);
        names.node_names.emplace_back();
        node_ids.emplace_back();
        return id;
    };
    auto intern_node = [&](int type, const std::string& name) {
        auto it = node_ids[type].find(name);
        if (it != node_ids[type].end()) return it->second;
        int id = static_cast<int>(names.node_names[type].size());
        node_ids[type].emplace(name, id);
        names.node_names[type].push_back(name);
        return id;
    };

    std::vector<WeightedEdge> edges;
    std::vector<int> edge_lines;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_tabs(line);
        if (fields.size() != 4 && fields.size() != 5)
            throw ParseError(lineno, "expected 4 or 5 tab-separated fields, got " +
                                         std::to_string(fields.size()));
        for (std::size_t f = 0; f < 4; ++f)
            if (fields[f].empty()) throw ParseError(lineno, "empty field");
        double w = 1.0;
        if (fields.size() == 5) {
            try {
                std::size_t used = 0;
                w = std::stod(fields[4], &used);
                if (used != fields[4].size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ParseError(lineno, "bad weight '" + fields[4] + "'");
            }
            if (w != 1.0)
                throw ParseError(lineno, "simple input graphs require weight 1");
        }
        const int ta = intern_type(fields[0]);
        const int tb = intern_type(fields[2]);
        const NodeRef a{ta, intern_node(ta, fields[1])};
        const NodeRef b{tb, intern_node(tb, fields[3])};
        if (a == b)
            throw ParseError(lineno, "self-loop on " + fields[0] + " " + fields[1]);
        edges.push_back({a, b, w});
        edge_lines.push_back(lineno);
    }

    std::vector<int> sizes;
    sizes.reserve(names.node_names.size());
    for (const auto& v : names.node_names) sizes.push_back(static_cast<int>(v.size()));
    if (sizes.empty()) throw ParseError(lineno == 0 ? 1 : lineno, "no edges in input");

    // duplicate detection with line attribution, then the strict builder
    std::unordered_map<std::uint64_t, int> first_line;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        NodeRef a = edges[e].a, b = edges[e].b;
        if (b < a) std::swap(a, b);
        const std::uint64_t key = (static_cast<std::uint64_t>(a.type) << 56) |
                                  (static_cast<std::uint64_t>(a.index) << 32) |
                                  (static_cast<std::uint64_t>(b.type) << 24) |
                                  static_cast<std::uint64_t>(b.index);
        auto [it, inserted] = first_line.emplace(key, edge_lines[e]);
        if (!inserted)
            throw ParseError(edge_lines[e], "duplicate undirected edge (first seen at line " +
                                                std::to_string(it->second) + ")");
    }

    EdgeListGraph out;
    out.graph = HetGraph::build(static_cast<int>(sizes.size()), sizes, edges, GraphMode::Simple);
    out.names = std::move(names);
    return out;
}

EdgeListGraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const HetGraph& g, const NodeNames& names) {
    auto emit = [&](int t1, int i, int t2, int j, double w) {
        out << names.type_names[t1] << '\t' << names.node_names[t1][i] << '\t'
            << names.type_names[t2] << '\t' << names.node_names[t2][j];
        if (w != 1.0) out << '\t' << w;
        out << '\n';
    };
    for (int t = 0; t < g.num_types(); ++t)
        for (int i = 0; i < g.type_size(t); ++i)
            for (const Neighbor& nb : g.homo_neighbors(t, i))
                if (nb.index > i) emit(t, i, t, nb.index, nb.weight);
    for (int t1 = 0; t1 < g.num_types(); ++t1)
        for (int t2 = t1 + 1; t2 < g.num_types(); ++t2)
            for (int i = 0; i < g.type_size(t1); ++i)
                for (const Neighbor& nb : g.cross_neighbors(t1, i, t2))
                    emit(t1, i, t2, nb.index, nb.weight);
}

NodeNames default_names(const HetGraph& g) {
    NodeNames names;
    for (int t = 0; t < g.num_types(); ++t) {
        names.type_names.push_back(std::to_string(t + 1));
        names.node_names.emplace_back();
        for (int i = 0; i < g.type_size(t); ++i)
            names.node_names.back().push_back(std::to_string(i));
    }
    return names;
}

} // namespace hetnet
