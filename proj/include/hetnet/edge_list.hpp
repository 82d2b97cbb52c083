#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hetnet/graph.hpp"

namespace hetnet {

// String identities from a typed edge-list file. Type ids and node indices
// are assigned in order of first appearance.
struct NodeNames {
    std::vector<std::string> type_names;              // by type id
    std::vector<std::vector<std::string>> node_names; // [type][index]
};

class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

struct EdgeListGraph {
    HetGraph graph;
    NodeNames names;
};

// Typed edge-list format (TSV): lines are
//   TYPE_A <tab> ID_A <tab> TYPE_B <tab> ID_B [<tab> WEIGHT]
// Comment lines start with '#', blank lines are skipped, endpoint order is
// irrelevant. Input graphs are simple: weight must be 1 when given, and
// self-loops or repeated undirected edges are rejected with the offending
// line number.
EdgeListGraph read_edge_list(std::istream& in);
EdgeListGraph read_edge_list_file(const std::string& path);

void write_edge_list(std::ostream& out, const HetGraph& g, const NodeNames& names);

// "1".."L" type names, "0".."n-1" node names, for graphs built in memory
NodeNames default_names(const HetGraph& g);

} // namespace hetnet
