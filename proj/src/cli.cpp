#include "hetnet/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "hetnet/baselines.hpp"
#include "hetnet/edge_list.hpp"
#include "hetnet/louvain.hpp"
#include "hetnet/metrics.hpp"
#include "hetnet/oracle.hpp"
#include "hetnet/sbm.hpp"

namespace hetnet::cli {

namespace {

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

// writes to a file when a path is given, otherwise to `fallback`
class OutputTarget {
  public:
    OutputTarget(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
            stream_ = &file_;
        }
    }
    std::ostream& get() { return *stream_; }

  private:
    std::ofstream file_;
    std::ostream* stream_;
};

} // namespace

int run_detect(const DetectOptions& opt, std::ostream& out, std::ostream& err) {
    EdgeListGraph data;
    try {
        data = read_edge_list_file(opt.input_path);
    } catch (const std::exception& e) {
        err << "detect: " << e.what() << "\n";
        return kExitParseError;
    }
    const HetGraph& g = data.graph;
    if (opt.restarts < 1) {
        err << "detect: --restarts must be at least 1\n";
        return kExitBadFlags;
    }
    if (opt.target_k && (*opt.target_k < 1 || *opt.target_k > g.total_nodes())) {
        err << "detect: --k must be between 1 and the node count (" << g.total_nodes() << ")\n";
        return kExitBadFlags;
    }
    if (opt.oracle && g.total_nodes() > 12) {
        err << "detect: --oracle supports at most 12 nodes, input has " << g.total_nodes()
            << "\n";
        return kExitBadFlags;
    }
    if (opt.format != "json" && opt.format != "csv") {
        err << "detect: unknown format '" << opt.format << "'\n";
        return kExitBadFlags;
    }

    LouvainConfig cfg;
    cfg.restarts = opt.restarts;
    cfg.seed = opt.seed;
    cfg.target_k = opt.target_k;

    const auto t0 = std::chrono::steady_clock::now();
    LouvainResult res;
    try {
        res = run_louvain(g, cfg);
    } catch (const std::exception& e) {
        err << "detect: " << e.what() << "\n";
        return kExitBadFlags;
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::optional<OracleResult> oracle;
    if (opt.oracle) oracle = max_modularity_exhaustive(g);

    try {
        OutputTarget target(opt.out_path, out);
        std::ostream& os = target.get();
        if (opt.format == "json") {
            nlohmann::ordered_json doc;
            doc["nodes"] = nlohmann::ordered_json::array();
            for (int t = 0; t < g.num_types(); ++t)
                for (int i = 0; i < g.type_size(t); ++i)
                    doc["nodes"].push_back({{"type", data.names.type_names[t]},
                                            {"id", data.names.node_names[t][i]},
                                            {"community", res.partition.labels[t][i]}});
            doc["Q"] = res.modularity;
            doc["K"] = res.num_communities;
            doc["kappa"] = opt.restarts;
            doc["seed"] = opt.seed;
            doc["wall_time_sec"] = wall;
            if (oracle) {
                doc["oracle_Q"] = oracle->best_q;
                doc["oracle_gap"] = oracle->best_q - res.modularity;
            }
            os << doc.dump(2) << "\n";
        } else {
            os << "# Q=" << format_real(res.modularity) << " K=" << res.num_communities
               << " kappa=" << opt.restarts << " seed=" << opt.seed
               << " wall_time_sec=" << format_real(wall);
            if (oracle)
                os << " oracle_Q=" << format_real(oracle->best_q)
                   << " oracle_gap=" << format_real(oracle->best_q - res.modularity);
            os << "\ntype,id,community\n";
            for (int t = 0; t < g.num_types(); ++t)
                for (int i = 0; i < g.type_size(t); ++i)
                    os << data.names.type_names[t] << ',' << data.names.node_names[t][i] << ','
                       << res.partition.labels[t][i] << "\n";
        }
    } catch (const std::exception& e) {
        err << "detect: " << e.what() << "\n";
        return kExitBadFlags;
    }
    return kExitOk;
}

namespace {

// per-type NMI against the planted labels; a zero-edge type under method 2
// is scored 0 by convention (nothing recoverable from that block alone)
void emit_rows(std::ostream& os, int setting, double r3, int rep, const std::string& method,
               const std::vector<std::vector<int>>& pred_per_type, const Partition& planted,
               const std::vector<double>& q_per_row, const std::vector<int>& k_per_row,
               const std::vector<bool>* zero_edge) {
    for (std::size_t t = 0; t < pred_per_type.size(); ++t) {
        double score = 0.0;
        if (!zero_edge || !(*zero_edge)[t])
            score = nmi(pred_per_type[t], planted.labels[t]);
        os << setting << ',' << format_real(r3) << ',' << rep << ',' << method << ',' << (t + 1)
           << ',' << format_real(score) << ',' << format_real(q_per_row[t]) << ','
           << k_per_row[t] << "\n";
    }
}

} // namespace

int run_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.setting < 1 || opt.setting > 3) {
        err << "simulate: unknown setting " << opt.setting << "\n";
        return kExitBadFlags;
    }
    if (opt.r3_grid.empty()) {
        err << "simulate: empty r3 grid\n";
        return kExitBadFlags;
    }
    if (opt.reps < 1 || opt.restarts < 1 || opt.n1_per_community < 1 ||
        opt.n2_per_community < 1) {
        err << "simulate: counts must be positive\n";
        return kExitBadFlags;
    }
    for (double r3 : opt.r3_grid) {
        try {
            setting_spec(opt.setting, r3, opt.n1_per_community, opt.n2_per_community);
        } catch (const std::exception& e) {
            err << "simulate: " << e.what() << "\n";
            return kExitBadFlags;
        }
    }

    try {
        OutputTarget target(opt.out_path, out);
        std::ostream& os = target.get();
        os << "setting,r3,rep,method,node_type,nmi,Q,K\n";
        for (std::size_t gi = 0; gi < opt.r3_grid.size(); ++gi) {
            const double r3 = opt.r3_grid[gi];
            const SbmSpec spec =
                setting_spec(opt.setting, r3, opt.n1_per_community, opt.n2_per_community);
            for (int rep = 0; rep < opt.reps; ++rep) {
                const std::uint64_t rep_seed =
                    derive_seed(opt.seed, static_cast<std::uint64_t>(opt.setting), gi,
                                static_cast<std::uint64_t>(rep));
                const SbmSample sample = sample_sbm(spec, rep_seed);

                LouvainConfig cfg;
                cfg.restarts = opt.restarts;
                cfg.seed = rep_seed; // shared by all three methods

                const std::size_t L = sample.planted.labels.size();
                const LouvainResult proposed = run_louvain(sample.graph, cfg);
                emit_rows(os, opt.setting, r3, rep, "proposed", proposed.partition.labels,
                          sample.planted,
                          std::vector<double>(L, proposed.modularity),
                          std::vector<int>(L, proposed.num_communities), nullptr);

                const BaselineResult m1 = method1(sample.graph, cfg);
                emit_rows(os, opt.setting, r3, rep, "method1", m1.global.labels, sample.planted,
                          std::vector<double>(L, m1.q), std::vector<int>(L, m1.k), nullptr);

                const BaselineResult m2 = method2(sample.graph, cfg);
                emit_rows(os, opt.setting, r3, rep, "method2", m2.per_type_labels,
                          sample.planted, m2.q_per_type, m2.k_per_type, &m2.zero_edge_type);
            }
        }
    } catch (const std::exception& e) {
        err << "simulate: " << e.what() << "\n";
        return kExitBadFlags;
    }
    return kExitOk;
}

namespace {

void print_matrix(std::ostream& os, const std::vector<double>& m, int k) {
    for (int a = 0; a < k; ++a) {
        os << "   ";
        for (int b = 0; b < k; ++b) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), " % .6f", m[a * k + b]);
            os << buf;
        }
        os << "\n";
    }
}

} // namespace

int run_check(const CheckOptions& opt, std::ostream& out, std::ostream& err) {
    SbmSpec spec;
    try {
        spec = read_spec_config_file(opt.spec_path);
    } catch (const std::exception& e) {
        err << "check: " << e.what() << "\n";
        return kExitParseError;
    }
    const ConsistencyReport rep = check_consistency(spec);
    const int k = rep.num_communities;
    out << "L = " << spec.num_types << ", K = " << k << ", n = " << spec.total_nodes()
        << ", degree scale n*rho = " << format_real(spec.degree_scale()) << "\n";
    for (const BlockCondition& bc : rep.blocks) {
        out << bc.block << (bc.skipped ? " (skipped: no probability mass)" : "") << "\n";
        if (bc.skipped) continue;
        out << "  T:\n";
        print_matrix(out, bc.T, k);
        out << "  W:\n";
        print_matrix(out, bc.W, k);
    }
    out << "condition sums (diagonal must be > 0, off-diagonal < 0):\n";
    print_matrix(out, rep.condition_sum, k);
    bool diag_ok = true, off_ok = true;
    for (int a = 0; a < k; ++a)
        if (!(rep.condition_sum[a * k + a] > 0)) diag_ok = false;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            if (a != b && !(rep.condition_sum[a * k + b] < 0)) off_ok = false;
    out << "diagonal condition: " << (diag_ok ? "holds" : "violated") << "\n";
    out << "off-diagonal condition: " << (off_ok ? "holds" : "violated") << "\n";
    out << "satisfied: " << (rep.satisfied ? "yes" : "no") << "\n";
    return rep.satisfied ? kExitOk : kExitViolated;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double lo = 0, step = 0, hi = 0;
        char c1 = 0, c2 = 0;
        std::istringstream ss(text);
        if (!(ss >> lo >> c1 >> step >> c2 >> hi) || c1 != ':' || c2 != ':' || step <= 0)
            throw std::invalid_argument("bad grid '" + text + "' (want lo:step:hi)");
        for (double v = lo; v <= hi + 1e-12; v += step) out.push_back(v);
    } else {
        std::istringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            if (used != item.size()) throw std::invalid_argument("bad grid value '" + item + "'");
            out.push_back(v);
        }
    }
    if (out.empty()) throw std::invalid_argument("empty grid '" + text + "'");
    return out;
}

} // namespace hetnet::cli
