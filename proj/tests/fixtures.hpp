#pragma once

#include <string>
#include <utility>
#include <vector>

#include "partsample/graph.hpp"

namespace partsample::testing {

/// Reduced fraction; gmpxx leaves two-argument construction unreduced.
inline Rational frac(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string data_path(const std::string& name) { return std::string(PARTSAMPLE_DATA_DIR) + "/" + name; }

inline Graph from_pairs(std::size_t n, std::vector<std::pair<NodeId, NodeId>> pairs) {
    std::vector<Edge> edges;
    for (auto [a, b] : pairs) edges.emplace_back(a, b);
    return Graph(n, std::move(edges));
}

/// The 10-node worked example, 0-based.
inline Graph paper_graph() { return load_graph_file(data_path("paper_graph.adj"), GraphFormat::AdjacencyMatrix); }

/// ({1,2,3,4},{5,6,7},{8,9,10}) in 1-based terms.
inline Partition paper_partition() { return Partition({{0, 1, 2, 3}, {4, 5, 6}, {7, 8, 9}}); }

inline Graph triangle() { return complete_graph(3); }

/// 4-cycle 0-1-2-3-0 plus chord 0-2.
inline Graph cycle_chord() { return from_pairs(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}); }

/// 5-cycle plus chord 0-2.
inline Graph cycle5_chord() { return from_pairs(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 2}}); }

/// G(6, 0.5) draws conditioned on connectivity (seeds 11 and 29), frozen.
inline Graph random_graph_a() { return from_pairs(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}, {2, 4}, {2, 5}, {4, 5}}); }
inline Graph random_graph_b() { return from_pairs(6, {{0, 1}, {0, 2}, {0, 5}, {1, 2}, {1, 4}, {1, 5}, {2, 3}, {3, 5}, {4, 5}}); }

struct NamedGraph {
    std::string name;
    Graph graph;
};

/// Connected fixtures on at most 6 nodes.
inline std::vector<NamedGraph> small_suite() {
    std::vector<NamedGraph> out;
    out.push_back({"single", Graph(1, {})});
    for (std::size_t n = 2; n <= 6; ++n) out.push_back({"path" + std::to_string(n), path_graph(n)});
    for (std::size_t n = 3; n <= 6; ++n) out.push_back({"cycle" + std::to_string(n), cycle_graph(n)});
    for (std::size_t n = 2; n <= 6; ++n) out.push_back({"complete" + std::to_string(n), complete_graph(n)});
    out.push_back({"cycle4+chord", cycle_chord()});
    out.push_back({"cycle5+chord", cycle5_chord()});
    out.push_back({"random6a", random_graph_a()});
    out.push_back({"random6b", random_graph_b()});
    return out;
}

/// Every labeled graph on n nodes (one per edge subset of K_n).
inline std::vector<Graph> all_labeled_graphs(std::size_t n) {
    std::vector<std::pair<NodeId, NodeId>> slots;
    for (NodeId a = 0; a < n; ++a)
        for (NodeId b = a + 1; b < n; ++b) slots.emplace_back(a, b);
    std::vector<Graph> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
        std::vector<std::pair<NodeId, NodeId>> chosen;
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (mask >> i & 1) chosen.push_back(slots[i]);
        out.push_back(from_pairs(n, chosen));
    }
    return out;
}

}  // namespace partsample::testing
