#include "partsample/partition_prob.hpp"

#include "partsample/errors.hpp"
#include "partsample/matrix_tree.hpp"

namespace partsample {

namespace {

void require_connected_graph(const Graph& g) {
    if (!is_connected(g)) throw PreconditionError("graph is not connected");
}

}  // namespace

bool validate_partition(const Graph& g, const Partition& c, std::size_t k) {
    require_cover(g, c);
    return c.block_count() == k && blocks_connected(g, c);
}

ProbabilityBreakdown probability_breakdown(const Graph& g, const Partition& c) {
    require_connected_graph(g);
    require_cover(g, c);

    ProbabilityBreakdown out;
    out.trees_in_graph = count_spanning_trees(g);
    out.trees_in_contraction = count_spanning_trees(contract(g, c));
    out.edge_removals = binomial(g.node_count() - 1, c.block_count() - 1);
    out.compatible_trees = out.trees_in_contraction;
    for (const auto& block : c.blocks()) {
        auto& t = out.trees_in_block.emplace_back(count_spanning_trees(induced_subgraph(g, block).graph));
        out.compatible_trees *= t;
    }
    out.probability = Rational(out.compatible_trees, out.edge_removals * out.trees_in_graph);
    out.probability.canonicalize();
    return out;
}

Rational partition_probability(const Graph& g, const Partition& c) { return probability_breakdown(g, c).probability; }

Rational partition_probability(const Graph& g, const Partition& c, std::size_t k) {
    if (k != c.block_count())
        throw PreconditionError("k=" + std::to_string(k) + " but the partition has " + std::to_string(c.block_count()) + " blocks");
    return partition_probability(g, c);
}

BigInt compatible_tree_count(const Graph& g, const Partition& c) { return probability_breakdown(g, c).compatible_trees; }

Rational two_block_probability(const Graph& g, std::span<const NodeId> s) {
    require_connected_graph(g);
    const auto cut = boundary_edges(g, s);

    std::vector<char> in(g.node_count(), 0);
    for (NodeId v : s) in[v] = 1;
    std::vector<NodeId> rest;
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (!in[v]) rest.push_back(v);

    const BigInt inside = count_spanning_trees(induced_subgraph(g, s).graph);
    const BigInt outside = count_spanning_trees(induced_subgraph(g, rest).graph);
    Rational p(inside * outside * static_cast<unsigned long>(cut.size()),
               BigInt(static_cast<unsigned long>(g.node_count() - 1)) * count_spanning_trees(g));
    p.canonicalize();
    return p;
}

}  // namespace partsample
