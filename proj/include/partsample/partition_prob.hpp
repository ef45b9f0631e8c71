#pragma once

#include <span>
#include <vector>

#include "partsample/graph.hpp"
#include "partsample/number.hpp"

namespace partsample {

/// True iff `c` has exactly `k` blocks and each induces a connected subgraph.
/// Throws PreconditionError if `c` does not cover g's nodes.
bool validate_partition(const Graph& g, const Partition& c, std::size_t k);

/// The factors of the closed form for one partition, kept for auditing.
struct ProbabilityBreakdown {
    BigInt trees_in_graph;              // t(G)
    std::vector<BigInt> trees_in_block; // t(U_k), canonical block order
    BigInt trees_in_contraction;        // t(M(G, C))
    BigInt edge_removals;               // C(n-1, K-1)
    BigInt compatible_trees;            // t(M) * prod t(U_k)
    Rational probability;
};

/// Probability that sample_connected_partition (uniform-tree mode) returns
/// `c`: t(M(G,C)) * prod_k t(U_k) / (C(n-1, K-1) * t(G)), with K the block
/// count. Zero when a block is disconnected. Throws PreconditionError when
/// g is disconnected or `c` does not cover g.
ProbabilityBreakdown probability_breakdown(const Graph& g, const Partition& c);

Rational partition_probability(const Graph& g, const Partition& c);

/// Same, but fails when `k` disagrees with the block count.
Rational partition_probability(const Graph& g, const Partition& c, std::size_t k);

/// Spanning trees of g from which `c` arises by deleting K-1 edges.
BigInt compatible_tree_count(const Graph& g, const Partition& c);

/// Two-block special case, computed through the cut size:
/// t(S) t(V\S) |boundary(S)| / ((n-1) t(G)).
Rational two_block_probability(const Graph& g, std::span<const NodeId> s);

}  // namespace partsample
