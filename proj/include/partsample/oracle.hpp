#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "partsample/graph.hpp"
#include "partsample/number.hpp"
#include "partsample/sampler.hpp"

namespace partsample {

/// Limits on the exhaustive generators. Every limit is checked before any
/// enumeration starts; violations throw BudgetExceeded.
struct EnumerationBudget {
    std::size_t max_nodes = 12;
    std::uint64_t max_trees = 100000;
    std::uint64_t max_set_partitions = 10000000;
};

/// Largest edge count exact_randmst_tree_distribution accepts (|E|! orderings).
inline constexpr std::size_t kMaxRandMstEdges = 9;

/// Every spanning tree exactly once, in lexicographic edge-set order.
/// The count is pre-checked with the determinant.
std::vector<SpanningTree> enumerate_spanning_trees(const Graph& g, const EnumerationBudget& budget = {});

/// Stirling number of the second kind, S(n, k).
BigInt set_partition_count(std::size_t n, std::size_t k);

/// Every connected k-partition, canonical and sorted, found by walking the
/// k-block restricted growth strings and keeping those whose blocks are
/// all connected.
std::vector<Partition> enumerate_connected_partitions(const Graph& g, std::size_t k, const EnumerationBudget& budget = {});

/// Direct law of the sampling algorithm for one partition, by iterating every
/// spanning tree and every (K-1)-subset of its edges.
struct BruteForceCount {
    Rational probability;
    /// (tree, subset) pairs producing the partition.
    BigInt producing_pairs;
    /// Trees with at least one producing subset.
    BigInt compatible_trees;
    /// Largest number of producing subsets seen for a single tree.
    std::uint64_t max_subsets_per_tree = 0;
};

BruteForceCount brute_force_count(const Graph& g, const Partition& c, const EnumerationBudget& budget = {});

Rational brute_force_probability(const Graph& g, const Partition& c, const EnumerationBudget& budget = {});

/// The full brute-force law over all partitions reachable with k blocks.
std::map<Partition, Rational> brute_force_law(const Graph& g, std::size_t k, const EnumerationBudget& budget = {});

/// Exact tree law of sample_spanning_tree_randmst: each of the |E|! edge
/// rank orders is equally likely, and Kruskal maps each order to a tree.
std::map<SpanningTree, Rational> exact_randmst_tree_distribution(const Graph& g);

/// Partition law induced by drawing a tree from `tree_law` and deleting a
/// uniform (k-1)-subset of its edges.
std::map<Partition, Rational> partition_law_from_tree_law(const std::map<SpanningTree, Rational>& tree_law, std::size_t k);

}  // namespace partsample
