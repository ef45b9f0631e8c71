#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "partsample/graph.hpp"

namespace partsample {

/// Seedable generator. A (seed, stream) pair fully determines the draw
/// sequence within one build; distinct streams are independent for Monte
/// Carlo purposes.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    /// Uniform integer in [0, bound).
    std::size_t below(std::size_t bound);
    /// Uniform double in [0, 1).
    double unit();

    std::mt19937_64& engine() { return engine_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

/// Edge set of a spanning tree, sorted.
class SpanningTree {
public:
    SpanningTree() = default;
    /// Throws PreconditionError unless `edges` is a spanning tree of an
    /// n-node graph (n-1 edges, acyclic).
    SpanningTree(std::size_t n, std::vector<Edge> edges);

    std::size_t node_count() const { return n_; }
    std::span<const Edge> edges() const { return edges_; }

    friend bool operator==(const SpanningTree&, const SpanningTree&) = default;
    friend auto operator<=>(const SpanningTree&, const SpanningTree&) = default;

private:
    std::size_t n_ = 1;
    std::vector<Edge> edges_;
};

enum class TreeMode { UniformTree, RandMstTree };

TreeMode parse_tree_mode(std::string_view name);
std::string_view to_string(TreeMode mode);

/// Uniform spanning tree via Wilson's loop-erased random walks rooted at
/// node 0. Throws PreconditionError on a disconnected graph.
SpanningTree sample_spanning_tree_uniform(const Graph& g, Rng& rng);

/// Minimum spanning tree under i.i.d. uniform edge weights (ties broken by
/// edge index). Not uniform over spanning trees in general.
SpanningTree sample_spanning_tree_randmst(const Graph& g, Rng& rng);

SpanningTree sample_spanning_tree(const Graph& g, Rng& rng, TreeMode mode);

/// `count` distinct indices from [0, population), each subset equally
/// likely, via a partial Fisher-Yates shuffle. Returned sorted.
std::vector<std::size_t> choose_subset(std::size_t population, std::size_t count, Rng& rng);

/// Components of the forest left after deleting `removed` from `tree`.
/// Throws PreconditionError if a removed edge is not a tree edge or repeats.
Partition components_after_deletion(const SpanningTree& tree, std::span<const Edge> removed);

/// Samples a tree, deletes k-1 of its edges uniformly without replacement,
/// and returns the resulting connected k-partition.
Partition sample_connected_partition(const Graph& g, std::size_t k, Rng& rng, TreeMode mode = TreeMode::UniformTree);

}  // namespace partsample
