#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "partsample/number.hpp"

namespace partsample {

using NodeId = std::uint32_t;

/// Undirected edge with `u < v`.
struct Edge {
    NodeId u = 0;
    NodeId v = 0;

    Edge() = default;
    Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

    bool touches(NodeId x) const { return u == x || v == x; }
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

namespace detail {
struct TreeCountMemo {
    std::once_flag once;
    BigInt value;
};
}  // namespace detail

/// Simple undirected graph on nodes 0..n-1.
///
/// Immutable once built. The edge list is kept sorted so two equal graphs
/// compare and serialize identically. Copies share the memoized spanning
/// tree count.
class Graph {
public:
    Graph() : Graph(1, {}) {}

    /// Throws PreconditionError on self loops, duplicate edges, ids >= n, or n == 0.
    Graph(std::size_t n, std::vector<Edge> edges);

    std::size_t node_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::span<const Edge> edges() const { return edges_; }
    std::span<const NodeId> neighbors(NodeId v) const { return adjacency_.at(v); }
    std::size_t degree(NodeId v) const { return adjacency_.at(v).size(); }
    bool has_edge(NodeId a, NodeId b) const;

    /// Index of `e` in edges(), or edge_count() when absent.
    std::size_t edge_index(const Edge& e) const;

    friend bool operator==(const Graph& a, const Graph& b) { return a.edges_ == b.edges_ && a.node_count() == b.node_count(); }

private:
    friend const BigInt& memoized_tree_count(const Graph& g);

    std::vector<Edge> edges_;
    std::vector<std::vector<NodeId>> adjacency_;
    std::shared_ptr<detail::TreeCountMemo> memo_;
};

/// Loopless multigraph stored as a dense symmetric multiplicity matrix.
class Multigraph {
public:
    explicit Multigraph(std::size_t k);

    std::size_t node_count() const { return k_; }
    std::uint64_t multiplicity(std::size_t i, std::size_t j) const { return mult_.at(i * k_ + j); }
    /// Adds `count` parallel edges between distinct nodes i and j.
    void add_edges(std::size_t i, std::size_t j, std::uint64_t count = 1);
    std::uint64_t total_edges() const;
    std::vector<std::vector<std::uint64_t>> matrix() const;

    friend bool operator==(const Multigraph&, const Multigraph&) = default;

private:
    std::size_t k_;
    std::vector<std::uint64_t> mult_;
};

/// Unlabeled set partition of 0..n-1 in canonical form: ids ascending within
/// each block, blocks ordered by their smallest id.
class Partition {
public:
    Partition() = default;
    /// Canonicalizes. Throws PreconditionError unless the blocks are nonempty,
    /// pairwise disjoint, and cover exactly 0..N-1 for N = total size.
    explicit Partition(std::vector<std::vector<NodeId>> blocks);

    /// Builds from a block label per node (labels need not be contiguous).
    static Partition from_labels(std::span<const std::size_t> labels);

    std::size_t block_count() const { return blocks_.size(); }
    std::size_t node_count() const { return block_of_.size(); }
    const std::vector<std::vector<NodeId>>& blocks() const { return blocks_; }
    const std::vector<NodeId>& block(std::size_t i) const { return blocks_.at(i); }
    /// Canonical index of the block containing `v`.
    std::size_t block_of(NodeId v) const { return block_of_.at(v); }

    friend bool operator==(const Partition& a, const Partition& b) { return a.blocks_ == b.blocks_; }
    friend auto operator<=>(const Partition& a, const Partition& b) { return a.blocks_ <=> b.blocks_; }

private:
    std::vector<std::vector<NodeId>> blocks_;
    std::vector<std::size_t> block_of_;
};

/// Dense square matrix of arbitrary-precision integers.
class IntMatrix {
public:
    explicit IntMatrix(std::size_t size) : size_(size), cells_(size * size) {}

    std::size_t size() const { return size_; }
    BigInt& operator()(std::size_t r, std::size_t c) { return cells_[r * size_ + c]; }
    const BigInt& operator()(std::size_t r, std::size_t c) const { return cells_[r * size_ + c]; }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t size_;
    std::vector<BigInt> cells_;
};

enum class GraphFormat { EdgeList, AdjacencyMatrix };

GraphFormat parse_graph_format(std::string_view name);

/// Parses a graph document. Ids in files are 1-based. Throws ParseError.
Graph load_graph(std::string_view text, GraphFormat format);
Graph load_graph_file(const std::string& path, GraphFormat format);

/// Edge-list document with an "n" header; load_graph() inverts it.
std::string serialize_edge_list(const Graph& g);

/// Partition document: one block per line, 1-based ids. Throws ParseError.
Partition load_partition(std::string_view text);
Partition load_partition_file(const std::string& path);
std::string serialize_partition(const Partition& c);

bool is_connected(const Graph& g);

struct InducedSubgraph {
    Graph graph;
    /// original_id[i] is the id in the host graph of subgraph node i.
    std::vector<NodeId> original_id;
};

/// Subgraph induced by `nodes`, relabeled by ascending original id.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

/// Edges with exactly one endpoint in `s`. Requires s nonempty and proper.
std::vector<Edge> boundary_edges(const Graph& g, std::span<const NodeId> s);

/// Collapses each block to one node. Intra-block edges vanish; node k of the
/// result is the k-th canonical block.
Multigraph contract(const Graph& g, const Partition& c);

IntMatrix laplacian(const Graph& g);
IntMatrix laplacian(const Multigraph& m);

/// Every block induces a connected subgraph of g. Requires c to cover g.
bool blocks_connected(const Graph& g, const Partition& c);

/// Throws PreconditionError unless c partitions exactly g's node set.
void require_cover(const Graph& g, const Partition& c);

// Named fixtures.
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);

}  // namespace partsample
