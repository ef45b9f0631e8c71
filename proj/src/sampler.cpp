#include "partsample/sampler.hpp"

#include <algorithm>
#include <numeric>

#include "partsample/errors.hpp"
#include "partsample/union_find.hpp"

namespace partsample {

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
}

std::size_t Rng::below(std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(engine_);
}

double Rng::unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

SpanningTree::SpanningTree(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (edges_.size() + 1 != n_) throw PreconditionError("a spanning tree on " + std::to_string(n_) + " nodes has " + std::to_string(n_ - 1) + " edges");
    std::sort(edges_.begin(), edges_.end());
    detail::UnionFind uf(n_);
    for (const Edge& e : edges_) {
        if (e.v >= n_) throw PreconditionError("tree edge out of range");
        if (!uf.unite(e.u, e.v)) throw PreconditionError("tree edges contain a cycle");
    }
}

TreeMode parse_tree_mode(std::string_view name) {
    if (name == "uniform-tree") return TreeMode::UniformTree;
    if (name == "randmst-tree") return TreeMode::RandMstTree;
    throw PreconditionError("unknown tree mode '" + std::string(name) + "'");
}

std::string_view to_string(TreeMode mode) {
    return mode == TreeMode::UniformTree ? "uniform-tree" : "randmst-tree";
}

namespace {

void require_connected(const Graph& g) {
    if (!is_connected(g)) throw PreconditionError("graph is not connected");
}

}  // namespace

SpanningTree sample_spanning_tree_uniform(const Graph& g, Rng& rng) {
    require_connected(g);
    const std::size_t n = g.node_count();
    std::vector<char> in_tree(n, 0);
    std::vector<NodeId> next(n, 0);
    in_tree[0] = 1;

    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (NodeId start = 1; start < n; ++start) {
        // Walk until the tree is hit. Overwriting next[] on revisits erases
        // loops in the order they were closed.
        for (NodeId u = start; !in_tree[u]; u = next[u]) {
            auto nbrs = g.neighbors(u);
            next[u] = nbrs[rng.below(nbrs.size())];
        }
        for (NodeId u = start; !in_tree[u]; u = next[u]) {
            in_tree[u] = 1;
            edges.emplace_back(u, next[u]);
        }
    }
    return SpanningTree(n, std::move(edges));
}

SpanningTree sample_spanning_tree_randmst(const Graph& g, Rng& rng) {
    require_connected(g);
    const auto all = g.edges();
    std::vector<std::pair<double, std::size_t>> keyed(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) keyed[i] = {rng.unit(), i};
    std::sort(keyed.begin(), keyed.end());

    detail::UnionFind uf(g.node_count());
    std::vector<Edge> edges;
    edges.reserve(g.node_count() - 1);
    for (const auto& [weight, index] : keyed) {
        if (uf.unite(all[index].u, all[index].v)) {
            edges.push_back(all[index]);
            if (edges.size() + 1 == g.node_count()) break;
        }
    }
    return SpanningTree(g.node_count(), std::move(edges));
}

SpanningTree sample_spanning_tree(const Graph& g, Rng& rng, TreeMode mode) {
    return mode == TreeMode::UniformTree ? sample_spanning_tree_uniform(g, rng) : sample_spanning_tree_randmst(g, rng);
}

std::vector<std::size_t> choose_subset(std::size_t population, std::size_t count, Rng& rng) {
    if (count > population) throw PreconditionError("cannot choose " + std::to_string(count) + " of " + std::to_string(population));
    std::vector<std::size_t> pool(population);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < count; ++i) std::swap(pool[i], pool[i + rng.below(population - i)]);
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

Partition components_after_deletion(const SpanningTree& tree, std::span<const Edge> removed) {
    const auto edges = tree.edges();
    std::vector<char> drop(edges.size(), 0);
    for (const Edge& e : removed) {
        auto it = std::lower_bound(edges.begin(), edges.end(), e);
        if (it == edges.end() || *it != e)
            throw PreconditionError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") is not in the tree");
        auto& flag = drop[static_cast<std::size_t>(it - edges.begin())];
        if (flag) throw PreconditionError("edge removed twice");
        flag = 1;
    }
    detail::UnionFind uf(tree.node_count());
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (!drop[i]) uf.unite(edges[i].u, edges[i].v);
    auto labels = uf.labels();
    return Partition::from_labels(labels);
}

Partition sample_connected_partition(const Graph& g, std::size_t k, Rng& rng, TreeMode mode) {
    if (k < 1 || k > g.node_count())
        throw PreconditionError("k=" + std::to_string(k) + " outside 1.." + std::to_string(g.node_count()));
    SpanningTree tree = sample_spanning_tree(g, rng, mode);
    auto picked = choose_subset(tree.edges().size(), k - 1, rng);
    std::vector<Edge> removed;
    removed.reserve(picked.size());
    for (auto i : picked) removed.push_back(tree.edges()[i]);
    return components_after_deletion(tree, removed);
}

}  // namespace partsample
