#include "partsample/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "partsample/errors.hpp"
#include "partsample/matrix_tree.hpp"
#include "partsample/union_find.hpp"

namespace partsample {

namespace {

void require_connected(const Graph& g) {
    if (!is_connected(g)) throw PreconditionError("graph is not connected");
}

void check_node_budget(const Graph& g, const EnumerationBudget& budget) {
    if (g.node_count() > budget.max_nodes)
        throw BudgetExceeded("graph has " + std::to_string(g.node_count()) + " nodes; enumeration budget allows " + std::to_string(budget.max_nodes));
}

void check_tree_budget(const Graph& g, const EnumerationBudget& budget) {
    check_node_budget(g, budget);
    const BigInt t = count_spanning_trees(g);
    if (t > BigInt(std::to_string(budget.max_trees)))
        throw BudgetExceeded("graph has " + t.get_str() + " spanning trees; enumeration budget allows " + std::to_string(budget.max_trees));
}

void check_k(const Graph& g, std::size_t k) {
    if (k < 1 || k > g.node_count())
        throw PreconditionError("k=" + std::to_string(k) + " outside 1.." + std::to_string(g.node_count()));
}

// Calls fn(mask) for every size-r subset of [0, n), as a 0/1 mask.
template <typename F>
void for_each_subset(std::size_t n, std::size_t r, F&& fn) {
    std::vector<char> mask(n, 0);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(r), 1);
    do {
        fn(mask);
    } while (std::prev_permutation(mask.begin(), mask.end()));
}

Partition forest_components(const SpanningTree& tree, const std::vector<char>& removed) {
    detail::UnionFind uf(tree.node_count());
    const auto edges = tree.edges();
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (!removed[i]) uf.unite(edges[i].u, edges[i].v);
    auto labels = uf.labels();
    return Partition::from_labels(labels);
}

}  // namespace

std::vector<SpanningTree> enumerate_spanning_trees(const Graph& g, const EnumerationBudget& budget) {
    require_connected(g);
    check_tree_budget(g, budget);

    const std::size_t n = g.node_count();
    const auto edges = g.edges();
    std::vector<SpanningTree> out;
    std::vector<Edge> chosen;

    // Branch on each edge in order: take it (if acyclic) or skip it (if the
    // remaining edges can still connect the chosen forest).
    std::function<void(std::size_t, const detail::UnionFind&)> grow = [&](std::size_t i, const detail::UnionFind& forest) {
        if (chosen.size() + 1 == n) {
            out.emplace_back(n, chosen);
            return;
        }
        if (i == edges.size()) return;

        detail::UnionFind with = forest;
        if (with.unite(edges[i].u, edges[i].v)) {
            chosen.push_back(edges[i]);
            grow(i + 1, with);
            chosen.pop_back();
        }

        detail::UnionFind reach = forest;
        for (std::size_t j = i + 1; j < edges.size(); ++j) reach.unite(edges[j].u, edges[j].v);
        if (reach.components() == 1) grow(i + 1, forest);
    };
    grow(0, detail::UnionFind(n));
    return out;
}

BigInt set_partition_count(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    // S(i, j) = j S(i-1, j) + S(i-1, j-1), one row at a time.
    std::vector<BigInt> row(k + 1, 0);
    row[0] = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = std::min(i, k); j >= 1; --j) row[j] = BigInt(static_cast<unsigned long>(j)) * row[j] + row[j - 1];
        row[0] = 0;
    }
    return row[k];
}

std::vector<Partition> enumerate_connected_partitions(const Graph& g, std::size_t k, const EnumerationBudget& budget) {
    require_connected(g);
    check_k(g, k);
    check_node_budget(g, budget);
    const BigInt candidates = set_partition_count(g.node_count(), k);
    if (candidates > BigInt(std::to_string(budget.max_set_partitions)))
        throw BudgetExceeded("S(" + std::to_string(g.node_count()) + "," + std::to_string(k) + ") = " + candidates.get_str() +
                             " set partitions; enumeration budget allows " + std::to_string(budget.max_set_partitions));

    const std::size_t n = g.node_count();
    std::vector<std::size_t> growth(n, 0);
    std::vector<Partition> out;

    auto keep_if_connected = [&] {
        detail::UnionFind uf(n);
        for (const Edge& e : g.edges())
            if (growth[e.u] == growth[e.v]) uf.unite(e.u, e.v);
        if (uf.components() == k) out.push_back(Partition::from_labels(growth));
    };

    // Restricted growth strings: growth[0] = 0, growth[i] <= 1 + max(growth[0..i)).
    std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t i, std::size_t used) {
        if (i == n) {
            if (used == k) keep_if_connected();
            return;
        }
        if (used + (n - i) < k) return;
        for (std::size_t label = 0; label <= used && label < k; ++label) {
            growth[i] = label;
            extend(i + 1, label == used ? used + 1 : used);
        }
    };
    growth[0] = 0;
    extend(1, 1);
    std::sort(out.begin(), out.end());
    return out;
}

BruteForceCount brute_force_count(const Graph& g, const Partition& c, const EnumerationBudget& budget) {
    require_cover(g, c);
    const auto trees = enumerate_spanning_trees(g, budget);
    const std::size_t k = c.block_count();
    const std::size_t tree_edges = g.node_count() - 1;

    BruteForceCount out;
    out.producing_pairs = 0;
    out.compatible_trees = 0;
    for (const auto& tree : trees) {
        std::uint64_t hits = 0;
        for_each_subset(tree_edges, k - 1, [&](const std::vector<char>& removed) {
            if (forest_components(tree, removed) == c) ++hits;
        });
        if (hits > 0) {
            out.producing_pairs += static_cast<unsigned long>(hits);
            out.compatible_trees += 1;
            out.max_subsets_per_tree = std::max(out.max_subsets_per_tree, hits);
        }
    }
    out.probability = Rational(out.producing_pairs, BigInt(static_cast<unsigned long>(trees.size())) * binomial(tree_edges, k - 1));
    out.probability.canonicalize();
    return out;
}

Rational brute_force_probability(const Graph& g, const Partition& c, const EnumerationBudget& budget) {
    return brute_force_count(g, c, budget).probability;
}

std::map<Partition, Rational> brute_force_law(const Graph& g, std::size_t k, const EnumerationBudget& budget) {
    check_k(g, k);
    const auto trees = enumerate_spanning_trees(g, budget);
    const std::size_t tree_edges = g.node_count() - 1;

    std::map<Partition, std::uint64_t> hits;
    for (const auto& tree : trees)
        for_each_subset(tree_edges, k - 1, [&](const std::vector<char>& removed) { ++hits[forest_components(tree, removed)]; });

    const BigInt total = BigInt(static_cast<unsigned long>(trees.size())) * binomial(tree_edges, k - 1);
    std::map<Partition, Rational> law;
    for (const auto& [partition, count] : hits) {
        Rational p(BigInt(static_cast<unsigned long>(count)), total);
        p.canonicalize();
        law.emplace(partition, p);
    }
    return law;
}

std::map<SpanningTree, Rational> exact_randmst_tree_distribution(const Graph& g) {
    require_connected(g);
    const auto edges = g.edges();
    if (edges.size() > kMaxRandMstEdges)
        throw BudgetExceeded("exact random-MST law needs |E|! orderings; |E|=" + std::to_string(edges.size()) + " exceeds " + std::to_string(kMaxRandMstEdges));

    std::vector<std::size_t> order(edges.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::map<SpanningTree, std::uint64_t> hits;
    std::uint64_t orderings = 0;
    do {
        // order[r] is the edge holding rank r (smallest weight first).
        detail::UnionFind uf(g.node_count());
        std::vector<Edge> chosen;
        for (std::size_t idx : order)
            if (uf.unite(edges[idx].u, edges[idx].v)) chosen.push_back(edges[idx]);
        ++hits[SpanningTree(g.node_count(), std::move(chosen))];
        ++orderings;
    } while (std::next_permutation(order.begin(), order.end()));

    std::map<SpanningTree, Rational> law;
    for (const auto& [tree, count] : hits) {
        Rational p(BigInt(static_cast<unsigned long>(count)), BigInt(static_cast<unsigned long>(orderings)));
        p.canonicalize();
        law.emplace(tree, p);
    }
    return law;
}

std::map<Partition, Rational> partition_law_from_tree_law(const std::map<SpanningTree, Rational>& tree_law, std::size_t k) {
    std::map<Partition, Rational> law;
    for (const auto& [tree, weight] : tree_law) {
        const std::size_t tree_edges = tree.edges().size();
        if (k < 1 || k > tree_edges + 1) throw PreconditionError("k=" + std::to_string(k) + " out of range");
        const Rational share = weight / Rational(binomial(tree_edges, k - 1));
        for_each_subset(tree_edges, k - 1, [&](const std::vector<char>& removed) { law[forest_components(tree, removed)] += share; });
    }
    return law;
}

}  // namespace partsample
