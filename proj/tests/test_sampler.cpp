#include <doctest.h>

#include <map>
#include <set>

#include "fixtures.hpp"
#include "partsample/errors.hpp"
#include "partsample/matrix_tree.hpp"
#include "partsample/montecarlo.hpp"
#include "partsample/oracle.hpp"
#include "partsample/partition_prob.hpp"
#include "partsample/sampler.hpp"

using namespace partsample;
using namespace partsample::testing;

namespace {

constexpr double kAlpha = 0.001;

std::map<SpanningTree, std::uint64_t> draw_trees(const Graph& g, TreeMode mode, std::uint64_t samples, std::uint64_t seed) {
    Rng rng(seed);
    std::map<SpanningTree, std::uint64_t> tally;
    for (std::uint64_t i = 0; i < samples; ++i) ++tally[sample_spanning_tree(g, rng, mode)];
    return tally;
}

bool tree_of(const Graph& g, const SpanningTree& t) {
    if (t.node_count() != g.node_count()) return false;
    for (const Edge& e : t.edges())
        if (!g.has_edge(e.u, e.v)) return false;
    return true;
}

}  // namespace

TEST_CASE("Rng streams are reproducible and distinct") {
    Rng a(42, 3), b(42, 3), c(42, 4), d(43, 3);
    std::vector<std::uint64_t> xa, xb, xc, xd;
    for (int i = 0; i < 16; ++i) {
        xa.push_back(a.engine()());
        xb.push_back(b.engine()());
        xc.push_back(c.engine()());
        xd.push_back(d.engine()());
    }
    CHECK(xa == xb);
    CHECK(xa != xc);
    CHECK(xa != xd);
}

TEST_CASE("SpanningTree validates its edges") {
    CHECK_NOTHROW(SpanningTree(3, {Edge(0, 1), Edge(1, 2)}));
    CHECK_THROWS_AS(SpanningTree(3, {Edge(0, 1)}), PreconditionError);
    CHECK_THROWS_AS(SpanningTree(4, {Edge(0, 1), Edge(1, 2), Edge(0, 2)}), PreconditionError);
}

TEST_CASE("Wilson sampler: basic contract") {
    Rng rng(1);
    CHECK(sample_spanning_tree_uniform(Graph(1, {}), rng).edges().empty());
    CHECK_THROWS_AS(sample_spanning_tree_uniform(Graph(2, {}), rng), PreconditionError);
    const Graph g = paper_graph();
    for (int i = 0; i < 200; ++i) CHECK(tree_of(g, sample_spanning_tree_uniform(g, rng)));
}

TEST_CASE("Wilson sampler is uniform") {
    for (const Graph& g : {triangle(), cycle_chord(), complete_graph(4), cycle_graph(5)}) {
        const auto trees = enumerate_spanning_trees(g);
        const std::uint64_t t = count_spanning_trees(g).get_ui();
        REQUIRE(trees.size() == t);
        const std::uint64_t samples = 2000 * t;
        auto tally = draw_trees(g, TreeMode::UniformTree, samples, 1234 + t);
        CHECK(tally.size() == t);
        auto fit = compare_trees(tally, uniform_tree_law(trees), samples);
        CHECK(fit.p_value >= kAlpha);
    }
}

TEST_CASE("random-MST sampler") {
    Rng rng(8);
    SUBCASE("tree input comes back unchanged") {
        const Graph path = path_graph(6);
        const SpanningTree expected(6, {path.edges().begin(), path.edges().end()});
        for (int i = 0; i < 20; ++i) CHECK(sample_spanning_tree_randmst(path, rng) == expected);
    }
    SUBCASE("triangle is symmetric") {
        auto tally = draw_trees(triangle(), TreeMode::RandMstTree, 30000, 77);
        CHECK(compare_trees(tally, uniform_tree_law(enumerate_spanning_trees(triangle())), 30000).p_value >= kAlpha);
    }
    SUBCASE("4-cycle plus chord follows the permutation law, not the uniform one") {
        const Graph g = cycle_chord();
        const auto law = exact_randmst_tree_distribution(g);
        const std::uint64_t samples = 200000;
        auto tally = draw_trees(g, TreeMode::RandMstTree, samples, 99);
        CHECK(compare_trees(tally, law, samples).p_value >= kAlpha);
        CHECK(compare_trees(tally, uniform_tree_law(enumerate_spanning_trees(g)), samples).p_value < kAlpha);
    }
    CHECK_THROWS_AS(sample_spanning_tree_randmst(Graph(3, {Edge(0, 1)}), rng), PreconditionError);
}

TEST_CASE("choose_subset draws every subset equally often") {
    Rng rng(5);
    const std::size_t population = 6, count = 3;
    std::map<std::vector<std::size_t>, std::uint64_t> tally;
    const std::uint64_t samples = 40000;
    for (std::uint64_t i = 0; i < samples; ++i) {
        auto s = choose_subset(population, count, rng);
        REQUIRE(s.size() == count);
        REQUIRE(std::set<std::size_t>(s.begin(), s.end()).size() == count);
        ++tally[s];
    }
    REQUIRE(tally.size() == 20);
    std::vector<double> expected(20, static_cast<double>(samples) / 20.0);
    std::vector<std::uint64_t> observed;
    for (const auto& [s, c] : tally) observed.push_back(c);
    CHECK(chi_square_test(expected, observed).p_value >= kAlpha);

    CHECK(choose_subset(4, 0, rng).empty());
    CHECK(choose_subset(4, 4, rng) == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK_THROWS_AS(choose_subset(3, 4, rng), PreconditionError);
}

TEST_CASE("components_after_deletion") {
    const SpanningTree path(3, {Edge(0, 1), Edge(1, 2)});
    CHECK(components_after_deletion(path, std::vector<Edge>{Edge(1, 2)}) == Partition({{0, 1}, {2}}));
    CHECK(components_after_deletion(path, std::vector<Edge>{}) == Partition({{0, 1, 2}}));

    const SpanningTree star(4, {Edge(0, 1), Edge(0, 2), Edge(0, 3)});
    CHECK(components_after_deletion(star, std::vector<Edge>{Edge(0, 1), Edge(0, 2)}) == Partition({{0, 3}, {1}, {2}}));

    CHECK_THROWS_AS(components_after_deletion(path, std::vector<Edge>{Edge(0, 2)}), PreconditionError);
    CHECK_THROWS_AS(components_after_deletion(path, std::vector<Edge>{Edge(0, 1), Edge(0, 1)}), PreconditionError);
}

TEST_CASE("sample_connected_partition") {
    const Graph g = paper_graph();
    for (TreeMode mode : {TreeMode::UniformTree, TreeMode::RandMstTree}) {
        Rng rng(11);
        std::vector<std::vector<NodeId>> singles;
        for (NodeId v = 0; v < 10; ++v) singles.push_back({v});
        for (int i = 0; i < 50; ++i) {
            CHECK(sample_connected_partition(g, 1, rng, mode) == Partition({{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}}));
            CHECK(sample_connected_partition(g, 10, rng, mode) == Partition(singles));
            for (std::size_t k = 2; k <= 9; ++k) CHECK(validate_partition(g, sample_connected_partition(g, k, rng, mode), k));
        }
    }
    Rng rng(0);
    CHECK_THROWS_AS(sample_connected_partition(g, 0, rng), PreconditionError);
    CHECK_THROWS_AS(sample_connected_partition(g, 11, rng), PreconditionError);
    CHECK_THROWS_AS(sample_connected_partition(Graph(3, {Edge(0, 1)}), 2, rng), PreconditionError);
}

TEST_CASE("sample_connected_partition is deterministic per seed") {
    const Graph g = paper_graph();
    for (TreeMode mode : {TreeMode::UniformTree, TreeMode::RandMstTree}) {
        Rng a(2024), b(2024);
        for (int i = 0; i < 100; ++i) CHECK(sample_connected_partition(g, 3, a, mode) == sample_connected_partition(g, 3, b, mode));
    }
}

TEST_CASE("every connected partition is reachable") {
    for (const auto& [name, g] : small_suite()) {
        if (g.node_count() > 5) continue;
        for (std::size_t k = 1; k <= g.node_count(); ++k) {
            CAPTURE(name);
            CAPTURE(k);
            const auto support = enumerate_connected_partitions(g, k);
            Rng rng(k * 1000 + g.edge_count());
            std::set<Partition> seen;
            for (int i = 0; i < 20000 && seen.size() < support.size(); ++i) seen.insert(sample_connected_partition(g, k, rng));
            CHECK(seen == std::set<Partition>(support.begin(), support.end()));
        }
    }
}
