#include "partsample/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

#include "partsample/errors.hpp"

namespace partsample {

namespace {

template <typename Key, typename Draw>
std::map<Key, std::uint64_t> tally_streams(std::uint64_t samples, const TrialOptions& options, Draw draw) {
    const std::uint64_t streams = (samples + kSamplesPerStream - 1) / kSamplesPerStream;
    const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(std::max<std::uint64_t>(streams, 1))));

    std::vector<std::map<Key, std::uint64_t>> partial(workers);
    std::atomic<std::uint64_t> next_stream{0};
    auto work = [&](unsigned w) {
        for (std::uint64_t s = next_stream++; s < streams; s = next_stream++) {
            Rng rng(options.seed, options.first_stream + s);
            const std::uint64_t begin = s * kSamplesPerStream;
            const std::uint64_t end = std::min(samples, begin + kSamplesPerStream);
            for (std::uint64_t i = begin; i < end; ++i) ++partial[w][draw(rng)];
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }

    std::map<Key, std::uint64_t> total;
    for (auto& p : partial) total = merge_tallies(std::move(total), p);
    return total;
}

}  // namespace

PartitionTally run_trials(const Graph& g, std::size_t k, std::uint64_t samples, const TrialOptions& options) {
    if (samples == 0) throw PreconditionError("samples must be at least 1");
    if (k < 1 || k > g.node_count()) throw PreconditionError("k=" + std::to_string(k) + " outside 1.." + std::to_string(g.node_count()));
    if (!is_connected(g)) throw PreconditionError("graph is not connected");
    return tally_streams<Partition>(samples, options, [&](Rng& rng) { return sample_connected_partition(g, k, rng, options.mode); });
}

TreeTally run_tree_trials(const Graph& g, std::uint64_t samples, const TrialOptions& options) {
    if (samples == 0) throw PreconditionError("samples must be at least 1");
    if (!is_connected(g)) throw PreconditionError("graph is not connected");
    return tally_streams<SpanningTree>(samples, options, [&](Rng& rng) { return sample_spanning_tree(g, rng, options.mode); });
}

ChiSquareResult chi_square_test(std::span<const double> expected, std::span<const std::uint64_t> observed, double min_expected) {
    if (expected.size() != observed.size()) throw PreconditionError("expected and observed differ in length");

    struct Cell {
        double expected;
        double observed;
    };
    std::vector<Cell> cells;
    Cell pooled{0.0, 0.0};
    bool any_pooled = false;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (!(expected[i] > 0.0)) throw PreconditionError("expected counts must be positive");
        const Cell c{expected[i], static_cast<double>(observed[i])};
        if (c.expected < min_expected) {
            pooled.expected += c.expected;
            pooled.observed += c.observed;
            any_pooled = true;
        } else {
            cells.push_back(c);
        }
    }
    if (any_pooled) {
        if (pooled.expected < min_expected && !cells.empty()) {
            auto smallest = std::min_element(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.expected < b.expected; });
            smallest->expected += pooled.expected;
            smallest->observed += pooled.observed;
        } else {
            cells.push_back(pooled);
        }
    }

    ChiSquareResult out;
    out.cells = cells.size();
    out.dof = cells.empty() ? 0 : cells.size() - 1;
    out.min_expected = cells.empty() ? 0.0 : std::min_element(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.expected < b.expected; })->expected;
    for (const Cell& c : cells) out.statistic += (c.observed - c.expected) * (c.observed - c.expected) / c.expected;
    if (out.dof > 0) {
        boost::math::chi_squared dist(static_cast<double>(out.dof));
        out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
    }
    return out;
}

TrialReport compare(const PartitionTally& tally, const std::map<Partition, Rational>& exact, std::uint64_t samples) {
    std::uint64_t total = 0;
    for (const auto& [partition, count] : tally) {
        if (!exact.contains(partition))
            throw SupportMismatch("sampled partition with " + std::to_string(partition.block_count()) + " blocks is outside the exact support");
        total += count;
    }
    if (total != samples) throw PreconditionError("tally sums to " + std::to_string(total) + ", expected " + std::to_string(samples));

    TrialReport report;
    report.samples = samples;
    report.support_dof = exact.empty() ? 0 : exact.size() - 1;

    std::vector<double> expected_counts;
    std::vector<std::uint64_t> observed_counts;
    const double n = static_cast<double>(samples);
    for (const auto& [partition, probability] : exact) {
        if (sgn(probability) == 0) continue;
        TrialRow row{partition, probability, 0, 0.0, 0.0};
        if (auto it = tally.find(partition); it != tally.end()) row.observed = it->second;
        row.frequency = static_cast<double>(row.observed) / n;
        const double p = to_double(probability);
        const double mean = n * p;
        const double se = std::sqrt(n * p * (1.0 - p));
        if (se > 0.0) {
            row.z = (static_cast<double>(row.observed) - mean) / se;
        } else {
            row.z = static_cast<double>(row.observed) == mean ? 0.0 : std::numeric_limits<double>::infinity();
        }
        if (mean >= 5.0) report.max_abs_z = std::max(report.max_abs_z, std::abs(row.z));
        expected_counts.push_back(mean);
        observed_counts.push_back(row.observed);
        report.rows.push_back(std::move(row));
    }
    report.chi_square = chi_square_test(expected_counts, observed_counts);
    return report;
}

ChiSquareResult compare_trees(const TreeTally& tally, const std::map<SpanningTree, Rational>& exact, std::uint64_t samples) {
    std::vector<double> expected_counts;
    std::vector<std::uint64_t> observed_counts;
    std::uint64_t total = 0;
    for (const auto& [tree, count] : tally) {
        if (!exact.contains(tree)) throw SupportMismatch("sampled tree is outside the exact support");
        total += count;
    }
    if (total != samples) throw PreconditionError("tally sums to " + std::to_string(total) + ", expected " + std::to_string(samples));
    for (const auto& [tree, probability] : exact) {
        if (sgn(probability) == 0) continue;
        expected_counts.push_back(static_cast<double>(samples) * to_double(probability));
        auto it = tally.find(tree);
        observed_counts.push_back(it == tally.end() ? 0 : it->second);
    }
    return chi_square_test(expected_counts, observed_counts);
}

std::map<SpanningTree, Rational> uniform_tree_law(std::span<const SpanningTree> trees) {
    std::map<SpanningTree, Rational> law;
    if (trees.empty()) return law;
    const Rational each(1, static_cast<unsigned long>(trees.size()));
    for (const auto& t : trees) law.emplace(t, each);
    return law;
}

}  // namespace partsample
