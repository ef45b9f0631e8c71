#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "partsample/graph.hpp"
#include "partsample/number.hpp"
#include "partsample/sampler.hpp"

namespace partsample {

using PartitionTally = std::map<Partition, std::uint64_t>;
using TreeTally = std::map<SpanningTree, std::uint64_t>;

/// Samples per RNG stream. Sample i of a run uses stream
/// first_stream + i / kSamplesPerStream, so results do not depend on the
/// worker count, and runs over disjoint stream ranges merge into the tally
/// of one longer run.
inline constexpr std::uint64_t kSamplesPerStream = 4096;

struct TrialOptions {
    std::uint64_t seed = 0;
    TreeMode mode = TreeMode::UniformTree;
    unsigned workers = 1;
    std::uint64_t first_stream = 0;
};

/// Tally of `samples` independent runs of sample_connected_partition.
PartitionTally run_trials(const Graph& g, std::size_t k, std::uint64_t samples, const TrialOptions& options);

/// Tally of `samples` independently drawn spanning trees.
TreeTally run_tree_trials(const Graph& g, std::uint64_t samples, const TrialOptions& options);

template <typename Key>
std::map<Key, std::uint64_t> merge_tallies(std::map<Key, std::uint64_t> a, const std::map<Key, std::uint64_t>& b) {
    for (const auto& [key, count] : b) a[key] += count;
    return a;
}

/// Pearson goodness-of-fit after pooling sparse cells.
struct ChiSquareResult {
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
    /// Cells after pooling.
    std::size_t cells = 0;
    /// Smallest expected count among the pooled cells.
    double min_expected = 0.0;
};

/// Every cell with expected count below `min_expected` goes into one pooled
/// cell; a pooled cell still below the threshold joins the smallest
/// remaining cell. Expected counts must be positive.
ChiSquareResult chi_square_test(std::span<const double> expected, std::span<const std::uint64_t> observed, double min_expected = 5.0);

struct TrialRow {
    Partition partition;
    Rational expected;
    std::uint64_t observed = 0;
    double frequency = 0.0;
    /// (observed - N p) / sqrt(N p (1 - p)).
    double z = 0.0;
};

struct TrialReport {
    std::vector<TrialRow> rows;
    ChiSquareResult chi_square;
    /// Unpooled degrees of freedom: support size minus one.
    std::size_t support_dof = 0;
    /// Largest |z| over rows whose expected count is at least 5.
    double max_abs_z = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    TreeMode mode = TreeMode::UniformTree;

    bool passes(double alpha, double z_bound) const { return chi_square.p_value >= alpha && max_abs_z <= z_bound; }
};

/// Compares a tally with an exact law. Throws SupportMismatch if a tallied
/// partition is missing from `exact`, PreconditionError if the tally does
/// not sum to `samples`.
TrialReport compare(const PartitionTally& tally, const std::map<Partition, Rational>& exact, std::uint64_t samples);

/// Chi-square of a tree tally against an exact tree law (e.g. 1/t each).
ChiSquareResult compare_trees(const TreeTally& tally, const std::map<SpanningTree, Rational>& exact, std::uint64_t samples);

/// Uniform law over `trees`.
std::map<SpanningTree, Rational> uniform_tree_law(std::span<const SpanningTree> trees);

}  // namespace partsample
