#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "partsample/errors.hpp"
#include "partsample/graph.hpp"
#include "partsample/matrix_tree.hpp"
#include "partsample/montecarlo.hpp"
#include "partsample/oracle.hpp"
#include "partsample/partition_prob.hpp"
#include "partsample/sampler.hpp"

namespace partsample::cli {

namespace {

using nlohmann::json;

enum class OutputFormat { Json, Tsv, Human };

struct Config {
    std::string graph_path;
    std::string graph_format = "edge-list";
    std::string output = "json";
    int digits = 4;
    std::size_t k = 0;
    std::optional<std::uint64_t> seed;
    std::string mode = "uniform-tree";
    std::uint64_t count = 1;
    std::string partition_path;
    std::uint64_t samples = 100000;
    std::uint64_t min_samples = 1000;
    double alpha = 0.001;
    double z_bound = 4.0;
    unsigned workers = 1;
    bool list_trees = false;
    EnumerationBudget budget;
};

/// Raised for usage problems detected after CLI11 parsing.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when verification rejects the sampler.
class Rejected : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

OutputFormat output_format(const Config& cfg) {
    if (cfg.output == "tsv") return OutputFormat::Tsv;
    if (cfg.output == "human") return OutputFormat::Human;
    return OutputFormat::Json;
}

bool ci_mode() {
    const char* v = std::getenv(kCiEnvVar);
    return v != nullptr && *v != '\0' && std::string_view(v) != "0";
}

std::uint64_t resolve_seed(const Config& cfg) {
    if (cfg.seed) return *cfg.seed;
    if (ci_mode()) throw UsageError(std::string("--seed is required when ") + kCiEnvVar + " is set");
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) | rd();
}

Graph load(const Config& cfg) { return load_graph_file(cfg.graph_path, parse_graph_format(cfg.graph_format)); }

void require_k(const Graph& g, std::size_t k) {
    if (k < 1 || k > g.node_count())
        throw PreconditionError("k=" + std::to_string(k) + " outside 1.." + std::to_string(g.node_count()));
}

void require_connected(const Graph& g) {
    if (!is_connected(g)) throw PreconditionError("graph is not connected");
}

json blocks_json(const Partition& c) {
    json out = json::array();
    for (const auto& block : c.blocks()) {
        json b = json::array();
        for (NodeId v : block) b.push_back(v + 1);
        out.push_back(std::move(b));
    }
    return out;
}

std::string blocks_text(const Partition& c, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < c.block_count(); ++i) {
        if (i) out += sep;
        for (std::size_t j = 0; j < c.block(i).size(); ++j) {
            if (j) out += ',';
            out += std::to_string(c.block(i)[j] + 1);
        }
    }
    return out;
}

json edges_json(std::span<const Edge> edges) {
    json out = json::array();
    for (const Edge& e : edges) out.push_back({e.u + 1, e.v + 1});
    return out;
}

// Rendered decimal parsed back, so the JSON float carries exactly --digits.
double rounded(const Rational& q, int digits) { return std::stod(to_decimal_string(q, digits)); }

json probability_json(const Rational& q, int digits) {
    return {{"rational", to_fraction_string(q)}, {"float", rounded(q, digits)}, {"decimal", to_decimal_string(q, digits)}};
}

int cmd_sample(const Config& cfg, std::ostream& out) {
    const Graph g = load(cfg);
    require_connected(g);
    require_k(g, cfg.k);
    const TreeMode mode = parse_tree_mode(cfg.mode);
    const std::uint64_t seed = resolve_seed(cfg);
    const auto fmt = output_format(cfg);

    Rng rng(seed);
    for (std::uint64_t i = 0; i < cfg.count; ++i) {
        const Partition c = sample_connected_partition(g, cfg.k, rng, mode);
        switch (fmt) {
        case OutputFormat::Json:
            out << json{{"schema_version", kSchemaVersion}, {"index", i}, {"seed", seed}, {"k", cfg.k}, {"mode", to_string(mode)}, {"blocks", blocks_json(c)}}.dump()
                << '\n';
            break;
        case OutputFormat::Tsv:
            out << i << '\t' << blocks_text(c, "|") << '\n';
            break;
        case OutputFormat::Human:
            out << blocks_text(c, " | ") << '\n';
            break;
        }
    }
    return kExitOk;
}

int cmd_prob(const Config& cfg, std::ostream& out) {
    const Graph g = load(cfg);
    const Partition c = load_partition_file(cfg.partition_path);
    if (cfg.k != 0 && cfg.k != c.block_count())
        throw PreconditionError("--k " + std::to_string(cfg.k) + " but the partition has " + std::to_string(c.block_count()) + " blocks");
    const auto b = probability_breakdown(g, c);

    json blocks = json::array();
    for (const auto& t : b.trees_in_block) blocks.push_back(t.get_str());
    json doc = {{"schema_version", kSchemaVersion},
                {"n", g.node_count()},
                {"k", c.block_count()},
                {"blocks", blocks_json(c)},
                {"connected_blocks", blocks_connected(g, c)},
                {"t_G", b.trees_in_graph.get_str()},
                {"t_blocks", blocks},
                {"t_M", b.trees_in_contraction.get_str()},
                {"binom", b.edge_removals.get_str()},
                {"compatible_trees", b.compatible_trees.get_str()}};
    doc.update(probability_json(b.probability, cfg.digits));

    switch (output_format(cfg)) {
    case OutputFormat::Json:
        out << doc.dump(2) << '\n';
        break;
    case OutputFormat::Tsv:
        out << "rational\tdecimal\tt_G\tt_blocks\tt_M\tbinom\n";
        out << doc["rational"].get<std::string>() << '\t' << doc["decimal"].get<std::string>() << '\t' << b.trees_in_graph << '\t';
        for (std::size_t i = 0; i < b.trees_in_block.size(); ++i) out << (i ? "," : "") << b.trees_in_block[i];
        out << '\t' << b.trees_in_contraction << '\t' << b.edge_removals << '\n';
        break;
    case OutputFormat::Human:
        out << "P = " << b.compatible_trees << " / (" << b.edge_removals << " * " << b.trees_in_graph << ") = " << to_fraction_string(b.probability)
            << " ~ " << to_decimal_string(b.probability, cfg.digits) << '\n';
        out << "t(G) = " << b.trees_in_graph << ", t(M) = " << b.trees_in_contraction << ", t(blocks) =";
        for (const auto& t : b.trees_in_block) out << ' ' << t;
        out << '\n';
        break;
    }
    return kExitOk;
}

int cmd_enumerate(const Config& cfg, std::ostream& out) {
    const Graph g = load(cfg);
    require_connected(g);
    require_k(g, cfg.k);
    const auto partitions = enumerate_connected_partitions(g, cfg.k, cfg.budget);

    Rational sum = 0;
    std::vector<Rational> probs;
    for (const auto& c : partitions) sum += probs.emplace_back(partition_probability(g, c));

    switch (output_format(cfg)) {
    case OutputFormat::Json: {
        json rows = json::array();
        for (std::size_t i = 0; i < partitions.size(); ++i) {
            json row = {{"blocks", blocks_json(partitions[i])}};
            row.update(probability_json(probs[i], cfg.digits));
            rows.push_back(std::move(row));
        }
        out << json{{"schema_version", kSchemaVersion},
                    {"n", g.node_count()},
                    {"k", cfg.k},
                    {"count", partitions.size()},
                    {"rows", rows},
                    {"sum", to_fraction_string(sum)},
                    {"sum_is_one", sum == 1}}
                   .dump(2)
            << '\n';
        break;
    }
    case OutputFormat::Tsv:
        out << "blocks\trational\tdecimal\n";
        for (std::size_t i = 0; i < partitions.size(); ++i)
            out << blocks_text(partitions[i], "|") << '\t' << to_fraction_string(probs[i]) << '\t' << to_decimal_string(probs[i], cfg.digits) << '\n';
        out << "#sum\t" << to_fraction_string(sum) << '\t' << to_decimal_string(sum, cfg.digits) << '\n';
        break;
    case OutputFormat::Human:
        for (std::size_t i = 0; i < partitions.size(); ++i)
            out << std::left << std::setw(40) << blocks_text(partitions[i], " | ") << ' ' << std::setw(24) << to_fraction_string(probs[i]) << ' '
                << to_decimal_string(probs[i], cfg.digits) << '\n';
        out << partitions.size() << " connected " << cfg.k << "-partitions, total probability " << to_fraction_string(sum) << '\n';
        break;
    }
    return kExitOk;
}

int cmd_verify(const Config& cfg, std::ostream& out) {
    const Graph g = load(cfg);
    require_connected(g);
    require_k(g, cfg.k);
    if (cfg.samples < cfg.min_samples)
        throw UsageError("--samples " + std::to_string(cfg.samples) + " is below --min-samples " + std::to_string(cfg.min_samples));
    const TreeMode mode = parse_tree_mode(cfg.mode);
    const std::uint64_t seed = resolve_seed(cfg);

    json doc = {{"schema_version", kSchemaVersion}, {"n", g.node_count()}, {"k", cfg.k}, {"mode", to_string(mode)}};

    std::map<Partition, Rational> exact;
    if (mode == TreeMode::UniformTree) {
        doc["reference"] = "closed-form";
        for (const auto& c : enumerate_connected_partitions(g, cfg.k, cfg.budget)) exact.emplace(c, partition_probability(g, c));
    } else {
        doc["reference"] = "randmst-exact";
        const auto tree_law = exact_randmst_tree_distribution(g);
        const auto trees = enumerate_spanning_trees(g, cfg.budget);
        const auto uniform = uniform_tree_law(trees);
        json law = json::array();
        for (const auto& [tree, p] : tree_law) {
            json row = {{"edges", edges_json(tree.edges())}};
            row.update(probability_json(p, cfg.digits));
            law.push_back(std::move(row));
        }
        doc["tree_law"] = {{"trees", law}, {"spanning_trees", trees.size()}, {"equals_uniform", tree_law == uniform}};
        exact = partition_law_from_tree_law(tree_law, cfg.k);
    }

    const auto tally = run_trials(g, cfg.k, cfg.samples, {.seed = seed, .mode = mode, .workers = cfg.workers});
    TrialReport report;
    try {
        report = compare(tally, exact, cfg.samples);
    } catch (const SupportMismatch& e) {
        throw Rejected(e.what());
    }
    report.seed = seed;
    report.mode = mode;
    const bool passed = report.passes(cfg.alpha, cfg.z_bound);

    json rows = json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"blocks", blocks_json(row.partition)},
                        {"expected_rational", to_fraction_string(row.expected)},
                        {"expected_float", to_double(row.expected)},
                        {"observed", row.observed},
                        {"frequency", row.frequency},
                        {"z", row.z}});
    }
    doc.update({{"samples", report.samples},
                {"seed", seed},
                {"alpha", cfg.alpha},
                {"z_bound", cfg.z_bound},
                {"support_size", report.rows.size()},
                {"support_dof", report.support_dof},
                {"chi_square",
                 {{"statistic", report.chi_square.statistic},
                  {"dof", report.chi_square.dof},
                  {"p_value", report.chi_square.p_value},
                  {"cells", report.chi_square.cells},
                  {"min_expected", report.chi_square.min_expected}}},
                {"max_abs_z", report.max_abs_z},
                {"passed", passed},
                {"rows", rows}});

    switch (output_format(cfg)) {
    case OutputFormat::Json:
        out << doc.dump(2) << '\n';
        break;
    case OutputFormat::Tsv:
        out << "blocks\texpected\tobserved\tfrequency\tz\n";
        for (const auto& row : report.rows)
            out << blocks_text(row.partition, "|") << '\t' << to_fraction_string(row.expected) << '\t' << row.observed << '\t' << row.frequency << '\t'
                << row.z << '\n';
        out << "#chi_square\t" << report.chi_square.statistic << "\tdof\t" << report.chi_square.dof << "\tp\t" << report.chi_square.p_value << '\n';
        break;
    case OutputFormat::Human:
        out << (passed ? "PASS" : "FAIL") << ": " << report.samples << " samples, " << report.rows.size() << " partitions, chi2=" << report.chi_square.statistic
            << " (dof " << report.chi_square.dof << ", p=" << report.chi_square.p_value << "), max|z|=" << report.max_abs_z << '\n';
        if (doc.contains("tree_law"))
            out << "random-MST tree law " << (doc["tree_law"]["equals_uniform"].get<bool>() ? "equals" : "differs from") << " the uniform law\n";
        break;
    }
    return passed ? kExitOk : kExitRejected;
}

int cmd_trees(const Config& cfg, std::ostream& out) {
    const Graph g = load(cfg);
    const BigInt t = count_spanning_trees(g);
    std::vector<SpanningTree> trees;
    if (cfg.list_trees) trees = enumerate_spanning_trees(g, cfg.budget);

    switch (output_format(cfg)) {
    case OutputFormat::Json: {
        json doc = {{"schema_version", kSchemaVersion}, {"n", g.node_count()}, {"edges", g.edge_count()}, {"t_G", t.get_str()}};
        if (cfg.list_trees) {
            json list = json::array();
            for (const auto& tree : trees) list.push_back(edges_json(tree.edges()));
            doc["trees"] = std::move(list);
        }
        out << doc.dump(2) << '\n';
        break;
    }
    case OutputFormat::Tsv:
    case OutputFormat::Human:
        out << t << '\n';
        for (const auto& tree : trees) {
            for (std::size_t i = 0; i < tree.edges().size(); ++i)
                out << (i ? " " : "") << tree.edges()[i].u + 1 << '-' << tree.edges()[i].v + 1;
            out << '\n';
        }
        break;
    }
    return kExitOk;
}

void add_graph_options(CLI::App* sub, Config& cfg) {
    sub->add_option("--graph", cfg.graph_path, "Graph file (1-based node ids)")->required();
    sub->add_option("--format", cfg.graph_format, "Graph file format")->check(CLI::IsMember({"edge-list", "adjacency-matrix"}));
    sub->add_option("--output", cfg.output, "Output format")->check(CLI::IsMember({"json", "tsv", "human"}));
    sub->add_option("--digits", cfg.digits, "Fractional digits for decimal rendering")->check(CLI::Range(0, 60));
}

void add_budget_options(CLI::App* sub, Config& cfg) {
    sub->add_option("--max-nodes", cfg.budget.max_nodes, "Enumeration budget: nodes")->check(CLI::PositiveNumber);
    sub->add_option("--max-trees", cfg.budget.max_trees, "Enumeration budget: spanning trees")->check(CLI::PositiveNumber);
    sub->add_option("--max-set-partitions", cfg.budget.max_set_partitions, "Enumeration budget: set partitions")->check(CLI::PositiveNumber);
}

void add_sampling_options(CLI::App* sub, Config& cfg) {
    sub->add_option("--seed", cfg.seed, "RNG seed (random if omitted)");
    sub->add_option("--mode", cfg.mode, "Spanning tree sampler")->check(CLI::IsMember({"uniform-tree", "randmst-tree"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config cfg;
    CLI::App app{"Sample connected graph partitions from uniform spanning trees and compute their exact probabilities"};
    app.require_subcommand(1);

    auto* sample = app.add_subcommand("sample", "Draw connected k-partitions");
    add_graph_options(sample, cfg);
    add_sampling_options(sample, cfg);
    sample->add_option("--k", cfg.k, "Number of blocks")->required();
    sample->add_option("--count", cfg.count, "Number of partitions to draw");

    auto* prob = app.add_subcommand("prob", "Exact probability of a partition");
    add_graph_options(prob, cfg);
    prob->add_option("--partition", cfg.partition_path, "Partition file, one block per line")->required();
    prob->add_option("--k", cfg.k, "Expected block count (checked)");

    auto* enumerate = app.add_subcommand("enumerate", "All connected k-partitions with exact probabilities");
    add_graph_options(enumerate, cfg);
    add_budget_options(enumerate, cfg);
    enumerate->add_option("--k", cfg.k, "Number of blocks")->required();

    auto* verify = app.add_subcommand("verify", "Monte Carlo check of the sampler against its exact law");
    add_graph_options(verify, cfg);
    add_budget_options(verify, cfg);
    add_sampling_options(verify, cfg);
    verify->add_option("--k", cfg.k, "Number of blocks")->required();
    verify->add_option("--samples", cfg.samples, "Number of samples")->check(CLI::PositiveNumber);
    verify->add_option("--min-samples", cfg.min_samples, "Smallest accepted --samples");
    verify->add_option("--alpha", cfg.alpha, "Chi-square significance level")->check(CLI::Range(0.0, 1.0));
    verify->add_option("--z-bound", cfg.z_bound, "Largest accepted |z| per partition")->check(CLI::PositiveNumber);
    verify->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::Range(1u, 256u));

    auto* trees = app.add_subcommand("trees", "Count spanning trees");
    add_graph_options(trees, cfg);
    add_budget_options(trees, cfg);
    trees->add_flag("--enumerate", cfg.list_trees, "Also list every spanning tree");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*sample) return cmd_sample(cfg, out);
        if (*prob) return cmd_prob(cfg, out);
        if (*enumerate) return cmd_enumerate(cfg, out);
        if (*verify) return cmd_verify(cfg, out);
        return cmd_trees(cfg, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const PreconditionError& e) {
        err << "precondition failed: " << e.what() << '\n';
        return kExitPrecondition;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const Rejected& e) {
        err << "verification failed: " << e.what() << '\n';
        return kExitRejected;
    }
}

}  // namespace partsample::cli
