#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "fixtures.hpp"
#include "partsample/partition_prob.hpp"

using namespace partsample;
using namespace partsample::testing;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> paper_args(std::vector<std::string> head) {
    head.insert(head.end(), {"--graph", data_path("paper_graph.adj"), "--format", "adjacency-matrix"});
    return head;
}

std::vector<json> json_lines(const std::string& text) {
    std::vector<json> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) out.push_back(json::parse(line));
    return out;
}

std::filesystem::path scratch_file(const std::string& name, const std::string& contents) {
    auto dir = std::filesystem::temp_directory_path() / "partsample_cli_tests";
    std::filesystem::create_directories(dir);
    auto path = dir / name;
    std::ofstream(path) << contents;
    return path;
}

Partition partition_of(const json& blocks) {
    std::vector<std::vector<NodeId>> out;
    for (const auto& b : blocks) {
        auto& block = out.emplace_back();
        for (const auto& v : b) block.push_back(v.get<NodeId>() - 1);
    }
    return Partition(out);
}

}  // namespace

TEST_CASE("cli sample") {
    auto args = paper_args({"sample", "--k", "3", "--seed", "7", "--count", "5"});
    auto first = run_cli(args);
    REQUIRE(first.code == 0);
    const auto lines = json_lines(first.out);
    REQUIRE(lines.size() == 5);
    const Graph g = paper_graph();
    for (std::size_t i = 0; i < lines.size(); ++i) {
        CHECK(lines[i]["schema_version"] == cli::kSchemaVersion);
        CHECK(lines[i]["index"] == i);
        CHECK(lines[i]["seed"] == 7);
        CHECK(validate_partition(g, partition_of(lines[i]["blocks"]), 3));
    }
    CHECK(run_cli(args).out == first.out);

    for (const auto& line : json_lines(run_cli(paper_args({"sample", "--k", "1", "--seed", "1", "--count", "4"})).out))
        CHECK(line["blocks"] == json::parse("[[1,2,3,4,5,6,7,8,9,10]]"));
    for (const auto& line : json_lines(run_cli(paper_args({"sample", "--k", "10", "--seed", "1", "--count", "4"})).out))
        CHECK(line["blocks"] == json::parse("[[1],[2],[3],[4],[5],[6],[7],[8],[9],[10]]"));
}

TEST_CASE("cli sample then prob gives positive probability") {
    auto sampled = json_lines(run_cli(paper_args({"sample", "--k", "4", "--seed", "3", "--count", "10", "--mode", "randmst-tree"})).out);
    REQUIRE(sampled.size() == 10);
    for (const auto& line : sampled) {
        auto path = scratch_file("sampled.txt", serialize_partition(partition_of(line["blocks"])));
        auto res = run_cli(paper_args({"prob", "--partition", path.string()}));
        REQUIRE(res.code == 0);
        CHECK(sgn(parse_fraction(json::parse(res.out)["rational"].get<std::string>())) > 0);
    }
}

TEST_CASE("cli prob") {
    auto res = run_cli(paper_args({"prob", "--partition", data_path("paper_partition.txt")}));
    REQUIRE(res.code == 0);
    const auto doc = json::parse(res.out);
    CHECK(doc["rational"] == "16/2273");
    CHECK(parse_fraction(doc["rational"]) == frac(48, 6819));
    CHECK(doc["decimal"] == "0.0070");
    CHECK(doc["float"].get<double>() == 0.007);
    CHECK(doc["t_G"] == "4546");
    CHECK(doc["t_blocks"] == json::parse(R"(["16","3","3"])"));
    CHECK(doc["t_M"] == "8");
    CHECK(doc["binom"] == "36");

    auto whole = scratch_file("whole.txt", "1 2 3 4 5 6 7 8 9 10\n");
    CHECK(json::parse(run_cli(paper_args({"prob", "--partition", whole.string()})).out)["rational"] == "1/1");

    auto broken = run_cli(paper_args({"prob", "--partition", data_path("disconnected_block.txt")}));
    REQUIRE(broken.code == 0);
    CHECK(json::parse(broken.out)["rational"] == "0/1");

    CHECK(run_cli(paper_args({"prob", "--partition", data_path("paper_partition.txt"), "--k", "2"})).code == cli::kExitPrecondition);
    CHECK(run_cli(paper_args({"prob", "--partition", data_path("paper_partition.txt"), "--digits", "6"})).out.find("\"0.007039\"") != std::string::npos);
}

TEST_CASE("cli enumerate") {
    auto res = run_cli({"enumerate", "--graph", data_path("path5.edges"), "--k", "3"});
    REQUIRE(res.code == 0);
    auto doc = json::parse(res.out);
    CHECK(doc["count"] == 6);
    for (const auto& row : doc["rows"]) CHECK(row["rational"] == "1/6");
    CHECK(doc["sum"] == "1/1");

    auto cyc = scratch_file("cycle4.edges", "1 2\n2 3\n3 4\n4 1\n");
    doc = json::parse(run_cli({"enumerate", "--graph", cyc.string(), "--k", "2"}).out);
    CHECK(doc["rows"].size() == 6);

    // Re-sum the rational column independently of the footer.
    doc = json::parse(run_cli(paper_args({"enumerate", "--k", "2"})).out);
    Rational total = 0;
    for (const auto& row : doc["rows"]) total += parse_fraction(row["rational"]);
    CHECK(total == 1);
    CHECK(doc["sum_is_one"] == true);

    auto tsv = run_cli(paper_args({"enumerate", "--k", "3", "--output", "tsv"}));
    CHECK(tsv.out.find("#sum\t1/1") != std::string::npos);

    auto over = run_cli(paper_args({"enumerate", "--k", "3", "--max-set-partitions", "100"}));
    CHECK(over.code == cli::kExitBudget);
    CHECK(over.err.find("9330") != std::string::npos);
}

TEST_CASE("cli verify") {
    auto tri = run_cli({"verify", "--graph", data_path("triangle.edges"), "--k", "2", "--samples", "30000", "--seed", "5"});
    CHECK(tri.code == 0);
    auto doc = json::parse(tri.out);
    CHECK(doc["passed"] == true);
    CHECK(doc["rows"].size() == 3);
    CHECK(doc["reference"] == "closed-form");

    auto mst = run_cli({"verify", "--graph", data_path("cycle_chord.edges"), "--k", "2", "--samples", "60000", "--seed", "6", "--mode", "randmst-tree"});
    CHECK(mst.code == 0);
    doc = json::parse(mst.out);
    CHECK(doc["reference"] == "randmst-exact");
    CHECK(doc["tree_law"]["equals_uniform"] == false);
    CHECK(doc["tree_law"]["trees"].size() == 8);

    auto too_few = run_cli({"verify", "--graph", data_path("triangle.edges"), "--k", "2", "--samples", "10", "--seed", "5"});
    CHECK(too_few.code == cli::kExitUsage);

    // A z bound nobody can meet forces a statistical rejection.
    auto strict = run_cli({"verify", "--graph", data_path("triangle.edges"), "--k", "2", "--samples", "30000", "--seed", "5", "--z-bound", "1e-9"});
    CHECK(strict.code == cli::kExitRejected);

    CHECK(run_cli({"verify", "--graph", data_path("triangle.edges"), "--k", "2", "--seed", "5", "--samples", "30000"}).out == tri.out);
}

TEST_CASE("cli trees") {
    auto res = run_cli(paper_args({"trees"}));
    REQUIRE(res.code == 0);
    CHECK(json::parse(res.out)["t_G"] == "4546");

    CHECK(run_cli({"trees", "--graph", data_path("path5.edges"), "--output", "human"}).out == "1\n");

    auto k5 = scratch_file("k5.edges", "1 2\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n3 4\n3 5\n4 5\n");
    auto listed = json::parse(run_cli({"trees", "--graph", k5.string(), "--enumerate"}).out);
    CHECK(listed["t_G"] == "125");
    CHECK(listed["trees"].size() == 125);
}

TEST_CASE("cli exit codes") {
    CHECK(run_cli({}).code == cli::kExitUsage);
    CHECK(run_cli({"sample", "--graph", data_path("triangle.edges")}).code == cli::kExitUsage);
    CHECK(run_cli({"sample", "--graph", data_path("triangle.edges"), "--k", "2", "--mode", "nope"}).code == cli::kExitUsage);
    CHECK(run_cli({"--help"}).code == cli::kExitOk);

    auto bad = scratch_file("bad.edges", "1 2\n2 x\n");
    CHECK(run_cli({"trees", "--graph", bad.string()}).code == cli::kExitParse);
    CHECK(run_cli({"trees", "--graph", "/nonexistent/graph.edges"}).code == cli::kExitParse);

    auto split = scratch_file("split.edges", "n 4\n1 2\n3 4\n");
    CHECK(run_cli({"sample", "--graph", split.string(), "--k", "2", "--seed", "1"}).code == cli::kExitPrecondition);
    CHECK(run_cli({"sample", "--graph", data_path("triangle.edges"), "--k", "4", "--seed", "1"}).code == cli::kExitPrecondition);

    ::setenv(cli::kCiEnvVar, "1", 1);
    CHECK(run_cli({"sample", "--graph", data_path("triangle.edges"), "--k", "2"}).code == cli::kExitUsage);
    CHECK(run_cli({"sample", "--graph", data_path("triangle.edges"), "--k", "2", "--seed", "3"}).code == cli::kExitOk);
    ::unsetenv(cli::kCiEnvVar);
    CHECK(run_cli({"sample", "--graph", data_path("triangle.edges"), "--k", "2"}).code == cli::kExitOk);
}
