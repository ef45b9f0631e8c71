#include "partsample/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "partsample/errors.hpp"

namespace partsample {

namespace {

std::string trim_comment(std::string_view line) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    return std::string(line);
}

std::vector<std::string> split_tokens(const std::string& line) {
    std::string spaced = line;
    std::replace(spaced.begin(), spaced.end(), ',', ' ');
    std::istringstream in(spaced);
    std::vector<std::string> tokens;
    for (std::string tok; in >> tok;) tokens.push_back(tok);
    return tokens;
}

std::uint64_t parse_uint(const std::string& tok, std::size_t line_no) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError("line " + std::to_string(line_no) + ": expected a nonnegative integer, got '" + tok + "'");
    return value;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

template <typename F>
void for_each_line(std::string_view text, F&& fn) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        fn(trim_comment(line), line_no);
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
}

Graph parse_edge_list(std::string_view text) {
    std::optional<std::uint64_t> declared_n;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
    bool seen_edge = false;
    for_each_line(text, [&](const std::string& line, std::size_t line_no) {
        auto tok = split_tokens(line);
        if (tok.empty()) return;
        if (tok[0] == "n") {
            if (declared_n || seen_edge) throw ParseError("line " + std::to_string(line_no) + ": misplaced 'n' header");
            if (tok.size() != 2) throw ParseError("line " + std::to_string(line_no) + ": expected 'n <count>'");
            declared_n = parse_uint(tok[1], line_no);
            if (*declared_n == 0) throw ParseError("graph must have at least one node");
            return;
        }
        if (tok.size() != 2) throw ParseError("line " + std::to_string(line_no) + ": expected 'u v'");
        auto u = parse_uint(tok[0], line_no);
        auto v = parse_uint(tok[1], line_no);
        if (u == 0 || v == 0) throw ParseError("line " + std::to_string(line_no) + ": node ids are 1-based");
        if (u == v) throw ParseError("line " + std::to_string(line_no) + ": self loop");
        raw.emplace_back(u, v);
        seen_edge = true;
    });

    std::uint64_t n = 0;
    for (auto [u, v] : raw) n = std::max({n, u, v});
    if (declared_n) {
        if (n > *declared_n) throw ParseError("node id " + std::to_string(n) + " exceeds declared n=" + std::to_string(*declared_n));
        n = *declared_n;
    }
    if (n == 0) throw ParseError("empty edge list without an 'n' header");

    std::vector<Edge> edges;
    edges.reserve(raw.size());
    for (auto [u, v] : raw) edges.emplace_back(static_cast<NodeId>(u - 1), static_cast<NodeId>(v - 1));
    std::vector<Edge> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end())
        throw ParseError("duplicate edge " + std::to_string(dup->u + 1) + " " + std::to_string(dup->v + 1));
    return Graph(static_cast<std::size_t>(n), std::move(edges));
}

Graph parse_adjacency_matrix(std::string_view text) {
    std::vector<std::vector<std::uint64_t>> rows;
    for_each_line(text, [&](const std::string& line, std::size_t line_no) {
        auto tok = split_tokens(line);
        if (tok.empty()) return;
        auto& row = rows.emplace_back();
        for (const auto& t : tok) {
            auto value = parse_uint(t, line_no);
            if (value > 1) throw ParseError("line " + std::to_string(line_no) + ": adjacency entries must be 0 or 1");
            row.push_back(value);
        }
    });
    const std::size_t n = rows.size();
    if (n == 0) throw ParseError("empty adjacency matrix");
    for (std::size_t i = 0; i < n; ++i)
        if (rows[i].size() != n)
            throw ParseError("row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));

    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i][i] != 0) throw ParseError("nonzero diagonal at node " + std::to_string(i + 1));
        for (std::size_t j = i + 1; j < n; ++j) {
            if (rows[i][j] != rows[j][i])
                throw ParseError("asymmetric entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
            if (rows[i][j]) edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
        }
    }
    return Graph(n, std::move(edges));
}

std::vector<char> membership(const Graph& g, std::span<const NodeId> nodes) {
    std::vector<char> in(g.node_count(), 0);
    for (NodeId v : nodes) {
        if (v >= g.node_count()) throw PreconditionError("node id " + std::to_string(v) + " out of range");
        in[v] = 1;
    }
    return in;
}

}  // namespace

Graph::Graph(std::size_t n, std::vector<Edge> edges)
    : edges_(std::move(edges)), adjacency_(n), memo_(std::make_shared<detail::TreeCountMemo>()) {
    if (n == 0) throw PreconditionError("graph must have at least one node");
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (e.u == e.v) throw PreconditionError("self loop at node " + std::to_string(e.u));
        if (e.v >= n) throw PreconditionError("edge endpoint " + std::to_string(e.v) + " out of range");
        if (i > 0 && edges_[i - 1] == e) throw PreconditionError("parallel edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
        adjacency_[e.u].push_back(e.v);
        adjacency_[e.v].push_back(e.u);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

bool Graph::has_edge(NodeId a, NodeId b) const {
    if (a == b || std::max(a, b) >= node_count()) return false;
    return edge_index(Edge(a, b)) != edge_count();
}

std::size_t Graph::edge_index(const Edge& e) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) return edge_count();
    return static_cast<std::size_t>(it - edges_.begin());
}

Multigraph::Multigraph(std::size_t k) : k_(k), mult_(k * k, 0) {
    if (k == 0) throw PreconditionError("multigraph must have at least one node");
}

void Multigraph::add_edges(std::size_t i, std::size_t j, std::uint64_t count) {
    if (i >= k_ || j >= k_) throw PreconditionError("multigraph node out of range");
    if (i == j) throw PreconditionError("multigraph cannot hold self loops");
    mult_[i * k_ + j] += count;
    mult_[j * k_ + i] += count;
}

std::uint64_t Multigraph::total_edges() const {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < k_; ++i)
        for (std::size_t j = i + 1; j < k_; ++j) total += multiplicity(i, j);
    return total;
}

std::vector<std::vector<std::uint64_t>> Multigraph::matrix() const {
    std::vector<std::vector<std::uint64_t>> out(k_, std::vector<std::uint64_t>(k_));
    for (std::size_t i = 0; i < k_; ++i)
        for (std::size_t j = 0; j < k_; ++j) out[i][j] = multiplicity(i, j);
    return out;
}

Partition::Partition(std::vector<std::vector<NodeId>> blocks) : blocks_(std::move(blocks)) {
    std::size_t total = 0;
    for (auto& b : blocks_) {
        if (b.empty()) throw PreconditionError("partition has an empty block");
        std::sort(b.begin(), b.end());
        total += b.size();
    }
    std::sort(blocks_.begin(), blocks_.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    constexpr auto unset = static_cast<std::size_t>(-1);
    block_of_.assign(total, unset);
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        for (NodeId v : blocks_[i]) {
            if (v >= total) throw PreconditionError("partition does not cover 1.." + std::to_string(total) + " (saw id " + std::to_string(v + 1) + ")");
            if (block_of_[v] != unset) throw PreconditionError("node " + std::to_string(v + 1) + " appears in more than one block");
            block_of_[v] = i;
        }
    }
}

Partition Partition::from_labels(std::span<const std::size_t> labels) {
    std::vector<std::vector<NodeId>> blocks;
    std::unordered_map<std::size_t, std::size_t> block_index;
    for (std::size_t v = 0; v < labels.size(); ++v) {
        auto [it, fresh] = block_index.try_emplace(labels[v], blocks.size());
        if (fresh) blocks.emplace_back();
        blocks[it->second].push_back(static_cast<NodeId>(v));
    }
    return Partition(std::move(blocks));
}

GraphFormat parse_graph_format(std::string_view name) {
    if (name == "edge-list") return GraphFormat::EdgeList;
    if (name == "adjacency-matrix") return GraphFormat::AdjacencyMatrix;
    throw ParseError("unknown graph format '" + std::string(name) + "'");
}

Graph load_graph(std::string_view text, GraphFormat format) {
    try {
        return format == GraphFormat::EdgeList ? parse_edge_list(text) : parse_adjacency_matrix(text);
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    }
}

Graph load_graph_file(const std::string& path, GraphFormat format) { return load_graph(read_file(path), format); }

std::string serialize_edge_list(const Graph& g) {
    std::ostringstream out;
    out << "n " << g.node_count() << '\n';
    for (const Edge& e : g.edges()) out << e.u + 1 << ' ' << e.v + 1 << '\n';
    return out.str();
}

Partition load_partition(std::string_view text) {
    std::vector<std::vector<NodeId>> blocks;
    for_each_line(text, [&](const std::string& line, std::size_t line_no) {
        auto tok = split_tokens(line);
        if (tok.empty()) return;
        auto& block = blocks.emplace_back();
        for (const auto& t : tok) {
            auto id = parse_uint(t, line_no);
            if (id == 0 || id > std::numeric_limits<NodeId>::max())
                throw ParseError("line " + std::to_string(line_no) + ": node id out of range");
            block.push_back(static_cast<NodeId>(id - 1));
        }
    });
    if (blocks.empty()) throw ParseError("partition has no blocks");
    try {
        return Partition(std::move(blocks));
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    }
}

Partition load_partition_file(const std::string& path) { return load_partition(read_file(path)); }

std::string serialize_partition(const Partition& c) {
    std::ostringstream out;
    for (const auto& block : c.blocks()) {
        for (std::size_t i = 0; i < block.size(); ++i) out << (i ? " " : "") << block[i] + 1;
        out << '\n';
    }
    return out.str();
}

bool is_connected(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<char> seen(n, 0);
    std::vector<NodeId> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (NodeId w : g.neighbors(v)) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == n;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
    if (nodes.empty()) throw PreconditionError("induced subgraph of an empty node set");
    auto in = membership(g, nodes);
    std::vector<NodeId> original;
    std::vector<NodeId> local(g.node_count(), 0);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (in[v]) {
            local[v] = static_cast<NodeId>(original.size());
            original.push_back(v);
        }
    }
    std::vector<Edge> edges;
    for (const Edge& e : g.edges())
        if (in[e.u] && in[e.v]) edges.emplace_back(local[e.u], local[e.v]);
    return {Graph(original.size(), std::move(edges)), std::move(original)};
}

std::vector<Edge> boundary_edges(const Graph& g, std::span<const NodeId> s) {
    auto in = membership(g, s);
    const auto inside = static_cast<std::size_t>(std::count(in.begin(), in.end(), 1));
    if (inside == 0 || inside == g.node_count()) throw PreconditionError("boundary requires a nonempty proper subset");
    std::vector<Edge> out;
    for (const Edge& e : g.edges())
        if (in[e.u] != in[e.v]) out.push_back(e);
    return out;
}

void require_cover(const Graph& g, const Partition& c) {
    if (c.node_count() != g.node_count())
        throw PreconditionError("partition covers " + std::to_string(c.node_count()) + " nodes but the graph has " + std::to_string(g.node_count()));
}

Multigraph contract(const Graph& g, const Partition& c) {
    require_cover(g, c);
    Multigraph m(c.block_count());
    for (const Edge& e : g.edges()) {
        auto a = c.block_of(e.u), b = c.block_of(e.v);
        if (a != b) m.add_edges(a, b);
    }
    return m;
}

IntMatrix laplacian(const Graph& g) {
    IntMatrix L(g.node_count());
    for (const Edge& e : g.edges()) {
        L(e.u, e.v) -= 1;
        L(e.v, e.u) -= 1;
        L(e.u, e.u) += 1;
        L(e.v, e.v) += 1;
    }
    return L;
}

IntMatrix laplacian(const Multigraph& m) {
    const std::size_t k = m.node_count();
    IntMatrix L(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            const BigInt w = static_cast<unsigned long>(m.multiplicity(i, j));
            L(i, j) = -w;
            L(i, i) += w;
        }
    }
    return L;
}

bool blocks_connected(const Graph& g, const Partition& c) {
    require_cover(g, c);
    for (const auto& block : c.blocks())
        if (!is_connected(induced_subgraph(g, block).graph)) return false;
    return true;
}

Graph path_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(i + 1));
    return Graph(n, std::move(edges));
}

Graph cycle_graph(std::size_t n) {
    if (n < 3) throw PreconditionError("a simple cycle needs at least 3 nodes");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % n));
    return Graph(n, std::move(edges));
}

Graph complete_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
    return Graph(n, std::move(edges));
}

}  // namespace partsample
