#include "mimlab/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mimlab {

namespace {

[[noreturn]] void parse_error(int line, const std::string& what) {
    throw std::runtime_error("edge list line " + std::to_string(line) + ": " + what);
}

}  // namespace

Graph read_edge_list(std::istream& in) {
    std::string line;
    int line_no = 0;
    int n = -1;
    long declared_m = -1;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == 'c') continue;
        if (tag == "p") {
            std::string kind;
            if (n >= 0) parse_error(line_no, "duplicate header");
            if (!(ls >> kind >> n >> declared_m) || kind != "edge" || n < 0 || declared_m < 0)
                parse_error(line_no, "expected 'p edge <n> <m>'");
        } else if (tag == "e") {
            if (n < 0) parse_error(line_no, "edge before header");
            long u = 0, v = 0;
            if (!(ls >> u >> v)) parse_error(line_no, "expected 'e <u> <v>'");
            if (u < 1 || u > n || v < 1 || v > n) parse_error(line_no, "endpoint out of range 1.." + std::to_string(n));
            if (u == v) parse_error(line_no, "self-loop");
            edges.push_back({static_cast<int>(u - 1), static_cast<int>(v - 1)});
        } else {
            parse_error(line_no, "unknown line type '" + tag + "'");
        }
    }
    if (n < 0) throw std::runtime_error("edge list has no 'p edge' header");
    if (static_cast<long>(edges.size()) != declared_m)
        throw std::runtime_error("edge list declares " + std::to_string(declared_m) + " edges but lists " +
                                 std::to_string(edges.size()));
    return Graph(n, edges);
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g, const std::vector<std::string>& comments) {
    for (const auto& c : comments) out << "c " << c << '\n';
    out << "p edge " << g.n() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
}

std::vector<int> parse_index_list(const std::string& text) {
    std::vector<int> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        const auto e = item.find_last_not_of(" \t");
        const std::string tok = item.substr(b, e - b + 1);
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("not a vertex index: '" + tok + "'");
        }
        if (used != tok.size()) throw std::invalid_argument("not a vertex index: '" + tok + "'");
        out.push_back(v - 1);
    }
    return out;
}

VertexSet parse_vertex_list(const Graph& g, const std::string& text) {
    return g.make_set(parse_index_list(text));
}

}  // namespace mimlab
