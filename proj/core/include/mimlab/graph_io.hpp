#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mimlab/graph.hpp"

namespace mimlab {

/// Parses the edge-list format: `p edge <n> <m>` then `e <u> <v>` lines
/// (1-based). Blank lines and `c` comment lines are skipped. Throws
/// std::runtime_error with the offending line number on malformed input.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);

/// Writes the edge-list format. Each comment is emitted as `c <text>`
/// before the header.
void write_edge_list(std::ostream& out, const Graph& g, const std::vector<std::string>& comments = {});

/// Parses "1,2,5" (1-based) into a vertex set of g.
VertexSet parse_vertex_list(const Graph& g, const std::string& text);

/// Parses "3,1,2,4" (1-based) into 0-based indices.
std::vector<int> parse_index_list(const std::string& text);

}  // namespace mimlab
