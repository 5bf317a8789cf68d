#pragma once

#include <filesystem>
#include <iosfwd>

#include "jigsaw/graph.hpp"

namespace jigsaw {

// Edge-list text format:
//
//   # optional comment lines, anywhere
//   n m
//   u v      (m lines, 0-based ids)
//
// Reading throws ParseError carrying the 1-based line number. Writing emits
// each edge once as "u v" with u < v in lexicographic order, LF endings.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::filesystem::path& path);

void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list_file(const std::filesystem::path& path, const Graph& g);

}  // namespace jigsaw
