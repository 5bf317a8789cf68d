#include "jigsaw/edge_list.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "jigsaw/error.hpp"

namespace jigsaw {
namespace {

// Splits "a b" into two unsigned integers; nullopt on any other shape.
std::optional<std::pair<std::uint64_t, std::uint64_t>> parse_pair(std::string_view line) {
  auto skip_ws = [&](std::size_t i) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    return i;
  };
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::size_t i = skip_ws(0);
  auto r1 = std::from_chars(line.data() + i, line.data() + line.size(), a);
  if (r1.ec != std::errc{} || r1.ptr == line.data() + i) return std::nullopt;
  i = static_cast<std::size_t>(r1.ptr - line.data());
  const std::size_t after_first = i;
  i = skip_ws(i);
  if (i == after_first) return std::nullopt;
  auto r2 = std::from_chars(line.data() + i, line.data() + line.size(), b);
  if (r2.ec != std::errc{} || r2.ptr == line.data() + i) return std::nullopt;
  i = skip_ws(static_cast<std::size_t>(r2.ptr - line.data()));
  if (i != line.size()) return std::nullopt;
  return std::make_pair(a, b);
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> header;
  std::vector<Edge> edges;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;

    const auto pair = parse_pair(line);
    if (!pair) {
      throw ParseError(line_no, header ? "expected \"u v\"" : "expected header \"n m\"");
    }
    if (!header) {
      if (pair->first > std::numeric_limits<VertexId>::max()) {
        throw ParseError(line_no, "vertex count too large");
      }
      header = pair;
      edges.reserve(pair->second);
      continue;
    }
    if (edges.size() == header->second) {
      throw ParseError(line_no, "more edge lines than the declared " +
                                    std::to_string(header->second));
    }
    const auto [u, v] = *pair;
    if (u >= header->first || v >= header->first) {
      throw ParseError(line_no, "edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                    ") has an endpoint outside [0, " +
                                    std::to_string(header->first) + ")");
    }
    edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
  }

  if (!header) throw ParseError(line_no + 1, "missing header \"n m\"");
  if (edges.size() != header->second) {
    throw ParseError(line_no + 1, "expected " + std::to_string(header->second) +
                                      " edge lines, found " + std::to_string(edges.size()));
  }
  return Graph::from_edges(header->first, edges);
}

Graph read_edge_list_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  std::string buf;
  buf.reserve(16 * g.edge_count() + 32);
  buf += std::to_string(g.vertex_count());
  buf += ' ';
  buf += std::to_string(g.edge_count());
  buf += '\n';
  g.for_each_edge([&](VertexId u, VertexId v) {
    buf += std::to_string(u);
    buf += ' ';
    buf += std::to_string(v);
    buf += '\n';
  });
  out << buf;
}

void write_edge_list_file(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  write_edge_list(out, g);
  if (!out) throw InputError("write failed for " + path.string());
}

}  // namespace jigsaw
