#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "jigsaw/graph.hpp"

namespace jigsaw {

// Runs the command line `args` (without the program name). Payloads go to
// `out`, diagnostics and progress to `err`. Returns the process exit code:
// 0 success, 2 usage or input error, 1 internal error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Puzzle from a generator string (cycle:N, ring:N, star:N, torus:RxC,
// tree:N:MAXDEG[:SEED], path:N, complete:N, triangle) or an edge-list path.
// The result is always connected.
Graph puzzle_from_spec(const std::string& spec);

}  // namespace jigsaw
