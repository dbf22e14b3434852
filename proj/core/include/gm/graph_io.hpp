#ifndef GM_GRAPH_IO_HPP
#define GM_GRAPH_IO_HPP

#include <string>
#include <string_view>

#include "gm/graph.hpp"

namespace gm {

/// Text format, line based:
///   graph <numVertices>
///   <u> <v> <num>[/<den>]      one line per edge
///   label <v> <text>           optional
/// Weights are written in lowest terms, so graph -> text -> graph is exact
/// and writing a parsed canonical file reproduces it byte for byte.
WeightedGraph parseGraph(std::string_view text);
std::string writeGraph(const WeightedGraph& g);

/// One "u v" pair per line.
Matching parseMatchingFile(std::string_view text);
std::string writeMatchingFile(const Matching& m);

} // namespace gm

#endif
