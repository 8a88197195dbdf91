#pragma once

#include <iosfwd>
#include <set>
#include <variant>
#include <vector>

#include "rectforge/core.hpp"

namespace rectforge {

struct SimpleGraph {
    int vertexCount = 0;
    std::set<std::pair<int, int>> edges;  // 1-based, (u, v) with u < v

    friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;
};

/// Raised structure instead of a SimpleGraph when a 3-row rectangle maps two
/// matching edges onto the same column pair, or an edge within one column.
struct MultiEdgeReport {
    std::vector<std::pair<int, int>> duplicates;  // column pairs hit twice, loops as (c, c)
};

/// Column graph of a 3-row rectangle: vertices are columns, one graph edge
/// per matching edge joining distinct columns.
std::variant<SimpleGraph, MultiEdgeReport> underlyingGraph(const PartialRectangle& rect);

bool isCubicTriangleFree(const SimpleGraph& g);

/// Encodes a graph as a complete |V| x 2|E| matched rectangle: each graph
/// edge {i,j} contributes two columns matched vertically at rows i and j and
/// horizontally at every other row. Isomorphism of the rectangles coincides
/// with isomorphism of the graphs. The result generally contains proper
/// matched sub-rectangles, so it is valid input for the brute-force
/// isomorphism oracles only, never for the canonical labeler.
PartialRectangle encodeGraph(const SimpleGraph& g);

/// Edge-list text format: first line "p <vertices> <edges>", then one
/// "e u v" line per edge, 1-based.
SimpleGraph readGraph(std::istream& in);
void writeGraph(std::ostream& out, const SimpleGraph& g);

}  // namespace rectforge
