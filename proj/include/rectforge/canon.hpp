#pragma once

#include <optional>
#include <vector>

#include "rectforge/core.hpp"

namespace rectforge {

/// Outcome of running the labeling BFS from one seed cell. The lists Lr/Lc
/// grow in discovery order; positions whose partner opens a new row or column
/// enter a FIFO queue together with every cell of the freshly covered row or
/// column. A trace succeeds once every matched position has both its row and
/// its column listed; it fails if an unmatched position reaches the queue
/// front earlier, or if the queue starves.
struct SeedTrace {
    Position seed;
    bool success = false;
    bool starved = false;
    std::vector<int> rowOrder;  // 0-based rows in discovery order
    std::vector<int> colOrder;
    std::vector<Edge> edgeOrder;  // edges in first-access order, queue fully drained
};

SeedTrace traceFrom(const PartialRectangle& rect, Position seed);

/// Everything the enumerator needs from one canonical pass over all seeds.
struct CanonicalAnalysis {
    Labeling labeling;        // winning seed's labeling, ties broken by row-major seed order
    PartialRectangle form;    // permute(rect, labeling)
    std::vector<Labeling> automorphisms;
    Edge canonicalEdge;       // in the input rectangle's coordinates
    std::vector<Position> optimalSeeds;
    int seedsTried = 0;       // number of matched cells
    int seedsSucceeded = 0;
};

/// Runs the trace from every matched cell and keeps the partialLexOrder
/// minimum. Returns nullopt when no seed succeeds (the rectangle is not
/// adequate).
std::optional<CanonicalAnalysis> tryAnalyzeAdequate(const PartialRectangle& rect);

/// As tryAnalyzeAdequate, but throws NotAdequateError (edgeless input
/// included).
CanonicalAnalysis analyzeAdequate(const PartialRectangle& rect);

/// First row-major seed whose trace covers all matched positions before an
/// unmatched queue front, or nullopt. Rejects edgeless rectangles.
std::optional<Position> adequacyWitness(const PartialRectangle& rect);
bool isAdequate(const PartialRectangle& rect);

/// Canonical labeling of a complete matched rectangle without proper matched
/// sub-rectangles. Throws IncompleteInputError on partial input and
/// NotCoveredError when some seed's queue starves (a proper matched
/// sub-rectangle exists).
Labeling canonicalLabeling(const PartialRectangle& rect);
PartialRectangle canonicalForm(const PartialRectangle& rect);

/// All labelings fixing the rectangle, extracted from the seeds whose traces
/// reach the canonical form. At most n*m of them; always contains the
/// identity. Same domain as canonicalLabeling.
std::vector<Labeling> automorphisms(const PartialRectangle& rect);

/// The matching edge accessed last in the canonical seed's trace; for inputs
/// not already in canonical form this is the pre-image of the canonical
/// form's edge under the canonical labeling. Requires an adequate rectangle.
Edge canonicalEdge(const PartialRectangle& rect);

/// The rectangle with its canonical edge removed. Requires >= 2 edges.
PartialRectangle canonicalParent(const PartialRectangle& rect);

}  // namespace rectforge
