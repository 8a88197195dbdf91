#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rectforge/core.hpp"
#include "rectforge/prune.hpp"

namespace rectforge {

struct EnumerationStats {
    int rows = 0;
    int cols = 0;
    std::uint64_t nodesVisited = 0;  // construction-path-accepted rectangles
    std::map<std::string, std::uint64_t> prunedByRule;
    std::uint64_t survivors = 0;
    double elapsedSeconds = 0.0;
    bool truncated = false;  // stopped early by a node cap

    void mergeCounts(const EnumerationStats& other);
};

struct EnumerationOptions {
    int rows = 0;
    int cols = 0;
    Pruner pruner = Pruner::all();
    int jobs = 1;
    int taskDepth = 3;           // edge count below which subtrees become parallel tasks
    std::uint64_t maxNodes = 0;  // 0 = unlimited; approximate under parallelism
    /// When enabled (and all rules are active) every complete 3-row survivor
    /// must induce a simple cubic triangle-free column graph; a violation
    /// aborts the run.
    bool verifyUnderlyingGraphs = true;
    /// Observer for every pruning decision; must tolerate concurrent calls.
    std::function<void(const PartialRectangle&, const PruneVerdict&)> verdictObserver;
};

/// Representative children of an adequate parent (or of the empty rectangle):
/// one extension per isomorphism class of adequate rectangles whose canonical
/// parent is isomorphic to `parent`. New edges obey the fresh-row/column
/// normalization and are accepted when the child's canonical edge lies in the
/// automorphism orbit of the added edge.
std::vector<PartialRectangle> children(const PartialRectangle& parent);

/// Depth-first canonical-construction-path enumeration. The sink receives
/// every complete unpruned rectangle exactly once per isomorphism class, in
/// canonical form; call order is unspecified and concurrent when jobs > 1.
EnumerationStats enumerate(const EnumerationOptions& options,
                           const std::function<void(const PartialRectangle&)>& sink);

struct EnumerationResult {
    EnumerationStats stats;
    std::vector<PartialRectangle> survivors;  // canonical forms, sorted
};

EnumerationResult enumerateCollect(const EnumerationOptions& options);

}  // namespace rectforge
