#include "rectforge/canon.hpp"

#include <algorithm>
#include <limits>

namespace rectforge {

namespace {

// Scratch buffers for the per-seed BFS; reused across the seed loop so the
// hot path stays allocation-free.
struct TraceWorkspace {
    std::vector<char> rowIn, colIn, edgeSeen;
    std::vector<int> queue;
    std::vector<int> rowOrder, colOrder;
    std::vector<Edge> edgeOrder;
    std::vector<int> rowMap, colMap;  // original index -> discovery rank, padded
    std::vector<int> invRow, invCol;  // discovery rank -> original index

    void reset(int rows, int cols) {
        rowIn.assign(rows, 0);
        colIn.assign(cols, 0);
        edgeSeen.assign(static_cast<std::size_t>(rows) * cols, 0);
        queue.clear();
        rowOrder.clear();
        colOrder.clear();
        edgeOrder.clear();
    }
};

/// One BFS per the labeling algorithm: succeeds once every matched position
/// has its row and column listed, fails on an unmatched queue front or a
/// starved queue; on success the queue is drained so edgeOrder holds every
/// edge once, in first-access order.
bool runTrace(const PartialRectangle& rect, int seedCell, TraceWorkspace& ws, bool* starved) {
    const int m = rect.cols();
    const auto& partner = rect.partners();
    const int totalMatched = rect.matchedCellCount();

    ws.reset(rect.rows(), m);
    int covered = 0;
    auto recordEdge = [&](int x, int px) {
        int key = std::min(x, px);
        if (!ws.edgeSeen[key]) {
            ws.edgeSeen[key] = 1;
            ws.edgeOrder.emplace_back(rect.cellPosition(x), rect.cellPosition(px));
        }
    };
    auto addRow = [&](int r) {
        ws.rowIn[r] = 1;
        ws.rowOrder.push_back(r);
        for (int c : ws.colOrder) {
            int cell = r * m + c;
            ws.queue.push_back(cell);
            if (partner[cell] >= 0) ++covered;
        }
    };
    auto addCol = [&](int c) {
        ws.colIn[c] = 1;
        ws.colOrder.push_back(c);
        for (int r : ws.rowOrder) {
            int cell = r * m + c;
            ws.queue.push_back(cell);
            if (partner[cell] >= 0) ++covered;
        }
    };

    ws.rowIn[seedCell / m] = 1;
    ws.rowOrder.push_back(seedCell / m);
    ws.colIn[seedCell % m] = 1;
    ws.colOrder.push_back(seedCell % m);
    ws.queue.push_back(seedCell);
    if (partner[seedCell] >= 0) ++covered;

    if (starved) *starved = false;
    std::size_t head = 0;
    while (covered < totalMatched) {
        if (head == ws.queue.size()) {
            if (starved) *starved = true;
            return false;
        }
        int x = ws.queue[head++];
        int px = partner[x];
        if (px < 0) return false;  // unmatched front before full coverage
        recordEdge(x, px);
        int pr = px / m;
        int pc = px % m;
        if (!ws.rowIn[pr]) addRow(pr);
        if (!ws.colIn[pc]) addCol(pc);
    }
    while (head < ws.queue.size()) {
        int x = ws.queue[head++];
        if (partner[x] >= 0) recordEdge(x, partner[x]);
    }
    return true;
}

/// Pads the discovery orders into full permutations: traced rows first, the
/// remaining rows in ascending order, and the inverse tables alongside.
void buildMaps(TraceWorkspace& ws, int rows, int cols) {
    ws.rowMap.assign(rows, -1);
    ws.colMap.assign(cols, -1);
    ws.invRow.resize(rows);
    ws.invCol.resize(cols);
    int next = 0;
    for (int r : ws.rowOrder) {
        ws.rowMap[r] = next;
        ws.invRow[next++] = r;
    }
    for (int r = 0; r < rows; ++r)
        if (ws.rowMap[r] < 0) {
            ws.rowMap[r] = next;
            ws.invRow[next++] = r;
        }
    next = 0;
    for (int c : ws.colOrder) {
        ws.colMap[c] = next;
        ws.invCol[next++] = c;
    }
    for (int c = 0; c < cols; ++c)
        if (ws.colMap[c] < 0) {
            ws.colMap[c] = next;
            ws.invCol[next++] = c;
        }
}

constexpr int kNoPartner = std::numeric_limits<int>::max();

/// Flattened match sequence of the trace-permuted rectangle, compared lazily
/// against the current best partner array (unmatched cells sort last).
std::strong_ordering compareAgainstBest(const PartialRectangle& rect, const TraceWorkspace& ws,
                                        const std::vector<std::int16_t>& best) {
    const int m = rect.cols();
    const auto& partner = rect.partners();
    for (std::size_t newCell = 0; newCell < partner.size(); ++newCell) {
        int orig = ws.invRow[newCell / m] * m + ws.invCol[newCell % m];
        int p = partner[orig];
        int value = p < 0 ? kNoPartner : ws.rowMap[p / m] * m + ws.colMap[p % m];
        int bestValue = best[newCell] < 0 ? kNoPartner : best[newCell];
        if (value != bestValue) return value <=> bestValue;
    }
    return std::strong_ordering::equal;
}

std::vector<std::int16_t> materializePermuted(const PartialRectangle& rect,
                                              const TraceWorkspace& ws) {
    const int m = rect.cols();
    const auto& partner = rect.partners();
    std::vector<std::int16_t> out(partner.size(), std::int16_t{-1});
    for (std::size_t cell = 0; cell < partner.size(); ++cell) {
        int p = partner[cell];
        if (p < 0) continue;
        int from = ws.rowMap[cell / m] * m + ws.colMap[cell % m];
        out[from] = static_cast<std::int16_t>(ws.rowMap[p / m] * m + ws.colMap[p % m]);
    }
    return out;
}

Labeling labelingFromMaps(const TraceWorkspace& ws) {
    Labeling lab;
    lab.rowMap.assign(ws.rowMap.begin(), ws.rowMap.end());
    lab.colMap.assign(ws.colMap.begin(), ws.colMap.end());
    return lab;
}

}  // namespace

SeedTrace traceFrom(const PartialRectangle& rect, Position seed) {
    if (!rect.inRange(seed)) throw OutOfRangeError("trace seed out of range");
    TraceWorkspace ws;
    bool starved = false;
    SeedTrace t;
    t.seed = seed;
    t.success = runTrace(rect, rect.cellIndex(seed), ws, &starved);
    t.starved = starved;
    t.rowOrder = std::move(ws.rowOrder);
    t.colOrder = std::move(ws.colOrder);
    t.edgeOrder = std::move(ws.edgeOrder);
    return t;
}

std::optional<CanonicalAnalysis> tryAnalyzeAdequate(const PartialRectangle& rect) {
    if (rect.edgeCount() == 0) throw NotAdequateError("rectangle has no edges");

    TraceWorkspace ws;
    std::vector<std::int16_t> bestPartners;
    Labeling bestLabeling;
    std::vector<Edge> bestEdgeOrder;
    std::vector<Position> optimalSeeds;
    std::vector<Labeling> optimalLabelings;
    int tried = 0;
    int succeeded = 0;

    for (int cell = 0; cell < rect.cellCount(); ++cell) {
        if (rect.partnerIndex(cell) < 0) continue;  // unmatched seeds never succeed
        ++tried;
        if (!runTrace(rect, cell, ws, nullptr)) continue;
        ++succeeded;
        buildMaps(ws, rect.rows(), rect.cols());
        Position seed = rect.cellPosition(cell);
        if (bestPartners.empty()) {
            bestPartners = materializePermuted(rect, ws);
            bestLabeling = labelingFromMaps(ws);
            bestEdgeOrder = ws.edgeOrder;
            optimalSeeds = {seed};
            optimalLabelings.clear();
            continue;
        }
        auto order = compareAgainstBest(rect, ws, bestPartners);
        if (order == std::strong_ordering::less) {
            bestPartners = materializePermuted(rect, ws);
            bestLabeling = labelingFromMaps(ws);
            bestEdgeOrder = ws.edgeOrder;
            optimalSeeds = {seed};
            optimalLabelings.clear();
        } else if (order == std::strong_ordering::equal) {
            optimalSeeds.push_back(seed);
            optimalLabelings.push_back(labelingFromMaps(ws));
        }
    }
    if (bestPartners.empty()) return std::nullopt;

    CanonicalAnalysis analysis{bestLabeling,
                               permute(rect, bestLabeling),
                               {},
                               bestEdgeOrder.back(),
                               std::move(optimalSeeds),
                               tried,
                               succeeded};

    Labeling invBest = inverseLabeling(bestLabeling);
    std::vector<Labeling> auts;
    auts.reserve(optimalLabelings.size() + 1);
    auts.push_back(identityLabeling(rect.rows(), rect.cols()));
    for (Labeling& labS : optimalLabelings) auts.push_back(composeLabelings(labS, invBest));
    std::sort(auts.begin(), auts.end());
    auts.erase(std::unique(auts.begin(), auts.end()), auts.end());
    analysis.automorphisms = std::move(auts);
    return analysis;
}

CanonicalAnalysis analyzeAdequate(const PartialRectangle& rect) {
    auto a = tryAnalyzeAdequate(rect);
    if (!a) throw NotAdequateError("no seed covers all matched positions");
    return *std::move(a);
}

std::optional<Position> adequacyWitness(const PartialRectangle& rect) {
    if (rect.edgeCount() == 0) throw NotAdequateError("rectangle has no edges");
    TraceWorkspace ws;
    for (int cell = 0; cell < rect.cellCount(); ++cell) {
        if (rect.partnerIndex(cell) < 0) continue;
        if (runTrace(rect, cell, ws, nullptr)) return rect.cellPosition(cell);
    }
    return std::nullopt;
}

bool isAdequate(const PartialRectangle& rect) { return adequacyWitness(rect).has_value(); }

namespace {

CanonicalAnalysis analyzeComplete(const PartialRectangle& rect) {
    if (!rect.complete()) throw IncompleteInputError("input rectangle is not complete");
    auto a = tryAnalyzeAdequate(rect);
    if (!a || a->seedsSucceeded != a->seedsTried)
        throw NotCoveredError("a seed's queue starved: proper matched sub-rectangle present");
    return *std::move(a);
}

}  // namespace

Labeling canonicalLabeling(const PartialRectangle& rect) { return analyzeComplete(rect).labeling; }

PartialRectangle canonicalForm(const PartialRectangle& rect) { return analyzeComplete(rect).form; }

std::vector<Labeling> automorphisms(const PartialRectangle& rect) {
    return analyzeComplete(rect).automorphisms;
}

Edge canonicalEdge(const PartialRectangle& rect) { return analyzeAdequate(rect).canonicalEdge; }

PartialRectangle canonicalParent(const PartialRectangle& rect) {
    if (rect.edgeCount() < 2) throw TooSmallError("canonical parent needs at least 2 edges");
    Edge e = canonicalEdge(rect);
    return rect.withoutEdge(e.a, e.b);
}

}  // namespace rectforge
