#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "rectforge/errors.hpp"

namespace rectforge {

/// A cell of an n x m grid. Coordinates are 1-based throughout the public API.
struct Position {
    int row = 0;
    int col = 0;

    friend auto operator<=>(const Position&, const Position&) = default;
};

/// An unordered matching edge, stored with the position-order smaller endpoint
/// first.
struct Edge {
    Position a;
    Position b;

    Edge() = default;
    Edge(Position p, Position q) : a(p < q ? p : q), b(p < q ? q : p) {}

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Row and column relabeling. `rowMap[r]` is the 0-based image of 0-based row
/// r; likewise for columns. Both maps are bijections on their index ranges.
struct Labeling {
    std::vector<int> rowMap;
    std::vector<int> colMap;

    friend bool operator==(const Labeling&, const Labeling&) = default;
    friend auto operator<=>(const Labeling&, const Labeling&) = default;
};

Labeling identityLabeling(int rows, int cols);
Labeling inverseLabeling(const Labeling& lab);

/// Composition in application order: applying the result equals applying
/// `first` and then `second`.
Labeling composeLabelings(const Labeling& first, const Labeling& second);

/// An n x m grid with a partial perfect matching on its cells. Values are
/// immutable: every mutation-like operation returns a fresh rectangle.
class PartialRectangle {
public:
    /// Creates the empty matching on an n x m grid. Rejects zero dimensions.
    PartialRectangle(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int cellCount() const { return rows_ * cols_; }
    int edgeCount() const { return edgeCount_; }
    int matchedCellCount() const { return 2 * edgeCount_; }
    bool complete() const { return matchedCellCount() == cellCount(); }

    bool inRange(Position p) const {
        return p.row >= 1 && p.row <= rows_ && p.col >= 1 && p.col <= cols_;
    }

    bool isMatched(Position p) const;

    /// Partner of `p`, or nullopt when `p` is unmatched.
    std::optional<Position> matchOf(Position p) const;

    /// Returns a copy with the edge {p, q} added. The inputs must be distinct,
    /// in range and currently unmatched.
    PartialRectangle withEdge(Position p, Position q) const;

    /// Returns a copy with the edge {p, q} removed. The edge must be present.
    PartialRectangle withoutEdge(Position p, Position q) const;

    /// All edges, sorted by their smaller endpoint.
    std::vector<Edge> edges() const;

    friend bool operator==(const PartialRectangle&, const PartialRectangle&) = default;

    // Flat-index accessors used by the hot paths. Cells are numbered row-major
    // starting at 0, which makes flat-index order agree with position order.
    int cellIndex(Position p) const { return (p.row - 1) * cols_ + (p.col - 1); }
    Position cellPosition(int idx) const {
        return Position{idx / cols_ + 1, idx % cols_ + 1};
    }
    int partnerIndex(int idx) const { return partner_[idx]; }
    const std::vector<std::int16_t>& partners() const { return partner_; }

private:
    PartialRectangle(int rows, int cols, std::vector<std::int16_t> partners, int edgeCount)
        : rows_(rows), cols_(cols), edgeCount_(edgeCount), partner_(std::move(partners)) {}

    friend PartialRectangle permute(const PartialRectangle&, const Labeling&);
    friend PartialRectangle transpose(const PartialRectangle&);

    int rows_;
    int cols_;
    int edgeCount_ = 0;
    std::vector<std::int16_t> partner_;  // partner cell index, or -1
};

/// Applies a relabeling: an edge endpoint (r, c) maps to
/// (rowMap(r), colMap(c)).
PartialRectangle permute(const PartialRectangle& rect, const Labeling& lab);

PartialRectangle transpose(const PartialRectangle& rect);

/// Lexicographic order on complete rectangles of equal dimensions: compares
/// the flattened partner sequence (match(1,1), ..., match(1,m), match(2,1),
/// ..., match(n,m)) with partners ordered as (row, col) pairs.
std::strong_ordering lexCompare(const PartialRectangle& a, const PartialRectangle& b);

/// Total order extending lexCompare to partial rectangles of equal
/// dimensions; an unmatched cell sorts after any matched one. This is the
/// order used to pick canonical representatives internally.
std::strong_ordering partialLexOrder(const PartialRectangle& a, const PartialRectangle& b);

/// The 2 x i staircase: edges {(1,j),(2,j+1)} for j in [1, i-1]. Requires
/// i >= 2. Use transpose() for the i x 2 rendering.
PartialRectangle cyclicRectangle(int i);

/// True iff there are injections on rows and columns carrying every pattern
/// edge to an edge of `rect`.
bool containsPattern(const PartialRectangle& rect, const PartialRectangle& pattern);

/// Witnessing injections for containsPattern, 1-based: pattern row r maps to
/// rowImage[r-1]. Rows and columns not touched by any pattern edge are filled
/// with unused indices in ascending order.
struct PatternEmbedding {
    std::vector<int> rowImage;
    std::vector<int> colImage;
};

std::optional<PatternEmbedding> findPatternEmbedding(const PartialRectangle& rect,
                                                     const PartialRectangle& pattern);

}  // namespace rectforge
