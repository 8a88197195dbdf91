#include "rectforge/core.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>

namespace rectforge {

namespace {

std::string posText(Position p) {
    return "(" + std::to_string(p.row) + "," + std::to_string(p.col) + ")";
}

}  // namespace

Labeling identityLabeling(int rows, int cols) {
    Labeling lab;
    lab.rowMap.resize(rows);
    lab.colMap.resize(cols);
    std::iota(lab.rowMap.begin(), lab.rowMap.end(), 0);
    std::iota(lab.colMap.begin(), lab.colMap.end(), 0);
    return lab;
}

Labeling inverseLabeling(const Labeling& lab) {
    Labeling inv;
    inv.rowMap.resize(lab.rowMap.size());
    inv.colMap.resize(lab.colMap.size());
    for (std::size_t r = 0; r < lab.rowMap.size(); ++r) inv.rowMap[lab.rowMap[r]] = static_cast<int>(r);
    for (std::size_t c = 0; c < lab.colMap.size(); ++c) inv.colMap[lab.colMap[c]] = static_cast<int>(c);
    return inv;
}

Labeling composeLabelings(const Labeling& first, const Labeling& second) {
    if (first.rowMap.size() != second.rowMap.size() || first.colMap.size() != second.colMap.size())
        throw DimensionMismatchError("composeLabelings: mismatched dimensions");
    Labeling out;
    out.rowMap.resize(first.rowMap.size());
    out.colMap.resize(first.colMap.size());
    for (std::size_t r = 0; r < first.rowMap.size(); ++r) out.rowMap[r] = second.rowMap[first.rowMap[r]];
    for (std::size_t c = 0; c < first.colMap.size(); ++c) out.colMap[c] = second.colMap[first.colMap[c]];
    return out;
}

PartialRectangle::PartialRectangle(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1)
        throw OutOfRangeError("rectangle dimensions must be positive, got " + std::to_string(rows) +
                              "x" + std::to_string(cols));
    partner_.assign(static_cast<std::size_t>(rows) * cols, std::int16_t{-1});
}

bool PartialRectangle::isMatched(Position p) const {
    if (!inRange(p)) throw OutOfRangeError("position " + posText(p) + " out of range");
    return partner_[cellIndex(p)] >= 0;
}

std::optional<Position> PartialRectangle::matchOf(Position p) const {
    if (!inRange(p)) throw OutOfRangeError("position " + posText(p) + " out of range");
    int q = partner_[cellIndex(p)];
    if (q < 0) return std::nullopt;
    return cellPosition(q);
}

PartialRectangle PartialRectangle::withEdge(Position p, Position q) const {
    if (!inRange(p)) throw OutOfRangeError("position " + posText(p) + " out of range");
    if (!inRange(q)) throw OutOfRangeError("position " + posText(q) + " out of range");
    if (p == q) throw SelfLoopError("cannot match " + posText(p) + " with itself");
    int pi = cellIndex(p);
    int qi = cellIndex(q);
    if (partner_[pi] >= 0) throw PositionOccupiedError("position " + posText(p) + " already matched");
    if (partner_[qi] >= 0) throw PositionOccupiedError("position " + posText(q) + " already matched");
    PartialRectangle out = *this;
    out.partner_[pi] = static_cast<std::int16_t>(qi);
    out.partner_[qi] = static_cast<std::int16_t>(pi);
    ++out.edgeCount_;
    return out;
}

PartialRectangle PartialRectangle::withoutEdge(Position p, Position q) const {
    if (!inRange(p) || !inRange(q)) throw OutOfRangeError("edge endpoint out of range");
    int pi = cellIndex(p);
    int qi = cellIndex(q);
    if (partner_[pi] != qi || partner_[qi] != pi)
        throw OutOfRangeError("edge " + posText(p) + "-" + posText(q) + " not present");
    PartialRectangle out = *this;
    out.partner_[pi] = -1;
    out.partner_[qi] = -1;
    --out.edgeCount_;
    return out;
}

std::vector<Edge> PartialRectangle::edges() const {
    std::vector<Edge> out;
    out.reserve(edgeCount_);
    for (int i = 0; i < cellCount(); ++i) {
        int j = partner_[i];
        if (j > i) out.emplace_back(cellPosition(i), cellPosition(j));
    }
    return out;  // ascending smaller endpoint by construction
}

PartialRectangle permute(const PartialRectangle& rect, const Labeling& lab) {
    if (static_cast<int>(lab.rowMap.size()) != rect.rows() ||
        static_cast<int>(lab.colMap.size()) != rect.cols())
        throw DimensionMismatchError("labeling does not match rectangle dimensions");
    const int m = rect.cols();
    const auto& src = rect.partners();
    std::vector<std::int16_t> out(src.size(), std::int16_t{-1});
    for (int cell = 0; cell < static_cast<int>(src.size()); ++cell) {
        int p = src[cell];
        if (p < 0) continue;
        int from = lab.rowMap[cell / m] * m + lab.colMap[cell % m];
        int to = lab.rowMap[p / m] * m + lab.colMap[p % m];
        out[from] = static_cast<std::int16_t>(to);
    }
    return PartialRectangle(rect.rows(), rect.cols(), std::move(out), rect.edgeCount());
}

PartialRectangle transpose(const PartialRectangle& rect) {
    const int n = rect.rows(), m = rect.cols();
    const auto& src = rect.partners();
    std::vector<std::int16_t> out(src.size(), std::int16_t{-1});
    for (int cell = 0; cell < static_cast<int>(src.size()); ++cell) {
        int p = src[cell];
        if (p < 0) continue;
        int from = (cell % m) * n + cell / m;
        int to = (p % m) * n + p / m;
        out[from] = static_cast<std::int16_t>(to);
    }
    return PartialRectangle(m, n, std::move(out), rect.edgeCount());
}

std::strong_ordering lexCompare(const PartialRectangle& a, const PartialRectangle& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatchError("lexCompare requires equal dimensions");
    if (!a.complete() || !b.complete())
        throw IncompleteInputError("lexCompare requires complete rectangles");
    return partialLexOrder(a, b);
}

std::strong_ordering partialLexOrder(const PartialRectangle& a, const PartialRectangle& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatchError("ordering requires equal dimensions");
    const auto& pa = a.partners();
    const auto& pb = b.partners();
    for (std::size_t i = 0; i < pa.size(); ++i) {
        // Row-major flat indices agree with (row, col) position order; an
        // unmatched cell sorts after every matched one.
        int x = pa[i] < 0 ? std::numeric_limits<std::int16_t>::max() : pa[i];
        int y = pb[i] < 0 ? std::numeric_limits<std::int16_t>::max() : pb[i];
        if (x != y) return x <=> y;
    }
    return std::strong_ordering::equal;
}

PartialRectangle cyclicRectangle(int i) {
    if (i < 2) throw OutOfRangeError("staircase rectangles need at least 2 columns");
    PartialRectangle out(2, i);
    for (int j = 1; j < i; ++j) out = out.withEdge(Position{1, j}, Position{2, j + 1});
    return out;
}

namespace {

// Backtracking over pattern edges: assigns row/column injections as forced by
// mapping each pattern edge onto some rectangle edge (in either endpoint
// order).
class PatternMatcher {
public:
    PatternMatcher(const PartialRectangle& rect, const PartialRectangle& pattern)
        : rect_(rect),
          patternEdges_(pattern.edges()),
          rowImage_(pattern.rows(), -1),
          colImage_(pattern.cols(), -1),
          rowUsed_(rect.rows(), false),
          colUsed_(rect.cols(), false),
          rectEdges_(rect.edges()) {}

    bool search() { return extend(0); }

    PatternEmbedding embedding() const {
        PatternEmbedding out;
        out.rowImage = fillInjection(rowImage_, rowUsed_);
        out.colImage = fillInjection(colImage_, colUsed_);
        return out;
    }

private:
    static std::vector<int> fillInjection(const std::vector<int>& image,
                                          const std::vector<char>& used) {
        std::vector<char> taken = used;
        std::vector<int> out(image.size());
        for (std::size_t i = 0; i < image.size(); ++i) {
            if (image[i] >= 0) {
                out[i] = image[i] + 1;
            } else {
                int free = 0;
                while (taken[free]) ++free;
                taken[free] = 1;
                out[i] = free + 1;
            }
        }
        return out;
    }

    struct Undo {
        std::array<std::pair<int, int>, 2> rows{};
        std::array<std::pair<int, int>, 2> cols{};
        int rowCount = 0;
        int colCount = 0;
    };

    bool assignRow(int from, int to, Undo& undo) {
        if (rowImage_[from] == to) return true;
        if (rowImage_[from] != -1 || rowUsed_[to]) return false;
        rowImage_[from] = to;
        rowUsed_[to] = true;
        undo.rows[undo.rowCount++] = {from, to};
        return true;
    }

    bool assignCol(int from, int to, Undo& undo) {
        if (colImage_[from] == to) return true;
        if (colImage_[from] != -1 || colUsed_[to]) return false;
        colImage_[from] = to;
        colUsed_[to] = true;
        undo.cols[undo.colCount++] = {from, to};
        return true;
    }

    bool tryMap(const Position& pp, const Position& rp, Undo& undo) {
        return assignRow(pp.row - 1, rp.row - 1, undo) && assignCol(pp.col - 1, rp.col - 1, undo);
    }

    void rollback(const Undo& undo) {
        for (int i = 0; i < undo.rowCount; ++i) {
            rowImage_[undo.rows[i].first] = -1;
            rowUsed_[undo.rows[i].second] = false;
        }
        for (int i = 0; i < undo.colCount; ++i) {
            colImage_[undo.cols[i].first] = -1;
            colUsed_[undo.cols[i].second] = false;
        }
    }

    bool extend(std::size_t k) {
        if (k == patternEdges_.size()) return true;
        const Edge& pe = patternEdges_[k];
        for (const Edge& re : rectEdges_) {
            for (int orient = 0; orient < 2; ++orient) {
                Position ra = orient == 0 ? re.a : re.b;
                Position rb = orient == 0 ? re.b : re.a;
                Undo undo;
                if (tryMap(pe.a, ra, undo) && tryMap(pe.b, rb, undo)) {
                    if (extend(k + 1)) return true;
                }
                rollback(undo);
            }
        }
        return false;
    }

    const PartialRectangle& rect_;
    std::vector<Edge> patternEdges_;
    std::vector<int> rowImage_, colImage_;
    std::vector<char> rowUsed_, colUsed_;
    std::vector<Edge> rectEdges_;
};

}  // namespace

bool containsPattern(const PartialRectangle& rect, const PartialRectangle& pattern) {
    return findPatternEmbedding(rect, pattern).has_value();
}

std::optional<PatternEmbedding> findPatternEmbedding(const PartialRectangle& rect,
                                                     const PartialRectangle& pattern) {
    if (pattern.rows() > rect.rows() || pattern.cols() > rect.cols()) return std::nullopt;
    if (pattern.edgeCount() > rect.edgeCount()) return std::nullopt;
    PatternMatcher matcher(rect, pattern);
    if (!matcher.search()) return std::nullopt;
    return matcher.embedding();
}

}  // namespace rectforge
