#include "rectforge/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "rectforge/canon.hpp"

namespace rectforge {

namespace {

std::uint64_t factorial(int k) {
    std::uint64_t f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

void enumerateMatchings(PartialRectangle& rect, int fromCell,
                        const std::function<void(const PartialRectangle&)>& fn) {
    int total = rect.cellCount();
    int cell = fromCell;
    while (cell < total && rect.partnerIndex(cell) >= 0) ++cell;
    if (cell == total) {
        fn(rect);
        return;
    }
    Position p = rect.cellPosition(cell);
    for (int other = cell + 1; other < total; ++other) {
        if (rect.partnerIndex(other) >= 0) continue;
        PartialRectangle next = rect.withEdge(p, rect.cellPosition(other));
        enumerateMatchings(next, cell + 1, fn);
    }
}

bool hasSameLineEdge(const PartialRectangle& rect) {
    for (const Edge& e : rect.edges())
        if (e.a.row == e.b.row || e.a.col == e.b.col) return true;
    return false;
}

// Literal subset scan for a fully matched proper sub-rectangle; exponential
// and only suitable for oracle-scale inputs.
bool hasProperMatchedSubRectangleBrute(const PartialRectangle& rect) {
    int n = rect.rows(), m = rect.cols();
    for (unsigned rmask = 1; rmask < (1u << n); ++rmask) {
        for (unsigned cmask = 1; cmask < (1u << m); ++cmask) {
            if (rmask == (1u << n) - 1 && cmask == (1u << m) - 1) continue;
            bool ok = true;
            for (int r = 0; r < n && ok; ++r) {
                if (!(rmask >> r & 1)) continue;
                for (int c = 0; c < m && ok; ++c) {
                    if (!(cmask >> c & 1)) continue;
                    int p = rect.partnerIndex(r * m + c);
                    if (p < 0 || !(rmask >> (p / m) & 1) || !(cmask >> (p % m) & 1)) ok = false;
                }
            }
            if (ok) return true;
        }
    }
    return false;
}

bool inCanonicalDomain(const PartialRectangle& rect) {
    if (!rect.complete()) return false;
    for (int cell = 0; cell < rect.cellCount(); ++cell)
        if (!traceFrom(rect, rect.cellPosition(cell)).success) return false;
    return true;
}

}  // namespace

void forEachMatching(int rows, int cols, const std::function<void(const PartialRectangle&)>& fn) {
    PartialRectangle empty(rows, cols);
    if (rows * cols % 2 != 0) throw OddCellCountError("grid has an odd number of cells");
    if (rows * cols > 16) throw TooLargeError("matching enumeration capped at 16 cells");
    enumerateMatchings(empty, 0, fn);
}

std::vector<PartialRectangle> allMatchings(int rows, int cols) {
    std::vector<PartialRectangle> out;
    forEachMatching(rows, cols, [&](const PartialRectangle& r) { out.push_back(r); });
    return out;
}

namespace {

void checkLabelingBudget(const PartialRectangle& a) {
    if (factorial(a.rows()) * factorial(a.cols()) > 1000000ull)
        throw TooLargeError("labeling enumeration capped at 10^6");
}

template <typename Fn>
void forEachLabeling(int rows, int cols, Fn&& fn) {
    std::vector<int> rp(rows), cp(cols);
    std::iota(rp.begin(), rp.end(), 0);
    do {
        std::iota(cp.begin(), cp.end(), 0);
        do {
            if (fn(Labeling{rp, cp})) return;
        } while (std::next_permutation(cp.begin(), cp.end()));
    } while (std::next_permutation(rp.begin(), rp.end()));
}

}  // namespace

bool bruteIsomorphic(const PartialRectangle& a, const PartialRectangle& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatchError("bruteIsomorphic requires equal dimensions");
    checkLabelingBudget(a);
    if (a.edgeCount() != b.edgeCount()) return false;
    bool found = false;
    forEachLabeling(a.rows(), a.cols(), [&](const Labeling& lab) {
        if (permute(a, lab) == b) found = true;
        return found;
    });
    return found;
}

PartialRectangle bruteMinimalForm(const PartialRectangle& rect) {
    checkLabelingBudget(rect);
    PartialRectangle best = rect;
    forEachLabeling(rect.rows(), rect.cols(), [&](const Labeling& lab) {
        PartialRectangle img = permute(rect, lab);
        if (partialLexOrder(img, best) == std::strong_ordering::less) best = std::move(img);
        return false;
    });
    return best;
}

namespace {

class IsoSearch {
public:
    IsoSearch(const PartialRectangle& a, const PartialRectangle& b)
        : a_(a), b_(b), n_(a.rows()), m_(a.cols()), rowImg_(n_, -1), rowUsed_(n_, 0),
          colImg_(m_, -1), colUsed_(m_, 0) {
        rowDegA_ = degreesByRow(a);
        rowDegB_ = degreesByRow(b);
        colDegA_ = degreesByCol(a);
        colDegB_ = degreesByCol(b);
    }

    bool run() { return assignRow(0); }

private:
    static std::vector<int> degreesByRow(const PartialRectangle& r) {
        std::vector<int> deg(r.rows(), 0);
        for (int cell = 0; cell < r.cellCount(); ++cell)
            if (r.partnerIndex(cell) >= 0) ++deg[cell / r.cols()];
        return deg;
    }
    static std::vector<int> degreesByCol(const PartialRectangle& r) {
        std::vector<int> deg(r.cols(), 0);
        for (int cell = 0; cell < r.cellCount(); ++cell)
            if (r.partnerIndex(cell) >= 0) ++deg[cell % r.cols()];
        return deg;
    }

    // Vertical edges (both endpoints in one column) as a sorted row-pair list.
    static std::vector<std::pair<int, int>> verticalPairs(const PartialRectangle& r, int col) {
        std::vector<std::pair<int, int>> out;
        for (int row = 0; row < r.rows(); ++row) {
            int cell = row * r.cols() + col;
            int p = r.partnerIndex(cell);
            if (p >= 0 && p % r.cols() == col && p / r.cols() > row)
                out.emplace_back(row, p / r.cols());
        }
        return out;
    }

    bool assignRow(int r) {
        if (r == n_) return assignCol(0);
        for (int img = 0; img < n_; ++img) {
            if (rowUsed_[img] || rowDegA_[r] != rowDegB_[img]) continue;
            rowImg_[r] = img;
            rowUsed_[img] = 1;
            if (assignRow(r + 1)) return true;
            rowUsed_[img] = 0;
        }
        rowImg_[r] = -1;
        return false;
    }

    bool colCompatible(int c, int img) const {
        if (colDegA_[c] != colDegB_[img]) return false;
        auto va = verticalPairs(a_, c);
        auto vb = verticalPairs(b_, img);
        if (va.size() != vb.size()) return false;
        std::vector<std::pair<int, int>> mapped;
        for (auto& [r1, r2] : va) {
            int i1 = rowImg_[r1], i2 = rowImg_[r2];
            mapped.emplace_back(std::min(i1, i2), std::max(i1, i2));
        }
        std::sort(mapped.begin(), mapped.end());
        std::sort(vb.begin(), vb.end());
        return mapped == vb;
    }

    bool edgesConsistent(int upTo) const {
        for (int cell = 0; cell < a_.cellCount(); ++cell) {
            int p = a_.partnerIndex(cell);
            if (p <= cell) continue;
            int c1 = cell % m_, c2 = p % m_;
            if (c1 > upTo || c2 > upTo) continue;
            int bCell = rowImg_[cell / m_] * m_ + colImg_[c1];
            int bPartnerWanted = rowImg_[p / m_] * m_ + colImg_[c2];
            if (b_.partnerIndex(bCell) != bPartnerWanted) return false;
        }
        return true;
    }

    bool assignCol(int c) {
        if (c == m_) return true;
        for (int img = 0; img < m_; ++img) {
            if (colUsed_[img] || !colCompatible(c, img)) continue;
            colImg_[c] = img;
            colUsed_[img] = 1;
            if (edgesConsistent(c) && assignCol(c + 1)) return true;
            colUsed_[img] = 0;
        }
        colImg_[c] = -1;
        return false;
    }

    const PartialRectangle& a_;
    const PartialRectangle& b_;
    int n_, m_;
    std::vector<int> rowImg_;
    std::vector<char> rowUsed_;
    std::vector<int> colImg_;
    std::vector<char> colUsed_;
    std::vector<int> rowDegA_, rowDegB_, colDegA_, colDegB_;
};

}  // namespace

bool backtrackIsomorphic(const PartialRectangle& a, const PartialRectangle& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatchError("backtrackIsomorphic requires equal dimensions");
    if (a.edgeCount() != b.edgeCount()) return false;
    return IsoSearch(a, b).run();
}

ClassCount bruteClasses(int rows, int cols, const std::string& filterName) {
    std::function<bool(const PartialRectangle&)> filter;
    if (filterName == "none")
        filter = [](const PartialRectangle&) { return true; };
    else if (filterName == "structural")
        filter = [](const PartialRectangle& r) {
            return !hasSameLineEdge(r) && !hasProperMatchedSubRectangleBrute(r);
        };
    else if (filterName == "canonical")
        filter = inCanonicalDomain;
    else
        throw Error("unknown filter: " + filterName);
    return bruteClasses(rows, cols, filterName, filter);
}

ClassCount bruteClasses(int rows, int cols, const std::string& filterName,
                        const std::function<bool(const PartialRectangle&)>& filter) {
    ClassCount count;
    count.rows = rows;
    count.cols = cols;
    count.filter = filterName;
    std::set<std::vector<std::int16_t>> seen;
    forEachMatching(rows, cols, [&](const PartialRectangle& r) {
        ++count.total;
        if (!filter(r)) return;
        seen.insert(bruteMinimalForm(r).partners());
    });
    count.classes = seen.size();
    return count;
}

}  // namespace rectforge
