#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rectforge/core.hpp"

namespace rectforge {

/// Brute-force references. These are deliberately simple and guarded by hard
/// size limits; they exist to be trusted, not fast.

/// Streams every perfect matching of the n x m grid exactly once. Requires
/// n*m even and n*m <= 16.
void forEachMatching(int rows, int cols, const std::function<void(const PartialRectangle&)>& fn);

std::vector<PartialRectangle> allMatchings(int rows, int cols);

/// True iff some row/column relabeling maps a's edge set onto b's. Requires
/// equal dimensions and n! * m! <= 10^6.
bool bruteIsomorphic(const PartialRectangle& a, const PartialRectangle& b);

/// Exact isomorphism decision by backtracking over row and column images
/// with forward consistency checks. No size guard; used where the factorial
/// enumeration of bruteIsomorphic is infeasible.
bool backtrackIsomorphic(const PartialRectangle& a, const PartialRectangle& b);

/// The partialLexOrder minimum over all n! * m! relabelings: a canonical form
/// valid for arbitrary rectangles, independent of the trace-based labeler.
/// Same size guard as bruteIsomorphic.
PartialRectangle bruteMinimalForm(const PartialRectangle& rect);

struct ClassCount {
    int rows = 0;
    int cols = 0;
    std::string filter;
    std::uint64_t classes = 0;
    std::uint64_t total = 0;  // raw matchings scanned
};

/// Number of isomorphism classes of complete matchings passing the filter.
/// Filter names: "none", "structural" (no same-line edge, no proper matched
/// sub-rectangle), "canonical" (accepted by the canonical labeler).
ClassCount bruteClasses(int rows, int cols, const std::string& filterName);

ClassCount bruteClasses(int rows, int cols, const std::string& filterName,
                        const std::function<bool(const PartialRectangle&)>& filter);

}  // namespace rectforge
