#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rectforge/core.hpp"

namespace rectforge {

/// One-line JSON encoding of a rectangle:
/// {"n":3,"m":4,"edges":[[[1,1],[2,2]],[[2,1],[3,2]]]}
/// Edges are sorted by their lexicographically smaller endpoint; every pair
/// is 1-based [row,col].
std::string toJsonLine(const PartialRectangle& rect);

/// Parses one JSONL line, validating ranges and matching disjointness.
PartialRectangle fromJsonLine(const std::string& line);

/// Reads rectangles from a JSONL stream, skipping blank lines.
std::vector<PartialRectangle> readJsonl(std::istream& in);

void writeJsonl(std::ostream& out, const std::vector<PartialRectangle>& rects);

/// FNV-1a hash of the canonical JSON encoding, as 16 hex digits. Used as a
/// stable rectangle identifier in export headers.
std::string rectangleId(const PartialRectangle& rect);

}  // namespace rectforge
