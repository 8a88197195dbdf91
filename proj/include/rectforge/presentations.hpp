#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rectforge/core.hpp"

namespace rectforge {

/// One letter of a relator word: a generator index with exponent +1 or -1.
/// Generators are numbered 1..n for the row generators g1..gn and n+1..n+m
/// for the column generators h1..hm.
struct GenPower {
    int index = 0;
    int exponent = 1;

    friend bool operator==(const GenPower&, const GenPower&) = default;
};

using Word = std::vector<GenPower>;

/// Cancels adjacent inverse letters until no pair remains.
Word freeReduce(Word w);

struct GroupPresentation {
    int rowGenerators = 0;
    int colGenerators = 0;
    std::vector<Word> relators;

    int generatorCount() const { return rowGenerators + colGenerators; }
    std::string generatorName(int index) const;

    friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;
};

/// Generators g1..gn, h1..hm with one relator g_i h_j h_j'^-1 g_i'^-1 per
/// edge {(i,j),(i',j')}, ordered by the edge's smaller endpoint.
GroupPresentation associatedPresentation(const PartialRectangle& rect);

/// associatedPresentation plus the trivializing relators g_{p.row} and
/// h_{p.col}.
GroupPresentation corePresentation(const PartialRectangle& rect, Position p);

struct PresentationBlock {
    int rows = 0;
    int cols = 0;
    std::string id;
    GroupPresentation presentation;

    friend bool operator==(const PresentationBlock&, const PresentationBlock&) = default;
};

PresentationBlock makeBlock(const PartialRectangle& rect, const std::string& id);

/// Renders blocks in the generated-script format, one blank line between
/// blocks:
///   # rectangle n=2 m=2 id=<id>
///   F := FreeGroup("g1","g2","h1","h2");
///   rels := [ F.1*F.3*F.4^-1*F.2^-1, F.1*F.4*F.3^-1*F.2^-1 ];
///   G := F / rels;
///   # G stands for its universal torsion-free quotient
void exportPresentations(std::ostream& out, const std::vector<PresentationBlock>& blocks);
void exportPresentations(const std::string& path, const std::vector<PresentationBlock>& blocks);

/// Parses a file produced by exportPresentations.
std::vector<PresentationBlock> parsePresentations(std::istream& in);

}  // namespace rectforge
