#include <doctest.h>

#include <sstream>

#include "certificate_check.hpp"
#include "rectforge/jsonio.hpp"
#include "rectforge/presentations.hpp"
#include "test_support.hpp"

using namespace rectforge;
using namespace rectforge::testsupport;

TEST_CASE("associated presentation of the diagonal 2x2") {
    GroupPresentation pres = associatedPresentation(diagonal2x2());
    CHECK(pres.rowGenerators == 2);
    CHECK(pres.colGenerators == 2);
    REQUIRE(pres.relators.size() == 2u);
    // g1 h1 h2^-1 g2^-1 and g1 h2 h1^-1 g2^-1
    CHECK(pres.relators[0] == Word{{1, 1}, {3, 1}, {4, -1}, {2, -1}});
    CHECK(pres.relators[1] == Word{{1, 1}, {4, 1}, {3, -1}, {2, -1}});
    CHECK(pres.generatorName(1) == "g1");
    CHECK(pres.generatorName(4) == "h2");
}

TEST_CASE("relator count equals edge count; free groups have none") {
    CHECK(associatedPresentation(PartialRectangle(3, 4)).relators.empty());
    PartialRectangle stairs = cyclicRectangle(4);
    CHECK(associatedPresentation(stairs).relators.size() ==
          static_cast<std::size_t>(stairs.edgeCount()));
}

TEST_CASE("relators are freely reduced") {
    // A same-column edge collapses to a two-letter relator.
    PartialRectangle vertical = buildRect(3, 2, {{{1, 1}, {3, 1}}});
    GroupPresentation pres = associatedPresentation(vertical);
    REQUIRE(pres.relators.size() == 1u);
    CHECK(pres.relators[0] == Word{{1, 1}, {3, -1}});
}

TEST_CASE("core presentation trivializes one row and one column") {
    GroupPresentation pres = corePresentation(diagonal2x2(), {1, 1});
    REQUIRE(pres.relators.size() == 4u);  // edge count + 2
    CHECK(pres.relators[2] == Word{{1, 1}});
    CHECK(pres.relators[3] == Word{{3, 1}});

    GroupPresentation empty = corePresentation(PartialRectangle(2, 3), {2, 3});
    REQUIRE(empty.relators.size() == 2u);
    CHECK(empty.relators[0] == Word{{2, 1}});
    CHECK(empty.relators[1] == Word{{2 + 3, 1}});

    CHECK_THROWS_AS(corePresentation(diagonal2x2(), Position{3, 1}), OutOfRangeError);
}

TEST_CASE("export format is byte-exact") {
    PresentationBlock block = makeBlock(diagonal2x2(), "0011223344556677");
    std::ostringstream out;
    exportPresentations(out, {block});
    CHECK(out.str() ==
          "# rectangle n=2 m=2 id=0011223344556677\n"
          "F := FreeGroup(\"g1\",\"g2\",\"h1\",\"h2\");\n"
          "rels := [ F.1*F.3*F.4^-1*F.2^-1, F.1*F.4*F.3^-1*F.2^-1 ];\n"
          "G := F / rels;\n"
          "# G stands for its universal torsion-free quotient\n");

    std::ostringstream empty;
    exportPresentations(empty, {});
    CHECK(empty.str().empty());

    // blocks are separated by one blank line, in input order
    std::ostringstream two;
    exportPresentations(two, {block, makeBlock(cyclicRectangle(2), "aa")});
    std::string text = two.str();
    CHECK(text.find("\n\n# rectangle n=2 m=2 id=aa\n") != std::string::npos);
}

TEST_CASE("exported files parse back to the same presentations") {
    std::vector<PresentationBlock> blocks = {
        makeBlock(diagonal2x2(), rectangleId(diagonal2x2())),
        makeBlock(cyclicRectangle(3), rectangleId(cyclicRectangle(3))),
        makeBlock(PartialRectangle(2, 2), "free"),
    };
    std::ostringstream out;
    exportPresentations(out, blocks);
    std::istringstream in(out.str());
    std::vector<PresentationBlock> parsed = parsePresentations(in);
    CHECK(parsed == blocks);
}

namespace {

SymbolWord substitute(const Word& relator, const std::vector<SymbolWord>& generatorValues) {
    SymbolWord out;
    for (const GenPower& letter : relator) {
        SymbolWord value = generatorValues[letter.index - 1];
        if (letter.exponent < 0) value = vInverse(value);
        out = vConcat(out, value);
    }
    return out;
}

}  // namespace

TEST_CASE("triangle configurations satisfy their stated core labelings") {
    // Rows labeled 1, a^-1, a^-1 b and columns 1, a, b: the core relators of
    // the commutator triangle collapse to the identity except for one
    // commutator.
    PartialRectangle triangle =
        buildRect(3, 3, {{{1, 1}, {2, 2}}, {{1, 3}, {3, 2}}, {{2, 3}, {3, 1}}});
    std::vector<SymbolWord> values = {
        {}, {-1}, {-1, 2},  // g1, g2, g3
        {}, {1}, {2},       // h1, h2, h3
    };
    GroupPresentation pres = corePresentation(triangle, {1, 1});
    SymbolWord commutator = {1, 2, -1, -2};
    int trivial = 0, commutators = 0;
    for (const Word& relator : pres.relators) {
        SymbolWord w = substitute(relator, values);
        if (w.empty())
            ++trivial;
        else if (vSameClass(w, commutator))
            ++commutators;
    }
    CHECK(trivial == 4);  // two edge relators plus the two trivializers
    CHECK(commutators == 1);

    // Klein variant: rows 1, a^-1, a b^-1 and columns 1, a, b; the one
    // nontrivial relator is in the class of a^2 b^-2.
    PartialRectangle klein =
        buildRect(3, 3, {{{1, 1}, {2, 2}}, {{1, 2}, {3, 3}}, {{2, 3}, {3, 1}}});
    std::vector<SymbolWord> kleinValues = {
        {}, {-1}, {1, -2},
        {}, {1}, {2},
    };
    GroupPresentation kleinPres = corePresentation(klein, {1, 1});
    SymbolWord kleinRelation = {1, 1, -2, -2};
    trivial = commutators = 0;
    for (const Word& relator : kleinPres.relators) {
        SymbolWord w = substitute(relator, kleinValues);
        if (w.empty())
            ++trivial;
        else if (vSameClass(w, kleinRelation))
            ++commutators;
    }
    CHECK(trivial == 4);
    CHECK(commutators == 1);
}
