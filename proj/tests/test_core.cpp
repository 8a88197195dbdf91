#include <doctest.h>

#include <random>

#include "rectforge/core.hpp"
#include "test_support.hpp"

using namespace rectforge;
using namespace rectforge::testsupport;

TEST_CASE("empty rectangles") {
    PartialRectangle r22(2, 2);
    CHECK(r22.edgeCount() == 0);
    CHECK(r22.cellCount() == 4);
    CHECK_FALSE(r22.complete());

    PartialRectangle r34(3, 4);
    CHECK(r34.cellCount() == 12);
    CHECK(r34.matchedCellCount() == 0);

    PartialRectangle r11(1, 1);
    CHECK_FALSE(r11.complete());  // odd cell count can never complete

    CHECK_THROWS_AS(PartialRectangle(0, 3), OutOfRangeError);
    CHECK_THROWS_AS(PartialRectangle(3, 0), OutOfRangeError);
}

TEST_CASE("edge insertion and matchOf") {
    PartialRectangle r(2, 2);
    PartialRectangle one = r.withEdge({1, 1}, {2, 2});
    CHECK(one.edgeCount() == 1);
    CHECK(r.edgeCount() == 0);  // input value unchanged

    PartialRectangle full = one.withEdge({1, 2}, {2, 1});
    CHECK(full.complete());

    CHECK(*one.matchOf({1, 1}) == Position{2, 2});
    CHECK(*full.matchOf({2, 1}) == Position{1, 2});
    CHECK_FALSE(r.matchOf({1, 1}).has_value());

    CHECK_THROWS_AS(one.withEdge({1, 1}, {1, 2}), PositionOccupiedError);
    CHECK_THROWS_AS(r.withEdge({1, 1}, {1, 1}), SelfLoopError);
    CHECK_THROWS_AS(r.withEdge({1, 1}, {3, 1}), OutOfRangeError);
    CHECK_THROWS_AS(r.matchOf({0, 1}), OutOfRangeError);
}

TEST_CASE("permute maps endpoints componentwise") {
    PartialRectangle diag = diagonal2x2();

    Labeling rowSwap = identityLabeling(2, 2);
    std::swap(rowSwap.rowMap[0], rowSwap.rowMap[1]);
    CHECK(permute(diag, rowSwap) == diag);  // automorphic image

    CHECK(permute(diag, identityLabeling(2, 2)) == diag);

    PartialRectangle stairs = cyclicRectangle(3);
    Labeling reverseCols = identityLabeling(2, 3);
    reverseCols.colMap = {2, 1, 0};
    PartialRectangle expected =
        buildRect(2, 3, {{{1, 3}, {2, 2}}, {{1, 2}, {2, 1}}});
    CHECK(permute(stairs, reverseCols) == expected);

    CHECK_THROWS_AS(permute(diag, identityLabeling(3, 2)), DimensionMismatchError);
}

TEST_CASE("labeling composition applies left to right") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng() % 4);
        int m = 1 + static_cast<int>(rng() % 6);
        int edges = static_cast<int>(rng() % (static_cast<unsigned>(n * m / 2) + 1));
        PartialRectangle rect = randomPartialMatching(n, m, edges, rng);
        Labeling a = randomLabeling(n, m, rng);
        Labeling b = randomLabeling(n, m, rng);
        CHECK(permute(permute(rect, a), b) == permute(rect, composeLabelings(a, b)));
        CHECK(permute(permute(rect, a), inverseLabeling(a)) == rect);
    }
}

TEST_CASE("transpose is an involution") {
    PartialRectangle stairs = cyclicRectangle(3);
    PartialRectangle flipped = transpose(stairs);
    CHECK(flipped.rows() == 3);
    CHECK(flipped.cols() == 2);
    CHECK(flipped == buildRect(3, 2, {{{1, 1}, {2, 2}}, {{2, 1}, {3, 2}}}));
    CHECK(transpose(flipped) == stairs);

    PartialRectangle empty(4, 2);
    CHECK(transpose(empty) == PartialRectangle(2, 4));
}

TEST_CASE("lexCompare orders complete rectangles by flattened matches") {
    PartialRectangle columns = buildRect(2, 2, {{{1, 1}, {2, 1}}, {{1, 2}, {2, 2}}});
    PartialRectangle diag = diagonal2x2();
    CHECK(lexCompare(columns, diag) == std::strong_ordering::less);
    CHECK(lexCompare(diag, columns) == std::strong_ordering::greater);
    CHECK(lexCompare(diag, diag) == std::strong_ordering::equal);

    PartialRectangle rowsRect = buildRect(2, 2, {{{1, 1}, {1, 2}}, {{2, 1}, {2, 2}}});
    // total order: trichotomy + transitivity over the three complete 2x2s
    std::vector<PartialRectangle> all = {columns, diag, rowsRect};
    for (const auto& a : all)
        for (const auto& b : all) {
            auto ab = lexCompare(a, b);
            auto ba = lexCompare(b, a);
            if (ab == std::strong_ordering::less) CHECK(ba == std::strong_ordering::greater);
            if (ab == std::strong_ordering::equal) CHECK(a == b);
        }
    for (const auto& a : all)
        for (const auto& b : all)
            for (const auto& c : all)
                if (lexCompare(a, b) != std::strong_ordering::greater &&
                    lexCompare(b, c) != std::strong_ordering::greater)
                    CHECK(lexCompare(a, c) != std::strong_ordering::greater);

    CHECK_THROWS_AS(lexCompare(PartialRectangle(2, 2), diag), IncompleteInputError);
    CHECK_THROWS_AS(lexCompare(diag, PartialRectangle(2, 3)), DimensionMismatchError);
}

TEST_CASE("staircase family") {
    CHECK(cyclicRectangle(2) == buildRect(2, 2, {{{1, 1}, {2, 2}}}));
    CHECK(cyclicRectangle(3) == buildRect(2, 3, {{{1, 1}, {2, 2}}, {{1, 2}, {2, 3}}}));
    PartialRectangle s4 = cyclicRectangle(4);
    CHECK(s4.edgeCount() == 3);
    CHECK(s4.cellCount() - s4.matchedCellCount() == 2);
    CHECK_THROWS_AS(cyclicRectangle(1), OutOfRangeError);
}

TEST_CASE("containsPattern basics") {
    CHECK(containsPattern(cyclicRectangle(3), cyclicRectangle(2)));

    PartialRectangle sameRowEdge = buildRect(1, 2, {{{1, 1}, {1, 2}}});
    CHECK_FALSE(containsPattern(diagonal2x2(), sameRowEdge));

    PartialRectangle rowsRect = buildRect(2, 2, {{{1, 1}, {1, 2}}, {{2, 1}, {2, 2}}});
    CHECK(containsPattern(rowsRect, sameRowEdge));
}

namespace {

// Reference implementation: enumerate all row and column injections.
bool containsPatternBruteForce(const PartialRectangle& rect, const PartialRectangle& pattern) {
    if (pattern.rows() > rect.rows() || pattern.cols() > rect.cols()) return false;
    std::vector<int> rowImage(pattern.rows());
    std::vector<int> colImage(pattern.cols());
    std::function<bool(int)> pickCol = [&](int pc) -> bool {
        if (pc == pattern.cols()) {
            for (const Edge& e : pattern.edges()) {
                Position a{rowImage[e.a.row - 1] + 1, colImage[e.a.col - 1] + 1};
                Position b{rowImage[e.b.row - 1] + 1, colImage[e.b.col - 1] + 1};
                auto partner = rect.matchOf(a);
                if (!partner || !(*partner == b)) return false;
            }
            return true;
        }
        for (int c = 0; c < rect.cols(); ++c) {
            bool used = false;
            for (int k = 0; k < pc; ++k) used = used || colImage[k] == c;
            if (used) continue;
            colImage[pc] = c;
            if (pickCol(pc + 1)) return true;
        }
        return false;
    };
    std::function<bool(int)> pickRow = [&](int pr) -> bool {
        if (pr == pattern.rows()) return pickCol(0);
        for (int r = 0; r < rect.rows(); ++r) {
            bool used = false;
            for (int k = 0; k < pr; ++k) used = used || rowImage[k] == r;
            if (used) continue;
            rowImage[pr] = r;
            if (pickRow(pr + 1)) return true;
        }
        return false;
    };
    return pickRow(0);
}

}  // namespace

TEST_CASE("containsPattern is reflexive and matches the brute-force reference") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 1 + static_cast<int>(rng() % 4);
        int m = 1 + static_cast<int>(rng() % 4);
        PartialRectangle rect =
            randomPartialMatching(n, m, static_cast<int>(rng() % (n * m / 2 + 1)), rng);
        CHECK(containsPattern(rect, rect));

        int pn = 1 + static_cast<int>(rng() % n);
        int pm = 1 + static_cast<int>(rng() % m);
        PartialRectangle pattern =
            randomPartialMatching(pn, pm, static_cast<int>(rng() % (pn * pm / 2 + 1)), rng);
        CHECK(containsPattern(rect, pattern) == containsPatternBruteForce(rect, pattern));
    }
}

TEST_CASE("pattern embeddings really embed") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng() % 3);
        int m = 2 + static_cast<int>(rng() % 3);
        PartialRectangle rect = randomPartialMatching(n, m, 1 + static_cast<int>(rng() % 3), rng);
        PartialRectangle pattern = randomPartialMatching(2, 2, 1, rng);
        auto embedding = findPatternEmbedding(rect, pattern);
        if (!embedding) continue;
        for (const Edge& e : pattern.edges()) {
            Position a{embedding->rowImage[e.a.row - 1], embedding->colImage[e.a.col - 1]};
            Position b{embedding->rowImage[e.b.row - 1], embedding->colImage[e.b.col - 1]};
            auto partner = rect.matchOf(a);
            REQUIRE(partner.has_value());
            CHECK(*partner == b);
        }
    }
}
