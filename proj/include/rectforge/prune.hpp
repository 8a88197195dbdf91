#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rectforge/core.hpp"

namespace rectforge {

/// Minimal pair of row/column index sets around a seed position, closed under
/// the matching: an edge leaving the block A x B must land entirely outside
/// both index sets. For a matched seed the closure always contains both
/// endpoints of its edge (that edge is the germ of the cyclic subgroup the
/// closure generates in the core).
struct CyclicClosure {
    std::vector<int> rows;  // sorted, 1-based
    std::vector<int> cols;
    Position seed;

    friend bool operator==(const CyclicClosure&, const CyclicClosure&) = default;
};

CyclicClosure cyclicClosure(const PartialRectangle& rect, Position p);

// --- certificates -----------------------------------------------------------

struct StructuralCertificate {
    bool sameLine = false;
    Edge edge;                  // same-line case
    std::vector<int> rowSet;    // fully matched proper block case, 1-based
    std::vector<int> colSet;
};

struct ClosureCertificate {
    CyclicClosure closure;
};

/// Exponent system over one cyclic closure: row/column generators are powers
/// of a single element, normalized to exponent 0 at the seed's row and column
/// and exponent 1 at the germ partner's column (row, when the germ edge stays
/// in one column). Each in-closure edge forces r_i + c_j = r_i' + c_j'.
struct TorsionCertificate {
    CyclicClosure closure;
    Position germPartner;
    bool scaleOnRows = false;       // scale normalization applied to a row generator
    std::vector<Edge> equations;    // edges inside the closure
    bool inconsistent = false;      // torsion conclusion
    bool rowsEqual = false;         // equal-generator conclusion kind
    int equalA = 0;                 // 1-based indices of the equal pair
    int equalB = 0;
    long long exponent = 0;         // their shared exponent
};

struct CycleCertificate {
    bool transposed = false;
    std::vector<Position> sequence;  // 2k positions: (p_1, p'_1, ..., p_k, p'_k)
    int period = 0;
};

struct ParallelCertificate {
    bool transposed = false;
    std::vector<Position> closing;  // matching sequence returning to its first column
    std::vector<Position> open;     // same row pattern, different final column
};

struct PatternCertificate {
    std::string patternId;
    bool transposed = false;
    std::vector<int> rowImage;  // pattern row r -> rectangle row rowImage[r-1], 1-based
    std::vector<int> colImage;
};

/// Letters are signed symbol ids: +1/-1 for the first free symbol, +2/-2 for
/// the second.
using SymbolWord = std::vector<int>;

struct CoreCertificate {
    bool transposed = false;
    Position seed;
    std::vector<SymbolWord> rowLabels;
    std::vector<SymbolWord> colLabels;
    std::vector<char> rowLabeled;
    std::vector<char> colLabeled;
    bool cyclic = false;     // all labels are powers of one symbol
    SymbolWord relation;     // residual relation, Baumslag-Solitar case
    int bsM = 0;             // matched relation shape b a^m b^-1 a^-n
    int bsN = 0;
};

using Certificate =
    std::variant<std::monostate, StructuralCertificate, ClosureCertificate, TorsionCertificate,
                 CycleCertificate, ParallelCertificate, PatternCertificate, CoreCertificate>;

struct PruneVerdict {
    bool pruned = false;
    std::string rule;
    Certificate certificate;
    std::string description;
};

// --- rules ------------------------------------------------------------------

enum class RuleId {
    Structural,
    ClosureSpans,
    CyclicTorsion,
    PeriodicCycle,
    ParallelMismatch,
    PatternLibrary,
    CyclicOrBsCore,
};

const std::vector<RuleId>& allRules();  // cheapest-first order
std::string ruleName(RuleId id);
std::optional<RuleId> parseRuleName(const std::string& name);

/// Same-line edge, or a fully matched proper sub-rectangle.
PruneVerdict ruleStructural(const PartialRectangle& rect);

/// Some matched position's cyclic closure spans all rows (with a proper
/// column set) or all columns (with a proper row set).
PruneVerdict ruleClosureSpans(const PartialRectangle& rect);

/// The integer exponent system of some closure is inconsistent (torsion) or
/// forces two distinct rows or columns onto the same exponent.
PruneVerdict ruleCyclicTorsion(const PartialRectangle& rect);

/// An induced matching cycle over distinct columns (in the rectangle or its
/// transpose) whose row pattern repeats with a proper period.
PruneVerdict rulePeriodicCycle(const PartialRectangle& rect);

/// Two parallel matching sequences, one closing back to its first column and
/// one ending elsewhere: the two end columns carry equal generators.
PruneVerdict ruleMismatchedParallel(const PartialRectangle& rect);

/// Containment of a built-in degenerate or fruitless partial pattern.
PruneVerdict rulePatternLibrary(const PartialRectangle& rect);

/// Word propagation from a core normalization over at most two free symbols:
/// prunes when every generator is a power of one symbol (cyclic core) or the
/// residual relations reduce to a single solvable Baumslag-Solitar relation.
/// Passes on rectangles that are not adequate in either orientation.
PruneVerdict ruleCyclicOrBsCore(const PartialRectangle& rect);

struct PatternEntry {
    std::string id;
    PartialRectangle pattern;
    bool requireRowSpan = false;  // pattern rows must equal rectangle rows
    bool requireColSpan = false;
};

const std::vector<PatternEntry>& patternLibrary();

/// Where the cyclic-or-Baumslag-Solitar core rule is applied during a tree
/// walk. The check is sound either way; running it on every partial node cuts
/// subtrees more aggressively than the reference counts reflect, so the
/// default restricts it to complete rectangles.
enum class CoreApplication { AtCompletion, EveryNode };

/// Ordered rule set. Pure and reentrant: safe to share across enumeration
/// workers.
class Pruner {
public:
    Pruner() = default;
    explicit Pruner(std::vector<RuleId> rules,
                    CoreApplication core = CoreApplication::AtCompletion)
        : rules_(std::move(rules)), coreApplication_(core) {}

    static Pruner all(CoreApplication core = CoreApplication::AtCompletion) {
        return Pruner(allRules(), core);
    }
    static Pruner none() { return Pruner(); }

    const std::vector<RuleId>& rules() const { return rules_; }
    CoreApplication coreApplication() const { return coreApplication_; }
    bool hasAllRules() const;

    PruneVerdict run(const PartialRectangle& rect) const;

private:
    std::vector<RuleId> rules_;
    CoreApplication coreApplication_ = CoreApplication::AtCompletion;
};

PruneVerdict runPruner(const PartialRectangle& rect, const Pruner& pruner);

}  // namespace rectforge
