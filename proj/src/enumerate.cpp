#include "rectforge/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <set>
#include <thread>

#include "rectforge/canon.hpp"
#include "rectforge/graphutil.hpp"

namespace rectforge {

void EnumerationStats::mergeCounts(const EnumerationStats& other) {
    nodesVisited += other.nodesVisited;
    survivors += other.survivors;
    truncated = truncated || other.truncated;
    for (const auto& [rule, count] : other.prunedByRule) prunedByRule[rule] += count;
}

namespace {

std::vector<int> freshRows(const PartialRectangle& rect) {
    std::vector<char> touched(rect.rows(), 0);
    for (int cell = 0; cell < rect.cellCount(); ++cell)
        if (rect.partnerIndex(cell) >= 0) touched[cell / rect.cols()] = 1;
    std::vector<int> out;
    for (int r = 0; r < rect.rows(); ++r)
        if (!touched[r]) out.push_back(r + 1);
    return out;
}

std::vector<int> freshCols(const PartialRectangle& rect) {
    std::vector<char> touched(rect.cols(), 0);
    for (int cell = 0; cell < rect.cellCount(); ++cell)
        if (rect.partnerIndex(cell) >= 0) touched[cell % rect.cols()] = 1;
    std::vector<int> out;
    for (int c = 0; c < rect.cols(); ++c)
        if (!touched[c]) out.push_back(c + 1);
    return out;
}

Position applyToPosition(const Labeling& lab, Position p) {
    return Position{lab.rowMap[p.row - 1] + 1, lab.colMap[p.col - 1] + 1};
}

Edge applyToEdge(const Labeling& lab, const Edge& e) {
    return Edge(applyToPosition(lab, e.a), applyToPosition(lab, e.b));
}

/// Renames fresh rows/columns used by the edge onto the smallest fresh
/// indices; with two distinct fresh rows (or columns) both assignment orders
/// are isomorphic, so the smaller resulting edge is kept.
Edge normalizeFreshEdge(const std::vector<int>& fresh_rows, const std::vector<int>& fresh_cols,
                        Edge e) {
    auto isFreshRow = [&](int r) {
        return std::binary_search(fresh_rows.begin(), fresh_rows.end(), r);
    };
    auto isFreshCol = [&](int c) {
        return std::binary_search(fresh_cols.begin(), fresh_cols.end(), c);
    };

    bool fa = isFreshRow(e.a.row), fb = isFreshRow(e.b.row);
    std::vector<std::pair<int, int>> rowChoices;  // (new row for a, new row for b)
    if (fa && fb && e.a.row != e.b.row) {
        rowChoices = {{fresh_rows[0], fresh_rows[1]}, {fresh_rows[1], fresh_rows[0]}};
    } else {
        int ra = fa ? fresh_rows[0] : e.a.row;
        int rb = fb ? fresh_rows[0] : e.b.row;
        rowChoices = {{ra, rb}};
    }
    bool ga = isFreshCol(e.a.col), gb = isFreshCol(e.b.col);
    std::vector<std::pair<int, int>> colChoices;
    if (ga && gb && e.a.col != e.b.col) {
        colChoices = {{fresh_cols[0], fresh_cols[1]}, {fresh_cols[1], fresh_cols[0]}};
    } else {
        int ca = ga ? fresh_cols[0] : e.a.col;
        int cb = gb ? fresh_cols[0] : e.b.col;
        colChoices = {{ca, cb}};
    }

    bool first = true;
    Edge best;
    for (auto& [ra, rb] : rowChoices) {
        for (auto& [ca, cb] : colChoices) {
            Edge candidate(Position{ra, ca}, Position{rb, cb});
            if (first || candidate < best) {
                best = candidate;
                first = false;
            }
        }
    }
    return best;
}

/// Candidate new edges for a parent, one per orbit of the parent's
/// automorphisms combined with fresh-row/column renaming.
std::vector<Edge> candidateEdges(const PartialRectangle& parent,
                                 const std::vector<Labeling>& parentAuts) {
    std::vector<int> fr = freshRows(parent);
    std::vector<int> fc = freshCols(parent);

    std::set<Edge> normalized;
    std::vector<int> unmatched;
    for (int cell = 0; cell < parent.cellCount(); ++cell)
        if (parent.partnerIndex(cell) < 0) unmatched.push_back(cell);
    for (std::size_t i = 0; i < unmatched.size(); ++i) {
        for (std::size_t j = i + 1; j < unmatched.size(); ++j) {
            Edge e(parent.cellPosition(unmatched[i]), parent.cellPosition(unmatched[j]));
            normalized.insert(normalizeFreshEdge(fr, fc, e));
        }
    }

    std::vector<Edge> out;
    for (const Edge& e : normalized) {
        bool isOrbitMin = true;
        for (const Labeling& aut : parentAuts) {
            Edge image = normalizeFreshEdge(fr, fc, applyToEdge(aut, e));
            if (image < e) {
                isOrbitMin = false;
                break;
            }
        }
        if (isOrbitMin) out.push_back(e);
    }
    return out;
}

struct AcceptedChild {
    Edge newEdge;                // in parent coordinates
    PartialRectangle asBuilt;    // parent + newEdge
    CanonicalAnalysis analysis;  // of asBuilt
};

std::vector<AcceptedChild> acceptedChildren(const PartialRectangle& parent,
                                            const std::vector<Labeling>& parentAuts) {
    std::vector<AcceptedChild> out;
    for (const Edge& e : candidateEdges(parent, parentAuts)) {
        PartialRectangle child = parent.withEdge(e.a, e.b);
        auto analysis = tryAnalyzeAdequate(child);
        if (!analysis) continue;
        // The child joins the tree iff its canonical edge is the new edge up
        // to one of the child's automorphisms.
        bool accepted = false;
        for (const Labeling& aut : analysis->automorphisms) {
            if (applyToEdge(aut, e) == analysis->canonicalEdge) {
                accepted = true;
                break;
            }
        }
        if (accepted) out.push_back({e, std::move(child), *std::move(analysis)});
    }
    return out;
}

std::vector<Labeling> conjugateAutomorphisms(const CanonicalAnalysis& analysis) {
    // Aut(form) = L^-1 . Aut(asBuilt) . L in application order inv(L), A, L.
    Labeling inv = inverseLabeling(analysis.labeling);
    std::vector<Labeling> out;
    out.reserve(analysis.automorphisms.size());
    for (const Labeling& a : analysis.automorphisms)
        out.push_back(composeLabelings(inv, composeLabelings(a, analysis.labeling)));
    return out;
}

struct SharedState {
    const EnumerationOptions* options = nullptr;
    const std::function<void(const PartialRectangle&)>* sink = nullptr;
    bool graphCheck = false;
    std::atomic<std::uint64_t> nodeCounter{0};
    std::atomic<bool> capped{false};
    std::mutex sinkMutex;

    bool budgetExhausted() const {
        return options->maxNodes != 0 && nodeCounter.load(std::memory_order_relaxed) >= options->maxNodes;
    }
};

struct Task {
    PartialRectangle form;
    std::vector<Labeling> automorphisms;
};

void visitNode(SharedState& state, EnumerationStats& stats, const PartialRectangle& form,
               const std::vector<Labeling>& auts, int taskDepthRemaining,
               std::vector<Task>* frontier) {
    if (state.budgetExhausted()) {
        state.capped.store(true, std::memory_order_relaxed);
        stats.truncated = true;
        return;
    }
    state.nodeCounter.fetch_add(1, std::memory_order_relaxed);
    ++stats.nodesVisited;

    PruneVerdict verdict = state.options->pruner.run(form);
    if (state.options->verdictObserver) state.options->verdictObserver(form, verdict);
    if (verdict.pruned) {
        ++stats.prunedByRule[verdict.rule];
        return;
    }
    if (form.complete()) {
        if (state.graphCheck && form.rows() == 3) {
            auto graph = underlyingGraph(form);
            if (!std::holds_alternative<SimpleGraph>(graph) ||
                !isCubicTriangleFree(std::get<SimpleGraph>(graph)))
                throw Error("survivor with a non-cubic or triangle column graph: " +
                            std::string("all prune rules were enabled"));
        }
        ++stats.survivors;
        std::lock_guard<std::mutex> lock(state.sinkMutex);
        (*state.sink)(form);
        return;
    }

    for (AcceptedChild& child : acceptedChildren(form, auts)) {
        PartialRectangle childForm = child.analysis.form;
        std::vector<Labeling> childAuts = conjugateAutomorphisms(child.analysis);
        if (frontier && taskDepthRemaining <= 1) {
            frontier->push_back(Task{std::move(childForm), std::move(childAuts)});
        } else {
            visitNode(state, stats, childForm, childAuts, taskDepthRemaining - 1, frontier);
        }
    }
}

}  // namespace

std::vector<PartialRectangle> children(const PartialRectangle& parent) {
    std::vector<Labeling> auts;
    if (parent.edgeCount() == 0) {
        auts.push_back(identityLabeling(parent.rows(), parent.cols()));
    } else {
        auto analysis = tryAnalyzeAdequate(parent);
        if (!analysis) throw NotAdequateError("children() needs an adequate parent");
        auts = analysis->automorphisms;
    }
    std::vector<PartialRectangle> out;
    for (AcceptedChild& c : acceptedChildren(parent, auts)) out.push_back(std::move(c.asBuilt));
    return out;
}

EnumerationStats enumerate(const EnumerationOptions& options,
                           const std::function<void(const PartialRectangle&)>& sink) {
    auto start = std::chrono::steady_clock::now();

    EnumerationStats stats;
    stats.rows = options.rows;
    stats.cols = options.cols;
    for (RuleId id : options.pruner.rules()) stats.prunedByRule[ruleName(id)] = 0;

    SharedState state;
    state.options = &options;
    state.sink = &sink;
    state.graphCheck =
        options.verifyUnderlyingGraphs && options.rows == 3 && options.pruner.hasAllRules();

    PartialRectangle root(options.rows, options.cols);
    std::vector<Labeling> rootAuts{identityLabeling(options.rows, options.cols)};

    int jobs = std::max(1, options.jobs);
    std::vector<Task> frontier;
    std::vector<Task>* frontierPtr = jobs > 1 ? &frontier : nullptr;
    int splitDepth = jobs > 1 ? std::max(1, options.taskDepth) : -1;

    // The empty root is the designated seed; it is not itself a generated
    // rectangle and is never pruned.
    for (AcceptedChild& child : acceptedChildren(root, rootAuts)) {
        PartialRectangle childForm = child.analysis.form;
        std::vector<Labeling> childAuts = conjugateAutomorphisms(child.analysis);
        visitNode(state, stats, childForm, childAuts, splitDepth, frontierPtr);
    }

    if (jobs > 1) {
        std::vector<EnumerationStats> workerStats(jobs);
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        std::vector<std::exception_ptr> errors(jobs);
        for (int w = 0; w < jobs; ++w) {
            workers.emplace_back([&, w] {
                try {
                    while (true) {
                        std::size_t i = next.fetch_add(1);
                        if (i >= frontier.size()) break;
                        visitNode(state, workerStats[w], frontier[i].form,
                                  frontier[i].automorphisms, -1, nullptr);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : workers) t.join();
        for (auto& err : errors)
            if (err) std::rethrow_exception(err);
        for (const auto& ws : workerStats) stats.mergeCounts(ws);
    }

    stats.truncated = stats.truncated || state.capped.load();
    stats.elapsedSeconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return stats;
}

EnumerationResult enumerateCollect(const EnumerationOptions& options) {
    EnumerationResult result;
    std::vector<PartialRectangle> survivors;
    result.stats = enumerate(options, [&](const PartialRectangle& r) { survivors.push_back(r); });
    std::sort(survivors.begin(), survivors.end(), [](const auto& a, const auto& b) {
        return partialLexOrder(a, b) == std::strong_ordering::less;
    });
    result.survivors = std::move(survivors);
    return result;
}

}  // namespace rectforge
