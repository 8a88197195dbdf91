#include "rectforge/graphutil.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace rectforge {

std::variant<SimpleGraph, MultiEdgeReport> underlyingGraph(const PartialRectangle& rect) {
    if (rect.rows() != 3) throw WrongRowCountError("underlying graph needs exactly 3 rows");
    SimpleGraph g;
    g.vertexCount = rect.cols();
    MultiEdgeReport report;
    for (const Edge& e : rect.edges()) {
        int u = std::min(e.a.col, e.b.col);
        int v = std::max(e.a.col, e.b.col);
        if (u == v || !g.edges.insert({u, v}).second) report.duplicates.push_back({u, v});
    }
    if (!report.duplicates.empty()) return report;
    return g;
}

bool isCubicTriangleFree(const SimpleGraph& g) {
    std::vector<int> deg(g.vertexCount + 1, 0);
    std::vector<std::vector<char>> adj(g.vertexCount + 1, std::vector<char>(g.vertexCount + 1, 0));
    for (auto& [u, v] : g.edges) {
        ++deg[u];
        ++deg[v];
        adj[u][v] = adj[v][u] = 1;
    }
    for (int v = 1; v <= g.vertexCount; ++v)
        if (deg[v] != 3) return false;
    for (auto& [u, v] : g.edges)
        for (int w = 1; w <= g.vertexCount; ++w)
            if (adj[u][w] && adj[v][w]) return false;
    return true;
}

PartialRectangle encodeGraph(const SimpleGraph& g) {
    if (g.edges.empty()) throw TooSmallError("cannot encode an edgeless graph");
    int n = g.vertexCount;
    PartialRectangle rect(n, 2 * static_cast<int>(g.edges.size()));
    int col = 1;
    for (auto& [i, j] : g.edges) {
        int e1 = col, e2 = col + 1;
        col += 2;
        rect = rect.withEdge(Position{i, e1}, Position{j, e1});
        rect = rect.withEdge(Position{i, e2}, Position{j, e2});
        for (int k = 1; k <= n; ++k)
            if (k != i && k != j) rect = rect.withEdge(Position{k, e1}, Position{k, e2});
    }
    return rect;
}

SimpleGraph readGraph(std::istream& in) {
    SimpleGraph g;
    std::string line;
    int expectedEdges = -1;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        char tag;
        if (!(ss >> tag)) continue;
        if (tag == 'p') {
            if (!(ss >> g.vertexCount >> expectedEdges)) throw IoError("bad graph header line");
        } else if (tag == 'e') {
            int u, v;
            if (!(ss >> u >> v)) throw IoError("bad graph edge line");
            if (u == v || u < 1 || v < 1 || u > g.vertexCount || v > g.vertexCount)
                throw IoError("graph edge out of range");
            g.edges.insert({std::min(u, v), std::max(u, v)});
        } else {
            throw IoError("unknown graph line tag: " + std::string(1, tag));
        }
    }
    if (expectedEdges >= 0 && expectedEdges != static_cast<int>(g.edges.size()))
        throw IoError("graph edge count does not match header");
    return g;
}

void writeGraph(std::ostream& out, const SimpleGraph& g) {
    out << "p " << g.vertexCount << ' ' << g.edges.size() << '\n';
    for (auto& [u, v] : g.edges) out << "e " << u << ' ' << v << '\n';
}

}  // namespace rectforge
