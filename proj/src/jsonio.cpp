#include "rectforge/jsonio.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

namespace rectforge {

std::string toJsonLine(const PartialRectangle& rect) {
    nlohmann::ordered_json j;
    j["n"] = rect.rows();
    j["m"] = rect.cols();
    auto edges = nlohmann::ordered_json::array();
    for (const Edge& e : rect.edges())
        edges.push_back({{e.a.row, e.a.col}, {e.b.row, e.b.col}});
    j["edges"] = std::move(edges);
    return j.dump();
}

PartialRectangle fromJsonLine(const std::string& line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("bad rectangle JSON: ") + e.what());
    }
    if (!j.contains("n") || !j.contains("m") || !j.contains("edges"))
        throw IoError("rectangle JSON needs fields n, m, edges");
    PartialRectangle rect(j.at("n").get<int>(), j.at("m").get<int>());
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2 || e[0].size() != 2 || e[1].size() != 2)
            throw IoError("each edge must be a pair of [row,col] pairs");
        Position p{e[0][0].get<int>(), e[0][1].get<int>()};
        Position q{e[1][0].get<int>(), e[1][1].get<int>()};
        rect = rect.withEdge(p, q);
    }
    return rect;
}

std::vector<PartialRectangle> readJsonl(std::istream& in) {
    std::vector<PartialRectangle> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(fromJsonLine(line));
    }
    return out;
}

void writeJsonl(std::ostream& out, const std::vector<PartialRectangle>& rects) {
    for (const auto& r : rects) out << toJsonLine(r) << '\n';
}

std::string rectangleId(const PartialRectangle& rect) {
    std::string data = toJsonLine(rect);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace rectforge
