#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rectforge/canon.hpp"
#include "rectforge/enumerate.hpp"
#include "rectforge/jsonio.hpp"
#include "rectforge/oracle.hpp"
#include "rectforge/presentations.hpp"

namespace {

using namespace rectforge;

// Writes through a temp file and renames, so aborted runs never leave a
// partially written artifact behind.
void writeFileAtomic(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out << contents;
        if (!out.flush()) throw IoError("write to " + tmp.string() + " failed");
    }
    fs::rename(tmp, target);
}

Pruner parseRules(const std::string& spec) {
    if (spec == "all") return Pruner::all();
    std::vector<RuleId> rules;
    std::stringstream ss(spec);
    std::string name;
    while (std::getline(ss, name, ',')) {
        if (name.empty()) continue;
        auto id = parseRuleName(name);
        if (!id) throw CLI::ValidationError("--rules", "unknown rule name: " + name);
        rules.push_back(*id);
    }
    return Pruner(rules);
}

int defaultJobs() {
    if (const char* env = std::getenv("RECTANGLE_FORGE_JOBS")) {
        int jobs = std::atoi(env);
        if (jobs >= 1) return jobs;
    }
    return 1;
}

std::string statsJson(const EnumerationStats& stats, const Pruner& pruner) {
    nlohmann::ordered_json j;
    j["n"] = stats.rows;
    j["m"] = stats.cols;
    j["nodes"] = stats.nodesVisited;
    nlohmann::ordered_json pruned = nlohmann::ordered_json::object();
    for (RuleId id : pruner.rules()) {
        auto it = stats.prunedByRule.find(ruleName(id));
        pruned[ruleName(id)] = it == stats.prunedByRule.end() ? 0 : it->second;
    }
    j["pruned"] = std::move(pruned);
    j["survivors"] = stats.survivors;
    j["elapsed_s"] = stats.elapsedSeconds;
    if (stats.truncated) j["truncated"] = true;
    return j.dump();
}

std::vector<PartialRectangle> readRectangles(const std::string& path) {
    if (path == "-") return readJsonl(std::cin);
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return readJsonl(in);
}

int runEnumerate(int rows, int cols, const std::string& rulesSpec, const std::string& emitPath,
                 const std::string& presentationsPath, const std::string& statsPath, int jobs,
                 int seedDepth, std::uint64_t maxNodes, bool coreEveryNode) {
    EnumerationOptions options;
    options.rows = rows;
    options.cols = cols;
    options.pruner = Pruner(parseRules(rulesSpec).rules(), coreEveryNode
                                                               ? CoreApplication::EveryNode
                                                               : CoreApplication::AtCompletion);
    options.jobs = jobs;
    options.taskDepth = seedDepth;
    options.maxNodes = maxNodes;

    EnumerationResult result = enumerateCollect(options);

    if (!emitPath.empty()) {
        std::ostringstream body;
        writeJsonl(body, result.survivors);
        writeFileAtomic(emitPath, body.str());
    }
    if (!presentationsPath.empty()) {
        std::vector<PresentationBlock> blocks;
        for (const PartialRectangle& r : result.survivors)
            blocks.push_back(makeBlock(r, rectangleId(r)));
        std::ostringstream body;
        exportPresentations(body, blocks);
        writeFileAtomic(presentationsPath, body.str());
    }
    if (!statsPath.empty()) {
        std::string body = statsJson(result.stats, options.pruner) + "\n";
        if (statsPath == "-")
            std::cout << body;
        else
            writeFileAtomic(statsPath, body);
    }
    return 0;
}

int runCanon(const std::string& inPath, const std::string& outPath) {
    std::ostringstream body;
    for (const PartialRectangle& rect : readRectangles(inPath)) {
        PartialRectangle form = canonicalForm(rect);
        std::size_t autOrder = automorphisms(rect).size();
        nlohmann::ordered_json j = nlohmann::ordered_json::parse(toJsonLine(form));
        j["aut_order"] = autOrder;
        body << j.dump() << '\n';
    }
    if (outPath == "-")
        std::cout << body.str();
    else
        writeFileAtomic(outPath, body.str());
    return 0;
}

int runOracleCheck(int rows, int cols, const std::string& filter) {
    ClassCount count = bruteClasses(rows, cols, filter);
    nlohmann::ordered_json j;
    j["n"] = count.rows;
    j["m"] = count.cols;
    j["filter"] = count.filter;
    j["classes"] = count.classes;
    j["total"] = count.total;
    std::cout << j.dump() << '\n';
    return 0;
}

int runExport(const std::string& inPath, const std::string& outPath) {
    std::vector<PresentationBlock> blocks;
    for (const PartialRectangle& rect : readRectangles(inPath)) {
        std::string id;
        try {
            id = rectangleId(canonicalForm(rect));
        } catch (const Error&) {
            id = rectangleId(rect);  // outside the canonical labeler's domain
        }
        blocks.push_back(makeBlock(rect, id));
    }
    std::ostringstream body;
    exportPresentations(body, blocks);
    if (outPath == "-")
        std::cout << body.str();
    else
        writeFileAtomic(outPath, body.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"isomorph-free enumeration of matched rectangles with degeneracy pruning"};
    app.require_subcommand(1);

    int rows = 0, cols = 0;
    std::string rulesSpec = "all";
    std::string emitPath, presentationsPath, statsPath;
    int jobs = defaultJobs();
    int seedDepth = 3;
    std::uint64_t maxNodes = 0;
    bool coreEveryNode = false;

    auto* cmdEnumerate = app.add_subcommand("enumerate", "enumerate unpruned matched rectangles");
    cmdEnumerate->add_option("--rows", rows, "row count")->required();
    cmdEnumerate->add_option("--cols", cols, "column count")->required();
    cmdEnumerate->add_option("--rules", rulesSpec, "'all' or comma-separated rule names");
    cmdEnumerate->add_option("--emit", emitPath, "write surviving rectangles as JSONL");
    cmdEnumerate->add_option("--presentations", presentationsPath,
                             "write group presentations of the survivors");
    cmdEnumerate->add_option("--stats", statsPath, "write stats JSON ('-' for stdout)");
    cmdEnumerate->add_option("--jobs", jobs, "worker count (default RECTANGLE_FORGE_JOBS or 1)");
    cmdEnumerate->add_option("--seed-depth", seedDepth, "edge count at which subtrees become tasks");
    cmdEnumerate->add_option("--max-nodes", maxNodes, "stop after visiting this many nodes (0 = off)");
    cmdEnumerate->add_flag("--core-at-every-node", coreEveryNode,
                           "apply the cyclic-or-bs-core rule to partial nodes too");

    std::string inPath = "-", outPath = "-";
    auto* cmdCanon = app.add_subcommand("canon", "canonicalize rectangles from JSONL");
    cmdCanon->add_option("--in", inPath, "input JSONL ('-' for stdin)");
    cmdCanon->add_option("--out", outPath, "output JSONL ('-' for stdout)");

    std::string filter = "none";
    auto* cmdOracle = app.add_subcommand("oracle-check", "brute-force isomorphism class count");
    cmdOracle->add_option("--rows", rows, "row count")->required();
    cmdOracle->add_option("--cols", cols, "column count")->required();
    cmdOracle->add_option("--filter", filter, "none | structural | canonical");

    auto* cmdExport = app.add_subcommand("export", "export presentations for rectangles from JSONL");
    cmdExport->add_option("--in", inPath, "input JSONL ('-' for stdin)");
    cmdExport->add_option("--out", outPath, "output file ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (cmdEnumerate->parsed())
            return runEnumerate(rows, cols, rulesSpec, emitPath, presentationsPath, statsPath,
                                jobs, seedDepth, maxNodes, coreEveryNode);
        if (cmdCanon->parsed()) return runCanon(inPath, outPath);
        if (cmdOracle->parsed()) return runOracleCheck(rows, cols, filter);
        if (cmdExport->parsed()) return runExport(inPath, outPath);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
