#include "rectforge/presentations.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace rectforge {

Word freeReduce(Word w) {
    Word out;
    for (const GenPower& letter : w) {
        if (!out.empty() && out.back().index == letter.index &&
            out.back().exponent == -letter.exponent)
            out.pop_back();
        else
            out.push_back(letter);
    }
    return out;
}

std::string GroupPresentation::generatorName(int index) const {
    if (index < 1 || index > generatorCount()) throw OutOfRangeError("bad generator index");
    if (index <= rowGenerators) return "g" + std::to_string(index);
    return "h" + std::to_string(index - rowGenerators);
}

GroupPresentation associatedPresentation(const PartialRectangle& rect) {
    GroupPresentation pres;
    pres.rowGenerators = rect.rows();
    pres.colGenerators = rect.cols();
    int n = rect.rows();
    for (const Edge& e : rect.edges()) {
        // g_i h_j h_j'^-1 g_i'^-1 with (i,j) the smaller endpoint
        Word w{{e.a.row, 1}, {n + e.a.col, 1}, {n + e.b.col, -1}, {e.b.row, -1}};
        pres.relators.push_back(freeReduce(std::move(w)));
    }
    return pres;
}

GroupPresentation corePresentation(const PartialRectangle& rect, Position p) {
    if (!rect.inRange(p)) throw OutOfRangeError("core position out of range");
    GroupPresentation pres = associatedPresentation(rect);
    pres.relators.push_back({{p.row, 1}});
    pres.relators.push_back({{rect.rows() + p.col, 1}});
    return pres;
}

PresentationBlock makeBlock(const PartialRectangle& rect, const std::string& id) {
    return PresentationBlock{rect.rows(), rect.cols(), id, associatedPresentation(rect)};
}

namespace {

std::string renderWord(const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += "*";
        out += "F." + std::to_string(w[i].index);
        if (w[i].exponent == -1) out += "^-1";
    }
    return out;
}

}  // namespace

void exportPresentations(std::ostream& out, const std::vector<PresentationBlock>& blocks) {
    bool first = true;
    for (const PresentationBlock& b : blocks) {
        if (!first) out << '\n';
        first = false;
        out << "# rectangle n=" << b.rows << " m=" << b.cols << " id=" << b.id << '\n';
        out << "F := FreeGroup(";
        for (int i = 1; i <= b.presentation.generatorCount(); ++i) {
            if (i > 1) out << ',';
            out << '"' << b.presentation.generatorName(i) << '"';
        }
        out << ");\n";
        out << "rels := [ ";
        for (std::size_t i = 0; i < b.presentation.relators.size(); ++i) {
            if (i) out << ", ";
            out << renderWord(b.presentation.relators[i]);
        }
        out << " ];\n";
        out << "G := F / rels;\n";
        out << "# G stands for its universal torsion-free quotient\n";
    }
}

void exportPresentations(const std::string& path, const std::vector<PresentationBlock>& blocks) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    exportPresentations(out, blocks);
    if (!out.flush()) throw IoError("write to " + path + " failed");
}

namespace {

Word parseWord(const std::string& text) {
    Word w;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text.compare(pos, 2, "F.") != 0) throw IoError("bad relator word: " + text);
        pos += 2;
        std::size_t end = pos;
        while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
        if (end == pos) throw IoError("bad generator index in: " + text);
        GenPower letter{std::stoi(text.substr(pos, end - pos)), 1};
        pos = end;
        if (text.compare(pos, 3, "^-1") == 0) {
            letter.exponent = -1;
            pos += 3;
        }
        w.push_back(letter);
        if (pos < text.size()) {
            if (text[pos] != '*') throw IoError("expected '*' in relator word: " + text);
            ++pos;
        }
    }
    return w;
}

std::vector<std::string> splitTopLevel(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == sep) {
            parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) parts.push_back(current);
    return parts;
}

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

std::vector<PresentationBlock> parsePresentations(std::istream& in) {
    std::vector<PresentationBlock> blocks;
    std::string line;
    PresentationBlock current;
    bool open = false;
    while (std::getline(in, line)) {
        line = strip(line);
        if (line.empty()) continue;
        if (line.rfind("# rectangle", 0) == 0) {
            current = PresentationBlock{};
            open = true;
            std::istringstream ss(line);
            std::string tok;
            while (ss >> tok) {
                if (tok.rfind("n=", 0) == 0) current.rows = std::stoi(tok.substr(2));
                if (tok.rfind("m=", 0) == 0) current.cols = std::stoi(tok.substr(2));
                if (tok.rfind("id=", 0) == 0) current.id = tok.substr(3);
            }
            current.presentation.rowGenerators = current.rows;
            current.presentation.colGenerators = current.cols;
        } else if (line.rfind("F :=", 0) == 0) {
            if (!open) throw IoError("FreeGroup line outside a block");
            int quoted = 0;
            for (std::size_t i = 0; i + 1 < line.size(); ++i)
                if (line[i] == '"') ++quoted;
            if (quoted / 2 != current.presentation.generatorCount())
                throw IoError("generator count does not match block header");
        } else if (line.rfind("rels :=", 0) == 0) {
            auto lb = line.find('[');
            auto rb = line.rfind(']');
            if (lb == std::string::npos || rb == std::string::npos || rb < lb)
                throw IoError("bad rels line: " + line);
            std::string body = strip(line.substr(lb + 1, rb - lb - 1));
            if (!body.empty())
                for (const std::string& part : splitTopLevel(body, ','))
                    current.presentation.relators.push_back(parseWord(strip(part)));
        } else if (line.rfind("G :=", 0) == 0) {
            if (!open) throw IoError("group line outside a block");
            blocks.push_back(current);
            open = false;
        } else if (line[0] == '#') {
            continue;  // trailing comment line of a block
        } else {
            throw IoError("unrecognized line: " + line);
        }
    }
    return blocks;
}

}  // namespace rectforge
