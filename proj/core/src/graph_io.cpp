#include "gm/graph_io.hpp"

#include <sstream>

#include "gm/errors.hpp"

namespace gm {

namespace {

std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

int parseIntToken(const std::string& t, int lineNo) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(t, &pos);
        if (pos != t.size()) throw std::invalid_argument(t);
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected integer, got '" + t + "'", lineNo);
    }
}

} // namespace

WeightedGraph parseGraph(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineNo = 0;
    int numVertices = -1;
    std::vector<Edge> edges;
    std::map<int, std::string> labels;
    while (std::getline(in, line)) {
        ++lineNo;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        auto tk = tokens(line);
        if (tk.empty()) continue;
        if (numVertices < 0) {
            if (tk.size() != 2 || tk[0] != "graph")
                throw ParseError("expected header 'graph <numVertices>'", lineNo);
            numVertices = parseIntToken(tk[1], lineNo);
            continue;
        }
        if (tk[0] == "label") {
            if (tk.size() < 3) throw ParseError("label line needs vertex and text", lineNo);
            int v = parseIntToken(tk[1], lineNo);
            std::string txt = tk[2];
            for (std::size_t i = 3; i < tk.size(); ++i) txt += " " + tk[i];
            if (!labels.emplace(v, txt).second) throw ParseError("duplicate label", lineNo);
            continue;
        }
        if (tk.size() != 3) throw ParseError("expected '<u> <v> <weight>'", lineNo);
        Edge e;
        e.u = parseIntToken(tk[0], lineNo);
        e.v = parseIntToken(tk[1], lineNo);
        try {
            e.w = Rational::parse(tk[2]);
        } catch (const Error& err) {
            throw ParseError(std::string("bad weight: ") + err.what(), lineNo);
        }
        edges.push_back(e);
    }
    if (numVertices < 0) throw ParseError("missing 'graph <numVertices>' header");
    try {
        return {numVertices, std::move(edges), std::move(labels)};
    } catch (const ValidationError& err) {
        throw ParseError(err.what());
    }
}

std::string writeGraph(const WeightedGraph& g) {
    std::string out = "graph " + std::to_string(g.numVertices()) + "\n";
    for (const Edge& e : g.edges())
        out += std::to_string(e.u) + " " + std::to_string(e.v) + " " + e.w.str() + "\n";
    for (const auto& [v, text] : g.labels())
        out += "label " + std::to_string(v) + " " + text + "\n";
    return out;
}

Matching parseMatchingFile(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineNo = 0;
    std::vector<VertexPair> pairs;
    while (std::getline(in, line)) {
        ++lineNo;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        auto tk = tokens(line);
        if (tk.empty()) continue;
        if (tk.size() != 2) throw ParseError("expected '<u> <v>'", lineNo);
        pairs.emplace_back(parseIntToken(tk[0], lineNo), parseIntToken(tk[1], lineNo));
    }
    return Matching::of(std::move(pairs));
}

std::string writeMatchingFile(const Matching& m) {
    std::string out;
    for (auto [u, v] : m.edges) out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

} // namespace gm
