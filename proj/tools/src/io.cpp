#include "mpscli/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "mps/errors.hpp"

namespace mps {

std::optional<GraphFormat> parse_graph_format(std::string_view name) {
    if (name == "edgelist")
        return GraphFormat::Edgelist;
    if (name == "gml")
        return GraphFormat::Gml;
    if (name == "dimacs")
        return GraphFormat::Dimacs;
    return std::nullopt;
}

const char* graph_format_name(GraphFormat f) {
    switch (f) {
    case GraphFormat::Edgelist:
        return "edgelist";
    case GraphFormat::Gml:
        return "gml";
    case GraphFormat::Dimacs:
        return "dimacs";
    }
    return "unknown";
}

GraphFormat deduce_graph_format(const std::filesystem::path& path) {
    const std::string ext = path.extension().string();
    if (ext == ".gml")
        return GraphFormat::Gml;
    if (ext == ".col" || ext == ".dimacs")
        return GraphFormat::Dimacs;
    return GraphFormat::Edgelist;
}

namespace {

bool parse_int(std::string_view tok, std::int64_t& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t)
        toks.push_back(t);
    return toks;
}

/// Collects validated edges; build_graph never throws after these checks.
struct EdgeAccumulator {
    std::vector<EdgeInput> edges;
    std::set<std::pair<NodeId, NodeId>> seen;
    NodeId max_node = -1;

    void add(std::int64_t u, std::int64_t v, std::int64_t w, int line) {
        if (u < 0 || v < 0)
            throw ParseError("negative node id", line);
        if (u == v)
            throw ParseError("self loop", line);
        if (w <= 0)
            throw ParseError("non-positive edge weight", line);
        const NodeId a = static_cast<NodeId>(std::min(u, v));
        const NodeId b = static_cast<NodeId>(std::max(u, v));
        if (!seen.insert({a, b}).second)
            throw ParseError("duplicate edge", line);
        edges.push_back({a, b, w});
        max_node = std::max(max_node, b);
    }
};

WeightedGraph parse_edgelist(const std::string& text) {
    EdgeAccumulator acc;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto toks = split_ws(line);
        if (toks.empty() || toks[0][0] == '#' || toks[0][0] == '%')
            continue;
        std::int64_t u;
        if (!parse_int(toks[0], u))
            continue; // header line ("source target weight" and the like)
        if (toks.size() != 2 && toks.size() != 3)
            throw ParseError("expected 'u v' or 'u v w'", line_no);
        std::int64_t v, w = 1;
        if (!parse_int(toks[1], v))
            throw ParseError("unreadable node id '" + toks[1] + "'", line_no);
        if (toks.size() == 3 && !parse_int(toks[2], w))
            throw ParseError("unreadable edge weight '" + toks[2] + "'", line_no);
        acc.add(u, v, w, line_no);
    }
    return build_graph(acc.max_node + 1, acc.edges);
}

WeightedGraph parse_dimacs(const std::string& text) {
    EdgeAccumulator acc;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::int64_t n = -1, m = -1, edges_seen = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto toks = split_ws(line);
        if (toks.empty() || toks[0] == "c")
            continue;
        if (toks[0] == "p") {
            if (n >= 0)
                throw ParseError("second problem line", line_no);
            if (toks.size() != 4 || toks[1] != "edge" || !parse_int(toks[2], n) ||
                !parse_int(toks[3], m) || n < 0 || m < 0)
                throw ParseError("expected 'p edge <n> <m>'", line_no);
            continue;
        }
        if (toks[0] == "e") {
            if (n < 0)
                throw FormatMismatch("not a DIMACS file: edge line before 'p edge' header");
            std::int64_t u, v, w = 1;
            if (toks.size() != 3 && toks.size() != 4)
                throw ParseError("expected 'e u v [w]'", line_no);
            if (!parse_int(toks[1], u) || !parse_int(toks[2], v))
                throw ParseError("unreadable edge endpoints", line_no);
            if (toks.size() == 4 && !parse_int(toks[3], w))
                throw ParseError("unreadable edge weight", line_no);
            if (u < 1 || u > n || v < 1 || v > n)
                throw ParseError("node id out of the declared range", line_no);
            acc.add(u - 1, v - 1, w, line_no);
            ++edges_seen;
            continue;
        }
        if (n < 0)
            throw FormatMismatch("not a DIMACS file: expected 'c', 'p' or 'e' lines");
        throw ParseError("unknown line type '" + toks[0] + "'", line_no);
    }
    if (n < 0)
        throw FormatMismatch("not a DIMACS file: missing 'p edge' header");
    if (edges_seen != m)
        throw ParseError("header declares " + std::to_string(m) + " edges but " +
                             std::to_string(edges_seen) + " were given",
                         line_no);
    return build_graph(static_cast<int>(n), acc.edges);
}

// --- GML ---

struct GmlToken {
    std::string text;
    int line;
    bool quoted;
};

std::vector<GmlToken> lex_gml(const std::string& text) {
    std::vector<GmlToken> toks;
    int line_no = 1;
    size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            ++line_no;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '[' || c == ']') {
            toks.push_back({std::string(1, c), line_no, false});
            ++i;
            continue;
        }
        if (c == '"') {
            const size_t end = text.find('"', i + 1);
            if (end == std::string::npos ||
                text.find('\n', i + 1) < end) // unterminated on this line
                throw ParseError("unterminated string", line_no);
            toks.push_back({text.substr(i + 1, end - i - 1), line_no, true});
            i = end + 1;
            continue;
        }
        size_t end = i;
        while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end])) &&
               text[end] != '[' && text[end] != ']' && text[end] != '"')
            ++end;
        toks.push_back({text.substr(i, end - i), line_no, false});
        i = end;
    }
    return toks;
}

struct GmlParser {
    const std::vector<GmlToken>& toks;
    size_t i = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        const int line = i < toks.size() ? toks[i].line
                                         : (toks.empty() ? 1 : toks.back().line);
        throw ParseError(msg, line);
    }
    const GmlToken& peek() const {
        if (i >= toks.size())
            throw ParseError("unexpected end of file",
                             toks.empty() ? 1 : toks.back().line);
        return toks[i];
    }
    GmlToken take() {
        const GmlToken t = peek();
        ++i;
        return t;
    }
    std::int64_t take_int(const char* what) {
        const GmlToken t = take();
        std::int64_t v;
        if (t.quoted || !parse_int(t.text, v))
            throw ParseError(std::string("expected an integer ") + what + ", got '" +
                                 t.text + "'",
                             t.line);
        return v;
    }
    /// Consumes one value: a scalar token or a balanced [ ... ] block.
    void skip_value() {
        const GmlToken t = take();
        if (t.quoted || t.text != "[") {
            if (t.text == "]")
                throw ParseError("expected a value, got ']'", t.line);
            return;
        }
        int depth = 1;
        while (depth > 0) {
            const GmlToken u = take();
            if (!u.quoted && u.text == "[")
                ++depth;
            else if (!u.quoted && u.text == "]")
                --depth;
        }
    }
};

WeightedGraph parse_gml(const std::string& text) {
    const std::vector<GmlToken> toks = lex_gml(text);
    GmlParser p{toks};

    // preamble: key/value pairs until the graph block; anything that breaks
    // before the block opens means this is not GML at all
    try {
        bool in_graph = false;
        while (p.i < toks.size()) {
            const GmlToken t = p.take();
            if (!t.quoted && t.text == "graph") {
                const GmlToken open = p.take();
                if (open.quoted || open.text != "[")
                    throw ParseError("expected '[' after 'graph'", open.line);
                in_graph = true;
                break;
            }
            if (!t.quoted && (t.text == "[" || t.text == "]"))
                throw ParseError("unexpected bracket before the graph block", t.line);
            p.skip_value(); // value of a preamble key such as Creator
        }
        if (!in_graph)
            throw ParseError("no graph block");
    } catch (const ParseError&) {
        throw FormatMismatch("not a GML file: no 'graph [' block");
    }

    struct PendingEdge {
        std::int64_t source, target, weight;
        int line;
    };
    std::map<std::int64_t, int> node_ids; // declared id -> declaration order
    std::vector<PendingEdge> pending;

    bool closed = false;
    while (p.i < toks.size()) {
        const GmlToken t = p.take();
        if (!t.quoted && t.text == "]") {
            closed = true;
            break;
        }
        if (!t.quoted && t.text == "node") {
            const GmlToken open = p.take();
            if (open.quoted || open.text != "[")
                throw ParseError("expected '[' after 'node'", open.line);
            std::optional<std::int64_t> id;
            while (true) {
                const GmlToken k = p.take();
                if (!k.quoted && k.text == "]")
                    break;
                if (!k.quoted && k.text == "id") {
                    if (id.has_value())
                        throw ParseError("node declares two ids", k.line);
                    id = p.take_int("node id");
                } else {
                    p.skip_value();
                }
            }
            if (!id.has_value())
                throw ParseError("node block without an id", open.line);
            if (!node_ids.emplace(*id, 0).second)
                throw ParseError("duplicate node id " + std::to_string(*id), open.line);
            continue;
        }
        if (!t.quoted && t.text == "edge") {
            const GmlToken open = p.take();
            if (open.quoted || open.text != "[")
                throw ParseError("expected '[' after 'edge'", open.line);
            std::optional<std::int64_t> source, target;
            std::int64_t weight = 1;
            while (true) {
                const GmlToken k = p.take();
                if (!k.quoted && k.text == "]")
                    break;
                if (!k.quoted && k.text == "source")
                    source = p.take_int("source id");
                else if (!k.quoted && k.text == "target")
                    target = p.take_int("target id");
                else if (!k.quoted && k.text == "weight")
                    weight = p.take_int("edge weight");
                else
                    p.skip_value();
            }
            if (!source.has_value() || !target.has_value())
                throw ParseError("edge block without source and target", open.line);
            pending.push_back({*source, *target, weight, open.line});
            continue;
        }
        p.skip_value(); // graph-level keys such as directed or label
    }
    if (!closed)
        throw ParseError("unclosed graph block",
                         toks.empty() ? 1 : toks.back().line);

    // dense remap in ascending id order (std::map iterates sorted)
    int next = 0;
    for (auto& [id, dense] : node_ids)
        dense = next++;

    EdgeAccumulator acc;
    for (const PendingEdge& e : pending) {
        const auto su = node_ids.find(e.source);
        const auto sv = node_ids.find(e.target);
        if (su == node_ids.end())
            throw ParseError("edge references undeclared node " + std::to_string(e.source),
                             e.line);
        if (sv == node_ids.end())
            throw ParseError("edge references undeclared node " + std::to_string(e.target),
                             e.line);
        acc.add(su->second, sv->second, e.weight, e.line);
    }
    return build_graph(static_cast<int>(node_ids.size()), acc.edges);
}

} // namespace

WeightedGraph ingest_text(const std::string& text, GraphFormat format) {
    switch (format) {
    case GraphFormat::Edgelist:
        return parse_edgelist(text);
    case GraphFormat::Gml:
        return parse_gml(text);
    case GraphFormat::Dimacs:
        return parse_dimacs(text);
    }
    throw Error("unknown graph format");
}

WeightedGraph ingest(const std::filesystem::path& path, GraphFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return ingest_text(buf.str(), format);
}

} // namespace mps
