#include "mps/pb_export.hpp"

#include <cctype>
#include <sstream>
#include <unordered_map>

namespace mps {

namespace {

void append_term(std::string& out, std::int64_t coeff, const std::string& var) {
    out += coeff < 0 ? " -" : " +";
    out += std::to_string(coeff < 0 ? -coeff : coeff);
    out += ' ';
    out += var;
}

const char* cmp_text(Cmp c) {
    switch (c) {
    case Cmp::LessEq: return "<=";
    case Cmp::GreaterEq: return ">=";
    case Cmp::Eq: return "=";
    }
    return "?";
}

} // namespace

std::string export_opb(const PBModel& m) {
    std::string out;
    out += "* #variable= " + std::to_string(m.var_count()) +
           " #constraint= " + std::to_string(m.constraints().size()) + "\n";
    if (!m.lazy_families().empty()) {
        out += "* incomplete: lazily separated families";
        for (const std::string& f : m.lazy_families())
            out += " " + f;
        out += " are listed only as far as discovered\n";
    }
    std::string obj = "min:";
    for (VarId v = 0; v < m.var_count(); ++v)
        if (m.objective_coeff(v) != 0)
            append_term(obj, -m.objective_coeff(v), "x" + std::to_string(v + 1));
    out += obj + ";\n";
    for (const LinConstraint& c : m.constraints()) {
        // OPB has no "<=": flip those constraints by negating both sides.
        const bool flip = c.cmp == Cmp::LessEq;
        std::string line;
        for (const LinTerm& t : c.terms)
            append_term(line, flip ? -t.coeff : t.coeff, "x" + std::to_string(t.var + 1));
        line += c.cmp == Cmp::Eq ? " =" : " >=";
        line += " " + std::to_string(flip ? -c.rhs : c.rhs) + ";\n";
        out += line.substr(1); // drop the leading space of the first term
    }
    return out;
}

std::string export_lp(const PBModel& m) {
    std::string out = "Maximize\n";
    std::string obj = " obj:";
    for (VarId v = 0; v < m.var_count(); ++v)
        if (m.objective_coeff(v) != 0)
            append_term(obj, m.objective_coeff(v), m.var_name(v));
    out += obj + "\n";
    out += "Subject To\n";
    for (size_t ci = 0; ci < m.constraints().size(); ++ci) {
        const LinConstraint& c = m.constraints()[ci];
        std::string line = " c" + std::to_string(ci) + ":";
        for (const LinTerm& t : c.terms)
            append_term(line, t.coeff, m.var_name(t.var));
        line += " ";
        line += cmp_text(c.cmp);
        line += " " + std::to_string(c.rhs) + "\n";
        out += line;
    }
    out += "Binary\n";
    for (VarId v = 0; v < m.var_count(); ++v)
        out += " " + m.var_name(v) + "\n";
    out += "End\n";
    return out;
}

namespace {

struct Line {
    std::string text;
    int number;
};

std::vector<Line> significant_lines(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        size_t begin = raw.find_first_not_of(" \t\r");
        if (begin == std::string::npos)
            continue;
        size_t end = raw.find_last_not_of(" \t\r");
        lines.push_back({raw.substr(begin, end - begin + 1), number});
    }
    return lines;
}

std::vector<std::string> tokens_of(const std::string& s) {
    std::vector<std::string> tokens;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok)
        tokens.push_back(tok);
    return tokens;
}

std::int64_t parse_int(const std::string& tok, int line_no) {
    try {
        size_t used = 0;
        const std::int64_t value = std::stoll(tok, &used);
        if (used != tok.size())
            throw ParseError("malformed integer: " + tok, line_no);
        return value;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("malformed integer: " + tok, line_no);
    }
}

bool is_term_start(const std::string& tok) {
    return !tok.empty() &&
           (tok[0] == '+' || tok[0] == '-' || std::isdigit(static_cast<unsigned char>(tok[0])));
}

/// Parses "±k name ±k name ..." into terms, resolving names through `ids`.
std::vector<LinTerm> parse_terms(const std::vector<std::string>& toks, size_t from, size_t to,
                                 const std::unordered_map<std::string, VarId>& ids, int line_no) {
    std::vector<LinTerm> terms;
    for (size_t i = from; i < to; i += 2) {
        if (!is_term_start(toks[i]) || i + 1 >= to)
            throw ParseError("malformed term near '" + toks[i] + "'", line_no);
        auto it = ids.find(toks[i + 1]);
        if (it == ids.end())
            throw ParseError("unknown variable: " + toks[i + 1], line_no);
        terms.push_back({parse_int(toks[i], line_no), it->second});
    }
    return terms;
}

} // namespace

PBModel parse_lp(const std::string& text) {
    const std::vector<Line> lines = significant_lines(text);
    size_t i = 0;
    auto expect = [&](const std::string& header) {
        if (i >= lines.size() || lines[i].text != header)
            throw ParseError("expected '" + header + "'", i < lines.size() ? lines[i].number : 0);
        ++i;
    };

    expect("Maximize");
    if (i >= lines.size())
        throw ParseError("missing objective", 0);
    const Line objective_line = lines[i++];

    expect("Subject To");
    std::vector<Line> constraint_lines;
    while (i < lines.size() && lines[i].text != "Binary")
        constraint_lines.push_back(lines[i++]);

    expect("Binary");
    std::vector<Line> binary_lines;
    while (i < lines.size() && lines[i].text != "End")
        binary_lines.push_back(lines[i++]);
    expect("End");
    if (i != lines.size())
        throw ParseError("trailing content after End", lines[i].number);

    // The Binary section fixes the variable set and id order; the objective
    // line supplies coefficients by name.
    std::vector<std::string> oline = tokens_of(objective_line.text);
    if (oline.empty() || oline[0] != "obj:")
        throw ParseError("objective must start with 'obj:'", objective_line.number);
    std::unordered_map<std::string, VarId> positions;
    for (size_t b = 0; b < binary_lines.size(); ++b) {
        if (tokens_of(binary_lines[b].text).size() != 1)
            throw ParseError("one variable per Binary line", binary_lines[b].number);
        if (!positions.emplace(binary_lines[b].text, static_cast<VarId>(b)).second)
            throw ParseError("duplicate variable: " + binary_lines[b].text, binary_lines[b].number);
    }
    std::vector<LinTerm> obj_terms =
        parse_terms(oline, 1, oline.size(), positions, objective_line.number);
    std::vector<std::int64_t> objective(binary_lines.size(), 0);
    for (const LinTerm& t : obj_terms)
        objective[static_cast<size_t>(t.var)] = t.coeff;

    PBModel model;
    for (size_t b = 0; b < binary_lines.size(); ++b)
        model.add_var(binary_lines[b].text, objective[b]);

    for (const Line& line : constraint_lines) {
        std::vector<std::string> toks = tokens_of(line.text);
        if (toks.size() < 3 || toks[0].back() != ':')
            throw ParseError("malformed constraint", line.number);
        const std::string& cmp_tok = toks[toks.size() - 2];
        LinConstraint c;
        if (cmp_tok == "<=")
            c.cmp = Cmp::LessEq;
        else if (cmp_tok == ">=")
            c.cmp = Cmp::GreaterEq;
        else if (cmp_tok == "=")
            c.cmp = Cmp::Eq;
        else
            throw ParseError("unknown comparator: " + cmp_tok, line.number);
        c.rhs = parse_int(toks.back(), line.number);
        c.terms = parse_terms(toks, 1, toks.size() - 2, positions, line.number);
        model.add_constraint(std::move(c));
    }
    return model;
}

} // namespace mps
