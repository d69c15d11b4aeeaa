#pragma once

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "colorer.hpp"
#include "errors.hpp"
#include "multigraph.hpp"

// Text formats. Graph files:
//   c free comment
//   p spm <n> <m>
//   e <u> <v> <mult>        (m lines, ids 1..n)
// Colouring files:
//   s YES k=<k>
//   e <u> <v> <mult> c <c1> ... <c_mult>

namespace spedge::io {

namespace detail {

inline std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::uint64_t number(std::string_view tok, std::size_t line, const char* what) {
    std::uint64_t value = 0;
    auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || end != tok.data() + tok.size())
        throw parse_error(line, std::string("bad ") + what + " '" + std::string(tok) + "'");
    return value;
}

inline vertex_id vertex(std::string_view tok, std::size_t line, std::uint64_t n) {
    std::uint64_t id = number(tok, line, "vertex id");
    if (id < 1 || id > n) throw parse_error(line, "vertex id " + std::to_string(id) + " outside 1.." + std::to_string(n));
    return static_cast<vertex_id>(id - 1);
}

}  // namespace detail

inline multigraph read_graph(std::istream& in) {
    std::string text;
    std::size_t line_no = 0;
    bool have_header = false;
    std::uint64_t n = 0, m = 0;
    std::vector<edge_class> classes;
    std::unordered_map<std::uint64_t, std::size_t> first_line;
    while (std::getline(in, text)) {
        ++line_no;
        auto tok = detail::split(text);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "p") {
            if (have_header) throw parse_error(line_no, "second header");
            if (tok.size() != 4 || tok[1] != "spm") throw parse_error(line_no, "expected 'p spm <n> <m>'");
            n = detail::number(tok[2], line_no, "vertex count");
            m = detail::number(tok[3], line_no, "edge count");
            if (n >= no_vertex) throw parse_error(line_no, "too many vertices");
            have_header = true;
            classes.reserve(std::min<std::uint64_t>(m, 1u << 24));
        } else if (tok[0] == "e") {
            if (!have_header) throw parse_error(line_no, "edge before header");
            if (tok.size() != 4) throw parse_error(line_no, "expected 'e <u> <v> <mult>'");
            if (classes.size() == m) throw parse_error(line_no, "more than " + std::to_string(m) + " edge lines");
            vertex_id u = detail::vertex(tok[1], line_no, n);
            vertex_id v = detail::vertex(tok[2], line_no, n);
            count_t mult = detail::number(tok[3], line_no, "multiplicity");
            if (u == v) throw parse_error(line_no, "loop at vertex " + std::to_string(u + 1));
            if (mult == 0) throw parse_error(line_no, "multiplicity must be at least 1");
            auto [it, fresh] = first_line.emplace(pair_key(u, v), line_no);
            if (!fresh) throw parse_error(line_no, "pair repeats line " + std::to_string(it->second));
            classes.push_back({u, v, mult});
        } else {
            throw parse_error(line_no, "unknown line type '" + std::string(tok[0]) + "'");
        }
    }
    if (!have_header) throw parse_error(line_no, "missing header");
    if (classes.size() != m)
        throw parse_error(line_no, "expected " + std::to_string(m) + " edge lines, found " + std::to_string(classes.size()));
    return multigraph::build(n, std::move(classes));
}

inline multigraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return read_graph(in);
}

inline void write_graph(std::ostream& out, const multigraph& g) {
    out << "p spm " << g.vertex_count() << ' ' << g.class_count() << '\n';
    for (const auto& c : g.classes()) out << "e " << c.u + 1 << ' ' << c.v + 1 << ' ' << c.mult << '\n';
}

inline std::string graph_to_string(const multigraph& g) {
    std::ostringstream out;
    write_graph(out, g);
    return out.str();
}

inline void write_coloring(std::ostream& out, const multigraph& g, const coloring& col) {
    out << "s YES k=" << col.k << '\n';
    const auto classes = g.classes();
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& c = classes[i];
        out << "e " << c.u + 1 << ' ' << c.v + 1 << ' ' << c.mult << " c";
        for (color_t x : col.classes[i]) out << ' ' << x;
        out << '\n';
    }
}

/// Reads a colouring of g. Structure is checked here (every class exactly once,
/// matching multiplicities); colour validity is left to find_conflict.
inline coloring read_coloring(std::istream& in, const multigraph& g) {
    std::unordered_map<std::uint64_t, std::size_t> index;
    const auto classes = g.classes();
    for (std::size_t i = 0; i < classes.size(); ++i) index.emplace(pair_key(classes[i].u, classes[i].v), i);

    coloring col;
    col.classes.assign(classes.size(), {});
    std::vector<char> filled(classes.size(), 0);
    std::size_t filled_count = 0;
    bool have_status = false;
    std::string text;
    std::size_t line_no = 0;
    while (std::getline(in, text)) {
        ++line_no;
        auto tok = detail::split(text);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "s") {
            if (have_status) throw parse_error(line_no, "second status line");
            if (tok.size() != 3 || tok[1] != "YES" || tok[2].substr(0, 2) != "k=")
                throw parse_error(line_no, "expected 's YES k=<k>'");
            col.k = detail::number(tok[2].substr(2), line_no, "k");
            have_status = true;
        } else if (tok[0] == "e") {
            if (!have_status) throw parse_error(line_no, "edge before status line");
            if (tok.size() < 5 || tok[4] != "c") throw parse_error(line_no, "expected 'e <u> <v> <mult> c <colours>'");
            vertex_id u = detail::vertex(tok[1], line_no, g.vertex_count());
            vertex_id v = detail::vertex(tok[2], line_no, g.vertex_count());
            count_t mult = detail::number(tok[3], line_no, "multiplicity");
            auto it = index.find(pair_key(u, v));
            if (u == v || it == index.end()) throw parse_error(line_no, "pair not in graph");
            if (filled[it->second]) throw parse_error(line_no, "pair listed twice");
            if (mult != classes[it->second].mult) throw parse_error(line_no, "multiplicity differs from graph");
            if (tok.size() - 5 != mult) throw parse_error(line_no, "expected " + std::to_string(mult) + " colours");
            auto& list = col.classes[it->second];
            for (std::size_t t = 5; t < tok.size(); ++t) list.push_back(detail::number(tok[t], line_no, "colour"));
            std::sort(list.begin(), list.end());
            filled[it->second] = 1;
            ++filled_count;
        } else {
            throw parse_error(line_no, "unknown line type '" + std::string(tok[0]) + "'");
        }
    }
    if (!have_status) throw parse_error(line_no, "missing status line");
    if (filled_count != classes.size())
        throw parse_error(line_no, std::to_string(classes.size() - filled_count) + " classes without colours");
    return col;
}

}  // namespace spedge::io
