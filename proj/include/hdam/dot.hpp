#pragma once

// Graphviz output of the 1-skeleton. Higher cells are listed as comments,
// one per line, with their front and back faces.

#include "hdam/hda.hpp"

#include <string>

namespace hdam {

inline std::string dot_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out;
}

inline std::string to_dot(const Hda& a, const std::vector<std::string>& vertex_names = {})
{
    std::string out = "digraph hda {\n  rankdir=LR;\n";
    for (Index v = 0; v < a.cells.count(0); ++v) {
        const std::string name = v < vertex_names.size() ? vertex_names[v] : std::to_string(v);
        out += "  v" + std::to_string(v) + " [label=\"" + dot_escape(name) + "\"";
        if (v == a.initial)
            out += ", style=bold";
        if (a.finals.contains(v))
            out += ", shape=doublecircle";
        out += "];\n";
    }
    for (Index e = 0; e < a.cells.count(1); ++e)
        out += "  v" + std::to_string(a.cells.face(1, e, 0, 1)) + " -> v" + std::to_string(a.cells.face(1, e, 1, 1))
               + " [label=\"" + dot_escape(to_string(a.label(e))) + "\", id=\"e" + std::to_string(e) + "\"];\n";
    for (std::size_t n = 2; n < a.cells.levels(); ++n) {
        for (Index x = 0; x < a.cells.count(n); ++x) {
            out += "  // cell " + std::to_string(n) + ":" + std::to_string(x) + " front";
            for (Index f : a.cells.front(n, x))
                out += " " + std::to_string(f);
            out += " back";
            for (Index b : a.cells.back(n, x))
                out += " " + std::to_string(b);
            out += "\n";
        }
    }
    return out + "}\n";
}

} // namespace hdam
