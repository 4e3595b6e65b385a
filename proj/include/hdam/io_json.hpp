#pragma once

// JSON formats.
//
//   pcs:    {"dims": [n0, n1, ...],
//            "faces": [[{"cell": x, "front": [...], "back": [...]}, ...], ...]}
//           with one array per degree >= 1
//   hda:    pcs + "initial", "finals", "alphabet", "labels" (one per edge)
//   lts:    hda + "relation": [[label, label], ...]
//   system: {"variables": [{"name", "domain"}], "initial": {name: value},
//            "graphs": [{"declared", "locations", "initial",
//                        "actions": [{"name", "assigns": [[target, expr]]}],
//                        "transitions": [{"from", "action", "to", "guard"?}]}]}
//
// A label is a string when it has no tags and no process, otherwise
// {"tags"?: "LR..", "process"?: i, "name": a}.

#include "hdam/lts.hpp"
#include "hdam/progg.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <limits>
#include <sstream>

namespace hdam {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void schema(const std::string& where, const std::string& msg)
{
    throw Error(ErrorKind::parse, (where.empty() ? std::string("document") : where) + ": " + msg);
}

inline const Json& member(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object())
        schema(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        schema(where, std::string("missing \"") + key + "\"");
    return *it;
}

inline const Json& array_at(const Json& j, const char* key, const std::string& where)
{
    const Json& a = member(j, key, where);
    if (!a.is_array())
        schema(where + "/" + key, "expected an array");
    return a;
}

inline std::size_t natural(const Json& j, const std::string& where)
{
    if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0))
        schema(where, "expected a non-negative integer");
    return j.get<std::size_t>();
}

inline std::string text(const Json& j, const std::string& where)
{
    if (!j.is_string())
        schema(where, "expected a string");
    return j.get<std::string>();
}

inline void reject_unknown(const Json& j, std::initializer_list<const char*> keys, const std::string& where)
{
    for (const auto& [k, v] : j.items()) {
        (void)v;
        if (std::none_of(keys.begin(), keys.end(), [&](const char* s) { return k == s; }))
            schema(where, "unknown key \"" + k + "\"");
    }
}

} // namespace detail

/// Parses JSON text, mapping syntax errors to line and column.
inline Json parse_json(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1;
        std::size_t col = 1;
        const std::size_t stop = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        if (auto p = msg.find("; "); p != std::string::npos)
            msg = msg.substr(p + 2);
        throw ParseError(msg, line, col);
    }
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content))
        throw Error(ErrorKind::io, "cannot write " + path);
}

/// Canonical text: two-space indentation and a trailing newline.
inline std::string dump(const Json& j)
{
    return j.dump(2) + "\n";
}

// labels

inline Json to_json(const Label& l)
{
    if (l.tags.empty() && l.process == 0)
        return l.name;
    Json j = Json::object();
    if (!l.tags.empty())
        j["tags"] = l.tags;
    if (l.process != 0)
        j["process"] = l.process;
    j["name"] = l.name;
    return j;
}

inline Label label_from_json(const Json& j, const std::string& where)
{
    if (j.is_string())
        return Label::atom(j.get<std::string>());
    if (!j.is_object())
        detail::schema(where, "expected a label (string or object)");
    detail::reject_unknown(j, {"tags", "process", "name"}, where);
    Label l;
    l.name = detail::text(detail::member(j, "name", where), where + "/name");
    if (auto it = j.find("tags"); it != j.end()) {
        l.tags = detail::text(*it, where + "/tags");
        if (l.tags.empty() || l.tags.find_first_not_of("LR") != std::string::npos)
            detail::schema(where + "/tags", "tags must be a nonempty string over L and R");
    }
    if (auto it = j.find("process"); it != j.end()) {
        const std::size_t p = detail::natural(*it, where + "/process");
        if (p == 0 || p > static_cast<std::size_t>(std::numeric_limits<int>::max()))
            detail::schema(where + "/process", "process must be positive");
        l.process = static_cast<int>(p);
    }
    if (l.tags.empty() && l.process == 0)
        detail::schema(where, "a plain label must be written as a string");
    return l;
}

// precubical sets

inline Json to_json(const PrecubicalSet& p)
{
    Json j = Json::object();
    j["dims"] = p.f_vector();
    Json faces = Json::array();
    for (std::size_t n = 1; n < p.levels(); ++n) {
        Json level = Json::array();
        for (Index x = 0; x < p.count(n); ++x) {
            const auto f = p.front(n, x);
            const auto b = p.back(n, x);
            level.push_back(Json{{"cell", x},
                                 {"front", std::vector<Index>(f.begin(), f.end())},
                                 {"back", std::vector<Index>(b.begin(), b.end())}});
        }
        faces.push_back(std::move(level));
    }
    j["faces"] = std::move(faces);
    return j;
}

inline PrecubicalSet pcs_from_json(const Json& j)
{
    const Json& dims = detail::array_at(j, "dims", "");
    const Json& faces = detail::array_at(j, "faces", "");
    std::vector<std::size_t> counts;
    for (std::size_t n = 0; n < dims.size(); ++n)
        counts.push_back(detail::natural(dims[n], "/dims/" + std::to_string(n)));
    if (counts.size() > 1 && counts.back() == 0)
        detail::schema("/dims", "trailing zero counts are not allowed");
    if (faces.size() + 1 != std::max<std::size_t>(counts.size(), 1))
        detail::schema("/faces", "expected one array per degree >= 1");
    PrecubicalSet p;
    if (counts.empty())
        return p;
    p.add_vertices(counts[0]);
    for (std::size_t n = 1; n < counts.size(); ++n) {
        const std::string where = "/faces/" + std::to_string(n - 1);
        const Json& level = faces[n - 1];
        if (!level.is_array() || level.size() != counts[n])
            detail::schema(where, "expected " + std::to_string(counts[n]) + " cells");
        for (std::size_t x = 0; x < level.size(); ++x) {
            const std::string w = where + "/" + std::to_string(x);
            detail::reject_unknown(level[x], {"cell", "front", "back"}, w);
            if (detail::natural(detail::member(level[x], "cell", w), w + "/cell") != x)
                detail::schema(w + "/cell", "cells must be listed in index order");
            std::vector<Index> front;
            std::vector<Index> back;
            for (const char* side : {"front", "back"}) {
                const Json& arr = detail::array_at(level[x], side, w);
                if (arr.size() != n)
                    detail::schema(w + "/" + side, "expected " + std::to_string(n) + " faces");
                for (std::size_t i = 0; i < n; ++i)
                    (side[0] == 'f' ? front : back)
                        .push_back(detail::natural(arr[i], w + "/" + side + "/" + std::to_string(i)));
            }
            try {
                p.add_cell(front, back);
            } catch (const Error& e) {
                detail::schema(w, e.what());
            }
        }
    }
    return p;
}

// HDAs

inline Json to_json(const Hda& a)
{
    Json j = to_json(a.cells);
    j["initial"] = a.initial;
    j["finals"] = std::vector<Index>(a.finals.begin(), a.finals.end());
    Json alpha = Json::array();
    for (const Label& l : a.alphabet)
        alpha.push_back(to_json(l));
    j["alphabet"] = std::move(alpha);
    Json labels = Json::array();
    for (const Label& l : a.labels)
        labels.push_back(to_json(l));
    j["labels"] = std::move(labels);
    return j;
}

inline Hda hda_from_json(const Json& j, bool allow_relation = false)
{
    if (allow_relation)
        detail::reject_unknown(j, {"dims", "faces", "initial", "finals", "alphabet", "labels", "relation"}, "");
    else
        detail::reject_unknown(j, {"dims", "faces", "initial", "finals", "alphabet", "labels"}, "");
    Hda a;
    a.cells = pcs_from_json(j);
    a.initial = detail::natural(detail::member(j, "initial", ""), "/initial");
    const Json& finals = detail::array_at(j, "finals", "");
    for (std::size_t i = 0; i < finals.size(); ++i)
        a.finals.insert(detail::natural(finals[i], "/finals/" + std::to_string(i)));
    const Json& alpha = detail::array_at(j, "alphabet", "");
    for (std::size_t i = 0; i < alpha.size(); ++i)
        if (!a.alphabet.insert(label_from_json(alpha[i], "/alphabet/" + std::to_string(i))).second)
            detail::schema("/alphabet/" + std::to_string(i), "duplicate label");
    const Json& labels = detail::array_at(j, "labels", "");
    for (std::size_t i = 0; i < labels.size(); ++i)
        a.labels.push_back(label_from_json(labels[i], "/labels/" + std::to_string(i)));
    if (Report r = validate_hda(a); !r.ok())
        throw Error(ErrorKind::invalid_input, "invalid HDA: " + r.issues.front());
    return a;
}

// transition systems

inline Json to_json(const LtsSystem& t)
{
    Json j = to_json(t.underlying());
    Json rel = Json::array();
    for (const auto& [a, b] : t.relation())
        rel.push_back(Json::array({to_json(a), to_json(b)}));
    j["relation"] = std::move(rel);
    return j;
}

inline LtsSystem lts_from_json(const Json& j)
{
    Hda a = hda_from_json(j, true);
    Relation rel;
    const Json& r = detail::array_at(j, "relation", "");
    for (std::size_t i = 0; i < r.size(); ++i) {
        const std::string w = "/relation/" + std::to_string(i);
        if (!r[i].is_array() || r[i].size() != 2)
            detail::schema(w, "expected a pair of labels");
        rel.insert({label_from_json(r[i][0], w + "/0"), label_from_json(r[i][1], w + "/1")});
    }
    return LtsSystem(std::move(a), std::move(rel));
}

// shared-variable systems

inline Json to_json(const Value& v)
{
    if (auto i = std::get_if<std::int64_t>(&v))
        return *i;
    return std::get<std::string>(v);
}

inline Value value_from_json(const Json& j, const std::string& where)
{
    if (j.is_number_integer())
        return j.get<std::int64_t>();
    if (j.is_string())
        return j.get<std::string>();
    detail::schema(where, "expected an integer or a string");
}

inline Json to_json(const SharedVariableSystem& sys)
{
    Json j = Json::object();
    Json vars = Json::array();
    for (const VarDecl& v : sys.variables) {
        Json dom = Json::array();
        for (const Value& x : v.domain)
            dom.push_back(to_json(x));
        vars.push_back(Json{{"name", v.name}, {"domain", std::move(dom)}});
    }
    j["variables"] = std::move(vars);
    Json init = Json::object();
    for (const VarDecl& v : sys.variables)
        if (auto it = sys.initial.find(v.name); it != sys.initial.end())
            init[v.name] = to_json(it->second);
    j["initial"] = std::move(init);
    Json graphs = Json::array();
    for (const ProgramGraph& g : sys.graphs) {
        Json jg = Json::object();
        jg["declared"] = g.declared;
        Json locs = Json::array();
        for (const Value& l : g.locations)
            locs.push_back(to_json(l));
        jg["locations"] = std::move(locs);
        jg["initial"] = to_json(g.initial);
        Json actions = Json::array();
        for (const Action& a : g.actions) {
            Json assigns = Json::array();
            for (const Assignment& as : a.assigns)
                assigns.push_back(Json::array({as.target, as.expr.text}));
            actions.push_back(Json{{"name", a.name}, {"assigns", std::move(assigns)}});
        }
        jg["actions"] = std::move(actions);
        Json transitions = Json::array();
        for (const Transition& t : g.transitions) {
            Json jt = Json{{"from", to_json(t.from)}, {"action", t.action}, {"to", to_json(t.to)}};
            if (t.guard)
                jt["guard"] = t.guard->text;
            transitions.push_back(std::move(jt));
        }
        jg["transitions"] = std::move(transitions);
        graphs.push_back(std::move(jg));
    }
    j["graphs"] = std::move(graphs);
    return j;
}

inline SharedVariableSystem system_from_json(const Json& j)
{
    using detail::array_at;
    using detail::member;
    using detail::text;
    detail::reject_unknown(j, {"variables", "initial", "graphs"}, "");
    SharedVariableSystem sys;
    const Json& vars = array_at(j, "variables", "");
    for (std::size_t i = 0; i < vars.size(); ++i) {
        const std::string w = "/variables/" + std::to_string(i);
        detail::reject_unknown(vars[i], {"name", "domain"}, w);
        VarDecl v;
        v.name = text(member(vars[i], "name", w), w + "/name");
        const Json& dom = array_at(vars[i], "domain", w);
        for (std::size_t k = 0; k < dom.size(); ++k)
            v.domain.push_back(value_from_json(dom[k], w + "/domain/" + std::to_string(k)));
        sys.variables.push_back(std::move(v));
    }
    const Json& init = member(j, "initial", "");
    if (!init.is_object())
        detail::schema("/initial", "expected an object");
    for (const auto& [name, val] : init.items())
        sys.initial[name] = value_from_json(val, "/initial/" + name);
    const Json& graphs = array_at(j, "graphs", "");
    auto expr = [](const Json& e, const std::string& w) {
        try {
            return SourceExpr::from_text(text(e, w));
        } catch (const ParseError& p) {
            throw Error(ErrorKind::parse, w + ": " + p.what());
        }
    };
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const std::string w = "/graphs/" + std::to_string(gi);
        const Json& jg = graphs[gi];
        detail::reject_unknown(jg, {"declared", "locations", "initial", "actions", "transitions"}, w);
        ProgramGraph g;
        const Json& decl = array_at(jg, "declared", w);
        for (std::size_t k = 0; k < decl.size(); ++k)
            g.declared.push_back(text(decl[k], w + "/declared/" + std::to_string(k)));
        const Json& locs = array_at(jg, "locations", w);
        for (std::size_t k = 0; k < locs.size(); ++k)
            g.locations.push_back(value_from_json(locs[k], w + "/locations/" + std::to_string(k)));
        g.initial = value_from_json(member(jg, "initial", w), w + "/initial");
        const Json& actions = array_at(jg, "actions", w);
        for (std::size_t k = 0; k < actions.size(); ++k) {
            const std::string wa = w + "/actions/" + std::to_string(k);
            detail::reject_unknown(actions[k], {"name", "assigns"}, wa);
            Action a;
            a.name = text(member(actions[k], "name", wa), wa + "/name");
            const Json& assigns = array_at(actions[k], "assigns", wa);
            for (std::size_t q = 0; q < assigns.size(); ++q) {
                const std::string wq = wa + "/assigns/" + std::to_string(q);
                if (!assigns[q].is_array() || assigns[q].size() != 2)
                    detail::schema(wq, "expected [target, expression]");
                a.assigns.push_back({text(assigns[q][0], wq + "/0"), expr(assigns[q][1], wq + "/1")});
            }
            g.actions.push_back(std::move(a));
        }
        const Json& transitions = array_at(jg, "transitions", w);
        for (std::size_t k = 0; k < transitions.size(); ++k) {
            const std::string wt = w + "/transitions/" + std::to_string(k);
            const Json& jt = transitions[k];
            detail::reject_unknown(jt, {"from", "action", "to", "guard"}, wt);
            Transition t;
            t.from = value_from_json(member(jt, "from", wt), wt + "/from");
            t.action = text(member(jt, "action", wt), wt + "/action");
            t.to = value_from_json(member(jt, "to", wt), wt + "/to");
            if (auto it = jt.find("guard"); it != jt.end())
                t.guard = expr(*it, wt + "/guard");
            g.transitions.push_back(std::move(t));
        }
        sys.graphs.push_back(std::move(g));
    }
    validate_system(sys);
    return sys;
}

} // namespace hdam
