#pragma once

// Program graphs over finitely-valued shared variables, their state graphs
// and transition-system models, and parallel composition.

#include "hdam/expr.hpp"
#include "hdam/lts.hpp"

#include <algorithm>
#include <deque>
#include <optional>

namespace hdam {

struct VarDecl {
    std::string name;
    std::vector<Value> domain;

    friend bool operator==(const VarDecl&, const VarDecl&) = default;
};

struct Assignment {
    std::string target;
    SourceExpr expr;

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Parallel assignment: every right-hand side reads the pre-state.
struct Action {
    std::string name;
    std::vector<Assignment> assigns;

    friend bool operator==(const Action&, const Action&) = default;
};

struct Transition {
    Value from;
    std::string action;
    Value to;
    std::optional<SourceExpr> guard; // absent means "true"

    friend bool operator==(const Transition&, const Transition&) = default;
};

struct ProgramGraph {
    std::vector<std::string> declared;
    std::vector<Value> locations;
    Value initial;
    std::vector<Action> actions;
    std::vector<Transition> transitions;

    [[nodiscard]] const Action& action(const std::string& name) const
    {
        for (const Action& a : actions)
            if (a.name == name)
                return a;
        throw Error(ErrorKind::invalid_input, "unknown action " + name);
    }

    [[nodiscard]] std::size_t location_index(const Value& l) const
    {
        auto it = std::find(locations.begin(), locations.end(), l);
        if (it == locations.end())
            throw Error(ErrorKind::invalid_input, "unknown location " + to_string(l));
        return static_cast<std::size_t>(it - locations.begin());
    }

    friend bool operator==(const ProgramGraph&, const ProgramGraph&) = default;
};

struct SharedVariableSystem {
    std::vector<VarDecl> variables;
    Evaluation initial;
    std::vector<ProgramGraph> graphs;

    [[nodiscard]] const VarDecl& variable(const std::string& name) const
    {
        for (const VarDecl& v : variables)
            if (v.name == name)
                return v;
        throw Error(ErrorKind::invalid_input, "undeclared variable " + name);
    }

    friend bool operator==(const SharedVariableSystem&, const SharedVariableSystem&) = default;
};

inline std::string describe(const Transition& t)
{
    return "(" + to_string(t.from) + ", " + t.action + ", " + to_string(t.to) + ")";
}

/// Checks scoping, typing and domain invariants. Throws invalid_input.
inline void validate_system(const SharedVariableSystem& sys)
{
    auto bad = [](const std::string& msg) { throw Error(ErrorKind::invalid_input, msg); };
    std::map<std::string, Type> types;
    for (const VarDecl& v : sys.variables) {
        if (v.name.empty())
            bad("variable with empty name");
        if (types.contains(v.name))
            bad("variable " + v.name + " declared twice");
        if (v.domain.empty())
            bad("variable " + v.name + " has an empty domain");
        const Type t = type_of(v.domain.front());
        for (std::size_t i = 0; i < v.domain.size(); ++i) {
            if (type_of(v.domain[i]) != t)
                bad("variable " + v.name + " mixes integers and atoms in its domain");
            for (std::size_t j = 0; j < i; ++j)
                if (v.domain[j] == v.domain[i])
                    bad("variable " + v.name + " lists " + to_string(v.domain[i]) + " twice");
        }
        types.emplace(v.name, t);
        auto init = sys.initial.find(v.name);
        if (init == sys.initial.end())
            bad("variable " + v.name + " has no initial value");
        if (std::find(v.domain.begin(), v.domain.end(), init->second) == v.domain.end())
            bad("initial value " + to_string(init->second) + " of " + v.name + " is outside its domain");
    }
    for (const auto& [name, value] : sys.initial)
        if (!types.contains(name))
            bad("initial value given for undeclared variable " + name);

    for (std::size_t g = 0; g < sys.graphs.size(); ++g) {
        const ProgramGraph& p = sys.graphs[g];
        const std::string where = "graph " + std::to_string(g + 1) + ": ";
        std::map<std::string, Type> scope;
        for (const std::string& v : p.declared) {
            auto it = types.find(v);
            if (it == types.end())
                bad(where + "declares unknown variable " + v);
            if (!scope.emplace(v, it->second).second)
                bad(where + "declares " + v + " twice");
        }
        if (p.locations.empty())
            bad(where + "no locations");
        for (std::size_t i = 0; i < p.locations.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (p.locations[i] == p.locations[j])
                    bad(where + "location " + to_string(p.locations[i]) + " listed twice");
        if (std::find(p.locations.begin(), p.locations.end(), p.initial) == p.locations.end())
            bad(where + "initial location " + to_string(p.initial) + " is not a location");
        std::set<std::string> names;
        for (const Action& a : p.actions) {
            if (a.name.empty())
                bad(where + "action with empty name");
            if (!names.insert(a.name).second)
                bad(where + "action " + a.name + " defined twice");
            std::set<std::string> targets;
            for (const Assignment& as : a.assigns) {
                auto it = scope.find(as.target);
                if (it == scope.end())
                    bad(where + "action " + a.name + " assigns undeclared variable " + as.target);
                if (!targets.insert(as.target).second)
                    bad(where + "action " + a.name + " assigns " + as.target + " twice");
                try {
                    const Type t = check_type(as.expr.ast, scope);
                    if (t != it->second)
                        bad(where + "action " + a.name + " assigns a " + to_string(t) + " to " + as.target);
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::invalid_input)
                        throw;
                    bad(where + "action " + a.name + ": " + e.what());
                }
            }
        }
        std::set<std::tuple<Value, std::string, Value>> seen;
        for (const Transition& t : p.transitions) {
            for (const Value* l : {&t.from, &t.to})
                if (std::find(p.locations.begin(), p.locations.end(), *l) == p.locations.end())
                    bad(where + "transition " + describe(t) + " uses unknown location " + to_string(*l));
            if (!names.contains(t.action))
                bad(where + "transition " + describe(t) + " uses undefined action " + t.action);
            if (!seen.emplace(t.from, t.action, t.to).second)
                bad(where + "transition " + describe(t) + " listed twice");
            if (t.guard) {
                try {
                    if (check_type(t.guard->ast, scope) != Type::boolean)
                        bad(where + "guard of " + describe(t) + " is not boolean");
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::invalid_input)
                        throw;
                    bad(where + "guard of " + describe(t) + ": " + e.what());
                }
            }
        }
    }
}

/// eta restricted to w.
inline Evaluation restrict(const Evaluation& eta, const std::vector<std::string>& w)
{
    Evaluation out;
    for (const std::string& v : w) {
        auto it = eta.find(v);
        if (it == eta.end())
            throw Error(ErrorKind::argument, "restrict: " + v + " has no value");
        out.emplace(v, it->second);
    }
    return out;
}

/// Join of evaluations over disjoint variable sets.
inline Evaluation star(const Evaluation& a, const Evaluation& b)
{
    Evaluation out = a;
    for (const auto& [v, val] : b)
        if (!out.emplace(v, val).second)
            throw Error(ErrorKind::argument, "star: variable " + v + " occurs on both sides");
    return out;
}

inline bool eval_guard(const Expr& g, const Evaluation& eta)
{
    return std::get<bool>(evaluate(g, eta));
}

inline bool eval_guard(const std::optional<SourceExpr>& g, const Evaluation& eta)
{
    return !g || eval_guard(g->ast, eta);
}

/// Applies an action to gamma (an evaluation of the declared variables).
/// `where` names the transition in diagnostics.
inline Evaluation apply_action(const SharedVariableSystem& sys, const Action& a, const Evaluation& gamma,
                               const std::string& where)
{
    Evaluation out = gamma;
    for (const Assignment& as : a.assigns) {
        const Datum d = evaluate(as.expr.ast, gamma);
        Value v;
        if (auto i = std::get_if<std::int64_t>(&d))
            v = *i;
        else
            v = std::get<std::string>(d);
        const VarDecl& decl = sys.variable(as.target);
        if (std::find(decl.domain.begin(), decl.domain.end(), v) == decl.domain.end())
            throw Error(ErrorKind::domain_violation, where + ": action " + a.name + " sets " + as.target + " to "
                                                         + to_string(v) + ", outside its domain");
        out[as.target] = v;
    }
    return out;
}

/// Declared variables of the whole system in declaration order.
inline std::vector<std::string> declared_variables(const SharedVariableSystem& sys)
{
    std::set<std::string> used;
    for (const ProgramGraph& g : sys.graphs)
        used.insert(g.declared.begin(), g.declared.end());
    std::vector<std::string> out;
    for (const VarDecl& v : sys.variables)
        if (used.contains(v.name))
            out.push_back(v.name);
    return out;
}

/// A state: one location index per graph, one domain index per declared
/// variable. Ordered lexicographically by these indices.
struct State {
    std::vector<std::size_t> locations;
    std::vector<std::size_t> values;

    auto operator<=>(const State&) const = default;
};

struct EdgeOrigin {
    std::size_t process = 0; // 1-based
    std::size_t transition = 0;

    friend bool operator==(const EdgeOrigin&, const EdgeOrigin&) = default;
};

struct StateGraph {
    PrecubicalSet cells;
    std::vector<State> states;
    std::vector<EdgeOrigin> edges;
    std::vector<std::string> variables; // the declared variables V
    Index initial = 0;

    [[nodiscard]] Index find(const State& s) const
    {
        auto it = std::lower_bound(states.begin(), states.end(), s);
        return it != states.end() && *it == s ? static_cast<Index>(it - states.begin()) : npos;
    }
};

namespace detail {

inline Evaluation evaluation_of(const SharedVariableSystem& sys, const std::vector<std::string>& vars,
                                const State& s)
{
    Evaluation eta;
    for (std::size_t i = 0; i < vars.size(); ++i)
        eta.emplace(vars[i], sys.variable(vars[i]).domain[s.values[i]]);
    return eta;
}

inline State state_of(const SharedVariableSystem& sys, const std::vector<std::string>& vars,
                      std::vector<std::size_t> locs, const Evaluation& eta)
{
    State s{std::move(locs), {}};
    for (const std::string& v : vars) {
        const auto& dom = sys.variable(v).domain;
        s.values.push_back(static_cast<std::size_t>(std::find(dom.begin(), dom.end(), eta.at(v)) - dom.begin()));
    }
    return s;
}

struct Successor {
    EdgeOrigin origin;
    State target;
};

// Edges leaving s, ordered by (process, transition).
inline std::vector<Successor> successors(const SharedVariableSystem& sys, const std::vector<std::string>& vars,
                                         const State& s)
{
    std::vector<Successor> out;
    const Evaluation eta = evaluation_of(sys, vars, s);
    for (std::size_t i = 0; i < sys.graphs.size(); ++i) {
        const ProgramGraph& g = sys.graphs[i];
        const Evaluation gamma = restrict(eta, g.declared);
        for (std::size_t t = 0; t < g.transitions.size(); ++t) {
            const Transition& tr = g.transitions[t];
            if (g.locations[s.locations[i]] != tr.from || !eval_guard(tr.guard, gamma))
                continue;
            Evaluation after = eta;
            for (const auto& [v, val] : apply_action(sys, g.action(tr.action), gamma,
                                                     "process " + std::to_string(i + 1) + " transition "
                                                         + describe(tr)))
                after[v] = val;
            std::vector<std::size_t> locs = s.locations;
            locs[i] = g.location_index(tr.to);
            out.push_back({{i + 1, t}, state_of(sys, vars, std::move(locs), after)});
        }
    }
    return out;
}

inline StateGraph assemble(const SharedVariableSystem& sys, std::vector<std::string> vars, std::vector<State> states,
                           const State& init)
{
    StateGraph g;
    g.variables = std::move(vars);
    std::sort(states.begin(), states.end());
    g.states = std::move(states);
    g.cells.add_vertices(g.states.size());
    g.initial = g.find(init);
    for (Index v = 0; v < g.states.size(); ++v) {
        for (const Successor& s : successors(sys, g.variables, g.states[v])) {
            const Index w = g.find(s.target);
            if (w == npos)
                throw Error(ErrorKind::contradiction, "successor state missing from the state set");
            g.cells.add_cell({v}, {w});
            g.edges.push_back(s.origin);
        }
    }
    return g;
}

} // namespace detail

inline State initial_state(const SharedVariableSystem& sys)
{
    std::vector<std::size_t> locs;
    for (const ProgramGraph& g : sys.graphs)
        locs.push_back(g.location_index(g.initial));
    return detail::state_of(sys, declared_variables(sys), std::move(locs), sys.initial);
}

/// Every state L_1 x ... x L_n x Ev(V), in lexicographic order.
inline std::vector<State> enumerate_states(const SharedVariableSystem& sys)
{
    const auto vars = declared_variables(sys);
    std::vector<std::size_t> radix;
    for (const ProgramGraph& g : sys.graphs)
        radix.push_back(g.locations.size());
    for (const std::string& v : vars)
        radix.push_back(sys.variable(v).domain.size());
    std::vector<State> out;
    std::vector<std::size_t> digit(radix.size(), 0);
    for (;;) {
        out.push_back({std::vector<std::size_t>(digit.begin(), digit.begin() + sys.graphs.size()),
                       std::vector<std::size_t>(digit.begin() + sys.graphs.size(), digit.end())});
        std::size_t k = radix.size();
        while (k > 0 && ++digit[k - 1] == radix[k - 1])
            digit[--k] = 0;
        if (k == 0)
            break;
    }
    return out;
}

enum class Exploration { lazy, eager };

/// The state graph, either restricted to states reachable from the initial
/// state (lazy) or over every state (eager). Domain violations abort.
inline StateGraph state_graph(const SharedVariableSystem& sys, Exploration mode = Exploration::lazy)
{
    validate_system(sys);
    const auto vars = declared_variables(sys);
    const State init = initial_state(sys);
    if (mode == Exploration::eager)
        return detail::assemble(sys, vars, enumerate_states(sys), init);
    std::set<State> seen{init};
    std::deque<State> frontier{init};
    while (!frontier.empty()) {
        const State s = std::move(frontier.front());
        frontier.pop_front();
        for (detail::Successor& n : detail::successors(sys, vars, s))
            if (seen.insert(n.target).second)
                frontier.push_back(std::move(n.target));
    }
    return detail::assemble(sys, vars, std::vector<State>(seen.begin(), seen.end()), init);
}

struct DecodedState {
    std::vector<Value> locations;
    Evaluation evaluation;

    friend bool operator==(const DecodedState&, const DecodedState&) = default;
};

inline DecodedState decode_state(const SharedVariableSystem& sys, const StateGraph& g, Index v)
{
    DecodedState d;
    const State& s = g.states.at(v);
    for (std::size_t i = 0; i < sys.graphs.size(); ++i)
        d.locations.push_back(sys.graphs[i].locations[s.locations[i]]);
    d.evaluation = detail::evaluation_of(sys, g.variables, s);
    return d;
}

/// "(l_1,...,l_n,v_1,...)" with the declared variables in declaration order.
inline std::string state_name(const SharedVariableSystem& sys, const StateGraph& g, Index v)
{
    const DecodedState d = decode_state(sys, g, v);
    std::string out = "(";
    auto piece = [&](const Value& x) {
        if (out.size() > 1)
            out += ",";
        out += std::holds_alternative<std::int64_t>(x) ? std::to_string(std::get<std::int64_t>(x))
                                                       : std::get<std::string>(x);
    };
    for (const Value& l : d.locations)
        piece(l);
    for (const std::string& name : g.variables)
        piece(d.evaluation.at(name));
    return out + ")";
}

inline Label edge_label(const SharedVariableSystem& sys, const EdgeOrigin& o)
{
    return Label::action(static_cast<int>(o.process), sys.graphs[o.process - 1].transitions[o.transition].action);
}

/// How the relation of a program model is chosen.
///  realized: (i,a) |x (j,b) for i < j when some independence square with
///            those front labels exists, over the labels that occur.
///  process_order: every (i,a) |x (j,b) with i < j over all actions.
/// Both give the same independence squares and hence the same HDA model.
enum class RelationPolicy { realized, process_order };

struct SystemModel {
    LtsSystem lts;
    StateGraph graph;
};

/// Eager exploration keeps unreachable states as further components.
inline SystemModel lts_model(const SharedVariableSystem& sys, RelationPolicy policy = RelationPolicy::realized,
                             Exploration mode = Exploration::lazy)
{
    StateGraph g = state_graph(sys, mode);
    Hda u;
    u.cells = g.cells;
    u.initial = g.initial;
    for (const EdgeOrigin& o : g.edges)
        u.labels.push_back(edge_label(sys, o));
    if (policy == RelationPolicy::process_order) {
        for (std::size_t i = 0; i < sys.graphs.size(); ++i)
            for (const Action& a : sys.graphs[i].actions)
                u.alphabet.insert(Label::action(static_cast<int>(i + 1), a.name));
    } else {
        u.alphabet.insert(u.labels.begin(), u.labels.end());
    }
    Relation order;
    for (const Label& a : u.alphabet)
        for (const Label& b : u.alphabet)
            if (a.process < b.process)
                order.insert({a, b});
    if (policy == RelationPolicy::process_order)
        return {LtsSystem(std::move(u), std::move(order)), std::move(g)};
    Relation realized;
    for (const IndependenceSquare& s : independence_squares(u, order))
        realized.insert({u.label(s.x02), u.label(s.x01)});
    return {LtsSystem(std::move(u), std::move(realized)), std::move(g)};
}

/// A path from the initial state to v (shortest, by breadth-first search).
inline Path witness_path(const PrecubicalSet& p, Index from, Index v)
{
    std::vector<Index> via(p.count(0), npos);
    std::vector<char> seen(p.count(0), 0);
    std::vector<std::vector<Index>> out_edges(p.count(0));
    for (Index e = 0; e < p.count(1); ++e)
        out_edges[p.face(1, e, 0, 1)].push_back(e);
    std::deque<Index> queue{from};
    seen[from] = 1;
    while (!queue.empty() && !seen[v]) {
        const Index u = queue.front();
        queue.pop_front();
        for (Index e : out_edges[u]) {
            const Index w = p.face(1, e, 1, 1);
            if (!seen[w]) {
                seen[w] = 1;
                via[w] = e;
                queue.push_back(w);
            }
        }
    }
    if (!seen[v])
        throw Error(ErrorKind::argument, "vertex " + std::to_string(v) + " is not reachable");
    Path path{from, {}};
    for (Index w = v; w != from; w = p.face(1, via[w], 0, 1))
        path.steps.push_back(via[w]);
    std::reverse(path.steps.begin(), path.steps.end());
    return path;
}

/// Graphs of the second system follow those of the first. Shared variable
/// names must agree on domain and initial value.
inline SharedVariableSystem parallel_compose(const SharedVariableSystem& a, const SharedVariableSystem& b)
{
    SharedVariableSystem out = a;
    for (const VarDecl& v : b.variables) {
        auto it = std::find_if(out.variables.begin(), out.variables.end(),
                               [&](const VarDecl& d) { return d.name == v.name; });
        if (it == out.variables.end()) {
            out.variables.push_back(v);
            out.initial[v.name] = b.initial.at(v.name);
            continue;
        }
        if (it->domain != v.domain)
            throw Error(ErrorKind::invalid_input, "declaration conflict: variable " + v.name
                                                      + " has different domains in the two systems");
        if (out.initial.at(v.name) != b.initial.at(v.name))
            throw Error(ErrorKind::invalid_input, "declaration conflict: variable " + v.name
                                                      + " has different initial values in the two systems");
    }
    out.graphs.insert(out.graphs.end(), b.graphs.begin(), b.graphs.end());
    return out;
}

/// No two transitions share start location and action.
inline bool is_deterministic(const ProgramGraph& g)
{
    std::set<std::pair<Value, std::string>> seen;
    for (const Transition& t : g.transitions)
        if (!seen.emplace(t.from, t.action).second)
            return false;
    return true;
}

/// Label map for S ||| T -> model of the composed system: left labels keep
/// their process, right labels (i,a) become (n+i,a).
inline std::map<Label, Label> process_label_map(const Alphabet& tagged, int n)
{
    std::map<Label, Label> out;
    for (const Label& l : tagged) {
        auto [side, inner] = untag(l);
        if (side == Origin::right)
            inner.process += n;
        out.emplace(l, inner);
    }
    return out;
}

struct InterleavingIso {
    LtsSystem interleaving;
    SystemModel composed;
    HdaMorphism map;
};

/// The explicit isomorphism lts_model(P1) ||| lts_model(P2) -> lts_model(P1 || P2)
/// for systems with disjoint declared variables: locations concatenate and
/// evaluations join.
inline InterleavingIso interleaving_iso(const SharedVariableSystem& a, const SharedVariableSystem& b,
                                        RelationPolicy policy = RelationPolicy::realized)
{
    const auto va = declared_variables(a);
    const auto vb = declared_variables(b);
    std::vector<std::string> shared;
    for (const std::string& v : va)
        if (std::find(vb.begin(), vb.end(), v) != vb.end())
            shared.push_back(v);
    if (!shared.empty()) {
        std::string names;
        for (const std::string& v : shared)
            names += (names.empty() ? "" : ", ") + v;
        throw Error(ErrorKind::hypothesis, "the systems share declared variables: " + names);
    }
    const SystemModel ma = lts_model(a, policy);
    const SystemModel mb = lts_model(b, policy);
    const SharedVariableSystem ab = parallel_compose(a, b);
    InterleavingIso out{interleave(ma.lts, mb.lts), lts_model(ab, policy), {}};
    const StateGraph& gc = out.composed.graph;
    const auto tp = tensor(ma.lts.cells(), mb.lts.cells());
    const int n = static_cast<int>(a.graphs.size());

    auto image_state = [&](Index v) {
        const TensorCell c = tp.origin(0, v);
        const DecodedState da = decode_state(a, ma.graph, c.left);
        const DecodedState db = decode_state(b, mb.graph, c.right);
        std::vector<std::size_t> locs = ma.graph.states[c.left].locations;
        const auto& rl = mb.graph.states[c.right].locations;
        locs.insert(locs.end(), rl.begin(), rl.end());
        const State s = detail::state_of(ab, gc.variables, std::move(locs), star(da.evaluation, db.evaluation));
        const Index w = gc.find(s);
        if (w == npos)
            throw Error(ErrorKind::contradiction, "image of a product state is not reachable in the composition");
        return w;
    };
    std::map<std::pair<Index, std::pair<std::size_t, std::size_t>>, Index> composed_edges;
    for (Index e = 0; e < gc.edges.size(); ++e)
        composed_edges.emplace(std::make_pair(gc.cells.face(1, e, 0, 1),
                                              std::make_pair(gc.edges[e].process, gc.edges[e].transition)),
                               e);
    HdaMorphism& f = out.map;
    f.cells.resize(2);
    for (Index v = 0; v < tp.cells.count(0); ++v)
        f.cells[0].push_back(image_state(v));
    for (Index e = 0; e < tp.cells.count(1); ++e) {
        const TensorCell c = tp.origin(1, e);
        const EdgeOrigin o = c.left_dim == 1 ? ma.graph.edges[c.left]
                                             : EdgeOrigin{mb.graph.edges[c.right].process + n, mb.graph.edges[c.right].transition};
        auto it = composed_edges.find({f.cells[0][tp.cells.face(1, e, 0, 1)], {o.process, o.transition}});
        if (it == composed_edges.end())
            throw Error(ErrorKind::contradiction, "image of a product edge is missing in the composition");
        f.cells[1].push_back(it->second);
    }
    f.labels = process_label_map(out.interleaving.alphabet(), n);
    if (Report r = check_lts_isomorphism(f, out.interleaving, out.composed.lts); !r.ok())
        throw Error(ErrorKind::contradiction, "interleaving map is not an isomorphism: " + r.issues.front());
    return out;
}

} // namespace hdam
