#pragma once

// Transition systems carrying a relation on labels, their independence
// squares, and the passage to and from 2-truncated HDAs.

#include "hdam/hda.hpp"

#include <algorithm>
#include <deque>
#include <optional>

namespace hdam {

/// A 1-truncated extensional HDA together with a relation on its labels.
class LtsSystem {
public:
    LtsSystem(Hda underlying, Relation relation)
        : underlying_(std::move(underlying)), relation_(std::move(relation))
    {
        Report r = validate_hda(underlying_);
        if (!r.ok())
            throw Error(ErrorKind::invalid_input, "transition system: " + r.issues.front());
        if (underlying_.cells.levels() > 2)
            throw Error(ErrorKind::invalid_input, "transition system has cells of degree >= 2");
        if (auto ext = is_extensional(underlying_); !ext) {
            auto [e, f] = *ext.witness;
            throw ExtensionalityError("transition system is not extensional: edges " + std::to_string(e)
                                          + " and " + std::to_string(f)
                                          + " share start, end and label",
                                      {e, f});
        }
        for (const auto& [a, b] : relation_) {
            if (!underlying_.alphabet.contains(a) || !underlying_.alphabet.contains(b))
                throw Error(ErrorKind::invalid_input, "relation pair (" + to_string(a) + ", " + to_string(b)
                                                          + ") leaves the alphabet");
        }
    }

    [[nodiscard]] const Hda& underlying() const { return underlying_; }
    [[nodiscard]] const Relation& relation() const { return relation_; }
    [[nodiscard]] const Alphabet& alphabet() const { return underlying_.alphabet; }
    [[nodiscard]] const PrecubicalSet& cells() const { return underlying_.cells; }

    [[nodiscard]] bool related(const Label& a, const Label& b) const
    {
        return relation_.contains({a, b});
    }

    friend bool operator==(const LtsSystem&, const LtsSystem&) = default;

private:
    Hda underlying_;
    Relation relation_;
};

/// Four edges (x^k_i) bounding a square, keyed in the order (x^0_1, x^1_1,
/// x^0_2, x^1_2). Edges x^k_2 run in the first direction, x^k_1 in the second.
struct IndependenceSquare {
    Index x01 = 0;
    Index x11 = 0;
    Index x02 = 0;
    Index x12 = 0;

    [[nodiscard]] Index edge(int k, std::size_t i) const
    {
        if (i == 1)
            return k == 0 ? x01 : x11;
        return k == 0 ? x02 : x12;
    }

    auto operator<=>(const IndependenceSquare&) const = default;
};

/// All independence squares of a 1-skeleton with respect to `relation`,
/// sorted and without repetitions. Works on any HDA, extensional or not.
inline std::vector<IndependenceSquare> independence_squares(const Hda& a, const Relation& relation)
{
    const PrecubicalSet& p = a.cells;
    auto start = [&](Index e) { return p.face(1, e, 0, 1); };
    auto end = [&](Index e) { return p.face(1, e, 1, 1); };
    std::vector<std::vector<Index>> out_edges(p.count(0));
    for (Index e = 0; e < p.count(1); ++e)
        out_edges[start(e)].push_back(e);

    std::vector<IndependenceSquare> squares;
    for (Index v = 0; v < p.count(0); ++v) {
        for (Index x02 : out_edges[v]) {
            const Label& alpha = a.label(x02);
            for (Index x01 : out_edges[v]) {
                const Label& beta = a.label(x01);
                if (!relation.contains({alpha, beta}))
                    continue;
                for (Index x12 : out_edges[end(x01)]) {
                    if (a.label(x12) != alpha)
                        continue;
                    for (Index x11 : out_edges[end(x02)]) {
                        if (a.label(x11) == beta && end(x11) == end(x12))
                            squares.push_back({x01, x11, x02, x12});
                    }
                }
            }
        }
    }
    std::sort(squares.begin(), squares.end());
    squares.erase(std::unique(squares.begin(), squares.end()), squares.end());
    return squares;
}

inline std::vector<IndependenceSquare> independence_squares(const LtsSystem& t)
{
    return independence_squares(t.underlying(), t.relation());
}

/// Whether four edges form an independence square: boundary compatibility
/// d^k_1 x^l_2 = d^l_1 x^k_1 and the two label conditions.
inline bool is_independence_square(const Hda& a, const Relation& relation, const IndependenceSquare& s)
{
    const PrecubicalSet& p = a.cells;
    for (int k = 0; k <= 1; ++k)
        for (int l = 0; l <= 1; ++l)
            if (p.face(1, s.edge(l, 2), k, 1) != p.face(1, s.edge(k, 1), l, 1))
                return false;
    return a.label(s.x02) == a.label(s.x12) && a.label(s.x01) == a.label(s.x11)
           && relation.contains({a.label(s.x02), a.label(s.x01)});
}

/// Fills every independence square of T with one 2-cell (in square order).
inline Hda psi(const LtsSystem& t)
{
    Hda h = t.underlying();
    for (const IndependenceSquare& s : independence_squares(t))
        h.cells.add_cell({s.x01, s.x02}, {s.x11, s.x12});
    return h;
}

/// Recovers a transition system from a 2-truncated extensional HDA: the
/// 1-skeleton with alpha |x beta whenever some 2-cell has front labels
/// (alpha, beta) in directions (1, 2).
inline LtsSystem phi(const Hda& a)
{
    if (a.cells.levels() > 3)
        throw Error(ErrorKind::hypothesis, "phi needs a 2-truncated HDA");
    if (auto ext = is_extensional(a); !ext) {
        auto [e, f] = *ext.witness;
        throw ExtensionalityError("phi needs an extensional HDA: edges " + std::to_string(e) + " and "
                                      + std::to_string(f) + " share start, end and label",
                                  {e, f});
    }
    Relation rel;
    for (Index x = 0; x < a.cells.count(2); ++x)
        rel.insert({a.label(a.cells.face(2, x, 0, 2)), a.label(a.cells.face(2, x, 0, 1))});
    return LtsSystem(skeleton(a, 1), std::move(rel));
}

/// A morphism of transition systems is a morphism of the underlying HDAs
/// whose label map carries related pairs to related pairs.
inline Report check_lts_morphism(const HdaMorphism& f, const LtsSystem& s, const LtsSystem& t)
{
    Report r = check_morphism(f, s.underlying(), t.underlying());
    if (!r.ok())
        return r;
    for (const auto& [a, b] : s.relation()) {
        if (!t.related(f.labels.at(a), f.labels.at(b)))
            r.add("related pair (" + to_string(a) + ", " + to_string(b) + ") maps to an unrelated pair");
    }
    return r;
}

/// Isomorphism of transition systems: bijective and relation-reflecting.
inline Report check_lts_isomorphism(const HdaMorphism& f, const LtsSystem& s, const LtsSystem& t)
{
    Report r = check_lts_morphism(f, s, t);
    if (!r.ok())
        return r;
    if (!is_bijective(f, s.underlying(), t.underlying())) {
        r.add("not bijective");
        return r;
    }
    std::map<Label, Label> inverse;
    for (const auto& [from, to] : f.labels)
        inverse.emplace(to, from);
    for (const auto& [a, b] : t.relation()) {
        if (!s.related(inverse.at(a), inverse.at(b)))
            r.add("related pair (" + to_string(a) + ", " + to_string(b) + ") has an unrelated preimage");
    }
    return r;
}

/// Psi on morphisms: f in degrees <= 1, squares mapped edgewise.
inline HdaMorphism psi_map(const HdaMorphism& f, const LtsSystem& s, const LtsSystem& t)
{
    const auto target = independence_squares(t);
    HdaMorphism out;
    out.labels = f.labels;
    out.cells = {f.cells.at(0), f.cells.size() > 1 ? f.cells[1] : std::vector<Index>{}, {}};
    for (const IndependenceSquare& sq : independence_squares(s)) {
        const IndependenceSquare image{f(1, sq.x01), f(1, sq.x11), f(1, sq.x02), f(1, sq.x12)};
        auto it = std::lower_bound(target.begin(), target.end(), image);
        if (it == target.end() || *it != image)
            throw Error(ErrorKind::contradiction, "image of an independence square is not one");
        out.cells[2].push_back(static_cast<Index>(it - target.begin()));
    }
    // same degrees as Psi(S)
    out.cells.resize(out.cells[2].empty() ? s.cells().levels() : 3);
    return out;
}

/// Counit Phi(Psi(T)) -> T: the identity of U(T).
inline HdaMorphism counit(const LtsSystem& t)
{
    return identity_morphism(t.underlying());
}

/// Unit A -> Psi(Phi(A)): identity in degrees <= 1, a 2-cell goes to the
/// square formed by its faces.
inline HdaMorphism unit(const Hda& a)
{
    const LtsSystem phi_a = phi(a);
    const auto squares = independence_squares(phi_a);
    HdaMorphism out = identity_morphism(skeleton(a, 1));
    // same degrees as A
    out.cells.resize(a.cells.levels());
    for (Index x = 0; x < a.cells.count(2); ++x) {
        const IndependenceSquare sq{a.cells.face(2, x, 0, 1), a.cells.face(2, x, 1, 1),
                                    a.cells.face(2, x, 0, 2), a.cells.face(2, x, 1, 2)};
        auto it = std::lower_bound(squares.begin(), squares.end(), sq);
        if (it == squares.end() || *it != sq)
            throw Error(ErrorKind::contradiction, "2-cell boundary is not an independence square");
        out.cells[2].push_back(static_cast<Index>(it - squares.begin()));
    }
    return out;
}

/// S ||| T: the 1-skeleton of U(S) (x) U(T), with the relations of S and T
/// plus every pair (left label, right label).
inline LtsSystem interleave(const LtsSystem& s, const LtsSystem& t)
{
    Hda u = skeleton(tensor_hda(s.underlying(), t.underlying()), 1);
    Relation rel;
    for (const auto& [a, b] : s.relation())
        rel.insert({tag_left(a), tag_left(b)});
    for (const auto& [a, b] : t.relation())
        rel.insert({tag_right(a), tag_right(b)});
    for (const Label& a : s.alphabet())
        for (const Label& b : t.alphabet())
            rel.insert({tag_left(a), tag_right(b)});
    return LtsSystem(std::move(u), std::move(rel));
}

/// S + T: the wedge of the underlying systems, relations side by side.
inline LtsSystem coproduct_lts(const LtsSystem& s, const LtsSystem& t)
{
    Hda u = coproduct_hda(s.underlying(), t.underlying());
    Relation rel;
    for (const auto& [a, b] : s.relation())
        rel.insert({tag_left(a), tag_left(b)});
    for (const auto& [a, b] : t.relation())
        rel.insert({tag_right(a), tag_right(b)});
    return LtsSystem(std::move(u), std::move(rel));
}

struct RelationPredicate {
    bool holds = true;
    std::optional<LabelPair> witness;

    explicit operator bool() const { return holds; }
};

/// No pair is related both ways; in particular no label is related to itself.
inline RelationPredicate is_asymmetric(const Relation& rel)
{
    for (const auto& [a, b] : rel) {
        if (rel.contains({b, a}))
            return {false, LabelPair{a, b}};
    }
    return {};
}

inline RelationPredicate is_irreflexive(const Relation& rel)
{
    for (const auto& [a, b] : rel) {
        if (a == b)
            return {false, LabelPair{a, b}};
    }
    return {};
}

inline EdgePredicate is_deterministic_lts(const LtsSystem& t)
{
    return is_deterministic(t.underlying());
}

/// Builds the isomorphism S -> T with the given label map by walking both
/// systems from their initial states. Both must be deterministic and every
/// state of S reachable; returns nothing if the walk gets stuck or the
/// result is not an isomorphism of transition systems.
inline std::optional<HdaMorphism> match_deterministic(const LtsSystem& s, const LtsSystem& t,
                                                      const std::map<Label, Label>& labels)
{
    if (!is_deterministic_lts(s) || !is_deterministic_lts(t))
        throw Error(ErrorKind::hypothesis, "match_deterministic needs deterministic systems");
    const PrecubicalSet& ps = s.cells();
    const PrecubicalSet& pt = t.cells();
    std::map<std::pair<Index, Label>, Index> t_edges;
    for (Index e = 0; e < pt.count(1); ++e)
        t_edges.emplace(std::make_pair(pt.face(1, e, 0, 1), t.underlying().label(e)), e);
    std::vector<std::vector<Index>> s_out(ps.count(0));
    for (Index e = 0; e < ps.count(1); ++e)
        s_out[ps.face(1, e, 0, 1)].push_back(e);

    HdaMorphism f;
    f.labels = labels;
    f.cells = {std::vector<Index>(ps.count(0), npos), std::vector<Index>(ps.count(1), npos)};
    if (ps.empty() || pt.empty())
        return std::nullopt;
    f.cells[0][s.underlying().initial] = t.underlying().initial;
    std::deque<Index> queue{s.underlying().initial};
    while (!queue.empty()) {
        const Index u = queue.front();
        queue.pop_front();
        for (Index e : s_out[u]) {
            auto lab = labels.find(s.underlying().label(e));
            if (lab == labels.end())
                return std::nullopt;
            auto it = t_edges.find({f.cells[0][u], lab->second});
            if (it == t_edges.end())
                return std::nullopt;
            f.cells[1][e] = it->second;
            const Index w = ps.face(1, e, 1, 1);
            const Index image = pt.face(1, it->second, 1, 1);
            if (f.cells[0][w] == npos) {
                f.cells[0][w] = image;
                queue.push_back(w);
            } else if (f.cells[0][w] != image) {
                return std::nullopt;
            }
        }
    }
    for (const auto& level : f.cells)
        if (std::find(level.begin(), level.end(), npos) != level.end())
            return std::nullopt;
    if (!check_lts_isomorphism(f, s, t).ok())
        return std::nullopt;
    return f;
}

} // namespace hdam
