#pragma once

// Higher-dimensional automata: a labeling layer over precubical sets,
// structural predicates, morphisms, tensor product and coproduct.

#include "hdam/label.hpp"
#include "hdam/pcs.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace hdam {

/// Accumulates human-readable findings; empty means the check passed.
struct Report {
    std::vector<std::string> issues;

    [[nodiscard]] bool ok() const { return issues.empty(); }
    void add(std::string s) { issues.push_back(std::move(s)); }
    void merge(const Report& other, const std::string& prefix = {})
    {
        for (const auto& s : other.issues)
            issues.push_back(prefix + s);
    }
};

struct Hda {
    PrecubicalSet cells;
    Index initial = 0;
    std::set<Index> finals;
    Alphabet alphabet;
    std::vector<Label> labels; // one per edge

    [[nodiscard]] const Label& label(Index edge) const { return labels[edge]; }

    friend bool operator==(const Hda&, const Hda&) = default;
};

inline Report validate_hda(const Hda& a)
{
    Report r;
    for (const FaceViolation& v : validate(a.cells))
        r.add(v.describe());
    if (a.cells.count(0) == 0)
        r.add("no vertices, so no initial state");
    else if (a.initial >= a.cells.count(0))
        r.add("initial state " + std::to_string(a.initial) + " is not a vertex");
    for (Index f : a.finals) {
        if (f >= a.cells.count(0))
            r.add("final state " + std::to_string(f) + " is not a vertex");
    }
    if (a.labels.size() != a.cells.count(1)) {
        r.add("labeling covers " + std::to_string(a.labels.size()) + " of "
              + std::to_string(a.cells.count(1)) + " edges");
        return r;
    }
    for (Index e = 0; e < a.labels.size(); ++e) {
        if (!a.alphabet.contains(a.labels[e]))
            r.add("edge " + std::to_string(e) + " carries label " + to_string(a.labels[e])
                  + " outside the alphabet");
    }
    for (Index x = 0; x < a.cells.count(2); ++x) {
        for (std::size_t i = 1; i <= 2; ++i) {
            const Label& front = a.label(a.cells.face(2, x, 0, i));
            const Label& back = a.label(a.cells.face(2, x, 1, i));
            if (front != back)
                r.add("2-cell " + std::to_string(x) + ": d^0_" + std::to_string(i) + " is labeled "
                      + to_string(front) + " but d^1_" + std::to_string(i) + " is labeled "
                      + to_string(back));
        }
    }
    return r;
}

/// Outcome of a structural predicate, with a counterexample when it fails.
struct EdgePredicate {
    bool holds = true;
    std::optional<std::pair<Index, Index>> witness;

    explicit operator bool() const { return holds; }
};

/// No two distinct edges share label, start and end.
inline EdgePredicate is_extensional(const Hda& a)
{
    std::map<std::tuple<Index, Index, Label>, Index> seen;
    for (Index e = 0; e < a.cells.count(1); ++e) {
        auto key = std::make_tuple(a.cells.face(1, e, 0, 1), a.cells.face(1, e, 1, 1), a.label(e));
        auto [it, fresh] = seen.emplace(std::move(key), e);
        if (!fresh)
            return {false, std::make_pair(it->second, e)};
    }
    return {};
}

/// Edges are determined by their start and label.
inline EdgePredicate is_deterministic(const Hda& a)
{
    std::map<std::pair<Index, Label>, Index> seen;
    for (Index e = 0; e < a.cells.count(1); ++e) {
        auto [it, fresh] = seen.emplace(std::make_pair(a.cells.face(1, e, 0, 1), a.label(e)), e);
        if (!fresh)
            return {false, std::make_pair(it->second, e)};
    }
    return {};
}

inline Hda skeleton(const Hda& a, std::size_t n)
{
    Hda out = a;
    out.cells = truncate(a.cells, n);
    if (n == 0)
        out.labels.clear();
    return out;
}

struct HdaMorphism {
    std::vector<std::vector<Index>> cells; // cells[n][x] is the image of the n-cell x
    std::map<Label, Label> labels;

    [[nodiscard]] Index operator()(std::size_t n, Index x) const { return cells[n][x]; }

    friend bool operator==(const HdaMorphism&, const HdaMorphism&) = default;
};

inline HdaMorphism identity_morphism(const Hda& a)
{
    HdaMorphism f;
    f.cells.resize(a.cells.levels());
    for (std::size_t n = 0; n < a.cells.levels(); ++n) {
        f.cells[n].resize(a.cells.count(n));
        for (Index x = 0; x < a.cells.count(n); ++x)
            f.cells[n][x] = x;
    }
    for (const Label& l : a.alphabet)
        f.labels.emplace(l, l);
    return f;
}

/// g after f.
inline HdaMorphism compose(const HdaMorphism& g, const HdaMorphism& f)
{
    HdaMorphism h;
    h.cells.resize(f.cells.size());
    for (std::size_t n = 0; n < f.cells.size(); ++n) {
        h.cells[n].reserve(f.cells[n].size());
        for (Index y : f.cells[n])
            h.cells[n].push_back(g.cells.at(n).at(y));
    }
    for (const auto& [from, to] : f.labels)
        h.labels.emplace(from, g.labels.at(to));
    return h;
}

/// Verifies that f : A -> B commutes with faces, preserves initial and final
/// states, and satisfies lambda_B(f(e)) = sigma(lambda_A(e)).
inline Report check_morphism(const HdaMorphism& f, const Hda& a, const Hda& b)
{
    Report r;
    if (f.cells.size() < a.cells.levels()) {
        r.add("cell map stops at degree " + std::to_string(f.cells.size()));
        return r;
    }
    for (std::size_t n = 0; n < a.cells.levels(); ++n) {
        if (f.cells[n].size() != a.cells.count(n)) {
            r.add("cell map is not total in degree " + std::to_string(n));
            return r;
        }
        for (Index x = 0; x < a.cells.count(n); ++x) {
            if (f.cells[n][x] >= b.cells.count(n)) {
                r.add("image of " + to_string(CellId{n, x}) + " is not a cell of the target");
                return r;
            }
        }
    }
    for (std::size_t n = 1; n < a.cells.levels(); ++n) {
        for (Index x = 0; x < a.cells.count(n); ++x) {
            for (std::size_t i = 1; i <= n; ++i) {
                for (int k = 0; k <= 1; ++k) {
                    if (f(n - 1, a.cells.face(n, x, k, i)) != b.cells.face(n, f(n, x), k, i))
                        r.add("f does not commute with d^" + std::to_string(k) + "_" + std::to_string(i)
                              + " at " + to_string(CellId{n, x}));
                }
            }
        }
    }
    if (a.cells.count(0) > 0 && f(0, a.initial) != b.initial)
        r.add("initial state is not preserved");
    for (Index v : a.finals) {
        if (!b.finals.contains(f(0, v)))
            r.add("final state " + std::to_string(v) + " maps outside the final states");
    }
    for (const Label& l : a.alphabet) {
        auto it = f.labels.find(l);
        if (it == f.labels.end())
            r.add("label map undefined on " + to_string(l));
        else if (!b.alphabet.contains(it->second))
            r.add("label map sends " + to_string(l) + " outside the target alphabet");
    }
    for (Index e = 0; e < a.cells.count(1); ++e) {
        auto it = f.labels.find(a.label(e));
        if (it == f.labels.end())
            continue;
        if (b.label(f(1, e)) != it->second)
            r.add("edge " + std::to_string(e) + ": labeling does not commute (expected "
                  + to_string(it->second) + ", found " + to_string(b.label(f(1, e))) + ")");
    }
    return r;
}

/// Bijective in every degree (both sides must have the same f-vector).
inline bool is_bijective(const HdaMorphism& f, const Hda& a, const Hda& b)
{
    if (a.cells.f_vector() != b.cells.f_vector())
        return false;
    for (std::size_t n = 0; n < a.cells.levels(); ++n) {
        std::vector<char> hit(b.cells.count(n), 0);
        for (Index y : f.cells[n]) {
            if (y >= hit.size() || hit[y])
                return false;
            hit[y] = 1;
        }
    }
    std::set<Label> images;
    for (const auto& [from, to] : f.labels)
        images.insert(to);
    return images.size() == a.alphabet.size() && images == b.alphabet;
}

/// B is a subautomaton of A along the injective inclusion f.
inline Report check_subautomaton(const HdaMorphism& inclusion, const Hda& sub, const Hda& super)
{
    Report r = check_morphism(inclusion, sub, super);
    for (const auto& [from, to] : inclusion.labels) {
        if (from != to)
            r.add("inclusion must be the identity on labels, moves " + to_string(from));
    }
    for (std::size_t n = 0; n < inclusion.cells.size(); ++n) {
        std::set<Index> seen(inclusion.cells[n].begin(), inclusion.cells[n].end());
        if (seen.size() != inclusion.cells[n].size())
            r.add("inclusion is not injective in degree " + std::to_string(n));
    }
    if (r.ok() && sub.cells.count(0) > 0 && inclusion(0, sub.initial) != super.initial)
        r.add("initial states differ");
    return r;
}

struct TensorHda {
    Hda hda;
    TensorProduct layout;
};

/// A (x) B. Labels of the left factor are tagged 'L', of the right one 'R'.
inline TensorHda tensor_hda_with_layout(const Hda& a, const Hda& b)
{
    TensorHda out;
    out.layout = tensor(a.cells, b.cells);
    Hda& h = out.hda;
    h.cells = out.layout.cells;
    h.alphabet = tag_alphabets(a.alphabet, b.alphabet);
    if (a.cells.empty() || b.cells.empty())
        return out;
    h.initial = out.layout.cell({0, a.initial}, {0, b.initial});
    for (Index fa : a.finals)
        for (Index fb : b.finals)
            h.finals.insert(out.layout.cell({0, fa}, {0, fb}));
    h.labels.reserve(h.cells.count(1));
    for (Index e = 0; e < h.cells.count(1); ++e) {
        const TensorCell c = out.layout.origin(1, e);
        h.labels.push_back(c.left_dim == 1 ? tag_left(a.label(c.left)) : tag_right(b.label(c.right)));
    }
    return out;
}

inline Hda tensor_hda(const Hda& a, const Hda& b)
{
    return tensor_hda_with_layout(a, b).hda;
}

/// One-vertex HDA with that vertex initial and final; the tensor unit.
inline Hda unit_hda()
{
    Hda u;
    u.cells = PrecubicalSet::with_vertices(1);
    u.finals = {0};
    return u;
}

/// Where the cells of A + B live: left[n][x] is the index of (x, I_B),
/// right[n][y] the index of (I_A, y).
struct CoproductHda {
    Hda hda;
    std::vector<std::vector<Index>> left;
    std::vector<std::vector<Index>> right;
};

/// A + B as the wedge of A and B along their initial states, realised as
/// the cells ({I_A} x B_m) u (A_m x {I_B}) of the tensor product. In each
/// degree the A-side cells come first, then the B-side ones; the shared
/// basepoint keeps its A-side index.
inline CoproductHda coproduct_hda_with_layout(const Hda& a, const Hda& b)
{
    if (a.cells.empty() || b.cells.empty())
        throw Error(ErrorKind::argument, "coproduct_hda: both operands need an initial state");
    CoproductHda out;
    Hda& h = out.hda;
    const std::size_t top = std::max(a.cells.levels(), b.cells.levels());
    out.left.resize(top);
    out.right.resize(top);
    for (Index x = 0; x < a.cells.count(0); ++x)
        out.left[0].push_back(h.cells.add_vertex());
    for (Index y = 0; y < b.cells.count(0); ++y)
        out.right[0].push_back(y == b.initial ? out.left[0][a.initial] : h.cells.add_vertex());
    std::vector<Index> front;
    std::vector<Index> back;
    for (std::size_t n = 1; n < top; ++n) {
        front.resize(n);
        back.resize(n);
        for (Index x = 0; x < a.cells.count(n); ++x) {
            for (std::size_t i = 1; i <= n; ++i) {
                front[i - 1] = out.left[n - 1][a.cells.face(n, x, 0, i)];
                back[i - 1] = out.left[n - 1][a.cells.face(n, x, 1, i)];
            }
            out.left[n].push_back(h.cells.add_cell(front, back));
        }
        for (Index y = 0; y < b.cells.count(n); ++y) {
            for (std::size_t i = 1; i <= n; ++i) {
                front[i - 1] = out.right[n - 1][b.cells.face(n, y, 0, i)];
                back[i - 1] = out.right[n - 1][b.cells.face(n, y, 1, i)];
            }
            out.right[n].push_back(h.cells.add_cell(front, back));
        }
    }
    h.initial = out.left[0][a.initial];
    for (Index f : a.finals)
        h.finals.insert(out.left[0][f]);
    for (Index f : b.finals)
        h.finals.insert(out.right[0][f]);
    h.alphabet = tag_alphabets(a.alphabet, b.alphabet);
    for (Index e = 0; e < a.cells.count(1); ++e)
        h.labels.push_back(tag_left(a.label(e)));
    for (Index e = 0; e < b.cells.count(1); ++e)
        h.labels.push_back(tag_right(b.label(e)));
    return out;
}

inline Hda coproduct_hda(const Hda& a, const Hda& b)
{
    return coproduct_hda_with_layout(a, b).hda;
}

} // namespace hdam
