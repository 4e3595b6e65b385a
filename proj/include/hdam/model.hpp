#pragma once

// HDA models of transition systems: the 2-truncated filling of independence
// squares followed by iterative filling of compatible face families, plus
// the model conditions, a brute-force oracle and the canonical morphisms.

#include "hdam/lts.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <optional>
#include <thread>
#include <unordered_map>

namespace hdam {

/// A compatible boundary for an m-cell. faces[2(i-1)+k] is x^k_i, so the
/// tuple reads (x^0_1, x^1_1, ..., x^0_m, x^1_m). Lexicographic order on
/// this tuple fixes the index of the filler in a model.
struct FaceFamily {
    std::size_t m = 0;
    std::vector<Index> faces;

    [[nodiscard]] Index at(int k, std::size_t i) const { return faces[2 * (i - 1) + k]; }

    auto operator<=>(const FaceFamily&) const = default;
};

inline std::string to_string(const FaceFamily& f)
{
    std::string s = "[";
    for (std::size_t i = 1; i <= f.m; ++i) {
        for (int k = 0; k <= 1; ++k) {
            if (s.size() > 1)
                s += ", ";
            s += "x^" + std::to_string(k) + "_" + std::to_string(i) + "=" + std::to_string(f.at(k, i));
        }
    }
    return s + "]";
}

inline FaceFamily family_of(const PrecubicalSet& p, std::size_t m, Index x)
{
    FaceFamily f{m, std::vector<Index>(2 * m)};
    for (std::size_t i = 1; i <= m; ++i)
        for (int k = 0; k <= 1; ++k)
            f.faces[2 * (i - 1) + k] = p.face(m, x, k, i);
    return f;
}

/// d^k_i x^l_j = d^l_{j-1} x^k_i for i < j, checked in degree m-1 of p.
inline bool is_compatible(const PrecubicalSet& p, const FaceFamily& f)
{
    const std::size_t n = f.m - 1;
    if (n == 0)
        return true;
    for (std::size_t j = 2; j <= f.m; ++j)
        for (std::size_t i = 1; i < j; ++i)
            for (int k = 0; k <= 1; ++k)
                for (int l = 0; l <= 1; ++l)
                    if (p.face(n, f.at(l, j), k, i) != p.face(n, f.at(k, i), l, j - 1))
                        return false;
    return true;
}

inline FaceFamily family_of(const IndependenceSquare& s)
{
    return {2, {s.x01, s.x11, s.x02, s.x12}};
}

inline Index add_filler(PrecubicalSet& p, const FaceFamily& f)
{
    std::vector<Index> front(f.m);
    std::vector<Index> back(f.m);
    for (std::size_t i = 1; i <= f.m; ++i) {
        front[i - 1] = f.at(0, i);
        back[i - 1] = f.at(1, i);
    }
    return p.add_cell(front, back);
}

enum class EnumerationOrder { forward, reverse };

struct DimensionStat {
    std::size_t m = 0;
    std::size_t cells = 0;
    double millis = 0;
};

struct ModelOptions {
    EnumerationOrder order = EnumerationOrder::forward;
    unsigned workers = 1;
    std::vector<DimensionStat>* log = nullptr;
};

namespace detail {

inline std::vector<FaceFamily> existing_families(const PrecubicalSet& p, std::size_t m)
{
    std::vector<FaceFamily> out;
    out.reserve(p.count(m));
    for (Index x = 0; x < p.count(m); ++x)
        out.push_back(family_of(p, m, x));
    std::sort(out.begin(), out.end());
    return out;
}

// index[k][pos-1][v]: the n-cells y with d^k_pos y = v
using FaceIndex = std::vector<std::vector<std::vector<std::vector<Index>>>>;

inline FaceIndex build_face_index(const PrecubicalSet& p, std::size_t n)
{
    FaceIndex idx(2, std::vector<std::vector<std::vector<Index>>>(n));
    for (int k = 0; k <= 1; ++k)
        for (std::size_t pos = 1; pos <= n; ++pos)
            idx[k][pos - 1].resize(p.count(n - 1));
    for (Index y = 0; y < p.count(n); ++y)
        for (int k = 0; k <= 1; ++k)
            for (std::size_t pos = 1; pos <= n; ++pos)
                idx[k][pos - 1][p.face(n, y, k, pos)].push_back(y);
    return idx;
}

class FamilySearch {
public:
    FamilySearch(const PrecubicalSet& p, std::size_t m, const FaceIndex& idx, EnumerationOrder order)
        : p_(p), m_(m), n_(m - 1), idx_(idx), order_(order), fam_{m, std::vector<Index>(2 * m)}
    {
    }

    void run_from(Index top, std::vector<FaceFamily>& out)
    {
        out_ = &out;
        set(0, m_, top);
        choose(m_ - 1, 0);
    }

private:
    void set(int k, std::size_t i, Index v) { fam_.faces[2 * (i - 1) + k] = v; }
    Index get(int k, std::size_t i) const { return fam_.at(k, i); }

    template <class F>
    void each(const std::vector<Index>& cands, F&& f)
    {
        if (order_ == EnumerationOrder::forward) {
            for (Index y : cands)
                f(y);
        } else {
            for (auto it = cands.rbegin(); it != cands.rend(); ++it)
                f(*it);
        }
    }

    // slot x^k_i, 1 <= i < m; faces x^l_j for j > i are fixed
    void choose(std::size_t i, int k)
    {
        if (i == 0) {
            close();
            return;
        }
        const Index want = p_.face(n_, get(0, m_), k, i);
        each(idx_[0][n_ - 1][want], [&](Index y) {
            for (std::size_t j = i + 1; j < m_; ++j)
                for (int l = 0; l <= 1; ++l)
                    if (p_.face(n_, get(l, j), k, i) != p_.face(n_, y, l, j - 1))
                        return;
            set(k, i, y);
            if (k == 0)
                choose(i, 1);
            else
                choose(i - 1, 0);
        });
    }

    void close()
    {
        const Index want = p_.face(n_, get(0, 1), 1, n_);
        each(idx_[0][0][want], [&](Index y) {
            for (std::size_t i = 1; i < m_; ++i)
                for (int k = 0; k <= 1; ++k)
                    if (p_.face(n_, y, k, i) != p_.face(n_, get(k, i), 1, n_))
                        return;
            set(1, m_, y);
            out_->push_back(fam_);
        });
    }

    const PrecubicalSet& p_;
    std::size_t m_;
    std::size_t n_;
    const FaceIndex& idx_;
    EnumerationOrder order_;
    FaceFamily fam_;
    std::vector<FaceFamily>* out_ = nullptr;
};

} // namespace detail

/// Compatible face families over the (m-1)-cells of A that have no filler
/// in A yet, sorted. For m = 2 these are the independence squares of T
/// (which carry the label conditions); for m >= 3 compatibility suffices.
inline std::vector<FaceFamily> fill_dimension(const Hda& a, std::size_t m, const LtsSystem& t,
                                              const ModelOptions& opts = {})
{
    if (m < 2)
        throw Error(ErrorKind::argument, "fill_dimension needs m >= 2");
    std::vector<FaceFamily> found;
    if (m == 2) {
        for (const IndependenceSquare& s : independence_squares(a, t.relation()))
            found.push_back(family_of(s));
        if (opts.order == EnumerationOrder::reverse)
            std::reverse(found.begin(), found.end());
    } else if (a.cells.count(m - 1) > 0) {
        const PrecubicalSet& p = a.cells;
        const std::size_t n = m - 1;
        const detail::FaceIndex idx = detail::build_face_index(p, n);
        std::vector<Index> tops(p.count(n));
        for (Index y = 0; y < tops.size(); ++y)
            tops[y] = y;
        if (opts.order == EnumerationOrder::reverse)
            std::reverse(tops.begin(), tops.end());

        const unsigned workers = std::max(1u, std::min<unsigned>(opts.workers, tops.size()));
        std::vector<std::vector<FaceFamily>> partial(workers);
        auto work = [&](unsigned w) {
            detail::FamilySearch search(p, m, idx, opts.order);
            for (std::size_t c = w; c < tops.size(); c += workers)
                search.run_from(tops[c], partial[w]);
        };
        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back(work, w);
            for (auto& th : pool)
                th.join();
        }
        for (auto& part : partial)
            found.insert(found.end(), part.begin(), part.end());
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    const auto have = detail::existing_families(a.cells, m);
    std::vector<FaceFamily> fresh;
    std::set_difference(found.begin(), found.end(), have.begin(), have.end(), std::back_inserter(fresh));
    return fresh;
}

/// Labels that occur on edges of independence squares.
inline Alphabet square_labels(const LtsSystem& t)
{
    Alphabet out;
    for (const IndependenceSquare& s : independence_squares(t))
        for (Index e : {s.x01, s.x11, s.x02, s.x12})
            out.insert(t.underlying().label(e));
    return out;
}

/// A label alpha on a square edge with alpha |x alpha, if any. Its presence
/// means cubes exist in every dimension.
inline std::optional<Label> reflexive_square_label(const LtsSystem& t)
{
    for (const Label& l : square_labels(t))
        if (t.related(l, l))
            return l;
    return std::nullopt;
}

/// The HDA model of T. Cells of degree <= 2 are those of Psi(T); each
/// higher degree gets one cell per compatible face family, indexed in
/// lexicographic order of the family. Stops at the first empty degree or
/// at max_dim.
inline Hda hda_model(const LtsSystem& t, std::optional<std::size_t> max_dim = std::nullopt,
                     const ModelOptions& opts = {})
{
    if (max_dim && *max_dim < 1)
        throw Error(ErrorKind::argument, "max_dim must be at least 1");
    if (!max_dim) {
        if (auto l = reflexive_square_label(t))
            throw Error(ErrorKind::termination_guard,
                        "label " + to_string(*l)
                            + " lies on an independence square and is related to itself; the model "
                              "has cubes in every dimension, so a maximum dimension is required");
    }
    using clock = std::chrono::steady_clock;
    Hda a = t.underlying();
    for (std::size_t m = 2; !max_dim || m <= *max_dim; ++m) {
        const auto start = clock::now();
        const auto families = fill_dimension(a, m, t, opts);
        for (const FaceFamily& f : families)
            add_filler(a.cells, f);
        if (opts.log)
            opts.log->push_back(
                {m, families.size(),
                 std::chrono::duration<double, std::milli>(clock::now() - start).count()});
        if (families.empty())
            break;
    }
    return a;
}

struct Verdict {
    bool pass = true;
    std::string witness;
};

struct HmReport {
    Verdict hm1;
    Verdict hm2;
    Verdict hm3;
    Verdict hm4;
    std::optional<FaceFamily> hm4_family;

    [[nodiscard]] bool ok() const { return hm1.pass && hm2.pass && hm3.pass && hm4.pass; }
};

/// Checks the four model conditions of A with respect to T. HM4 runs one
/// saturation pass in each degree up to one past the first empty degree,
/// or up to max_dim when given.
inline HmReport check_hm(const Hda& a, const LtsSystem& t, std::optional<std::size_t> max_dim = std::nullopt)
{
    HmReport r;
    if (Report v = validate_hda(a); !v.ok()) {
        r.hm1 = {false, "not an HDA: " + v.issues.front()};
        r.hm2 = r.hm3 = r.hm4 = {false, "not checked"};
        return r;
    }
    const Hda low = skeleton(a, 1);
    if (low != t.underlying()) {
        std::string why = "1-skeleton differs from the transition system";
        if (low.cells != t.cells())
            why = "cells of degree <= 1 differ from the transition system";
        else if (low.labels != t.underlying().labels)
            why = "edge labels differ from the transition system";
        else if (low.initial != t.underlying().initial)
            why = "initial state differs";
        else if (low.finals != t.underlying().finals)
            why = "final states differ";
        else if (low.alphabet != t.alphabet())
            why = "alphabet differs";
        r.hm1 = {false, why};
    }
    for (Index x = 0; x < a.cells.count(2); ++x) {
        const Label& alpha = a.label(a.cells.face(2, x, 0, 2));
        const Label& beta = a.label(a.cells.face(2, x, 0, 1));
        if (!t.related(alpha, beta)) {
            r.hm2 = {false, "2-cell " + std::to_string(x) + ": " + to_string(alpha) + " is not related to "
                                + to_string(beta)};
            break;
        }
    }
    for (std::size_t m = 2; m < a.cells.levels() && r.hm3.pass; ++m) {
        std::map<FaceFamily, Index> seen;
        for (Index x = 0; x < a.cells.count(m); ++x) {
            auto [it, fresh] = seen.emplace(family_of(a.cells, m, x), x);
            if (!fresh) {
                r.hm3 = {false, "cells " + to_string(CellId{m, it->second}) + " and " + to_string(CellId{m, x})
                                    + " share all faces"};
                break;
            }
        }
    }
    if (!r.hm1.pass) {
        r.hm4 = {false, "not checked: HM1 fails"};
        return r;
    }
    std::size_t top = 0;
    if (max_dim) {
        top = *max_dim;
    } else {
        std::size_t first_empty = 2;
        while (a.cells.count(first_empty) > 0)
            ++first_empty;
        top = first_empty + 1;
    }
    for (std::size_t m = 2; m <= top; ++m) {
        if (a.cells.count(m - 1) == 0)
            break;
        auto missing = fill_dimension(a, m, t);
        if (!missing.empty()) {
            r.hm4 = {false, "degree " + std::to_string(m) + " family without filler: " + to_string(missing.front())};
            r.hm4_family = missing.front();
            break;
        }
    }
    return r;
}

/// All labelings of the vertices and edges of the standard m-cube by states
/// and edges of T such that every 2-face is an independence square.
/// Exhaustive, for tiny inputs only.
inline std::set<CubeSkeletonMap> brute_force_coskeleton(const LtsSystem& t, std::size_t m)
{
    if (m < 2)
        throw Error(ErrorKind::argument, "brute_force_coskeleton needs m >= 2");
    const PrecubicalSet& p = t.cells();
    const Hda& u = t.underlying();
    std::vector<std::vector<Index>> out_edges(p.count(0));
    for (Index e = 0; e < p.count(1); ++e)
        out_edges[p.face(1, e, 0, 1)].push_back(e);

    const std::uint64_t corners = std::uint64_t{1} << m;
    CubeSkeletonMap cur;
    cur.m = m;
    cur.vertices.assign(corners, npos);
    cur.edges.assign(m * (corners >> 1), npos);

    // work list: (corner, direction) with the direction bit clear, by corner
    std::vector<std::pair<std::uint64_t, std::size_t>> slots;
    for (std::uint64_t b = 0; b < corners; ++b)
        for (std::size_t i = 1; i <= m; ++i)
            if (!(b & (std::uint64_t{1} << (i - 1))))
                slots.emplace_back(b, i);

    auto face_ok = [&](std::size_t i, std::size_t j, std::uint64_t c) {
        const std::uint64_t bi = std::uint64_t{1} << (i - 1);
        const std::uint64_t bj = std::uint64_t{1} << (j - 1);
        const Index lo_i = cur.edge(i, c);
        const Index hi_i = cur.edge(i, c | bj);
        const Index lo_j = cur.edge(j, c);
        const Index hi_j = cur.edge(j, c | bi);
        if (lo_i == npos || hi_i == npos || lo_j == npos || hi_j == npos)
            return true;
        return u.label(lo_i) == u.label(hi_i) && u.label(lo_j) == u.label(hi_j)
               && t.related(u.label(lo_i), u.label(lo_j));
    };

    std::set<CubeSkeletonMap> out;
    std::function<void(std::size_t)> step = [&](std::size_t s) {
        if (s == slots.size()) {
            out.insert(cur);
            return;
        }
        const auto [b, i] = slots[s];
        const std::uint64_t bit = std::uint64_t{1} << (i - 1);
        const std::size_t slot = CubeSkeletonMap::edge_slot(m, i, b);
        for (Index e : out_edges[cur.vertices[b]]) {
            const Index w = p.face(1, e, 1, 1);
            const bool fresh = cur.vertices[b | bit] == npos;
            if (!fresh && cur.vertices[b | bit] != w)
                continue;
            cur.edges[slot] = e;
            if (fresh)
                cur.vertices[b | bit] = w;
            bool ok = true;
            for (std::size_t j = 1; j <= m && ok; ++j) {
                if (j == i)
                    continue;
                const std::uint64_t bj = std::uint64_t{1} << (j - 1);
                const std::uint64_t c = b & ~bj;
                ok = i < j ? face_ok(i, j, c) : face_ok(j, i, c & ~bit);
            }
            if (ok)
                step(s + 1);
            cur.edges[slot] = npos;
            if (fresh)
                cur.vertices[b | bit] = npos;
        }
    };
    for (Index v = 0; v < p.count(0); ++v) {
        cur.vertices[0] = v;
        step(0);
    }
    return out;
}

/// Extends a morphism of transition systems S -> T (given on cells of
/// degree <= 1 and on labels) to A -> B, where A satisfies HM1 and HM2 for
/// S and B is a model of T. Each m-cell goes to the unique filler of the
/// image of its boundary.
inline HdaMorphism extend_morphism(const HdaMorphism& f, const LtsSystem& s, const LtsSystem& t, const Hda& a,
                                   const Hda& b, bool check_hypotheses = true,
                                   std::optional<std::size_t> max_dim = std::nullopt)
{
    if (check_hypotheses) {
        if (Report r = check_lts_morphism(f, s, t); !r.ok())
            throw Error(ErrorKind::hypothesis, "not a morphism of transition systems: " + r.issues.front());
        const HmReport ra = check_hm(a, s);
        if (!ra.hm1.pass || !ra.hm2.pass)
            throw Error(ErrorKind::hypothesis,
                        "source fails " + std::string(ra.hm1.pass ? "HM2: " + ra.hm2.witness : "HM1: " + ra.hm1.witness));
        const HmReport rb = check_hm(b, t, max_dim);
        if (!rb.ok()) {
            const Verdict* bad = !rb.hm1.pass ? &rb.hm1 : !rb.hm2.pass ? &rb.hm2 : !rb.hm3.pass ? &rb.hm3 : &rb.hm4;
            throw Error(ErrorKind::hypothesis, "target is not a model: " + bad->witness);
        }
    }
    HdaMorphism g;
    g.labels = f.labels;
    g.cells.resize(a.cells.levels());
    for (std::size_t n = 0; n < std::min<std::size_t>(2, a.cells.levels()); ++n)
        g.cells[n] = f.cells.at(n);
    for (std::size_t m = 2; m < a.cells.levels(); ++m) {
        std::map<FaceFamily, Index> fillers;
        for (Index y = 0; y < b.cells.count(m); ++y)
            fillers.emplace(family_of(b.cells, m, y), y);
        for (Index x = 0; x < a.cells.count(m); ++x) {
            FaceFamily img = family_of(a.cells, m, x);
            for (Index& face : img.faces)
                face = g.cells[m - 1][face];
            auto it = fillers.find(img);
            if (it == fillers.end())
                throw Error(ErrorKind::contradiction, "no filler in the target for the image of "
                                                          + to_string(CellId{m, x}) + ": " + to_string(img));
            g.cells[m].push_back(it->second);
        }
    }
    return g;
}

/// The unique morphism A -> B that is the identity on U(T); for two models
/// of T it is an isomorphism.
inline HdaMorphism canonical_iso(const Hda& a, const Hda& b, const LtsSystem& t,
                                 std::optional<std::size_t> max_dim = std::nullopt)
{
    for (const Hda* h : {&a, &b}) {
        const HmReport r = check_hm(*h, t, max_dim);
        if (!r.ok())
            throw Error(ErrorKind::hypothesis,
                        std::string(h == &a ? "first" : "second") + " argument is not a model: "
                            + (!r.hm1.pass ? r.hm1.witness : !r.hm2.pass ? r.hm2.witness
                                             : !r.hm3.pass ? r.hm3.witness : r.hm4.witness));
    }
    HdaMorphism f = extend_morphism(counit(t), t, t, a, b, false);
    if (Report r = check_morphism(f, a, b); !r.ok())
        throw Error(ErrorKind::contradiction, "canonical map is not a morphism: " + r.issues.front());
    if (!is_bijective(f, a, b))
        throw Error(ErrorKind::contradiction, "canonical map is not bijective");
    return f;
}

/// Edges of an n-cell leaving its bottom corner, in direction order.
inline std::vector<Index> bottom_edges(const PrecubicalSet& p, CellId x)
{
    std::vector<Index> out;
    for (std::size_t i = 1; i <= x.dim; ++i)
        out.push_back(collapse_to(p, x.dim, x.index, 0, std::uint64_t{1} << (i - 1)));
    return out;
}

/// Every n-cell with bottom corner v whose bottom edges carry exactly the
/// given labels. Plain scan, no hypotheses.
inline std::vector<Index> cube_candidates(const Hda& a, Index v, const std::set<Label>& labels)
{
    const std::size_t n = labels.size();
    std::vector<Index> out;
    for (Index x = 0; x < a.cells.count(n); ++x) {
        if (collapse_to(a.cells, n, x, 0, 0) != v)
            continue;
        std::set<Label> seen;
        for (Index e : bottom_edges(a.cells, {n, x}))
            seen.insert(a.label(e));
        if (seen == labels)
            out.push_back(x);
    }
    return out;
}

/// The n-cell with bottom corner v and bottom-edge labels `labels`, for an
/// HDA over a deterministic T with asymmetric relation. Each label picks
/// its unique edge at v, the edges are ordered along the relation, and the
/// cell with those bottom edges is returned.
inline std::optional<CellId> unique_cube_lookup(const Hda& a, const LtsSystem& t, Index v,
                                                const std::set<Label>& labels)
{
    if (auto d = is_deterministic_lts(t); !d) {
        auto [e, f] = *d.witness;
        throw Error(ErrorKind::hypothesis, "transition system is not deterministic: edges " + std::to_string(e)
                                               + " and " + std::to_string(f));
    }
    if (auto as = is_asymmetric(t.relation()); !as)
        throw Error(ErrorKind::hypothesis, "relation is not asymmetric: (" + to_string(as.witness->first) + ", "
                                               + to_string(as.witness->second) + ")");
    if (v >= a.cells.count(0))
        throw Error(ErrorKind::argument, "unique_cube_lookup: " + std::to_string(v) + " is not a vertex");
    const std::size_t n = labels.size();
    if (n == 0)
        return CellId{0, v};
    std::vector<std::pair<Label, Index>> edges;
    for (const Label& l : labels) {
        Index found = npos;
        for (Index e = 0; e < a.cells.count(1) && found == npos; ++e)
            if (a.cells.face(1, e, 0, 1) == v && a.label(e) == l)
                found = e;
        if (found == npos)
            return std::nullopt;
        edges.emplace_back(l, found);
    }
    if (n == 1)
        return CellId{1, edges.front().second};
    // under asymmetry the relation orders a chain in exactly one way
    std::vector<std::pair<Label, Index>> chain;
    while (!edges.empty()) {
        auto it = std::find_if(edges.begin(), edges.end(), [&](const auto& c) {
            return std::all_of(edges.begin(), edges.end(),
                               [&](const auto& o) { return o.first == c.first || t.related(c.first, o.first); });
        });
        if (it == edges.end())
            return std::nullopt;
        chain.push_back(*it);
        edges.erase(it);
    }
    std::vector<Index> want;
    for (const auto& c : chain)
        want.push_back(c.second);
    for (Index x = 0; x < a.cells.count(n); ++x)
        if (bottom_edges(a.cells, {n, x}) == want)
            return CellId{n, x};
    return std::nullopt;
}

/// Length of the longest sequence of distinct labels l_1..l_k with
/// l_i |x l_j whenever i < j.
inline std::size_t longest_chain(const Alphabet& alphabet, const Relation& rel)
{
    const std::vector<Label> ls(alphabet.begin(), alphabet.end());
    const std::size_t n = ls.size();
    if (n > 20)
        throw Error(ErrorKind::argument, "longest_chain: alphabet too large");
    // before[c]: labels p with p |x c
    std::vector<std::uint32_t> before(n, 0);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t c = 0; c < n; ++c)
            if (p != c && rel.contains({ls[p], ls[c]}))
                before[c] |= std::uint32_t{1} << p;
    std::vector<char> chain(std::size_t{1} << n, 0);
    chain[0] = 1;
    std::size_t best = 0;
    for (std::uint32_t s = 1; s < chain.size(); ++s) {
        for (std::size_t c = 0; c < n && !chain[s]; ++c) {
            const std::uint32_t bit = std::uint32_t{1} << c;
            const std::uint32_t rest = s & ~bit;
            if ((s & bit) && chain[rest] && (before[c] & rest) == rest)
                chain[s] = 1;
        }
        if (chain[s])
            best = std::max<std::size_t>(best, std::popcount(s));
    }
    return best;
}

} // namespace hdam
