#pragma once

// Precubical sets: graded cells with front/back face operators, plus the
// standard constructions on them (intervals, cubes, tensor products,
// truncation, paths).

#include "hdam/error.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace hdam {

using Index = std::size_t;
inline constexpr Index npos = std::numeric_limits<Index>::max();

/// A cell is addressed by its degree and a dense per-degree index.
struct CellId {
    std::size_t dim = 0;
    Index index = 0;

    auto operator<=>(const CellId&) const = default;
};

inline std::string to_string(CellId c)
{
    return "(" + std::to_string(c.dim) + ":" + std::to_string(c.index) + ")";
}

/// Precubical set with explicitly stored face maps.
///
/// Faces of an n-cell x are kept as two arrays of n indices into degree n-1:
/// front()[i-1] = d^0_i x and back()[i-1] = d^1_i x. The precubical relations
/// are not enforced on insertion (see validate()); only degrees and index
/// ranges are.
class PrecubicalSet {
public:
    PrecubicalSet() = default;

    static PrecubicalSet with_vertices(std::size_t n)
    {
        PrecubicalSet p;
        p.add_vertices(n);
        return p;
    }

    Index add_vertex()
    {
        if (counts_.empty())
            counts_.push_back(0);
        return counts_[0]++;
    }

    /// Adds n vertices, returning the index of the first one.
    Index add_vertices(std::size_t n)
    {
        if (counts_.empty())
            counts_.push_back(0);
        Index first = counts_[0];
        counts_[0] += n;
        return first;
    }

    /// Adds a cell of degree front.size() with the given face indices.
    Index add_cell(std::span<const Index> front, std::span<const Index> back)
    {
        const std::size_t n = front.size();
        if (n == 0)
            return add_vertex();
        if (back.size() != n)
            throw Error(ErrorKind::invalid_input, "front and back face arrays differ in length");
        if (count(n - 1) == 0)
            throw Error(ErrorKind::invalid_input,
                        "cannot add a " + std::to_string(n) + "-cell: no cells of degree "
                            + std::to_string(n - 1));
        for (std::size_t i = 0; i < n; ++i) {
            if (front[i] >= counts_[n - 1] || back[i] >= counts_[n - 1])
                throw Error(ErrorKind::invalid_input,
                            "face index out of range for a " + std::to_string(n) + "-cell");
        }
        if (counts_.size() <= n) {
            counts_.resize(n + 1, 0);
            faces_.resize(n);
        }
        auto& store = faces_[n - 1];
        store.insert(store.end(), front.begin(), front.end());
        store.insert(store.end(), back.begin(), back.end());
        return counts_[n]++;
    }

    Index add_cell(std::initializer_list<Index> front, std::initializer_list<Index> back)
    {
        return add_cell(std::span<const Index>(front.begin(), front.size()),
                        std::span<const Index>(back.begin(), back.size()));
    }

    /// Number of stored degrees; cells exist exactly in degrees < levels().
    [[nodiscard]] std::size_t levels() const { return counts_.size(); }
    [[nodiscard]] bool empty() const { return counts_.empty() || counts_[0] == 0; }

    [[nodiscard]] std::size_t count(std::size_t n) const
    {
        return n < counts_.size() ? counts_[n] : 0;
    }

    /// Cell counts per degree, without trailing zeros.
    [[nodiscard]] const std::vector<std::size_t>& f_vector() const { return counts_; }

    /// d^k_i x for an n-cell x, with 1-based i.
    [[nodiscard]] Index face(std::size_t n, Index x, int k, std::size_t i) const
    {
        return faces_[n - 1][x * 2 * n + static_cast<std::size_t>(k) * n + (i - 1)];
    }

    [[nodiscard]] std::span<const Index> front(std::size_t n, Index x) const
    {
        return {faces_[n - 1].data() + x * 2 * n, n};
    }

    [[nodiscard]] std::span<const Index> back(std::size_t n, Index x) const
    {
        return {faces_[n - 1].data() + x * 2 * n + n, n};
    }

    friend bool operator==(const PrecubicalSet&, const PrecubicalSet&) = default;

private:
    std::vector<std::size_t> counts_;
    std::vector<std::vector<Index>> faces_; // faces_[n-1]: 2n entries per n-cell
};

/// A failed precubical relation d^k_i d^l_j x = d^l_{j-1} d^k_i x.
struct FaceViolation {
    CellId cell;
    int k = 0;
    int l = 0;
    std::size_t i = 0;
    std::size_t j = 0;

    [[nodiscard]] std::string describe() const
    {
        return "cell " + to_string(cell) + ": d^" + std::to_string(k) + "_" + std::to_string(i) + " d^"
               + std::to_string(l) + "_" + std::to_string(j) + " != d^" + std::to_string(l) + "_"
               + std::to_string(j - 1) + " d^" + std::to_string(k) + "_" + std::to_string(i);
    }

    friend bool operator==(const FaceViolation&, const FaceViolation&) = default;
};

/// Reports every violated precubical relation; empty iff P is a precubical set.
inline std::vector<FaceViolation> validate(const PrecubicalSet& p)
{
    std::vector<FaceViolation> out;
    for (std::size_t n = 2; n < p.levels(); ++n) {
        for (Index x = 0; x < p.count(n); ++x) {
            for (std::size_t j = 2; j <= n; ++j) {
                for (std::size_t i = 1; i < j; ++i) {
                    for (int k = 0; k <= 1; ++k) {
                        for (int l = 0; l <= 1; ++l) {
                            Index lhs = p.face(n - 1, p.face(n, x, l, j), k, i);
                            Index rhs = p.face(n - 1, p.face(n, x, k, i), l, j - 1);
                            if (lhs != rhs)
                                out.push_back({{n, x}, k, l, i, j});
                        }
                    }
                }
            }
        }
    }
    return out;
}

/// The precubical interval [[k,l]]: vertex j is stored at index j-k and edge
/// [j-1,j] at index j-k-1.
inline PrecubicalSet interval(std::int64_t k, std::int64_t l)
{
    if (k > l)
        throw Error(ErrorKind::argument,
                    "invalid interval [" + std::to_string(k) + "," + std::to_string(l) + "]");
    const auto n = static_cast<std::size_t>(l - k);
    PrecubicalSet p = PrecubicalSet::with_vertices(n + 1);
    for (Index e = 0; e < n; ++e)
        p.add_cell({e}, {e + 1});
    return p;
}

/// Where a tensor cell comes from: (left cell of degree p, right cell).
struct TensorCell {
    std::size_t left_dim = 0;
    Index left = 0;
    Index right = 0;

    friend bool operator==(const TensorCell&, const TensorCell&) = default;
};

/// P (x) Q together with the bijection between its cells and pairs of cells.
///
/// In degree n, cells are laid out by increasing left degree p, and within
/// one block P_p x Q_{n-p} in row-major order (left index major).
struct TensorProduct {
    PrecubicalSet cells;
    std::vector<std::size_t> left_counts;
    std::vector<std::size_t> right_counts;
    std::vector<std::vector<Index>> offsets; // offsets[n][p]

    [[nodiscard]] Index cell(CellId left, CellId right) const
    {
        const std::size_t n = left.dim + right.dim;
        return offsets[n][left.dim] + left.index * count_of(right_counts, right.dim) + right.index;
    }

    [[nodiscard]] TensorCell origin(std::size_t n, Index c) const
    {
        const auto& off = offsets[n];
        std::size_t p = 0;
        while (p + 1 <= n && c >= off[p + 1])
            ++p;
        const std::size_t width = count_of(right_counts, n - p);
        const Index local = c - off[p];
        return {p, local / width, local % width};
    }

    static std::size_t count_of(const std::vector<std::size_t>& v, std::size_t n)
    {
        return n < v.size() ? v[n] : 0;
    }
};

inline TensorProduct tensor(const PrecubicalSet& p, const PrecubicalSet& q)
{
    TensorProduct t;
    t.left_counts = p.f_vector();
    t.right_counts = q.f_vector();
    if (p.empty() || q.empty())
        return t;
    const std::size_t top = p.levels() + q.levels() - 2;
    t.offsets.resize(top + 1);
    for (std::size_t n = 0; n <= top; ++n) {
        t.offsets[n].resize(n + 2);
        Index acc = 0;
        for (std::size_t a = 0; a <= n; ++a) {
            t.offsets[n][a] = acc;
            acc += p.count(a) * q.count(n - a);
        }
        t.offsets[n][n + 1] = acc;
    }
    t.cells.add_vertices(p.count(0) * q.count(0));
    std::vector<Index> front;
    std::vector<Index> back;
    for (std::size_t n = 1; n <= top; ++n) {
        front.resize(n);
        back.resize(n);
        for (std::size_t a = 0; a <= n; ++a) {
            const std::size_t b = n - a;
            for (Index x = 0; x < p.count(a); ++x) {
                for (Index y = 0; y < q.count(b); ++y) {
                    for (std::size_t i = 1; i <= n; ++i) {
                        for (int k = 0; k <= 1; ++k) {
                            Index f = i <= a ? t.cell({a - 1, p.face(a, x, k, i)}, {b, y})
                                             : t.cell({a, x}, {b - 1, q.face(b, y, k, i - a)});
                            (k == 0 ? front : back)[i - 1] = f;
                        }
                    }
                    t.cells.add_cell(front, back);
                }
            }
        }
    }
    return t;
}

/// The n-skeleton: cells of degree <= n with identical faces.
inline PrecubicalSet truncate(const PrecubicalSet& p, std::size_t n)
{
    PrecubicalSet out = PrecubicalSet::with_vertices(p.count(0));
    if (p.empty())
        return PrecubicalSet{};
    for (std::size_t d = 1; d <= n && d < p.levels(); ++d) {
        for (Index x = 0; x < p.count(d); ++x)
            out.add_cell(p.front(d, x), p.back(d, x));
    }
    return out;
}

/// The skeleton of [[0,1]]^{(x)n} truncated at up_to_dim. Cells keep the
/// layout produced by iterated tensor products.
inline PrecubicalSet standard_cube(std::size_t n, std::size_t up_to_dim)
{
    if (up_to_dim > n)
        throw Error(ErrorKind::argument, "standard_cube: up_to_dim exceeds n");
    PrecubicalSet cube = interval(0, 0);
    const PrecubicalSet unit = interval(0, 1);
    for (std::size_t r = 0; r < n; ++r)
        cube = tensor(cube, unit).cells;
    return truncate(cube, up_to_dim);
}

/// Restriction of the characteristic map of a cube to degrees <= 1.
///
/// Corners are bit masks with bit (i-1) holding coordinate i. The edge in
/// direction i at a corner (whose bit i-1 is ignored) lives in slot
/// (i-1) * 2^(m-1) + the corner with bit i-1 squeezed out.
struct CubeSkeletonMap {
    std::size_t m = 0;
    std::vector<Index> vertices;
    std::vector<Index> edges;

    static std::size_t edge_slot(std::size_t m, std::size_t i, std::uint64_t corner)
    {
        const std::uint64_t low = corner & ((std::uint64_t{1} << (i - 1)) - 1);
        const std::uint64_t high = (corner >> i) << (i - 1);
        return (i - 1) * (std::size_t{1} << (m - 1)) + static_cast<std::size_t>(low | high);
    }

    [[nodiscard]] Index vertex(std::uint64_t corner) const { return vertices[corner]; }
    [[nodiscard]] Index edge(std::size_t i, std::uint64_t corner) const
    {
        return edges[edge_slot(m, i, corner)];
    }

    auto operator<=>(const CubeSkeletonMap&) const = default;
};

/// Applies d^{bit}_j for every coordinate j not in `keep`, in descending j.
/// Returns the resulting cell of degree popcount(keep).
inline Index collapse_to(const PrecubicalSet& p, std::size_t m, Index x, std::uint64_t corner,
                         std::uint64_t keep)
{
    std::size_t dim = m;
    for (std::size_t j = m; j >= 1; --j) {
        if (keep & (std::uint64_t{1} << (j - 1)))
            continue;
        // every coordinate below j is still present, so j keeps its position
        const int k = (corner >> (j - 1)) & 1;
        x = p.face(dim, x, k, j);
        --dim;
    }
    return x;
}

/// x_sharp restricted to vertices and edges of the standard deg(x)-cube,
/// computed by iterated faces in descending index order.
inline CubeSkeletonMap skeleton_map(const PrecubicalSet& p, CellId x)
{
    const std::size_t m = x.dim;
    if (x.index >= p.count(m))
        throw Error(ErrorKind::argument, "skeleton_map: no such cell " + to_string(x));
    CubeSkeletonMap map;
    map.m = m;
    const std::uint64_t corners = std::uint64_t{1} << m;
    map.vertices.resize(corners);
    for (std::uint64_t b = 0; b < corners; ++b)
        map.vertices[b] = collapse_to(p, m, x.index, b, 0);
    if (m >= 1) {
        map.edges.resize(m * (corners >> 1));
        for (std::size_t i = 1; i <= m; ++i) {
            const std::uint64_t bit = std::uint64_t{1} << (i - 1);
            for (std::uint64_t b = 0; b < corners; ++b) {
                if (b & bit)
                    continue;
                map.edges[CubeSkeletonMap::edge_slot(m, i, b)] = collapse_to(p, m, x.index, b, bit);
            }
        }
    }
    return map;
}

/// Endpoint coherence: every edge image runs between the images of the two
/// corners it connects.
inline bool is_coherent(const PrecubicalSet& p, const CubeSkeletonMap& map)
{
    if (map.vertices.size() != (std::size_t{1} << map.m))
        return false;
    for (std::size_t i = 1; i <= map.m; ++i) {
        const std::uint64_t bit = std::uint64_t{1} << (i - 1);
        for (std::uint64_t b = 0; b < map.vertices.size(); ++b) {
            if (b & bit)
                continue;
            const Index e = map.edge(i, b);
            if (e >= p.count(1) || p.face(1, e, 0, 1) != map.vertex(b)
                || p.face(1, e, 1, 1) != map.vertex(b | bit))
                return false;
        }
    }
    return true;
}

/// A path: a chain of edges, each starting where the previous one ends.
struct Path {
    Index origin = 0;
    std::vector<Index> steps;

    [[nodiscard]] std::size_t length() const { return steps.size(); }

    friend bool operator==(const Path&, const Path&) = default;
};

inline Index endpoint(const PrecubicalSet& p, const Path& path)
{
    return path.steps.empty() ? path.origin : p.face(1, path.steps.back(), 1, 1);
}

inline bool is_path(const PrecubicalSet& p, const Path& path)
{
    if (path.origin >= p.count(0))
        return false;
    Index at = path.origin;
    for (Index e : path.steps) {
        if (e >= p.count(1) || p.face(1, e, 0, 1) != at)
            return false;
        at = p.face(1, e, 1, 1);
    }
    return true;
}

inline Path concat(const PrecubicalSet& p, const Path& a, const Path& b)
{
    if (endpoint(p, a) != b.origin)
        throw Error(ErrorKind::argument, "concat: path ends at vertex " + std::to_string(endpoint(p, a))
                                             + " but the next starts at " + std::to_string(b.origin));
    Path out = a;
    out.steps.insert(out.steps.end(), b.steps.begin(), b.steps.end());
    return out;
}

enum class Side { left = 1, right = 2 };

/// pi^side of a path in a tensor product: keeps the steps that move in the
/// chosen factor.
inline Path project_path(const TensorProduct& t, const Path& path, Side side)
{
    const TensorCell o = t.origin(0, path.origin);
    Path out;
    out.origin = side == Side::left ? o.left : o.right;
    for (Index e : path.steps) {
        const TensorCell c = t.origin(1, e);
        if (side == Side::left && c.left_dim == 1)
            out.steps.push_back(c.left);
        else if (side == Side::right && c.left_dim == 0)
            out.steps.push_back(c.right);
    }
    return out;
}

/// Right inverse of (pi^1, pi^2): runs the left path first, then the right
/// one at the left path's endpoint.
inline Path interleave_paths(const TensorProduct& t, const PrecubicalSet& left, const Path& a,
                             const Path& b)
{
    Path out;
    out.origin = t.cell({0, a.origin}, {0, b.origin});
    for (Index e : a.steps)
        out.steps.push_back(t.cell({1, e}, {0, b.origin}));
    const Index w = endpoint(left, a);
    for (Index f : b.steps)
        out.steps.push_back(t.cell({0, w}, {1, f}));
    return out;
}

/// Sub-precubical set spanned by the reachable vertices, with maps from new
/// indices back to the original ones.
struct Restriction {
    PrecubicalSet cells;
    std::vector<Index> vertices;
    std::vector<Index> edges;
};

/// Largest precubical subset of a 1-truncated P whose vertices are reachable
/// from v. Relative order of retained cells is preserved.
inline Restriction reachable_restriction(const PrecubicalSet& p, Index v)
{
    if (p.levels() > 2)
        throw Error(ErrorKind::argument, "reachable_restriction needs a 1-truncated precubical set");
    if (v >= p.count(0))
        throw Error(ErrorKind::argument, "reachable_restriction: " + std::to_string(v) + " is not a vertex");
    std::vector<std::vector<Index>> out_edges(p.count(0));
    for (Index e = 0; e < p.count(1); ++e)
        out_edges[p.face(1, e, 0, 1)].push_back(e);
    std::vector<char> seen(p.count(0), 0);
    std::deque<Index> queue{v};
    seen[v] = 1;
    while (!queue.empty()) {
        const Index u = queue.front();
        queue.pop_front();
        for (Index e : out_edges[u]) {
            const Index w = p.face(1, e, 1, 1);
            if (!seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
        }
    }
    Restriction r;
    std::vector<Index> renumber(p.count(0), npos);
    for (Index u = 0; u < p.count(0); ++u) {
        if (seen[u]) {
            renumber[u] = r.vertices.size();
            r.vertices.push_back(u);
        }
    }
    r.cells.add_vertices(r.vertices.size());
    for (Index e = 0; e < p.count(1); ++e) {
        const Index s = p.face(1, e, 0, 1);
        if (!seen[s])
            continue;
        r.cells.add_cell({renumber[s]}, {renumber[p.face(1, e, 1, 1)]});
        r.edges.push_back(e);
    }
    return r;
}

/// Alternating sum of cell counts.
inline std::int64_t euler_characteristic(const PrecubicalSet& p)
{
    std::int64_t chi = 0;
    for (std::size_t n = 0; n < p.levels(); ++n)
        chi += (n % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(p.count(n));
    return chi;
}

} // namespace hdam
