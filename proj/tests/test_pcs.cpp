#include "catch_amalgamated.hpp"

#include "test_support.hpp"

using namespace hdam;
using fixtures::Rng;

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// two vertices, two edges 0 -> 1 -> 0
PrecubicalSet two_cycle()
{
    PrecubicalSet p = PrecubicalSet::with_vertices(2);
    p.add_cell({0}, {1});
    p.add_cell({1}, {0});
    return p;
}

PrecubicalSet random_graph(Rng& rng, std::size_t max_vertices = 4, std::size_t max_edges = 5)
{
    const std::size_t n = 1 + rng() % max_vertices;
    PrecubicalSet p = PrecubicalSet::with_vertices(n);
    const std::size_t m = rng() % (max_edges + 1);
    for (std::size_t e = 0; e < m; ++e)
        p.add_cell({rng() % n}, {rng() % n});
    return p;
}

// a random precubical set of dimension <= 3: a tensor of random graphs
PrecubicalSet random_pcs(Rng& rng)
{
    PrecubicalSet p = random_graph(rng, 3, 3);
    const auto factors = rng() % 3;
    for (std::size_t k = 0; k < factors; ++k)
        p = tensor(p, random_graph(rng, 2, 3)).cells;
    return p;
}

} // namespace

TEST_CASE("interval endpoints and counts")
{
    CHECK(interval(0, 0).f_vector() == std::vector<std::size_t>{1});
    CHECK(interval(0, 1).f_vector() == std::vector<std::size_t>{2, 1});
    const PrecubicalSet p = interval(0, 3);
    CHECK(p.f_vector() == std::vector<std::size_t>{4, 3});
    // edge [2,3] has index 2 and vertex 3 has index 3
    CHECK(p.face(1, 2, 1, 1) == 3);
    CHECK(p.face(1, 2, 0, 1) == 2);
    const PrecubicalSet shifted = interval(-2, 1);
    CHECK(shifted.f_vector() == std::vector<std::size_t>{4, 3});
    CHECK(validate(p).empty());
}

TEST_CASE("interval rejects an empty range")
{
    try {
        (void)interval(3, 2);
        FAIL("no exception");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::argument);
    }
}

TEST_CASE("validation flags a single swapped face pointer")
{
    PrecubicalSet good = standard_cube(2, 2);
    REQUIRE(validate(good).empty());
    // rebuild the square with d^0_1 replaced by the far edge in the same direction
    PrecubicalSet broken = truncate(good, 1);
    const auto f = good.front(2, 0);
    const auto b = good.back(2, 0);
    broken.add_cell({b[0], f[1]}, {b[0], b[1]});
    const auto violations = validate(broken);
    REQUIRE(!violations.empty());
    for (const FaceViolation& v : violations)
        CHECK(v.cell == CellId{2, 0});
    // a hand check: which relations fail
    std::vector<std::pair<int, int>> failing;
    for (int k = 0; k <= 1; ++k)
        for (int l = 0; l <= 1; ++l)
            if (broken.face(1, broken.face(2, 0, l, 2), k, 1) != broken.face(1, broken.face(2, 0, k, 1), l, 1))
                failing.emplace_back(k, l);
    CHECK(violations.size() == failing.size());
}

TEST_CASE("tensor of two intervals is the square")
{
    const TensorProduct t = tensor(interval(0, 1), interval(0, 1));
    CHECK(t.cells.f_vector() == std::vector<std::size_t>{4, 4, 1});
    CHECK(validate(t.cells).empty());
    CHECK(t.cells == standard_cube(2, 2));
}

TEST_CASE("tensor unit and empty factor")
{
    const PrecubicalSet c = two_cycle();
    CHECK(tensor(c, interval(0, 0)).cells.f_vector() == c.f_vector());
    CHECK(tensor(interval(0, 0), c).cells.f_vector() == c.f_vector());
    CHECK(tensor(c, PrecubicalSet{}).cells.empty());
}

TEST_CASE("torus from two cycles")
{
    const TensorProduct t = tensor(two_cycle(), two_cycle());
    CHECK(t.cells.f_vector() == std::vector<std::size_t>{4, 8, 4});
    CHECK(truncate(t.cells, 1).f_vector() == std::vector<std::size_t>{4, 8});
    CHECK(euler_characteristic(t.cells) == 0);
    CHECK(validate(t.cells).empty());
}

TEST_CASE("standard cubes have binomial cell counts")
{
    CHECK(standard_cube(0, 0).f_vector() == std::vector<std::size_t>{1});
    CHECK(standard_cube(3, 1).f_vector() == std::vector<std::size_t>{8, 12});
    CHECK(standard_cube(2, 2).f_vector() == std::vector<std::size_t>{4, 4, 1});
    for (std::size_t n = 0; n <= 5; ++n) {
        const PrecubicalSet c = standard_cube(n, n);
        CHECK(validate(c).empty());
        for (std::size_t m = 0; m <= n; ++m)
            CHECK(c.count(m) == binomial(n, m) << (n - m));
    }
    CHECK_THROWS_AS(standard_cube(2, 3), Error);
}

TEST_CASE("truncation keeps faces and is idempotent")
{
    const PrecubicalSet c = standard_cube(3, 3);
    CHECK(truncate(standard_cube(2, 2), 1).f_vector() == std::vector<std::size_t>{4, 4});
    CHECK(truncate(c, 7) == c);
    CHECK(truncate(truncate(c, 2), 2) == truncate(c, 2));
    const PrecubicalSet t2 = truncate(c, 2);
    for (Index x = 0; x < c.count(2); ++x)
        for (std::size_t i = 1; i <= 2; ++i)
            for (int k = 0; k <= 1; ++k)
                CHECK(t2.face(2, x, k, i) == c.face(2, x, k, i));
}

TEST_CASE("skeleton map of a vertex and of the standard square")
{
    const PrecubicalSet sq = standard_cube(2, 2);
    const CubeSkeletonMap v = skeleton_map(sq, {0, 3});
    CHECK(v.m == 0);
    CHECK(v.vertices == std::vector<Index>{3});
    CHECK(v.edges.empty());

    const CubeSkeletonMap s = skeleton_map(sq, {2, 0});
    std::set<Index> vs(s.vertices.begin(), s.vertices.end());
    std::set<Index> es(s.edges.begin(), s.edges.end());
    CHECK(vs.size() == 4);
    CHECK(es.size() == 4);
    CHECK(is_coherent(sq, s));
}

TEST_CASE("skeleton map of a tensor square follows the split rule")
{
    // e : 0 -> 1 in P, f : 0 -> 1 in Q
    const PrecubicalSet p = interval(0, 1);
    const TensorProduct t = tensor(p, p);
    const Index square = t.cell({1, 0}, {1, 0});
    const CubeSkeletonMap s = skeleton_map(t.cells, {2, square});
    CHECK(s.vertex(0) == t.cell({0, 0}, {0, 0}));
    CHECK(s.vertex(0b11) == t.cell({0, 1}, {0, 1}));
    // direction 1 at corner (., 0) is (e, d^0_1 f)
    CHECK(s.edge(1, 0) == t.cell({1, 0}, {0, 0}));
    CHECK(s.edge(1, 0b10) == t.cell({1, 0}, {0, 1}));
    CHECK(s.edge(2, 0) == t.cell({0, 0}, {1, 0}));
    CHECK(s.edge(2, 0b01) == t.cell({0, 1}, {1, 0}));
}

TEST_CASE("skeleton maps are coherent and independent of face order")
{
    Rng rng(11);
    for (int round = 0; round < 40; ++round) {
        const PrecubicalSet p = random_pcs(rng);
        REQUIRE(validate(p).empty());
        for (std::size_t n = 0; n < p.levels(); ++n) {
            for (Index x = 0; x < p.count(n); ++x) {
                const CubeSkeletonMap s = skeleton_map(p, {n, x});
                REQUIRE(is_coherent(p, s));
                // vertex images via ascending face order: d^{b_1}_1 d^{b_2}_1 ... d^{b_n}_1
                for (std::uint64_t b = 0; b < s.vertices.size(); ++b) {
                    Index y = x;
                    for (std::size_t j = 1, dim = n; j <= n; ++j, --dim)
                        y = p.face(dim, y, static_cast<int>((b >> (j - 1)) & 1), 1);
                    CHECK(y == s.vertex(b));
                }
            }
        }
    }
}

TEST_CASE("f-vector convolution and validity of random tensors")
{
    Rng rng(5);
    for (int round = 0; round < 40; ++round) {
        const PrecubicalSet p = random_pcs(rng);
        const PrecubicalSet q = random_pcs(rng);
        const TensorProduct t = tensor(p, q);
        CHECK(validate(t.cells).empty());
        for (std::size_t n = 0; n < p.levels() + q.levels(); ++n) {
            std::size_t expect = 0;
            for (std::size_t a = 0; a <= n; ++a)
                expect += p.count(a) * q.count(n - a);
            CHECK(t.cells.count(n) == expect);
        }
        // provenance is a bijection
        for (std::size_t n = 0; n < t.cells.levels(); ++n)
            for (Index c = 0; c < t.cells.count(n); ++c) {
                const TensorCell o = t.origin(n, c);
                CHECK(t.cell({o.left_dim, o.left}, {n - o.left_dim, o.right}) == c);
            }
    }
}

TEST_CASE("tensor is associative up to rebracketing")
{
    Rng rng(17);
    for (int round = 0; round < 25; ++round) {
        const PrecubicalSet p = random_graph(rng, 3, 3);
        const PrecubicalSet q = random_graph(rng, 2, 3);
        const PrecubicalSet r = random_graph(rng, 2, 2);
        const TensorProduct pq = tensor(p, q);
        const TensorProduct left = tensor(pq.cells, r);
        const TensorProduct qr = tensor(q, r);
        const TensorProduct right = tensor(p, qr.cells);
        REQUIRE(left.cells.f_vector() == right.cells.f_vector());
        // ((x,y),z) -> (x,(y,z))
        std::vector<std::vector<Index>> phi(left.cells.levels());
        for (std::size_t n = 0; n < left.cells.levels(); ++n)
            for (Index c = 0; c < left.cells.count(n); ++c) {
                const TensorCell outer = left.origin(n, c);
                const TensorCell inner = pq.origin(outer.left_dim, outer.left);
                const std::size_t dx = inner.left_dim;
                const std::size_t dy = outer.left_dim - dx;
                const std::size_t dz = n - outer.left_dim;
                const Index yz = qr.cell({dy, inner.right}, {dz, outer.right});
                phi[n].push_back(right.cell({dx, inner.left}, {dy + dz, yz}));
            }
        for (std::size_t n = 1; n < left.cells.levels(); ++n)
            for (Index c = 0; c < left.cells.count(n); ++c)
                for (std::size_t i = 1; i <= n; ++i)
                    for (int k = 0; k <= 1; ++k)
                        CHECK(phi[n - 1][left.cells.face(n, c, k, i)] == right.cells.face(n, phi[n][c], k, i));
        for (auto& level : phi) {
            std::sort(level.begin(), level.end());
            CHECK(std::adjacent_find(level.begin(), level.end()) == level.end());
        }
    }
}

TEST_CASE("path concatenation")
{
    const PrecubicalSet p = interval(0, 2);
    const Path e1{0, {0}};
    const Path e2{1, {1}};
    const Path both = concat(p, e1, e2);
    CHECK(both.steps == std::vector<Index>{0, 1});
    CHECK(endpoint(p, both) == 2);
    CHECK(both.length() == 2);
    CHECK(concat(p, Path{0, {}}, both) == both);
    CHECK(concat(p, both, Path{2, {}}) == both);
    CHECK_THROWS_AS(concat(p, e2, e1), Error);
    CHECK(is_path(p, both));
    CHECK(!is_path(p, Path{0, {1}}));
}

TEST_CASE("projections of interleavings")
{
    const PrecubicalSet p = interval(0, 1);
    const TensorProduct t = tensor(p, p);
    const Path a{0, {0}};
    const Path b{0, {0}};
    const Path w = interleave_paths(t, p, a, b);
    CHECK(w.steps == std::vector<Index>{t.cell({1, 0}, {0, 0}), t.cell({0, 1}, {1, 0})});
    CHECK(project_path(t, w, Side::left) == a);
    CHECK(project_path(t, w, Side::right) == b);
    // the other interleaving has the same projections
    const Path other{t.cell({0, 0}, {0, 0}), {t.cell({0, 0}, {1, 0}), t.cell({1, 0}, {0, 1})}};
    REQUIRE(is_path(t.cells, other));
    CHECK(project_path(t, other, Side::left) == a);
    CHECK(project_path(t, other, Side::right) == b);
    // stepping in the left factor only
    CHECK(project_path(t, Path{0, {t.cell({1, 0}, {0, 0})}}, Side::right) == Path{0, {}});
    const Path empty = interleave_paths(t, p, Path{1, {}}, Path{0, {}});
    CHECK(empty == Path{t.cell({0, 1}, {0, 0}), {}});
}

TEST_CASE("projection after interleaving is the identity on random paths")
{
    Rng rng(23);
    auto random_path = [&](const PrecubicalSet& g) {
        Path w{rng() % g.count(0), {}};
        for (int k = 0; k < 4; ++k) {
            std::vector<Index> out;
            for (Index e = 0; e < g.count(1); ++e)
                if (g.face(1, e, 0, 1) == endpoint(g, w))
                    out.push_back(e);
            if (out.empty())
                break;
            w.steps.push_back(out[rng() % out.size()]);
        }
        return w;
    };
    for (int round = 0; round < 50; ++round) {
        const PrecubicalSet p = random_graph(rng);
        const PrecubicalSet q = random_graph(rng);
        const TensorProduct t = tensor(p, q);
        const Path a = random_path(p);
        const Path b = random_path(q);
        const Path w = interleave_paths(t, p, a, b);
        REQUIRE(is_path(t.cells, w));
        CHECK(project_path(t, w, Side::left) == a);
        CHECK(project_path(t, w, Side::right) == b);
    }
}

TEST_CASE("reachable restriction")
{
    const PrecubicalSet lone = PrecubicalSet::with_vertices(3);
    CHECK(reachable_restriction(lone, 1).cells.f_vector() == std::vector<std::size_t>{1});

    PrecubicalSet g = PrecubicalSet::with_vertices(4);
    g.add_cell({0}, {1});
    g.add_cell({2}, {1});
    g.add_cell({1}, {3});
    const Restriction r = reachable_restriction(g, 0);
    CHECK(r.vertices == std::vector<Index>{0, 1, 3});
    CHECK(r.edges == std::vector<Index>{0, 2});
    CHECK(r.cells.f_vector() == std::vector<std::size_t>{3, 2});
    // idempotent
    const Restriction again = reachable_restriction(r.cells, 0);
    CHECK(again.cells == r.cells);
    CHECK_THROWS_AS(reachable_restriction(g, 9), Error);
    CHECK_THROWS_AS(reachable_restriction(standard_cube(2, 2), 0), Error);
}
