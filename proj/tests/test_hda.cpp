#include "catch_amalgamated.hpp"

#include "test_support.hpp"

using namespace hdam;
using fixtures::make_hda;
using fixtures::Rng;

namespace {

// the filled square on a, b with both paths 0 -> 3
Hda filled_square()
{
    Hda a = make_hda(4, {{0, 1, "a"}, {0, 2, "b"}, {2, 3, "a"}, {1, 3, "b"}});
    // direction 1 edges: a-edges 0 and 2; direction 2 edges: b-edges 1 and 3
    a.cells.add_cell({1, 0}, {3, 2});
    return a;
}

} // namespace

TEST_CASE("a filled square is a valid HDA")
{
    const Hda a = filled_square();
    CHECK(validate_hda(a).ok());
    CHECK(validate(a.cells).empty());
    CHECK(is_extensional(a).holds);
    CHECK(is_deterministic(a).holds);
}

TEST_CASE("label condition on 2-cells")
{
    Hda a = make_hda(4, {{0, 1, "a"}, {0, 2, "b"}, {2, 3, "c"}, {1, 3, "b"}});
    a.alphabet.insert(Label::atom("c"));
    a.cells.add_cell({1, 0}, {3, 2});
    const Report r = validate_hda(a);
    REQUIRE(!r.ok());
    CHECK(r.issues.size() == 1);
    CHECK(r.issues.front().find("2-cell 0") != std::string::npos);
}

TEST_CASE("state and label bookkeeping is validated")
{
    Hda a = make_hda(2, {{0, 1, "a"}});
    a.initial = 2;
    CHECK(!validate_hda(a).ok());
    a.initial = 0;
    a.finals = {5};
    CHECK(!validate_hda(a).ok());
    a.finals = {1};
    a.alphabet.clear();
    CHECK(!validate_hda(a).ok());
    a.alphabet.insert(Label::atom("a"));
    a.labels.push_back(Label::atom("a"));
    CHECK(!validate_hda(a).ok());
    CHECK(!validate_hda(Hda{}).ok());
}

TEST_CASE("extensionality and determinism witnesses")
{
    const Hda parallel = make_hda(2, {{0, 1, "a"}, {0, 1, "a"}});
    const auto ext = is_extensional(parallel);
    CHECK(!ext.holds);
    CHECK(ext.witness == std::make_pair(Index{0}, Index{1}));

    const Hda fork = make_hda(3, {{0, 1, "a"}, {0, 2, "b"}, {0, 2, "a"}});
    CHECK(is_extensional(fork).holds);
    const auto det = is_deterministic(fork);
    CHECK(!det.holds);
    CHECK(det.witness == std::make_pair(Index{0}, Index{2}));
}

TEST_CASE("skeleton keeps the labeling of the kept degrees")
{
    const Hda a = filled_square();
    const Hda s1 = skeleton(a, 1);
    CHECK(s1.cells.f_vector() == std::vector<std::size_t>{4, 4});
    CHECK(s1.labels == a.labels);
    CHECK(skeleton(a, 0).labels.empty());
    CHECK(validate_hda(skeleton(a, 0)).ok());
}

TEST_CASE("identity and composition of morphisms")
{
    const Hda a = filled_square();
    const HdaMorphism id = identity_morphism(a);
    CHECK(check_morphism(id, a, a).ok());
    CHECK(is_bijective(id, a, a));
    CHECK(compose(id, id) == id);

    // collapse onto a one-vertex HDA with loops a and b and a filled torus cell
    Hda loops = make_hda(1, {{0, 0, "a"}, {0, 0, "b"}});
    loops.cells.add_cell({1, 0}, {1, 0});
    HdaMorphism f;
    f.cells = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0}};
    f.labels = {{Label::atom("a"), Label::atom("a")}, {Label::atom("b"), Label::atom("b")}};
    CHECK(check_morphism(f, a, loops).ok());
    CHECK(!is_bijective(f, a, loops));
    CHECK(compose(identity_morphism(loops), f) == f);
    CHECK(compose(f, id) == f);
}

TEST_CASE("morphism failures are reported")
{
    const Hda a = filled_square();
    HdaMorphism f = identity_morphism(a);
    std::swap(f.cells[1][0], f.cells[1][2]);
    CHECK(!check_morphism(f, a, a).ok());

    HdaMorphism g = identity_morphism(a);
    g.labels[Label::atom("a")] = Label::atom("b");
    CHECK(!check_morphism(g, a, a).ok());

    HdaMorphism h = identity_morphism(a);
    h.cells.pop_back();
    CHECK(!check_morphism(h, a, a).ok());

    Hda b = a;
    b.initial = 3;
    CHECK(!check_morphism(identity_morphism(a), a, b).ok());
}

TEST_CASE("subautomaton inclusion")
{
    const Hda big = filled_square();
    Hda sub = make_hda(4, {{0, 1, "a"}, {0, 2, "b"}});
    HdaMorphism inc;
    inc.cells = {{0, 1, 2, 3}, {0, 1}};
    inc.labels = {{Label::atom("a"), Label::atom("a")}, {Label::atom("b"), Label::atom("b")}};
    CHECK(check_subautomaton(inc, sub, big).ok());
    inc.cells[1] = {0, 0};
    CHECK(!check_subautomaton(inc, sub, big).ok());
}

TEST_CASE("tensor of two single edges is the labeled square")
{
    const Hda a = make_hda(2, {{0, 1, "a"}}, 0, {1});
    const Hda b = make_hda(2, {{0, 1, "b"}}, 0, {1});
    const TensorHda t = tensor_hda_with_layout(a, b);
    CHECK(validate_hda(t.hda).ok());
    CHECK(t.hda.cells.f_vector() == std::vector<std::size_t>{4, 4, 1});
    CHECK(t.hda.alphabet == Alphabet{tag_left(Label::atom("a")), tag_right(Label::atom("b"))});
    CHECK(t.hda.initial == t.layout.cell({0, 0}, {0, 0}));
    CHECK(t.hda.finals == std::set<Index>{t.layout.cell({0, 1}, {0, 1})});
    const Index sq = 0;
    // direction 1 belongs to the left factor, so d^0_1 is a b-edge
    CHECK(t.hda.label(t.hda.cells.face(2, sq, 0, 1)) == tag_right(Label::atom("b")));
    CHECK(t.hda.label(t.hda.cells.face(2, sq, 0, 2)) == tag_left(Label::atom("a")));
}

TEST_CASE("tensor with the unit")
{
    const Hda a = filled_square();
    const Hda left = tensor_hda(unit_hda(), a);
    const Hda right = tensor_hda(a, unit_hda());
    CHECK(left.cells == a.cells);
    CHECK(right.cells == a.cells);
    for (Index e = 0; e < a.cells.count(1); ++e) {
        CHECK(untag(left.label(e)).second == a.label(e));
        CHECK(untag(right.label(e)).second == a.label(e));
    }
}

TEST_CASE("coproduct is the wedge at the initial states")
{
    const Hda a = make_hda(2, {{0, 1, "a"}}, 0, {1});
    const Hda b = make_hda(3, {{1, 2, "b"}, {1, 0, "c"}}, 1, {0});
    const CoproductHda c = coproduct_hda_with_layout(a, b);
    CHECK(validate_hda(c.hda).ok());
    CHECK(c.hda.cells.f_vector() == std::vector<std::size_t>{4, 3});
    CHECK(c.left[0] == std::vector<Index>{0, 1});
    CHECK(c.right[0][1] == 0);
    CHECK(c.hda.initial == 0);
    CHECK(c.hda.finals == std::set<Index>{1, c.right[0][0]});
    CHECK(c.hda.label(c.right[1][1]) == tag_right(Label::atom("c")));
    CHECK_THROWS_AS(coproduct_hda(a, Hda{}), Error);
}

TEST_CASE("coproduct injections and tensor factors are morphisms up to tags")
{
    Rng rng(3);
    for (int round = 0; round < 60; ++round) {
        const Hda a = fixtures::random_two_truncated(rng);
        const Hda b = fixtures::random_two_truncated(rng);
        REQUIRE(validate_hda(a).ok());
        const CoproductHda c = coproduct_hda_with_layout(a, b);
        REQUIRE(validate_hda(c.hda).ok());
        HdaMorphism inl;
        inl.cells = c.left;
        inl.cells.resize(a.cells.levels());
        for (const Label& l : a.alphabet)
            inl.labels.emplace(l, tag_left(l));
        CHECK(check_morphism(inl, a, c.hda).ok());
        HdaMorphism inr;
        inr.cells = c.right;
        inr.cells.resize(b.cells.levels());
        for (const Label& l : b.alphabet)
            inr.labels.emplace(l, tag_right(l));
        CHECK(check_morphism(inr, b, c.hda).ok());

        const Hda t = tensor_hda(a, b);
        CHECK(validate_hda(t).ok());
        for (std::size_t n = 0; n < t.cells.levels(); ++n) {
            std::size_t expect = 0;
            for (std::size_t k = 0; k <= n; ++k)
                expect += a.cells.count(k) * b.cells.count(n - k);
            CHECK(t.cells.count(n) == expect);
        }
    }
}
