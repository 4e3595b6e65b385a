#include "catch_amalgamated.hpp"

#include "test_support.hpp"

#include <filesystem>

using namespace hdam;
using fixtures::Rng;

namespace {

const char* const kSystems[] = {"one_counter", "counter_y", "two_counters", "guarded_counters", "disjoint_counters",
                                "three_counters"};

template <class F>
ErrorKind kind_of(F&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no exception");
    return ErrorKind::argument;
}

} // namespace

TEST_CASE("system files round-trip byte for byte")
{
    for (const char* name : kSystems) {
        INFO(name);
        const std::string text = read_file(fixtures::system_path(name));
        const SharedVariableSystem sys = system_from_json(parse_json(text));
        CHECK(dump(to_json(sys)) == text);
        CHECK(system_from_json(parse_json(dump(to_json(sys)))) == sys);
    }
}

TEST_CASE("expression text is kept verbatim")
{
    SharedVariableSystem sys = fixtures::load_system("guarded_counters");
    sys.graphs[0].transitions[0].guard = SourceExpr::from_text("(x)==0");
    const SharedVariableSystem back = system_from_json(parse_json(dump(to_json(sys))));
    CHECK(back.graphs[0].transitions[0].guard->text == "(x)==0");
    CHECK(back == sys);
}

TEST_CASE("random systems round-trip")
{
    Rng rng(79);
    for (int k = 0; k < 100; ++k) {
        const SharedVariableSystem sys = fixtures::random_system(rng);
        const std::string text = dump(to_json(sys));
        CHECK(system_from_json(parse_json(text)) == sys);
        CHECK(dump(to_json(system_from_json(parse_json(text)))) == text);
    }
}

TEST_CASE("labels")
{
    CHECK(to_json(Label::atom("a")) == Json("a"));
    const Label l{"LR", 2, "x++"};
    CHECK(to_json(l).dump() == R"({"tags":"LR","process":2,"name":"x++"})");
    CHECK(label_from_json(to_json(l), "") == l);
    CHECK_THROWS_AS(label_from_json(Json::parse(R"({"name":"a"})"), ""), Error);
    CHECK_THROWS_AS(label_from_json(Json::parse(R"({"name":"a","tags":"Q"})"), ""), Error);
    CHECK_THROWS_AS(label_from_json(Json::parse(R"({"name":"a","process":0})"), ""), Error);
    CHECK_THROWS_AS(label_from_json(Json::parse(R"({"name":"a","process":1,"x":1})"), ""), Error);
    CHECK_THROWS_AS(label_from_json(Json(3), ""), Error);
}

TEST_CASE("precubical sets, HDAs and transition systems round-trip")
{
    Rng rng(83);
    for (int k = 0; k < 100; ++k) {
        const LtsSystem t = fixtures::random_lts(rng);
        const Hda a = hda_model(t);
        CHECK(pcs_from_json(parse_json(dump(to_json(a.cells)))) == a.cells);
        CHECK(hda_from_json(parse_json(dump(to_json(a)))) == a);
        CHECK(lts_from_json(parse_json(dump(to_json(t)))) == t);
        const LtsSystem tagged = interleave(t, fixtures::cycle("p", "q"));
        CHECK(lts_from_json(parse_json(dump(to_json(tagged)))) == tagged);
        const std::string text = dump(to_json(a));
        CHECK(dump(to_json(hda_from_json(parse_json(text)))) == text);
    }
    CHECK(pcs_from_json(parse_json(dump(to_json(PrecubicalSet{})))) == PrecubicalSet{});
}

TEST_CASE("pcs format details")
{
    const Json j = to_json(standard_cube(2, 2));
    CHECK(j["dims"] == Json::parse("[4,4,1]"));
    CHECK(j["faces"].size() == 2);
    CHECK(j["faces"][1][0]["front"].size() == 2);
    CHECK(kind_of([] { (void)pcs_from_json(Json::parse(R"({"dims":[1,0],"faces":[[]]})")); }) == ErrorKind::parse);
    CHECK(kind_of([] { (void)pcs_from_json(Json::parse(R"({"dims":[2],"faces":[[]]})")); }) == ErrorKind::parse);
    CHECK(kind_of([] {
              (void)pcs_from_json(Json::parse(R"({"dims":[2,1],"faces":[[{"cell":0,"front":[0],"back":[5]}]]})"));
          })
          == ErrorKind::parse);
    CHECK(kind_of([] {
              (void)pcs_from_json(Json::parse(R"({"dims":[2,1],"faces":[[{"cell":1,"front":[0],"back":[1]}]]})"));
          })
          == ErrorKind::parse);
    CHECK(kind_of([] {
              (void)pcs_from_json(Json::parse(R"({"dims":[2,1],"faces":[[{"cell":0,"front":[0,1],"back":[1]}]]})"));
          })
          == ErrorKind::parse);
    CHECK(pcs_from_json(Json::parse(R"({"dims":[0],"faces":[]})")).count(0) == 0);
}

TEST_CASE("HDA documents are validated")
{
    Json j = to_json(psi(fixtures::cycle("a", "b")));
    j["initial"] = 9;
    CHECK(kind_of([&] { (void)hda_from_json(j); }) == ErrorKind::invalid_input);
    j["initial"] = 0;
    j["labels"][0] = "zz";
    CHECK(kind_of([&] { (void)hda_from_json(j); }) == ErrorKind::invalid_input);
    j["labels"][0] = "a";
    j["relation"] = Json::array();
    CHECK(kind_of([&] { (void)hda_from_json(j); }) == ErrorKind::parse);
    CHECK_NOTHROW(lts_from_json(j));
    j["relation"] = Json::parse(R"([["a"]])");
    CHECK(kind_of([&] { (void)lts_from_json(j); }) == ErrorKind::parse);
    j["relation"] = Json::parse(R"([["a","q"]])");
    CHECK(kind_of([&] { (void)lts_from_json(j); }) == ErrorKind::invalid_input);
}

TEST_CASE("syntax errors report line and column")
{
    const std::string text = "{\n  \"variables\": [\n    {\"name\": \"x\",, }\n  ]\n}\n";
    try {
        (void)parse_json(text);
        FAIL("no exception");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == 18);
        CHECK(std::string(e.what()).rfind("3:18: ", 0) == 0);
    }
    try {
        (void)parse_json("[1, 2");
        FAIL("no exception");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
    }
}

TEST_CASE("schema errors name the offending path")
{
    Json j = parse_json(read_file(fixtures::system_path("two_counters")));
    j["graphs"][1]["transitions"][0].erase("action");
    try {
        (void)system_from_json(j);
        FAIL("no exception");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::parse);
        CHECK(std::string(e.what()).find("/graphs/1/transitions/0") != std::string::npos);
    }
    j = parse_json(read_file(fixtures::system_path("two_counters")));
    j["graphs"][0]["colour"] = "red";
    CHECK(kind_of([&] { (void)system_from_json(j); }) == ErrorKind::parse);
    j = parse_json(read_file(fixtures::system_path("two_counters")));
    j["graphs"][0]["transitions"][0]["guard"] = "x <";
    try {
        (void)system_from_json(j);
        FAIL("no exception");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::parse);
        CHECK(std::string(e.what()).find("/graphs/0/transitions/0/guard") != std::string::npos);
    }
    j = parse_json(read_file(fixtures::system_path("two_counters")));
    j["variables"][0]["domain"][0] = 1.5;
    CHECK(kind_of([&] { (void)system_from_json(j); }) == ErrorKind::parse);
    j = parse_json(read_file(fixtures::system_path("two_counters")));
    j["initial"]["x"] = 5;
    CHECK(kind_of([&] { (void)system_from_json(j); }) == ErrorKind::invalid_input);
}

TEST_CASE("file access errors")
{
    CHECK(kind_of([] { (void)read_file("/nonexistent/file.json"); }) == ErrorKind::io);
    CHECK(kind_of([] { write_file("/nonexistent/dir/out.json", "{}"); }) == ErrorKind::io);
    const auto path = std::filesystem::temp_directory_path() / "hdam_io_test.json";
    write_file(path.string(), "{}\n");
    CHECK(read_file(path.string()) == "{}\n");
    std::filesystem::remove(path);
}

TEST_CASE("DOT export")
{
    const Hda a = hda_model(fixtures::make_lts(4, {{0, 1, "a"}, {0, 2, "b"}, {2, 3, "a"}, {1, 3, "b"}},
                                               fixtures::atoms({{"a", "b"}})));
    const std::string dot = to_dot(a, {"s0", "s1", "s\"2", "s3"});
    CHECK(dot.rfind("digraph hda {", 0) == 0);
    CHECK(dot.find("\"s\\\"2\"") != std::string::npos);
    CHECK(dot.find("// cell 2:0") != std::string::npos);
    std::size_t arrows = 0;
    for (std::size_t p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 1))
        ++arrows;
    CHECK(arrows == 4);
}
