#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "ssepfree/errors.hpp"
#include "ssepfree/io.hpp"

using namespace ssepfree;

namespace {

std::string grid_csv(int M, double value) {
    std::string s = "x,value\n";
    for (int i = 0; i <= M; ++i) s += format_number(static_cast<double>(i) / M) + "," + format_number(value) + "\n";
    return s;
}

}  // namespace

TEST_CASE("number formatting uses 17 significant digits") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(2.0) == "2");
    CHECK(std::stod(format_number(M_PI)) == M_PI);
}

TEST_CASE("CSV parsing") {
    const auto t = parse_csv("x,value\n0,1.5\n\n1,2.5\n");
    CHECK(t.header == std::vector<std::string>{"x", "value"});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[1][1] == 2.5);
    CHECK(t.lines[1] == 4);
    CHECK(t.column("value") == 1);
    CHECK(t.column("missing") == -1);
}

TEST_CASE("malformed CSV reports the line") {
    try {
        parse_csv("x,value\n0,1\n0.5,abc\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_csv("x,value\n0,1,2\n"), ParseError);
    CHECK_THROWS_AS(parse_csv(""), ParseError);
}

TEST_CASE("grid profiles from CSV") {
    const auto g = grid_from_csv(parse_csv(grid_csv(16, 0.25)), "");
    CHECK(g.intervals() == 16);
    CHECK(g[7] == 0.25);
    CHECK_THROWS_AS(grid_from_csv(parse_csv(grid_csv(8, 0.25)), ""), ValidationError);
    CHECK_THROWS_AS(grid_from_csv(parse_csv(grid_csv(16, 0.25)), "other"), ValidationError);
    std::string skewed = grid_csv(16, 0.1);
    skewed.replace(skewed.find("\n0.0625,"), 8, "\n0.07,");
    CHECK_THROWS_AS(grid_from_csv(parse_csv(skewed), ""), ParseError);
    const auto round = grid_from_csv(parse_csv(grid_to_csv(g, "h")), "h");
    CHECK(round.values() == g.values());
}

TEST_CASE("model JSON") {
    const auto m = model_from_json(R"({"N": 2, "probabilities": {"00": 0.5, "10": 0.25, "11": 0.25}})");
    CHECK(m.sites() == 2);
    CHECK(m.moment(std::vector<int>{1}) == doctest::Approx(0.5));
    CHECK(m.moment(std::vector<int>{2}) == doctest::Approx(0.25));
    const auto legacy = model_from_json(R"({"N": 1, "probs": {"1": 0.3, "0": 0.7}})");
    CHECK(legacy.moment(std::vector<int>{1}) == doctest::Approx(0.3));
    const auto ind = model_from_json(R"({"independent": [0.1, 0.9]})");
    CHECK(ind.moment(std::vector<int>{1, 2}) == doctest::Approx(0.09));
    CHECK_THROWS_AS(model_from_json(R"({"N": 2, "probabilities": {"0": 1}})"), ValidationError);
    CHECK_THROWS_AS(model_from_json(R"({"N": 2, "probabilities": {"00": 0.5}})"), ValidationError);
    CHECK_THROWS_AS(model_from_json("{\n\"N\": 2,\n oops}"), ParseError);
}

TEST_CASE("graph JSON round trip") {
    const auto g = graph_from_json(R"({"blacks": 2, "whites": [1, 2], "edges": [[0, 0], [1, 0], [1, 1]]})");
    CHECK(g.blacks == 2);
    CHECK(g.white_tags == std::vector<int>{1, 2});
    const auto back = graph_from_json(graph_to_json(g));
    CHECK(back.edges == g.edges);
    CHECK_THROWS_AS(graph_from_json(R"({"blacks": 2})"), ValidationError);
}

TEST_CASE("atomic file writes") {
    const auto dir = std::filesystem::temp_directory_path() / "ssepfree_io_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "out.txt").string();
    write_file_atomic(path, "first");
    write_file_atomic(path, "second");
    CHECK(read_file(path) == "second");
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
    CHECK_THROWS_AS(read_file((dir / "absent.txt").string()), IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("monomial names") {
    CHECK(monomial_name({3, 3}) == "e1^3*e2^3");
    CHECK(monomial_name({0, 1, 0}) == "e2");
    CHECK(monomial_name({0, 0}) == "1");
}
