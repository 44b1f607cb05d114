#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cfm/config.hpp"

using namespace cfm;
using nlohmann::json;

TEST_CASE("defaults are valid") {
    Config c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.precision() == PrecisionContext::make(50, 10));
    CHECK(c.lll().delta_num == 99);
    CHECK(c.lll().delta_den == 100);
    CHECK(c.threads >= 1);
    auto id = c.identifier();
    CHECK(id.relation_bound == 10000);
    CHECK(id.max_degree == 10);
}

TEST_CASE("overlay keeps unspecified keys") {
    Config base;
    base.budget = 7;
    Config c = config_from_json(json{{"decimal_digits", 80}, {"lll_delta", "3/4"}}, base);
    CHECK(c.decimal_digits == 80);
    CHECK(c.budget == 7);
    CHECK(c.lll().delta_num == 3);
    CHECK_THROWS_AS(config_from_json(json{{"digits", 80}}), ParseError);
    CHECK_THROWS_AS(config_from_json(json{{"decimal_digits", "many"}}), ParseError);
    CHECK_THROWS_AS(config_from_json(json::array()), ParseError);
}

TEST_CASE("range checks") {
    auto bad = [](auto mutate) {
        Config c;
        mutate(c);
        return c;
    };
    CHECK_THROWS_AS(bad([](Config& c) { c.decimal_digits = 20; }).validate(), DomainError);
    CHECK_THROWS_AS(bad([](Config& c) { c.lll_delta = "1/4"; }).validate(), DomainError);
    CHECK_THROWS_AS(bad([](Config& c) { c.lll_delta = "101/100"; }).validate(), DomainError);
    CHECK_THROWS_AS(bad([](Config& c) { c.lll_delta = "x"; }).validate(), DomainError);
    CHECK_NOTHROW(bad([](Config& c) { c.lll_delta = "1"; }).validate());
    CHECK_THROWS_AS(bad([](Config& c) { c.max_degree = 11; }).validate(), DomainError);
    CHECK_THROWS_AS(bad([](Config& c) { c.nonlinear_residual = 0; }).validate(), DomainError);
    CHECK_THROWS_AS(bad([](Config& c) { c.start_depth = 100, c.depth_cap = 10; }).validate(), DomainError);
    CHECK_THROWS_AS(bad([](Config& c) { c.constants = {"tau"}; }).validate(), UnknownConstant);
}

TEST_CASE("hash ignores output location and threads") {
    Config a, b;
    b.threads = a.threads + 3;
    b.records_out = "elsewhere.jsonl";
    CHECK(a.hash() == b.hash());
    b.decimal_digits = 60;
    CHECK(a.hash() != b.hash());
    CHECK(a.hash().size() == 16);
}

TEST_CASE("config files") {
    auto path = (std::filesystem::temp_directory_path() / "cfm_test_config.json").string();
    std::ofstream(path) << R"({"guard_digits": 12, "constants": ["pi", "G"]})";
    Config c = load_config(path);
    CHECK(c.guard_digits == 12);
    CHECK(c.constants == std::vector<std::string>{"pi", "G"});
    std::ofstream(path) << "{";
    CHECK_THROWS_AS(load_config(path), ParseError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_config(path), ParseError);
}
