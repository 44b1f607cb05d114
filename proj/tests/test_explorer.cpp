#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cfm/casebook.hpp"
#include "cfm/explorer.hpp"

using namespace cfm;
using nlohmann::json;

namespace {

const std::string kSource = CFM_SOURCE_DIR;

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("cfm_test_" + name)).string();
}

// u/(u + u/(u + ...)) over u in [lo, hi], with the band [-4, 0] removed.
Query reciprocal_query(long lo, long hi) {
    Query q;
    q.name = "reciprocal";
    q.head = ParamRef::constant(0);
    q.numerators.cycle = {LiteralTemplate{ParamRef::of("u")}};
    q.denominators.cycle = {LiteralTemplate{ParamRef::of("u")}};
    q.space.slots = {{"u", SlotSpace{{IntegerRange{lo, hi}}, {-4}, {0}}}};
    q.serial = "u";
    return q;
}

ExploreOptions quiet() {
    ExploreOptions opt;
    opt.ctx = PrecisionContext::make(50);
    opt.timestamps = false;
    opt.config_hash = "test";
    return opt;
}

}  // namespace

TEST_CASE("bundled query files match the builders") {
    CHECK(query_to_json(load_query(kSource + "/queries/epi.json")) == query_to_json(casebook::epi_query()));
    CHECK(query_to_json(load_query(kSource + "/queries/polyroot.json")) == query_to_json(casebook::polyroot_query()));
    CHECK(query_to_json(load_query(kSource + "/queries/expk.json")) == query_to_json(casebook::expk_query()));
}

TEST_CASE("query json round trip") {
    for (const Query& q : {casebook::epi_query(), casebook::expk_query(), reciprocal_query(-5, 5)}) {
        json j = query_to_json(q);
        CHECK(query_to_json(query_from_json(j)) == j);
    }
    json j = query_to_json(reciprocal_query(1, 3));
    j["space"][0]["stages"][0] = json{{"farey", {{"order", 3}, {"scale", "1/2"}, {"lo", 0}, {"hi", 1}}}};
    Query q = query_from_json(j);
    CHECK(iterate_space(q.space).size() == 8);  // 0 falls in the excluded band
}

TEST_CASE("malformed queries") {
    json j = query_to_json(reciprocal_query(1, 3));
    j["space"][0]["slot"] = "v";  // schedules still use u
    CHECK_THROWS_AS(query_from_json(j), DomainError);

    j = query_to_json(reciprocal_query(1, 3));
    j["serial"] = "w";
    CHECK_THROWS_AS(query_from_json(j), DomainError);

    j = query_to_json(reciprocal_query(1, 3));
    j["kci_constants"] = {"tau"};
    CHECK_THROWS_AS(query_from_json(j), UnknownConstant);

    j = query_to_json(reciprocal_query(1, 3));
    j["head"] = "1/0";
    CHECK_THROWS_AS(query_from_json(j), ParseError);

    CHECK_THROWS_AS(query_from_json(json::array()), ParseError);
    CHECK_THROWS_AS(load_query(temp_path("missing.json")), ParseError);
}

TEST_CASE("instantiation resolves affine parameter references") {
    Query q = reciprocal_query(1, 3);
    q.head = ParamRef::of("u", Rational(1, 2), 1);  // 1 + u/2
    ParameterAssignment a;
    a.values = {{"u", 3}};
    auto s = q.instantiate(a);
    CHECK(s.head == Rational(5, 2));
    CHECK(s.numerators.term(7) == 3);
    CHECK(s.denominators.term(1) == 3);
    CHECK(q.tagged_slots() == std::vector<std::string>{"u"});
}

TEST_CASE("explore: batches of ten, records, determinism") {
    Query q = casebook::polyroot_query();
    auto r1 = explore(q, quiet());
    CHECK(r1.summary.vector_string() == "Y-YY------");
    CHECK(r1.batches.size() == 3);
    CHECK(r1.records.size() == 3);
    CHECK(r1.skipped.size() == 6);
    CHECK(r1.failures.empty());
    for (const auto& b : r1.batches) CHECK(b.family.points.size() == 10);
    for (const auto& r : r1.records) {
        CHECK(r.assignments.size() == 10);
        CHECK(r.limits.size() == 10);
        CHECK(r.timestamp.empty());
        CHECK(r.config_hash == "test");
        CHECK(r.witness_keys.count("ANI") == 1);
    }
    auto r2 = explore(q, quiet());
    REQUIRE(r2.records.size() == r1.records.size());
    for (std::size_t i = 0; i < r1.records.size(); ++i)
        CHECK(record_to_json(r1.records[i]) == record_to_json(r2.records[i]));

    std::vector<std::string> streamed;
    explore(q, quiet(), [&](const ConjectureRecord& r) { streamed.push_back(r.verdicts); });
    CHECK(streamed.size() == 3);
}

TEST_CASE("explore: threads give the same answer") {
    Query q = casebook::polyroot_query();
    auto opt = quiet();
    auto serial = explore(q, opt);
    opt.threads = 4;
    auto parallel = explore(q, opt);
    REQUIRE(serial.records.size() == parallel.records.size());
    for (std::size_t i = 0; i < serial.records.size(); ++i)
        CHECK(record_to_json(serial.records[i]) == record_to_json(parallel.records[i]));
}

TEST_CASE("explore: budget and evaluation failures") {
    auto opt = quiet();
    opt.budget = 5;
    auto small = explore(reciprocal_query(1, 40), opt);
    CHECK(small.records.empty());
    CHECK(small.batches.empty());
    CHECK(small.skipped.size() == 5);

    // b_n = u - 1 vanishes at u = 1; the fold breaks at the last level
    Query q = reciprocal_query(1, 11);
    q.denominators.cycle = {LiteralTemplate{ParamRef::of("u", 1, -1)}};
    auto res = explore(q, quiet());
    REQUIRE(res.failures.size() == 1);
    CHECK(res.failures[0].find("u=1") != std::string::npos);
    CHECK(res.batches.size() == 1);
}

TEST_CASE("persisted records re-verify offline") {
    auto res = explore(casebook::polyroot_query(), quiet());
    std::string path = temp_path("records.jsonl");
    std::remove(path.c_str());
    persist(res.records, path);
    persist(res.records, path);
    auto back = load(path);
    REQUIRE(back.size() == 2 * res.records.size());
    CHECK(record_to_json(back[0]) == record_to_json(res.records[0]));
    CHECK(dedup(back).size() == res.records.size());

    for (const auto& r : back) {
        Query q = query_from_json(r.query);
        for (std::size_t i = 0; i < r.assignments.size(); ++i) {
            auto est = eval_cfrac(q.instantiate(r.assignments[i]), r.depths[i], r.ctx);
            PrecisionScope scope(r.ctx);
            CHECK(agreement_digits(est.value, parse_real(r.limits[i]), 100) >= r.ctx.significant_digits());
        }
    }

    std::ofstream(path, std::ios::app) << "\n{not json}\n";
    try {
        load(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find(path + ":8:") != std::string::npos);
    }
    std::remove(path.c_str());
}

TEST_CASE("dedup keeps records with a new witness") {
    auto res = explore(casebook::polyroot_query(), quiet());
    auto recs = res.records;
    recs.push_back(recs.front());
    auto kept = dedup(recs);
    CHECK(kept.size() == res.records.size());
    ConjectureRecord fresh = recs.front();
    fresh.witness_keys["KCI"] = "something new";
    recs.push_back(fresh);
    CHECK(dedup(recs).size() == res.records.size() + 1);
}

TEST_CASE("fnv1a") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}
