#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "cfm/identifier.hpp"

using namespace cfm;

namespace {

const PrecisionContext ctx50 = PrecisionContext::make(50);

LimitFamily family(const std::function<Real(const Real&)>& f, const std::vector<Rational>& us,
                   const PrecisionContext& ctx = ctx50) {
    PrecisionScope scope(ctx);
    LimitFamily fam;
    fam.ctx = ctx;
    fam.varied_slot = "u";
    for (const auto& u : us) {
        FamilyPoint p;
        p.assignment.values = {{"u", u}};
        p.limit.value = f(to_real(u));
        p.limit.ctx = ctx;
        p.limit.error_estimate = 0;
        fam.points.push_back(std::move(p));
    }
    return fam;
}

std::vector<Rational> range(int lo, int hi) {
    std::vector<Rational> out;
    for (int k = lo; k <= hi; ++k) out.emplace_back(k);
    return out;
}

Real pi() { return eval_constant("pi", ctx50); }

}  // namespace

TEST_CASE("family validation") {
    CHECK_THROWS_AS(LimitFamily{}.validate(), DomainError);
    auto fam = family([](const Real& u) { return u; }, range(1, 3));
    fam.points[1].limit.ctx = PrecisionContext::make(60);
    CHECK_THROWS_AS(fam.validate(), DomainError);
}

TEST_CASE("rational family: RNI and RFP, ANI gated") {
    auto fam = family([](const Real& u) { return Real((u * u + 1) / (u + 2)); }, range(1, 10));
    auto rep = run_all(fam);
    CHECK(rep.vector_string() == "-Y---Y----");
    CHECK(rep.witness_text("RFP").find("(u^2 + 1) / (u + 2)") != std::string::npos);
    CHECK(std::holds_alternative<Rational>(rep.verdicts.at("RNI").witness));
}

TEST_CASE("quadratic irrationals: ANI, RCP") {
    std::vector<Rational> us;
    for (int k : {2, 3, 5, 6, 7, 8, 10, 11, 12, 13}) us.emplace_back(k);
    auto rep = run_all(family([](const Real& u) { return Real(sqrt(u) + 1); }, us));
    CHECK(rep.fired("ANI"));
    CHECK_FALSE(rep.fired("RNI"));
    CHECK(rep.witness_text("ANI") == "x^2 - 2x - 1");
    CHECK(rep.fired("RCP"));
    CHECK(rep.witness_text("RCP").find("a = 2; b = 1; c = 1") != std::string::npos);
    CHECK_FALSE(rep.fired("PCP"));
}

TEST_CASE("KCI recovers a Mobius image of pi") {
    Real p = pi();
    auto fam = family([&](const Real& u) { return Real((1 + u * p) / (2 + p)); }, range(1, 10));
    auto kci = test_kci(fam);
    REQUIRE(kci.fired);
    const auto& cc = std::get<ConstantCombination>(kci.witness);
    CHECK(cc.names.size() >= 2);
    CHECK_FALSE(test_ani(fam).fired);
    CHECK_FALSE(test_rni(fam).fired);
    // only 1 involved: no KCI
    auto rational = family([](const Real& u) { return Real(u / 3); }, range(1, 10));
    CHECK_FALSE(test_kci(rational).fired);
}

TEST_CASE("KCI honours the constant subset") {
    Real g = eval_constant("G", ctx50);
    auto fam = family([&](const Real& u) { return Real(g + u); }, range(1, 10));
    IdentifierConfig cfg;
    cfg.kci_constants = {"pi", "e"};
    CHECK_FALSE(test_kci(fam, cfg).fired);
    cfg.kci_constants = {"G"};
    CHECK(test_kci(fam, cfg).fired);
}

TEST_CASE("exponential families") {
    Real p = pi();
    auto efp = run_all(family([&](const Real& u) { return Real(p * exp(u)); }, range(1, 10)));
    CHECK(efp.fired("EFP"));
    CHECK(efp.witness_text("EFP").find("a = e; b = pi") != std::string::npos);
    CHECK(efp.fired("CEI"));  // P1 P2 = P0 P3

    auto iep = run_all(family([&](const Real& u) { return Real(exp(2 / u)); }, range(1, 10)));
    CHECK(iep.fired("IEP"));
    CHECK(iep.witness_text("IEP").find("a = e^2; b = 1") != std::string::npos);
    CHECK_FALSE(iep.fired("EFP"));
}

TEST_CASE("CPI finds P(u) P(-u) = 1") {
    std::vector<Rational> us;
    for (int k = 1; k <= 5; ++k) {
        us.emplace_back(k);
        us.emplace_back(-k);
    }
    auto fam = family([](const Real& u) { return Real(exp(1 / u)); }, us);
    auto cpi = test_cpi(fam);
    REQUIRE(cpi.fired);
    const auto& pr = std::get<ProductRelation>(cpi.witness);
    CHECK(pr.members.size() == 2);
    CHECK(pr.u_estimate.has_value());
}

TEST_CASE("power-curve families") {
    Real p = pi();
    auto pcp = run_all(family([&](const Real& u) { return Real(p * u * u * u + 1); }, range(1, 10)));
    CHECK(pcp.fired("PCP"));
    CHECK(pcp.witness_text("PCP").find("a = 3; b = pi; c = 1") != std::string::npos);
    CHECK_FALSE(pcp.fired("RCP"));
    CHECK_FALSE(pcp.fired("RFP"));

    auto neg = run_all(family([&](const Real& u) { return Real(p / (u * u) + 1); }, range(1, 10)));
    CHECK(neg.witness_text("PCP").find("a = -2") != std::string::npos);

    std::vector<Rational> us;
    for (int k : {2, 3, 5, 6, 7, 8, 10, 11, 12, 13}) us.emplace_back(k);
    auto rcp = run_all(family([&](const Real& u) { return Real(p * cbrt(u) + 1); }, us));
    CHECK(rcp.fired("RCP"));
    CHECK(rcp.witness_text("RCP").find("a = 3; b = pi; c = 1") != std::string::npos);
}

TEST_CASE("nothing to find") {
    // ln(u + 1) * gamma: CPI/CEI catch ln 4 = 2 ln 2, nothing else should
    Real g = eval_constant("gamma", ctx50);
    auto rep = run_all(family([&](const Real& u) { return Real(log(u + 1) * g); }, range(1, 10)));
    CHECK(rep.vector_string() == "--YY------");
}

TEST_CASE("serial tests need a varied slot") {
    auto fam = family([](const Real& u) { return Real(u * u); }, range(1, 10));
    fam.varied_slot.clear();
    auto v = test_rfp(fam);
    CHECK_FALSE(v.fired);
    CHECK_FALSE(v.note.empty());
}

TEST_CASE("serial order and determinism") {
    Real p = pi();
    auto fam = family([&](const Real& u) { return Real(p * exp(u)); }, {3, 1, 2, 5, 4, 7, 6, 9, 8, 10});
    auto sorted = serial_order(fam);
    for (std::size_t i = 0; i < sorted.points.size(); ++i) CHECK(sorted.points[i].assignment.at("u") == int(i + 1));
    auto a = run_all(fam), b = run_all(fam);
    CHECK(a.vector_string() == b.vector_string());
    for (const char* t : kTestNames) CHECK(a.witness_text(t) == b.witness_text(t));
    CHECK(a.vector_string() == run_all(sorted).vector_string());
}

TEST_CASE("effective precision follows the weakest limit") {
    auto fam = family([](const Real& u) { return Real(sqrt(u)); }, range(2, 11));
    {
        PrecisionScope scope(ctx50);
        fam.points[3].limit.error_estimate = pow10(-35);
        fam.points[3].limit.converged = false;
    }
    std::vector<std::string> flags;
    auto eff = effective_context(fam, &flags);
    CHECK(eff.decimal_digits == 35);
    CHECK_FALSE(flags.empty());
}

TEST_CASE("merging reports is an OR") {
    auto r1 = run_all(family([](const Real& u) { return Real(u / 7); }, range(1, 10)));
    Real p = pi();
    auto r2 = run_all(family([&](const Real& u) { return Real(p * exp(u)); }, range(1, 10)));
    auto m = merge_reports({r1, r2});
    for (const char* t : kTestNames) CHECK(m.fired(t) == (r1.fired(t) || r2.fired(t)));
    CHECK(merge_reports({}).vector_string() == "----------");
}
