#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cfm/cfrac.hpp"
#include "oracles.hpp"

using namespace cfm;

using Q = Rational;

namespace {

TermSchedule literal(Q v) { return TermSchedule{{}, {LiteralSlot{std::move(v)}}}; }
TermSchedule progression(ProgressionParams p, long period = 1, long offset = 0) {
    return TermSchedule{{}, {ProgressionSlot{p, period, offset}}};
}

const PrecisionContext ctx50 = PrecisionContext::make(50);

int agree(const LimitEstimate& est, const char* ref) {
    PrecisionScope scope(est.ctx);
    return agreement_digits(est.value, parse_real(ref), 100);
}

}  // namespace

TEST_CASE("term schedules") {
    // e = [2; 1, 2, 1, 1, 4, 1, 1, 6, ...]
    TermSchedule d{{}, {LiteralSlot{1}, ProgressionSlot{{0, 2, 1, 1, 0, 0}, 3, 1}, LiteralSlot{1}}};
    CHECK(d.terms(9) == std::vector<Q>{1, 2, 1, 1, 4, 1, 1, 6, 1});
    TermSchedule p{{7, 8}, {LiteralSlot{1}}};
    CHECK(p.terms(4) == std::vector<Q>{7, 8, 1, 1});
    CHECK_THROWS_AS(p.term(0), DomainError);
    CHECK_THROWS_AS((TermSchedule{{}, {}}.validate()), DomainError);
    CHECK_THROWS_AS((TermSchedule{{}, {ProgressionSlot{{}, 0, 0}}}.validate()), DomainError);
}

TEST_CASE("golden ratio and sqrt 2") {
    SequenceSchedule phi{1, literal(1), literal(1)};
    auto est = eval_cfrac(phi, 200, ctx50);
    CHECK(agree(est, oracle::phi) >= 48);
    SequenceSchedule s2{1, literal(1), literal(2)};
    CHECK(agree(eval_cfrac(s2, 200, ctx50), oracle::sqrt2) >= 48);
}

TEST_CASE("e, two ways") {
    SequenceSchedule euler{2, progression({1, 1, 1, 1, 0, 0}), progression({1, 1, 1, 1, 0, 0})};
    CHECK(agree(eval_cfrac(euler, 100, ctx50), oracle::e) >= 48);
    SequenceSchedule simple{2, literal(1),
                            TermSchedule{{}, {LiteralSlot{1}, ProgressionSlot{{0, 2, 1, 1, 0, 0}, 3, 1}, LiteralSlot{1}}}};
    CHECK(agree(eval_cfrac(simple, 120, ctx50), oracle::e) >= 48);
}

TEST_CASE("auto depth stops once consecutive estimates agree") {
    // 4/pi = 1 + 1^2/(3 + 2^2/(5 + ...))
    SequenceSchedule s{1, progression({0, 1, 1, 2, 0, 0}), progression({1, 2, 1, 1, 0, 0})};
    auto est = auto_depth(s, 40, ctx50);
    CHECK(est.converged);
    CHECK(agree(est, oracle::four_over_pi) >= 45);
    CHECK(est.attained_digits() >= 40);
    auto capped = auto_depth(s, 40, ctx50, {4, 8});
    CHECK_FALSE(capped.converged);
    CHECK_FALSE(capped.flags.empty());
    CHECK_THROWS_AS(auto_depth(s, 45, ctx50), DomainError);
}

TEST_CASE("zero denominators are reported with their level") {
    // b_n = 10 - n: the fold starts at level 10 with b_10 = 0
    SequenceSchedule s{0, literal(1), progression({10, -1, 1, 1, 0, 0})};
    try {
        eval_cfrac(s, 10, ctx50);
        FAIL("expected ZeroDenominator");
    } catch (const ZeroDenominator& z) {
        CHECK(z.level == 10);
    }
    CHECK_NOTHROW(eval_cfrac(s, 9, ctx50));
}

TEST_CASE("extrapolation beats the raw fold on an algebraic tail") {
    // Brouncker: 4/pi = 1 + 1^2/(2 + 3^2/(2 + 5^2/(2 + ...))), error ~ c / N
    SequenceSchedule s{1, progression({-1, 2, 1, 2, 0, 0}), literal(2)};
    int raw = agree(eval_cfrac(s, 6400, ctx50), oracle::four_over_pi);
    int ex = agree(eval_cfrac_extrapolated(s, 100, ctx50), oracle::four_over_pi);
    CAPTURE(raw);
    CAPTURE(ex);
    CHECK(raw < 6);
    CHECK(ex >= raw + 10);
}

TEST_CASE("series") {
    PrecisionScope scope(ctx50);
    // sum (1/2)^k / k = ln 2
    auto est = eval_series([](long k) { return Real(pow(Real(2), -k) / k); }, 200, ctx50);
    CHECK(agree(est, oracle::ln2) >= 48);
    CHECK(est.converged);
    CHECK_THROWS_AS(eval_series([](long k) { return Real(k); }, 100, ctx50), DivergentSeries);
    CHECK_THROWS_AS(eval_series([](long) { return Real(0); }, 5, ctx50), DomainError);
}
