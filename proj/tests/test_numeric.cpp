#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cfm/numeric.hpp"
#include "oracles.hpp"

using namespace cfm;

namespace {

int digits_vs(const Real& x, const char* ref, int cap) { return agreement_digits(x, parse_real(ref), cap); }

}  // namespace

TEST_CASE("precision context invariants") {
    CHECK_NOTHROW(PrecisionContext::make(30, 10));
    CHECK_THROWS_AS(PrecisionContext::make(29, 10), DomainError);
    CHECK_THROWS_AS(PrecisionContext::make(50, 9), DomainError);
    CHECK(PrecisionContext::make(50).significant_digits() == 40);
}

TEST_CASE("precision scopes nest and restore") {
    unsigned before = Real::default_precision();
    {
        PrecisionScope a(80);
        CHECK(Real::default_precision() == 80);
        {
            PrecisionScope b(PrecisionContext::make(40));
            CHECK(Real::default_precision() == 40);
        }
        CHECK(Real::default_precision() == 80);
    }
    CHECK(Real::default_precision() == before);
}

TEST_CASE("parsing") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-6/8") == Rational(-3, 4));
    CHECK(parse_rational("-0.125") == Rational(-1, 8));
    CHECK(parse_rational("0.09") == Rational(9, 100));
    CHECK(parse_rational("010/08") == Rational(5, 4));
    CHECK(parse_rational("+3") == Rational(3));
    CHECK(parse_rational("2.") == Rational(2));
    CHECK(parse_rational(" 7 ") == Rational(7));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("pi"), ParseError);
    CHECK_THROWS_AS(parse_rational("."), ParseError);
    CHECK_THROWS_AS(parse_real("1.2.3"), ParseError);
    PrecisionScope scope(50);
    CHECK(parse_real(" 0.25 ") == Real("0.25"));
    CHECK(to_string(Rational(-10, 4)) == "-5/2");
    CHECK(to_string(Rational(6, 3)) == "2");
}

TEST_CASE("library constants match mpmath") {
    struct Ref { const char* name; const char* value; };
    const Ref refs[] = {{"pi", oracle::pi},       {"pi^2", oracle::pi2},     {"zeta(3)", oracle::zeta3},
                        {"zeta(5)", oracle::zeta5}, {"gamma", oracle::gamma}, {"G", oracle::catalan},
                        {"ln2", oracle::ln2},     {"ln3", oracle::ln3},      {"e", oracle::e},
                        {"sqrt(e)", oracle::sqrt_e}};
    for (int digits : {50, 68}) {
        auto ctx = PrecisionContext::make(digits);
        PrecisionScope scope(ctx);
        for (const auto& r : refs) {
            CAPTURE(r.name);
            CHECK(digits_vs(eval_constant(r.name, ctx), r.value, 100) >= digits - 2);
        }
    }
    auto ctx = PrecisionContext::make(50);
    PrecisionScope scope(ctx);
    Real phi = parse_real(oracle::phi);
    CHECK(agreement_digits(eval_constant("phi^2", ctx), phi * phi, 100) >= 48);
    CHECK_THROWS_AS(eval_constant("tau", ctx), UnknownConstant);
    CHECK(ConstantLibrary::standard().contains("1"));
    CHECK(ConstantLibrary::standard().subset({"pi", "1"}).names() == std::vector<std::string>{"1", "pi"});
}

TEST_CASE("rationality detection") {
    auto ctx = PrecisionContext::make(50);
    PrecisionScope scope(ctx);
    CHECK(rationality_detect(to_real(Rational(355, 113)), 1000, ctx) == Rational(355, 113));
    CHECK(rationality_detect(to_real(Rational(-7, 3)), 1000, ctx) == Rational(-7, 3));
    CHECK(rationality_detect(Real(0), 1, ctx) == Rational(0));
    CHECK_FALSE(rationality_detect(parse_real(oracle::pi), Integer(1000000000), ctx));
    // denominator above the bound
    CHECK_FALSE(rationality_detect(to_real(Rational(1, 1000001)), 1000000, ctx));
    // 10^-45 off a rational is below 40 significant digits of noise
    CHECK(rationality_detect(to_real(Rational(2, 3)) + pow10(-45), 100, ctx) == Rational(2, 3));
    CHECK_FALSE(rationality_detect(to_real(Rational(2, 3)) + pow10(-30), 100, ctx));
    CHECK_THROWS_AS(rationality_detect(Real(1), 0, ctx), DomainError);
}

TEST_CASE("approximate_rational honours the tolerance") {
    PrecisionScope scope(50);
    Real pi = parse_real(oracle::pi);
    CHECK(approximate_rational(pi, 10, Real("0.01")) == Rational(22, 7));
    CHECK(approximate_rational(pi, 200, Real("1e-6")) == Rational(355, 113));
    CHECK_FALSE(approximate_rational(pi, 100, Real("1e-6")));
}

TEST_CASE("farey sequences") {
    std::vector<Rational> f5 = {Rational(0), Rational(1, 5), Rational(1, 4), Rational(1, 3), Rational(2, 5), Rational(1, 2),
                                Rational(3, 5), Rational(2, 3), Rational(3, 4), Rational(4, 5), Rational(1)};
    CHECK(farey(5) == f5);
    CHECK(farey(1) == std::vector<Rational>{Rational(0), Rational(1)});
    CHECK_THROWS_AS(farey(0), DomainError);
}

TEST_CASE("agreement digits") {
    PrecisionScope scope(50);
    CHECK(agreement_digits(Real(1), Real(1), 40) == 40);
    CHECK(agreement_digits(Real("1.0001"), Real(1), 40) == 4);
    CHECK(agreement_digits(Real("1.0003"), Real(1), 40) == 3);
    CHECK(agreement_digits(Real(1), Real(-1), 40) == 0);
}
