#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cfm/errors.hpp"

namespace cfm {

using Real = boost::multiprecision::mpfr_float;
using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

struct PrecisionContext {
    int decimal_digits = 50;
    int guard_digits = 10;

    // Throws DomainError when the invariants (digits >= 30, guard >= 10) fail.
    static PrecisionContext make(int digits, int guard = 10);
    void validate() const;
    int significant_digits() const { return decimal_digits - guard_digits; }
    bool operator==(const PrecisionContext&) const = default;
};

// Sets the MPFR default precision for the lifetime of the scope.
// The backend keeps this setting process-wide, so nested scopes restore
// the previous value and concurrent work must share one context.
class PrecisionScope {
public:
    explicit PrecisionScope(const PrecisionContext& ctx);
    explicit PrecisionScope(int digits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

Real to_real(const Rational& q);
Real to_real(const Integer& z);
Real pow10(int e);  // 10^e at the current default precision
Real parse_real(std::string_view text);  // throws ParseError
Rational parse_rational(std::string_view text);  // "p", "p/q" or a finite decimal
std::string to_decimal(const Real& x, int digits);
std::string to_string(const Rational& q);
// Decimal digits of agreement between two reals (relative), capped at cap.
int agreement_digits(const Real& a, const Real& b, int cap);

struct NamedConstant {
    std::string name;
    Real value;
};

class ConstantLibrary {
public:
    using Evaluator = std::function<Real(const PrecisionContext&)>;
    struct Entry {
        std::string name;
        Evaluator evaluate;
    };

    static const ConstantLibrary& standard();

    const std::vector<Entry>& entries() const { return entries_; }
    bool contains(std::string_view name) const;
    std::vector<std::string> names() const;
    // Order follows the library, not the argument.
    ConstantLibrary subset(const std::vector<std::string>& names) const;
    std::vector<NamedConstant> evaluate(const PrecisionContext& ctx) const;

private:
    std::vector<Entry> entries_;
};

Real eval_constant(std::string_view name, const PrecisionContext& ctx);

std::optional<Rational> rationality_detect(const Real& x, const Integer& max_denominator,
                                           const PrecisionContext& ctx);

// Best rational with q <= max_den and |x - p/q| <= tol, taken from the
// convergents of x.  Used for fitted parameters where the tolerance is
// set by a residual rather than the working precision.
std::optional<Rational> approximate_rational(const Real& x, const Integer& max_den, const Real& tol);

std::vector<Rational> farey(int order);

}  // namespace cfm
