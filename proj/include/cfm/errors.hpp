#pragma once

#include <stdexcept>
#include <string>

namespace cfm {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct UnknownConstant : std::invalid_argument {
    explicit UnknownConstant(const std::string& name)
        : std::invalid_argument("unknown constant: " + name) {}
};

// Scaling exponent s = digits - guard fell below the usable minimum.
struct PrecisionTooLow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateBasis : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroDenominator : std::runtime_error {
    explicit ZeroDenominator(long lvl)
        : std::runtime_error("zero denominator at level " + std::to_string(lvl)), level(lvl) {}
    long level;
};

struct DivergentSeries : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cfm
