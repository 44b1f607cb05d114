#pragma once

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "cfm/numeric.hpp"

namespace cfm {

// mu(i) = u4 * i^u5 + (u0 + i*u1)^u3 * u2^i
struct ProgressionParams {
    Rational u0 = 0, u1 = 0, u2 = 1;
    int u3 = 1;
    Rational u4 = 0;
    int u5 = 0;

    void validate() const;  // |u3|, |u5| <= 6
    bool operator==(const ProgressionParams&) const = default;
};

Rational mu(const ProgressionParams& p, long i);

struct Fixed {
    Rational value;
};
struct IntegerRange {
    long lo = 0, hi = 0;
};
struct RationalGrid {
    Rational lo, hi, step;
};
// scale * (n + f) for integers n and f in F_order, kept inside [lo, hi].
struct FareyBox {
    int order = 1;
    Rational scale = 1;
    Rational lo = 0, hi = 1;
};
// Explicit list of values.
struct ValueList {
    std::vector<Rational> values;
};

using Domain = std::variant<Fixed, IntegerRange, RationalGrid, FareyBox, ValueList>;

std::vector<Rational> domain_values(const Domain& d);  // sorted by |v| then sign (positive first)
bool domain_contains(const Domain& d, const Rational& v);
std::string describe(const Domain& d);

struct SlotSpace {
    std::vector<Domain> stages;         // stage 0 is the coarse domain
    std::vector<Rational> exclude_lo;   // closed intervals [lo, hi] removed from every stage
    std::vector<Rational> exclude_hi;

    bool excluded(const Rational& v) const;
};

struct SearchSpace {
    std::vector<std::pair<std::string, SlotSpace>> slots;  // lexicographic order = declaration order

    void validate() const;
    std::size_t stage_count() const;
};

struct ParameterAssignment {
    std::vector<std::pair<std::string, Rational>> values;
    int stage = 0;

    const Rational& at(const std::string& slot) const;
    std::optional<Rational> find(const std::string& slot) const;
    std::string to_string() const;
    bool same_values(const ParameterAssignment& o) const { return values == o.values; }
};

// Stage-by-stage cartesian product, skipping anything emitted earlier.
class SpaceIterator {
public:
    explicit SpaceIterator(SearchSpace s);
    std::optional<ParameterAssignment> next();
    int current_stage() const { return stage_; }

private:
    void load_stage(int s);

    SearchSpace space_;
    int stage_ = -1;
    std::vector<std::vector<Rational>> cur_;  // per-slot values of the current stage
    std::vector<std::size_t> idx_;
    bool exhausted_ = true;
    std::set<std::vector<Rational>> emitted_;
};

std::vector<ParameterAssignment> iterate_space(const SearchSpace& s);

}  // namespace cfm
