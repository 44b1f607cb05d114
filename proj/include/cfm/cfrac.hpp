#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "cfm/progressions.hpp"

namespace cfm {

// Progression slot: term n of the cycle maps to mu(floor((m + offset) / period)),
// m being the position after any prefix terms (m >= 1).
struct ProgressionSlot {
    ProgressionParams params;
    long period = 1;
    long offset = 0;
};
struct LiteralSlot {
    Rational value;
};
using Slot = std::variant<ProgressionSlot, LiteralSlot>;

struct TermSchedule {
    std::vector<Rational> prefix;  // explicit leading terms n = 1..prefix.size()
    std::vector<Slot> cycle;

    Rational term(long n) const;  // n >= 1
    std::vector<Rational> terms(long count) const;
    void validate() const;
};

struct SequenceSchedule {
    Rational head = 0;
    TermSchedule numerators;
    TermSchedule denominators;

    void validate() const;
};

struct LimitEstimate {
    Real value;
    long depth = 0;
    PrecisionContext ctx;
    Real error_estimate;
    bool converged = true;
    std::vector<std::string> flags;

    // Decimal digits supported by error_estimate, capped at ctx.decimal_digits.
    int attained_digits() const;
};

// Plain backward fold over explicit term lists: head + a1/(b1 + a2/(b2 + ...)).
Real fold_terms(const Rational& head, const std::vector<Rational>& a, const std::vector<Rational>& b);

LimitEstimate eval_cfrac(const SequenceSchedule& sched, long depth, const PrecisionContext& ctx);

struct AutoDepthOptions {
    long start_depth = 64;
    long depth_cap = 1L << 20;
};

LimitEstimate auto_depth(const SequenceSchedule& sched, int target_digits, const PrecisionContext& ctx,
                         const AutoDepthOptions& opt = {});

// Error model for algebraically converging fractions:
// value(N) = L + sum c_p N^-p + sum d_p N^-p log N.
// The default fits the Catalan family, whose error carries log N / N^4 terms.
struct ExtrapolationModel {
    std::vector<int> powers{1, 2, 3, 4, 5, 6};
    std::vector<int> log_powers{4, 5, 6, 7};
};

// Generalized Richardson extrapolation over depths base * 2^k.
LimitEstimate eval_cfrac_extrapolated(const SequenceSchedule& sched, long base_depth, const PrecisionContext& ctx,
                                      const ExtrapolationModel& model = {});

LimitEstimate eval_series(const std::function<Real(long)>& term, long cutoff, const PrecisionContext& ctx);

}  // namespace cfm
