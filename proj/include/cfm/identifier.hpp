#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cfm/cfrac.hpp"
#include "cfm/lattice.hpp"

namespace cfm {

inline constexpr std::array<const char*, 10> kTestNames = {"ANI", "RNI", "CPI", "CEI", "KCI",
                                                           "RFP", "EFP", "IEP", "PCP", "RCP"};

struct FamilyPoint {
    ParameterAssignment assignment;
    LimitEstimate limit;
};

struct LimitFamily {
    std::vector<FamilyPoint> points;
    std::string varied_slot;  // empty: no serial axis
    PrecisionContext ctx;

    void validate() const;
    std::optional<Real> serial_value(std::size_t i) const;
};

struct IdentifierConfig {
    Integer relation_bound = 10000;
    LllOptions lll;
    int max_degree = 10;
    double serial_linear_residual = 1e-10;
    double nonlinear_residual = 1e-8;
    int rfp_max_total_degree = 6;
    int pcp_max_exponent = 6;
    int rcp_max_root = 6;
    long fitted_max_denominator = 1000;
    bool accept_library_constants = true;  // fitted parameters may be r * L for L in the library
    std::vector<std::string> kci_constants;  // empty: whole library
};

struct FittedParameter {
    std::string name;
    Real value;
    std::optional<Rational> rational;  // value = rational * constant
    std::string constant = "1";
    bool recognized() const { return rational.has_value(); }
    std::string to_string() const;
};

struct FittedModel {
    std::string form;  // RFP, EFP, IEP, PCP or RCP
    std::vector<FittedParameter> parameters;
    IntegerPolynomial numerator, denominator;  // RFP only
    Real residual;                              // max relative error over the points
    std::string symbolic() const;
};

// A relation among products of family members (CPI, CEI).
struct ProductRelation {
    std::vector<std::size_t> members;  // indices into the family (in serial order)
    std::vector<std::string> terms;    // labels of the relation inputs, "1", "P3", "P3*P4", ...
    RelationWitness relation;
    std::optional<Real> u_estimate;    // CPI: U chosen as the first member
    std::string mobius;                // CPI: second member as a Mobius image of the first
    std::string symbolic() const;
};

using Witness = std::variant<std::monostate, Rational, IntegerPolynomial, ProductRelation, ConstantCombination, FittedModel>;

struct Verdict {
    bool fired = false;
    Witness witness;
    Real likelihood = 0;               // decimal digits of margin below the acceptance threshold
    std::vector<std::size_t> points;   // family indices the verdict rests on
    std::string note;
};

struct TestReport {
    std::map<std::string, Verdict> verdicts;
    std::vector<std::string> flags;
    PrecisionContext effective_ctx;

    bool fired(const std::string& test) const;
    // Ten characters in table order, 'Y' for fired, '-' otherwise.
    std::string vector_string() const;
    std::string witness_text(const std::string& test) const;
};

std::string witness_to_string(const Witness& w);

// Precision the tests can trust: working digits, reduced when a limit is
// known to fewer digits than the comparisons need.
PrecisionContext effective_context(const LimitFamily& fam, std::vector<std::string>* flags = nullptr);

// Family sorted by the varied parameter (stable; unchanged without a serial axis).
LimitFamily serial_order(const LimitFamily& fam);

Verdict test_rni(const LimitFamily& fam, const IdentifierConfig& cfg = {});
Verdict test_ani(const LimitFamily& fam, const IdentifierConfig& cfg = {}, const Verdict* rni = nullptr);
Verdict test_cpi(const LimitFamily& fam, const IdentifierConfig& cfg = {}, const Verdict* rni = nullptr);
Verdict test_cei(const LimitFamily& fam, const IdentifierConfig& cfg = {}, const Verdict* rni = nullptr);
Verdict test_kci(const LimitFamily& fam, const IdentifierConfig& cfg = {}, const Verdict* rni = nullptr);
Verdict test_rfp(const LimitFamily& fam, const IdentifierConfig& cfg = {});
Verdict test_efp(const LimitFamily& fam, const IdentifierConfig& cfg = {});
Verdict test_iep(const LimitFamily& fam, const IdentifierConfig& cfg = {});
Verdict test_pcp(const LimitFamily& fam, const IdentifierConfig& cfg = {});
Verdict test_rcp(const LimitFamily& fam, const IdentifierConfig& cfg = {});

TestReport run_all(const LimitFamily& fam, const IdentifierConfig& cfg = {});

// OR of verdict vectors; the witness of the first report that fired is kept.
TestReport merge_reports(const std::vector<TestReport>& reports);

}  // namespace cfm
