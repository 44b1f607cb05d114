#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cfm/explorer.hpp"

namespace cfm::casebook {

// ---- single evaluations ----------------------------------------------------------

struct Comparison {
    Real limit;
    Real expected;
    int agreement = 0;  // significant digits
};

// 1 + (1 + w)/(3 + (4 + w)/(5 + ...)) with w = 4u^2, against 2u(e^{u pi}+1)/(e^{u pi}-1).
Comparison case_epi(const Real& u, long depth, const PrecisionContext& ctx);

// u/(u + u/(u + ...)) at the given depth; returns |r^2 + u(r - 1)|.
struct PolyrootResult {
    Real limit;
    Real residual;
};
PolyrootResult case_polyroot(const Rational& u, long depth, const PrecisionContext& ctx);
std::vector<Rational> polyroot_listing_grid();  // -20..20 step 2/3, band [-4,0] replaced by 2/3

// Unit numerators, denominators mu(0),1,1,mu(1),1,1,... with mu(t) = kappa(t + 1/2) - 1, head 1.
SequenceSchedule exp_kappa_schedule(const Rational& kappa);
Comparison case_exp_kappa(const Rational& kappa, long depth, const PrecisionContext& ctx);

// ---- Catalan ----------------------------------------------------------------------

struct CatalanCase {
    Rational u, v;
    long i = 0;
    Rational eta;
    Real delta;
};

Rational eta(long i);  // sum_{k<i} (-1)^k/(2k+1)^2
SequenceSchedule catalan_schedule(const Rational& u, const Rational& v);
// Delta(u, v) = fraction/(2v), extrapolated from depths base * 2^k.
LimitEstimate case_catalan(const Rational& u, const Rational& v, const PrecisionContext& ctx, long base_depth = 400);
// Closed form of Delta(1, 4i^2 - 1): (-1)^{i+1} (eta(i) - G).
Real catalan_closed_form(long i, const PrecisionContext& ctx);

// |A006309| prefix from the listing and the text, exceptions included.
const std::vector<long>& a006309_prefix();

struct A006309Match {
    long f = 0;
    Real delta;                 // Delta(3, f)
    std::optional<long> i;      // Delta(1, 4i^2 - 1) within tolerance
    int agreement = 0;
};
std::vector<A006309Match> match_a006309(const std::vector<long>& values, const PrecisionContext& ctx,
                                        long max_i = 5000, double rel_tol = 1e-6);

// (u, v) = (1, 3) with numerators 1, (1-i)^2, (1-i)^2, (2-i)^2, ... and no 1/(2v) factor.
// The fraction terminates at the first zero numerator, so the limit is exact.
Rational case_numerator_variation(long i, long depth = 400);

// ---- Cloitre ----------------------------------------------------------------------

struct CloitreCase {
    Rational i, j;
    std::optional<Rational> ell;  // recovered: sum = (ell pi)^2
    Real sum;
};

Real cloitre_sum(const Rational& i, const Rational& j, const PrecisionContext& ctx);
CloitreCase case_cloitre(const Rational& i, const Rational& j, const PrecisionContext& ctx);

struct CloitreRow {
    Rational i_over_ell, j_over_ell, inv_ell;  // table columns
    bool sum_two;                              // listed under i + j = 2
    Rational i() const { return i_over_ell / inv_ell; }
    Rational j() const { return j_over_ell / inv_ell; }
    Rational ell() const { return 1 / inv_ell; }
};
const std::vector<CloitreRow>& cloitre_table();

// ---- families -----------------------------------------------------------------------

Query epi_query();
Query polyroot_query();
Query expk_query();
LimitFamily catalan_family(const PrecisionContext& ctx);
LimitFamily cloitre_family(const PrecisionContext& ctx);

enum class Study { Epi, Polyroot, ExpKappa, Catalan, Cloitre };
std::string study_name(Study s);
std::string expected_vector(Study s);  // the published row, 'Y' / '-'

struct FamilyVerdict {
    TestReport report;                 // OR over batches
    std::vector<std::string> batches;  // one vector per batch of ten
    std::vector<std::string> failures;
};
FamilyVerdict family_verdict(Study s, const PrecisionContext& ctx, const IdentifierConfig& cfg = {},
                             unsigned threads = 1);

// ---- scenarios ------------------------------------------------------------------------

struct CaseOptions {
    PrecisionContext ctx;
    long depth = 0;  // 0: the listing's depth
    IdentifierConfig identifier;
    unsigned threads = 1;
};

struct CaseOutput {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> notes;
    std::vector<std::string> failures;  // failed in-case assertions
    nlohmann::json record;

    bool ok() const { return failures.empty(); }
    std::string table() const;
};

const std::vector<std::string>& case_names();
CaseOutput run_case(const std::string& name, const CaseOptions& opt);  // DomainError on unknown name

}  // namespace cfm::casebook
