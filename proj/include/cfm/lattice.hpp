#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cfm/numeric.hpp"

namespace cfm {

using IntVector = std::vector<Integer>;

class IntegerMatrix {
public:
    IntegerMatrix() = default;
    explicit IntegerMatrix(std::vector<IntVector> rows);  // throws DomainError unless rectangular, >= 1 row
    static IntegerMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return rows_.empty() ? 0 : rows_.front().size(); }
    const IntVector& operator[](std::size_t i) const { return rows_[i]; }
    IntVector& operator[](std::size_t i) { return rows_[i]; }
    const std::vector<IntVector>& data() const { return rows_; }
    bool operator==(const IntegerMatrix&) const = default;

private:
    std::vector<IntVector> rows_;
};

Integer dot(const IntVector& a, const IntVector& b);
Integer max_norm(const IntVector& v);

struct LllOptions {
    // Lovasz parameter as an exact fraction, 99/100 by default.
    long delta_num = 99;
    long delta_den = 100;
};

// Exact integral LLL.  Rows must be linearly independent.
IntegerMatrix lll_reduce(IntegerMatrix basis, const LllOptions& opt = {});

struct RelationWitness {
    IntVector coefficients;
    Integer norm;       // max |c_i|
    Real residual;      // sum c_i x_i at working precision
    Real threshold;     // acceptance bound the residual was checked against
    std::vector<IntVector> alternatives;  // other accepted rows, shortest first
};

struct RelationOptions {
    Integer bound = 10000;
    std::size_t max_values = 40;
};

// Single-column embedding: rows (e_i | round(10^s x_i)) with s = digits - guard.
std::optional<RelationWitness> find_integer_relation(const std::vector<Real>& values, const Integer& bound,
                                                     const PrecisionContext& ctx, const LllOptions& lll = {});

// One integer vector c satisfying sum_i c_i x_{i,k} ~ 0 for every column k.
// columns[k][i] is the i-th coefficient value at sample k.
std::optional<RelationWitness> find_simultaneous_relation(const std::vector<std::vector<Real>>& columns,
                                                          const Integer& bound, const PrecisionContext& ctx,
                                                          const LllOptions& lll = {});

// Ascending coefficients: c[0] + c[1] x + ... ; content 1, leading > 0.
struct IntegerPolynomial {
    IntVector coefficients;

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
    Real evaluate(const Real& x) const;
    IntegerPolynomial normalized() const;
    bool squarefree() const;  // gcd(p, p') is constant
    std::string to_string(const std::string& var = "x") const;
    bool operator==(const IntegerPolynomial&) const = default;
};

// Lowest-degree squarefree relation among 1, x, ..., x^max_degree.  Powers of
// (x - r) for a near-rational x are rejected.
std::optional<IntegerPolynomial> minimal_polynomial(const Real& x, int max_degree, const Integer& bound,
                                                    const PrecisionContext& ctx, const LllOptions& lll = {});

struct ConstantCombination {
    RelationWitness witness;
    std::vector<std::string> names;
    IntVector denominator;  // a_j: q * sum a_j L_j
    IntVector numerator;    // b_j: = sum b_j L_j
    std::string symbolic() const;
};

std::optional<ConstantCombination> find_constant_combination(const Real& q, const std::vector<NamedConstant>& constants,
                                                             const Integer& bound, const PrecisionContext& ctx,
                                                          const LllOptions& lll = {});

}  // namespace cfm
