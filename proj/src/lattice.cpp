#include "cfm/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace cfm {

IntegerMatrix::IntegerMatrix(std::vector<IntVector> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw DomainError("matrix needs at least one row");
    for (const auto& r : rows_)
        if (r.size() != rows_.front().size() || r.empty()) throw DomainError("matrix rows must have equal, nonzero length");
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
    std::vector<IntVector> rows(n, IntVector(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1;
    return IntegerMatrix(std::move(rows));
}

Integer dot(const IntVector& a, const IntVector& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Integer max_norm(const IntVector& v) {
    Integer m = 0;
    for (const auto& x : v) m = std::max(m, Integer(abs(x)));
    return m;
}

namespace {

// Nearest integer to a/b for b > 0, halves rounded up.
Integer round_div(const Integer& a, const Integer& b) {
    Integer t = 2 * a + b;
    Integer q = t / (2 * b);
    if (t < 0 && q * 2 * b != t) q -= 1;  // floor for negative numerators
    return q;
}

void axpy_row(IntVector& dst, const Integer& q, const IntVector& src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= q * src[i];
}

}  // namespace

// Integral LLL after Cohen, "A Course in Computational Algebraic Number
// Theory", Algorithm 2.6.7.  Indices are 1-based to follow the recurrences.
IntegerMatrix lll_reduce(IntegerMatrix basis, const LllOptions& opt) {
    const std::size_t n = basis.rows();
    if (n == 0) throw DomainError("empty basis");
    std::vector<IntVector> b(n + 1);
    for (std::size_t i = 0; i < n; ++i) b[i + 1] = basis[i];
    std::vector<Integer> d(n + 1, Integer(0));
    std::vector<std::vector<Integer>> lam(n + 1, std::vector<Integer>(n + 1, Integer(0)));
    const Integer dn = opt.delta_num, dd = opt.delta_den;

    d[0] = 1;
    d[1] = dot(b[1], b[1]);
    if (d[1] == 0) throw DegenerateBasis("zero row in basis");
    if (n == 1) return basis;

    auto red = [&](std::size_t k, std::size_t l) {
        if (2 * abs(lam[k][l]) <= d[l]) return;
        Integer q = round_div(lam[k][l], d[l]);
        axpy_row(b[k], q, b[l]);
        lam[k][l] -= q * d[l];
        for (std::size_t i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
    };

    std::size_t k = 2, kmax = 1;
    auto swap = [&](std::size_t k) {
        std::swap(b[k], b[k - 1]);
        for (std::size_t j = 1; j + 2 <= k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
        Integer l = lam[k][k - 1];
        Integer B = (d[k - 2] * d[k] + l * l) / d[k - 1];
        for (std::size_t i = k + 1; i <= kmax; ++i) {
            Integer t = lam[i][k];
            lam[i][k] = (d[k] * lam[i][k - 1] - l * t) / d[k - 1];
            lam[i][k - 1] = (B * t + l * lam[i][k]) / d[k];
        }
        d[k - 1] = B;
    };

    while (k <= n) {
        if (k > kmax) {
            kmax = k;
            for (std::size_t j = 1; j <= k; ++j) {
                Integer u = dot(b[k], b[j]);
                for (std::size_t i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
                if (j < k)
                    lam[k][j] = u;
                else {
                    if (u == 0) throw DegenerateBasis("basis rows are linearly dependent");
                    d[k] = u;
                }
            }
        }
        red(k, k - 1);
        if (dd * d[k] * d[k - 2] < dn * d[k - 1] * d[k - 1] - dd * lam[k][k - 1] * lam[k][k - 1]) {
            swap(k);
            if (k > 2) --k;
        } else {
            for (std::size_t l = k - 1; l-- > 1;) red(k, l);
            ++k;
        }
    }
    std::vector<IntVector> out(b.begin() + 1, b.end());
    return IntegerMatrix(std::move(out));
}

// ---- relations ----------------------------------------------------------

namespace {

void normalize_sign(IntVector& c) {
    for (const auto& x : c) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : c) y = -y;
        return;
    }
}

struct Candidate {
    IntVector c;
    Integer norm;
    Real residual;  // worst column residual
};

// Shared core: columns[k][i] is value i in sample k; every column is
// scaled by its own magnitude before rounding.
std::optional<RelationWitness> relation_core(const std::vector<std::vector<Real>>& columns, const Integer& bound,
                                             const PrecisionContext& ctx, const LllOptions& lll) {
    const int s = ctx.significant_digits();
    if (s < 10) throw PrecisionTooLow("scaling exponent " + std::to_string(s) + " below 10");
    if (columns.empty()) throw DomainError("no samples");
    const std::size_t n = columns.front().size();
    for (const auto& col : columns)
        if (col.size() != n) throw DomainError("ragged relation columns");

    PrecisionScope scope(ctx);
    const Real scale = pow10(s);
    std::vector<Real> colmax;
    for (const auto& col : columns) {
        Real m = 0;
        for (const auto& x : col) m = std::max(m, Real(abs(x)));
        colmax.push_back(m);
    }

    std::vector<IntVector> rows(n, IntVector(n + columns.size(), Integer(0)));
    for (std::size_t i = 0; i < n; ++i) {
        rows[i][i] = 1;
        for (std::size_t k = 0; k < columns.size(); ++k) {
            if (colmax[k] == 0) continue;
            Real v = columns[k][i] / colmax[k] * scale;
            rows[i][n + k] = Real(round(v)).convert_to<Integer>();
        }
    }
    IntegerMatrix reduced = lll_reduce(IntegerMatrix(std::move(rows)), lll);

    const Real tol = pow10(-s);
    std::vector<Candidate> accepted;
    Real worst_threshold = 0;
    for (std::size_t r = 0; r < reduced.rows(); ++r) {
        IntVector c(reduced[r].begin(), reduced[r].begin() + static_cast<long>(n));
        Integer norm = max_norm(c);
        if (norm == 0 || norm > bound) continue;
        // LLL searches the whole box |c_i| <= norm: (2 norm + 1)^n candidates,
        // of which chance alone lets about 10^-s pass.  The relation must be
        // rarer than that by the guard digits.
        Real cost = Real(n) * log10(Real(2 * norm + 1));
        if (cost > s - ctx.guard_digits) continue;
        bool ok = true;
        Real worst = 0;
        for (std::size_t k = 0; k < columns.size() && ok; ++k) {
            Real res = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (c[i] != 0) res += Real(c[i]) * columns[k][i];
            Real thr = tol * colmax[k];
            if (abs(res) >= thr && res != 0) ok = false;
            Real rel = colmax[k] == 0 ? Real(0) : Real(abs(res) / colmax[k]);
            if (rel > worst) worst = rel;
            if (k == 0) worst_threshold = thr;
        }
        if (!ok) continue;
        normalize_sign(c);
        accepted.push_back({std::move(c), norm, columns.size() == 1 ? Real(worst * colmax[0]) : worst});
    }
    if (accepted.empty()) return std::nullopt;
    std::stable_sort(accepted.begin(), accepted.end(),
                     [](const Candidate& a, const Candidate& b) { return a.norm < b.norm; });
    RelationWitness w;
    w.coefficients = accepted.front().c;
    w.norm = accepted.front().norm;
    // Recompute the signed residual for the chosen row on the first sample.
    w.residual = 0;
    for (std::size_t i = 0; i < n; ++i) w.residual += Real(w.coefficients[i]) * columns.front()[i];
    w.threshold = columns.size() == 1 ? worst_threshold : tol;
    for (std::size_t a = 1; a < accepted.size(); ++a) w.alternatives.push_back(accepted[a].c);
    return w;
}

}  // namespace

std::optional<RelationWitness> find_integer_relation(const std::vector<Real>& values, const Integer& bound,
                                                     const PrecisionContext& ctx, const LllOptions& lll) {
    if (values.size() < 2 || values.size() > RelationOptions{}.max_values)
        throw DomainError("find_integer_relation needs between 2 and 40 values");
    for (const auto& v : values)
        if (!boost::multiprecision::isfinite(v)) throw DomainError("non-finite value in relation input");
    return relation_core({values}, bound, ctx, lll);
}

std::optional<RelationWitness> find_simultaneous_relation(const std::vector<std::vector<Real>>& columns,
                                                          const Integer& bound, const PrecisionContext& ctx,
                                                          const LllOptions& lll) {
    if (columns.empty() || columns.front().size() < 2) throw DomainError("simultaneous relation needs >= 2 unknowns");
    for (const auto& col : columns)
        for (const auto& v : col)
            if (!boost::multiprecision::isfinite(v)) throw DomainError("non-finite value in relation input");
    return relation_core(columns, bound, ctx, lll);
}

// ---- polynomials ----------------------------------------------------------

Real IntegerPolynomial::evaluate(const Real& x) const {
    Real acc = 0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + Real(*it);
    return acc;
}

IntegerPolynomial IntegerPolynomial::normalized() const {
    IntVector c = coefficients;
    while (c.size() > 1 && c.back() == 0) c.pop_back();
    Integer g = 0;
    for (const auto& x : c) g = gcd(g, Integer(abs(x)));
    if (g > 1)
        for (auto& x : c) x /= g;
    if (!c.empty() && c.back() < 0)
        for (auto& x : c) x = -x;
    return IntegerPolynomial{c};
}

bool IntegerPolynomial::squarefree() const {
    using Poly = std::vector<Rational>;
    auto trim = [](Poly& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    };
    Poly a(coefficients.begin(), coefficients.end()), b;
    trim(a);
    if (a.size() <= 2) return true;
    for (std::size_t k = 1; k < a.size(); ++k) b.push_back(a[k] * Rational(static_cast<long>(k)));
    trim(b);
    while (!b.empty()) {
        while (a.size() >= b.size() && !a.empty()) {
            Rational f = a.back() / b.back();
            std::size_t shift = a.size() - b.size();
            for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
            trim(a);
        }
        std::swap(a, b);
    }
    return a.size() <= 1;
}

std::string IntegerPolynomial::to_string(const std::string& var) const {
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Integer& c = coefficients[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        Integer a = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (k == 0 || a != 1) os << a;
        if (k > 0) os << var;
        if (k > 1) os << "^" << k;
    }
    if (first) os << "0";
    return os.str();
}

std::optional<IntegerPolynomial> minimal_polynomial(const Real& x, int max_degree, const Integer& bound,
                                                    const PrecisionContext& ctx, const LllOptions& lll) {
    if (max_degree < 1 || max_degree > 10) throw DomainError("max_degree must lie in 1..10");
    PrecisionScope scope(ctx);
    std::vector<Real> powers{Real(1)};
    for (int d = 1; d <= max_degree; ++d) {
        powers.push_back(Real(powers.back() * x));
        auto rel = find_integer_relation(powers, bound, ctx, lll);
        if (!rel) continue;
        std::vector<IntVector> cands{rel->coefficients};
        cands.insert(cands.end(), rel->alternatives.begin(), rel->alternatives.end());
        for (const auto& c : cands) {
            IntegerPolynomial p = IntegerPolynomial{c}.normalized();
            if (p.degree() >= 1 && p.squarefree()) return p;
        }
    }
    return std::nullopt;
}

// ---- constant combinations -------------------------------------------------

namespace {

std::string linear_form(const IntVector& c, const std::vector<std::string>& names) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] == 0) continue;
        Integer a = abs(c[j]);
        if (first)
            os << (c[j] < 0 ? "-" : "");
        else
            os << (c[j] < 0 ? " - " : " + ");
        first = false;
        if (names[j] == "1")
            os << a;
        else if (a == 1)
            os << names[j];
        else
            os << a << "*" << names[j];
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace

std::string ConstantCombination::symbolic() const {
    return "q = (" + linear_form(numerator, names) + ") / (" + linear_form(denominator, names) + ")";
}

std::optional<ConstantCombination> find_constant_combination(const Real& q, const std::vector<NamedConstant>& constants,
                                                             const Integer& bound, const PrecisionContext& ctx,
                                                          const LllOptions& lll) {
    if (constants.empty() || constants.front().name != "1")
        throw DomainError("constant list must start with the constant 1");
    PrecisionScope scope(ctx);
    const std::size_t m = constants.size();
    std::vector<Real> values;
    for (const auto& c : constants) values.push_back(Real(q * c.value));
    for (const auto& c : constants) values.push_back(c.value);
    auto rel = find_integer_relation(values, bound, ctx, lll);
    if (!rel) return std::nullopt;

    std::vector<IntVector> cands{rel->coefficients};
    cands.insert(cands.end(), rel->alternatives.begin(), rel->alternatives.end());
    for (const auto& c : cands) {
        IntVector a(c.begin(), c.begin() + static_cast<long>(m));
        IntVector b(m);
        for (std::size_t j = 0; j < m; ++j) b[j] = -c[m + j];
        if (max_norm(a) == 0) continue;
        // a parallel to b means q = b_j/a_j is rational: nothing beyond the constant 1.
        bool parallel = true;
        for (std::size_t j = 0; j < m && parallel; ++j)
            for (std::size_t k = j + 1; k < m && parallel; ++k)
                if (a[j] * b[k] != a[k] * b[j]) parallel = false;
        if (parallel) continue;
        ConstantCombination out;
        out.witness = *rel;
        out.witness.coefficients = c;
        out.witness.norm = max_norm(c);
        out.witness.residual = 0;
        for (std::size_t i = 0; i < c.size(); ++i) out.witness.residual += Real(c[i]) * values[i];
        for (const auto& k : constants) out.names.push_back(k.name);
        out.denominator = std::move(a);
        out.numerator = std::move(b);
        return out;
    }
    return std::nullopt;
}

}  // namespace cfm
