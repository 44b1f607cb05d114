#include "cfm/cfrac.hpp"

#include <cmath>

namespace cfm {

namespace {

Integer floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

void set_real(Real& dst, const Rational& q) { mpfr_set_q(dst.backend().data(), q.backend().data(), MPFR_RNDN); }

}  // namespace

Rational TermSchedule::term(long n) const {
    if (n < 1) throw DomainError("term index must be >= 1");
    if (static_cast<std::size_t>(n) <= prefix.size()) return prefix[static_cast<std::size_t>(n - 1)];
    long m = n - static_cast<long>(prefix.size());
    const Slot& s = cycle[static_cast<std::size_t>((m - 1) % static_cast<long>(cycle.size()))];
    if (const auto* lit = std::get_if<LiteralSlot>(&s)) return lit->value;
    const auto& p = std::get<ProgressionSlot>(s);
    Integer idx = floor_div(m + p.offset, p.period);
    if (idx < 0) throw DomainError("progression index map produced a negative index");
    return mu(p.params, idx.convert_to<long>());
}

std::vector<Rational> TermSchedule::terms(long count) const {
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(count));
    for (long n = 1; n <= count; ++n) out.push_back(term(n));
    return out;
}

void TermSchedule::validate() const {
    if (cycle.empty()) throw DomainError("schedule cycle must have at least one slot");
    for (const auto& s : cycle)
        if (const auto* p = std::get_if<ProgressionSlot>(&s)) {
            if (p->period < 1) throw DomainError("slot period must be >= 1");
            p->params.validate();
        }
}

void SequenceSchedule::validate() const {
    numerators.validate();
    denominators.validate();
}

int LimitEstimate::attained_digits() const {
    if (error_estimate == 0) return ctx.decimal_digits;
    Real scale = std::max(Real(1), Real(abs(value)));
    double d = Real(-log10(error_estimate / scale)).convert_to<double>();
    if (d >= ctx.decimal_digits) return ctx.decimal_digits;
    return d < 0 ? 0 : static_cast<int>(std::floor(d));
}

Real fold_terms(const Rational& head, const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.size() != b.size() || a.empty()) throw DomainError("term lists must be non-empty and of equal length");
    const std::size_t n = a.size();
    Real x, ak, bk;
    set_real(ak, a[n - 1]);
    set_real(bk, b[n - 1]);
    if (bk == 0) throw ZeroDenominator(static_cast<long>(n));
    x = ak / bk;
    for (std::size_t k = n - 1; k-- > 0;) {
        set_real(ak, a[k]);
        set_real(bk, b[k]);
        bk += x;
        if (bk == 0) throw ZeroDenominator(static_cast<long>(k + 1));
        x = ak / bk;
    }
    Real h;
    set_real(h, head);
    return h + x;
}

namespace {

struct TermCache {
    const SequenceSchedule& s;
    std::vector<Rational> a, b;

    void ensure(long depth) {
        for (long n = static_cast<long>(a.size()) + 1; n <= depth; ++n) {
            a.push_back(s.numerators.term(n));
            b.push_back(s.denominators.term(n));
        }
    }
};

// Fold without copying the term vectors.
Real fold_prefix(const TermCache& c, long depth) {
    Real x, ak, bk;
    set_real(ak, c.a[static_cast<std::size_t>(depth - 1)]);
    set_real(bk, c.b[static_cast<std::size_t>(depth - 1)]);
    if (bk == 0) throw ZeroDenominator(depth);
    x = ak / bk;
    for (long k = depth - 1; k-- > 0;) {
        set_real(ak, c.a[static_cast<std::size_t>(k)]);
        set_real(bk, c.b[static_cast<std::size_t>(k)]);
        bk += x;
        if (bk == 0) throw ZeroDenominator(k + 1);
        x = ak / bk;
    }
    Real h;
    set_real(h, c.s.head);
    return h + x;
}

LimitEstimate make_estimate(Real value, Real prev, long depth, const PrecisionContext& ctx) {
    LimitEstimate est;
    est.value = std::move(value);
    est.error_estimate = abs(est.value - prev);
    est.depth = depth;
    est.ctx = ctx;
    if (est.error_estimate > pow10(-ctx.decimal_digits / 2)) {
        est.converged = false;
        est.flags.push_back("non-convergence: error estimate above 10^-" + std::to_string(ctx.decimal_digits / 2));
    }
    return est;
}

}  // namespace

LimitEstimate eval_cfrac(const SequenceSchedule& sched, long depth, const PrecisionContext& ctx) {
    if (depth < 2) throw DomainError("depth must be >= 2");
    sched.validate();
    PrecisionScope scope(ctx);
    TermCache cache{sched, {}, {}};
    cache.ensure(depth);
    Real v = fold_prefix(cache, depth);
    Real h = fold_prefix(cache, depth / 2);
    return make_estimate(std::move(v), std::move(h), depth, ctx);
}

LimitEstimate auto_depth(const SequenceSchedule& sched, int target_digits, const PrecisionContext& ctx,
                         const AutoDepthOptions& opt) {
    if (target_digits > ctx.significant_digits())
        throw DomainError("target_digits exceeds decimal_digits - guard_digits");
    if (opt.start_depth < 2) throw DomainError("start depth must be >= 2");
    sched.validate();
    PrecisionScope scope(ctx);
    TermCache cache{sched, {}, {}};
    const Real target = pow10(-target_digits);
    long depth = opt.start_depth;
    cache.ensure(depth);
    Real prev = fold_prefix(cache, depth / 2);
    for (;;) {
        cache.ensure(depth);
        Real v = fold_prefix(cache, depth);
        Real err = abs(v - prev);
        bool done = err < target;
        if (done || depth * 2 > opt.depth_cap) {
            LimitEstimate est;
            est.value = std::move(v);
            est.error_estimate = std::move(err);
            est.depth = depth;
            est.ctx = ctx;
            est.converged = done;
            if (!done) est.flags.push_back("depth cap " + std::to_string(opt.depth_cap) + " reached before convergence");
            return est;
        }
        prev = std::move(v);
        depth *= 2;
    }
}

namespace {

// Solves A x = y in place by Gaussian elimination with partial pivoting.
std::vector<Real> solve_dense(std::vector<std::vector<Real>> A, std::vector<Real> y) {
    const std::size_t n = y.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (abs(A[r][c]) > abs(A[piv][c])) piv = r;
        std::swap(A[c], A[piv]);
        std::swap(y[c], y[piv]);
        if (A[c][c] == 0) throw DomainError("singular extrapolation system");
        for (std::size_t r = c + 1; r < n; ++r) {
            Real f = A[r][c] / A[c][c];
            for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
            y[r] -= f * y[c];
        }
    }
    std::vector<Real> x(n);
    for (std::size_t r = n; r-- > 0;) {
        Real acc = y[r];
        for (std::size_t k = r + 1; k < n; ++k) acc -= A[r][k] * x[k];
        x[r] = acc / A[r][r];
    }
    return x;
}

Real extrapolate_window(const ExtrapolationModel& m, const std::vector<long>& depths, const std::vector<Real>& vals,
                        std::size_t first) {
    const std::size_t n = 1 + m.powers.size() + m.log_powers.size();
    std::vector<std::vector<Real>> A;
    std::vector<Real> y;
    for (std::size_t r = 0; r < n; ++r) {
        Real N(depths[first + r]);
        Real lg = log(N);
        std::vector<Real> row{Real(1)};
        for (int p : m.powers) row.push_back(Real(pow(N, -p)));
        for (int p : m.log_powers) row.push_back(Real(pow(N, -p) * lg));
        A.push_back(std::move(row));
        y.push_back(vals[first + r]);
    }
    return solve_dense(std::move(A), std::move(y))[0];
}

}  // namespace

LimitEstimate eval_cfrac_extrapolated(const SequenceSchedule& sched, long base_depth, const PrecisionContext& ctx,
                                      const ExtrapolationModel& model) {
    if (base_depth < 2) throw DomainError("extrapolation needs base_depth >= 2");
    sched.validate();
    const std::size_t unknowns = 1 + model.powers.size() + model.log_powers.size();
    // One extra depth gives a second, shifted window for the error estimate.
    const std::size_t count = unknowns + 1;
    std::vector<long> depths;
    for (std::size_t k = 0; k < count; ++k) depths.push_back(base_depth << k);

    Real value, err;
    {
        PrecisionScope wide(ctx.decimal_digits + 20);
        TermCache cache{sched, {}, {}};
        cache.ensure(depths.back());
        std::vector<Real> vals;
        for (long d : depths) vals.push_back(fold_prefix(cache, d));
        Real lo = extrapolate_window(model, depths, vals, 0);
        Real hi = extrapolate_window(model, depths, vals, 1);
        value = hi;
        err = abs(hi - lo);
    }
    PrecisionScope scope(ctx);
    LimitEstimate est;
    est.value = Real(value);
    est.error_estimate = Real(err);
    est.depth = depths.back();
    est.ctx = ctx;
    est.converged = true;
    est.flags.push_back("extrapolated from depths " + std::to_string(depths.front()) + ".." +
                        std::to_string(depths.back()));
    return est;
}

LimitEstimate eval_series(const std::function<Real(long)>& term, long cutoff, const PrecisionContext& ctx) {
    if (cutoff < 10) throw DomainError("series cutoff must be >= 10");
    PrecisionScope scope(ctx);
    Real sum = 0, last = 0, quarter = 0, half = 0;
    for (long k = 1; k <= cutoff; ++k) {
        Real t = term(k);
        sum += t;
        last = abs(t);
        if (k == cutoff / 4) quarter = last;
        if (k == cutoff / 2) half = last;
    }
    if (quarter != 0 && half > quarter && last > half)
        throw DivergentSeries("series terms grow: |t_N| > |t_N/2| > |t_N/4|");
    LimitEstimate est;
    est.value = sum;
    est.error_estimate = last * Real(cutoff);
    est.depth = cutoff;
    est.ctx = ctx;
    est.converged = est.error_estimate < pow10(-ctx.significant_digits());
    if (!est.converged) est.flags.push_back("series tail bound above working threshold");
    return est;
}

}  // namespace cfm
