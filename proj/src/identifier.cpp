#include "cfm/identifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cfm {

// ---- family plumbing ---------------------------------------------------------

void LimitFamily::validate() const {
    if (points.empty()) throw DomainError("limit family is empty");
    ctx.validate();
    for (const auto& p : points)
        if (!(p.limit.ctx == ctx)) throw DomainError("family limits must share one precision context");
}

std::optional<Real> LimitFamily::serial_value(std::size_t i) const {
    if (varied_slot.empty()) return std::nullopt;
    auto v = points[i].assignment.find(varied_slot);
    if (!v) return std::nullopt;
    PrecisionScope scope(ctx);
    return to_real(*v);
}

PrecisionContext effective_context(const LimitFamily& fam, std::vector<std::string>* flags) {
    PrecisionScope scope(fam.ctx);
    const Real full = pow10(-fam.ctx.significant_digits());
    int digits = fam.ctx.decimal_digits;
    for (const auto& p : fam.points) {
        // Converged fold estimates come from depth halving and understate the
        // accuracy; only estimates that missed the comparison threshold count.
        if (p.limit.converged && p.limit.error_estimate < full) continue;
        digits = std::min(digits, p.limit.attained_digits());
    }
    PrecisionContext eff = fam.ctx;
    if (digits < fam.ctx.decimal_digits) {
        eff.decimal_digits = std::max(digits, 30);
        if (flags) {
            flags->push_back("tests run at " + std::to_string(eff.decimal_digits) +
                             " digits (limits known to " + std::to_string(digits) + ")");
            if (digits < 30) flags->push_back("limits below 30 digits: relation tests unreliable");
        }
    }
    return eff;
}

LimitFamily serial_order(const LimitFamily& fam) {
    if (fam.varied_slot.empty()) return fam;
    for (const auto& p : fam.points)
        if (!p.assignment.find(fam.varied_slot)) return fam;
    LimitFamily out = fam;
    std::stable_sort(out.points.begin(), out.points.end(), [&](const FamilyPoint& a, const FamilyPoint& b) {
        return a.assignment.at(fam.varied_slot) < b.assignment.at(fam.varied_slot);
    });
    return out;
}

// ---- rendering -----------------------------------------------------------------

std::string FittedParameter::to_string() const {
    if (!rational) return name + " = " + to_decimal(value, 20) + " (unrecognized)";
    std::string r = cfm::to_string(*rational);
    if (constant == "1") return name + " = " + r;
    return name + " = " + (*rational == 1 ? constant : r + "*" + constant);
}

std::string FittedModel::symbolic() const {
    std::ostringstream os;
    if (form == "RFP") {
        os << "Q(u) = (" << numerator.to_string("u") << ") / (" << denominator.to_string("u") << ")";
    } else {
        static const std::map<std::string, std::string> shapes = {
            {"EFP", "Q(u) = b*a^u"}, {"IEP", "Q(u) = b*a^(1/u)"}, {"PCP", "Q(u) = b*u^a + c"}, {"RCP", "Q(u) = b*u^(1/a) + c"}};
        os << shapes.at(form);
        for (const auto& p : parameters) os << "; " << p.to_string();
    }
    os << "; residual " << to_decimal(residual, 3);
    return os.str();
}

std::string ProductRelation::symbolic() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const Integer& c = relation.coefficients[i];
        if (c == 0) continue;
        Integer a = abs(c);
        os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
        first = false;
        if (terms[i] == "1")
            os << a;
        else
            os << (a == 1 ? "" : a.str() + "*") << terms[i];
    }
    os << " = 0";
    if (!mobius.empty()) os << "; " << mobius;
    return os.str();
}

std::string witness_to_string(const Witness& w) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>)
                return "";
            else if constexpr (std::is_same_v<T, Rational>)
                return cfm::to_string(x);
            else if constexpr (std::is_same_v<T, IntegerPolynomial>)
                return x.to_string();
            else if constexpr (std::is_same_v<T, ProductRelation>)
                return x.symbolic();
            else if constexpr (std::is_same_v<T, ConstantCombination>)
                return x.symbolic();
            else
                return x.symbolic();
        },
        w);
}

bool TestReport::fired(const std::string& test) const {
    auto it = verdicts.find(test);
    return it != verdicts.end() && it->second.fired;
}

std::string TestReport::vector_string() const {
    std::string s;
    for (const char* t : kTestNames) s += fired(t) ? 'Y' : '-';
    return s;
}

std::string TestReport::witness_text(const std::string& test) const {
    auto it = verdicts.find(test);
    if (it == verdicts.end()) return "";
    return witness_to_string(it->second.witness);
}

// ---- helpers -----------------------------------------------------------------

namespace {

Real margin_digits(const Real& residual, const Real& threshold, int cap) {
    if (residual == 0) return Real(cap);
    Real m = log10(threshold / abs(residual));
    return m > cap ? Real(cap) : m;
}

std::vector<Real> limits_of(const LimitFamily& fam) {
    std::vector<Real> out;
    for (const auto& p : fam.points) out.push_back(p.limit.value);
    return out;
}

std::vector<bool> rational_mask(const LimitFamily& fam, const Verdict& rni) {
    std::vector<bool> mask(fam.points.size(), false);
    for (auto i : rni.points) mask[i] = true;
    return mask;
}

Verdict ensure_rni(const LimitFamily& fam, const IdentifierConfig& cfg, const Verdict* rni) {
    return rni ? *rni : test_rni(fam, cfg);
}

std::string label(std::size_t i) { return "P" + std::to_string(i); }

// a + b*U without zero terms
std::string affine(const Integer& a, const Integer& b) {
    std::ostringstream os;
    if (a != 0 || b == 0) os << a;
    if (b != 0) {
        if (a != 0) os << (b < 0 ? " - " : " + ");
        else if (b < 0) os << "-";
        Integer m = abs(b);
        if (m != 1) os << m << "*";
        os << "U";
    }
    return os.str();
}

}  // namespace

// ---- morphological tests -------------------------------------------------------

Verdict test_rni(const LimitFamily& f, const IdentifierConfig&) {
    f.validate();
    LimitFamily fam = serial_order(f);
    PrecisionContext ctx = effective_context(fam);
    PrecisionScope scope(ctx);
    Integer maxden = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(ctx.guard_digits));
    Verdict v;
    const Real thr = pow10(-ctx.significant_digits());
    for (std::size_t i = 0; i < fam.points.size(); ++i) {
        const Real& q = fam.points[i].limit.value;
        auto r = rationality_detect(q, maxden, ctx);
        if (!r) continue;
        if (!v.fired) {
            v.fired = true;
            v.witness = *r;
            v.likelihood = margin_digits(Real(q - to_real(*r)), Real(thr * std::max(Real(1), Real(abs(q)))), ctx.decimal_digits);
            v.note = "P" + std::to_string(i) + " = " + to_string(*r);
        }
        v.points.push_back(i);
    }
    return v;
}

Verdict test_ani(const LimitFamily& f, const IdentifierConfig& cfg, const Verdict* rni_in) {
    f.validate();
    LimitFamily fam = serial_order(f);
    Verdict rni = ensure_rni(fam, cfg, rni_in);
    auto rational = rational_mask(fam, rni);
    PrecisionContext ctx = effective_context(fam);
    PrecisionScope scope(ctx);
    Verdict v;
    for (std::size_t i = 0; i < fam.points.size(); ++i) {
        if (rational[i]) continue;
        const Real& q = fam.points[i].limit.value;
        auto p = minimal_polynomial(q, cfg.max_degree, cfg.relation_bound, ctx, cfg.lll);
        if (!p || p->degree() < 2) continue;
        if (!v.fired) {
            v.fired = true;
            v.witness = *p;
            Real thr = pow10(-ctx.significant_digits());
            Real scale = 1;
            for (int k = 0; k < p->degree(); ++k) scale *= std::max(Real(1), Real(abs(q)));
            v.likelihood = margin_digits(p->evaluate(q), Real(thr * scale), ctx.decimal_digits);
            v.note = "P" + std::to_string(i) + " root of " + p->to_string();
        }
        v.points.push_back(i);
    }
    return v;
}

Verdict test_cpi(const LimitFamily& f, const IdentifierConfig& cfg, const Verdict* rni_in) {
    f.validate();
    LimitFamily fam = serial_order(f);
    Verdict rni = ensure_rni(fam, cfg, rni_in);
    auto rational = rational_mask(fam, rni);
    PrecisionContext ctx = effective_context(fam);
    PrecisionScope scope(ctx);
    auto q = limits_of(fam);
    Verdict v;
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = i + 1; j < q.size(); ++j) {
            if (rational[i] && rational[j]) continue;
            auto rel = find_integer_relation({Real(1), q[i], q[j], Real(q[i] * q[j])}, cfg.relation_bound, ctx, cfg.lll);
            if (!rel) continue;
            const auto& c = rel->coefficients;
            if (!v.fired) {
                ProductRelation pr;
                pr.members = {i, j};
                pr.terms = {"1", label(i), label(j), label(i) + "*" + label(j)};
                pr.relation = *rel;
                // Take U = P_i; then P_j = -(c0 + c1 U) / (c2 + c3 U).
                pr.u_estimate = q[i];
                if (c[2] != 0 || c[3] != 0) {
                    pr.mobius = label(j) + " = (" + affine(-c[0], -c[1]) + ") / (" + affine(c[2], c[3]) +
                                ") with U = " + label(i);
                }
                v.fired = true;
                v.likelihood = margin_digits(rel->residual, rel->threshold, ctx.decimal_digits);
                v.witness = pr;
            }
            v.points.push_back(i);
            v.points.push_back(j);
        }
    std::sort(v.points.begin(), v.points.end());
    v.points.erase(std::unique(v.points.begin(), v.points.end()), v.points.end());
    return v;
}

Verdict test_cei(const LimitFamily& f, const IdentifierConfig& cfg, const Verdict* rni_in) {
    f.validate();
    LimitFamily fam = serial_order(f);
    Verdict rni = ensure_rni(fam, cfg, rni_in);
    auto rational = rational_mask(fam, rni);
    PrecisionContext ctx = effective_context(fam);
    PrecisionScope scope(ctx);
    auto q = limits_of(fam);
    Verdict v;
    if (q.size() < 4) {
        v.note = "fewer than four points";
        return v;
    }
    for (std::size_t k = 0; k + 3 < q.size(); ++k) {
        // S: 1, singles, pairs, triples, the full product; each with its member set.
        std::vector<Real> vals;
        std::vector<std::string> terms;
        std::vector<std::vector<std::size_t>> uses;
        for (unsigned mask = 0; mask < 16; ++mask) {
            Real prod = 1;
            std::string t;
            std::vector<std::size_t> m;
            for (unsigned b = 0; b < 4; ++b)
                if (mask & (1u << b)) {
                    prod *= q[k + b];
                    t += (t.empty() ? "" : "*") + label(k + b);
                    m.push_back(k + b);
                }
            vals.push_back(prod);
            terms.push_back(t.empty() ? "1" : t);
            uses.push_back(m);
        }
        // order by subset size so the listing reads 1, singles, pairs, ...
        std::vector<std::size_t> order(16);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return uses[a].size() < uses[b].size(); });
        std::vector<Real> v2;
        std::vector<std::string> t2;
        std::vector<std::vector<std::size_t>> u2;
        for (auto o : order) {
            v2.push_back(vals[o]);
            t2.push_back(terms[o]);
            u2.push_back(uses[o]);
        }
        auto rel = find_integer_relation(v2, cfg.relation_bound, ctx, cfg.lll);
        if (!rel) continue;
        std::vector<IntVector> cands{rel->coefficients};
        cands.insert(cands.end(), rel->alternatives.begin(), rel->alternatives.end());
        for (const auto& c : cands) {
            std::vector<std::size_t> involved;
            for (std::size_t s = 0; s < c.size(); ++s)
                if (c[s] != 0) involved.insert(involved.end(), u2[s].begin(), u2[s].end());
            bool explained = std::all_of(involved.begin(), involved.end(), [&](std::size_t i) { return rational[i]; });
            if (explained) continue;
            if (!v.fired) {
                ProductRelation pr;
                pr.members = {k, k + 1, k + 2, k + 3};
                pr.terms = t2;
                pr.relation = *rel;
                pr.relation.coefficients = c;
                pr.relation.norm = max_norm(c);
                pr.relation.residual = 0;
                for (std::size_t s = 0; s < c.size(); ++s) pr.relation.residual += Real(c[s]) * v2[s];
                v.fired = true;
                v.likelihood = margin_digits(pr.relation.residual, rel->threshold, ctx.decimal_digits);
                v.witness = pr;
            }
            for (std::size_t b = 0; b < 4; ++b) v.points.push_back(k + b);
            break;
        }
    }
    std::sort(v.points.begin(), v.points.end());
    v.points.erase(std::unique(v.points.begin(), v.points.end()), v.points.end());
    return v;
}

Verdict test_kci(const LimitFamily& f, const IdentifierConfig& cfg, const Verdict* rni_in) {
    f.validate();
    LimitFamily fam = serial_order(f);
    Verdict rni = ensure_rni(fam, cfg, rni_in);
    auto rational = rational_mask(fam, rni);
    PrecisionContext ctx = effective_context(fam);
    PrecisionScope scope(ctx);
    std::vector<std::string> names = cfg.kci_constants.empty() ? ConstantLibrary::standard().names() : cfg.kci_constants;
    if (std::find(names.begin(), names.end(), "1") == names.end()) names.insert(names.begin(), "1");
    auto constants = ConstantLibrary::standard().subset(names).evaluate(ctx);
    Verdict v;
    for (std::size_t i = 0; i < fam.points.size(); ++i) {
        if (rational[i]) continue;
        auto cc = find_constant_combination(fam.points[i].limit.value, constants, cfg.relation_bound, ctx, cfg.lll);
        if (!cc) continue;
        if (!v.fired) {
            v.fired = true;
            v.likelihood = margin_digits(cc->witness.residual, cc->witness.threshold, ctx.decimal_digits);
            v.note = "P" + std::to_string(i);
            v.witness = *cc;
        }
        v.points.push_back(i);
    }
    return v;
}

// ---- serial tests -----------------------------------------------------------------

namespace {

struct SerialData {
    std::vector<Real> u, q;
    PrecisionContext ctx;
    std::string problem;  // non-empty: test cannot run
};

SerialData serial_data(const LimitFamily& f) {
    f.validate();
    LimitFamily fam = serial_order(f);
    SerialData d;
    d.ctx = effective_context(fam);
    PrecisionScope scope(d.ctx);
    if (fam.varied_slot.empty()) {
        d.problem = "no varied slot";
        return d;
    }
    if (fam.points.size() < 10) {
        d.problem = "fewer than ten points";
        return d;
    }
    for (std::size_t i = 0; i < fam.points.size(); ++i) {
        auto u = fam.serial_value(i);
        if (!u) {
            d.problem = "point without varied slot";
            return d;
        }
        d.u.push_back(*u);
        d.q.push_back(fam.points[i].limit.value);
    }
    return d;
}

Real relative_error(const Real& model, const Real& q) {
    Real e = abs(model - q);
    return q == 0 ? e : Real(e / abs(q));
}

FittedParameter recognize(const std::string& name, const Real& value, const Real& tol_rel, const IdentifierConfig& cfg,
                          const PrecisionContext& ctx) {
    FittedParameter p;
    p.name = name;
    p.value = value;
    Integer maxden = cfg.fitted_max_denominator;
    Real tol = tol_rel * std::max(Real(1), Real(abs(value)));
    if (abs(value) <= tol) {
        p.rational = Rational(0);
        return p;
    }
    if (auto r = approximate_rational(value, maxden, tol)) {
        p.rational = r;
        return p;
    }
    if (!cfg.accept_library_constants) return p;
    for (const auto& c : ConstantLibrary::standard().evaluate(ctx)) {
        if (c.name == "1") continue;
        Real ratio = value / c.value;
        auto r = approximate_rational(ratio, maxden, Real(tol_rel * std::max(Real(1), Real(abs(ratio)))));
        if (r && *r != 0) {
            p.rational = r;
            p.constant = c.name;
            return p;
        }
    }
    return p;
}

Real parameter_tolerance(const Real& residual, const PrecisionContext& ctx) {
    return std::max(pow10(-ctx.significant_digits()), Real(residual * 100));
}

bool is_zero(const FittedParameter& p) { return p.rational && *p.rational == 0; }
bool is_one(const FittedParameter& p) { return p.rational && *p.rational == 1 && p.constant == "1"; }

void finish_fit(Verdict& v, FittedModel m, const IdentifierConfig& cfg, const std::string& gate_fail) {
    bool ok = m.residual < Real(cfg.nonlinear_residual);
    bool recognized = std::all_of(m.parameters.begin(), m.parameters.end(), [](const auto& p) { return p.recognized(); });
    bool uses_constant = std::any_of(m.parameters.begin(), m.parameters.end(), [](const auto& p) { return p.constant != "1"; });
    v.likelihood = m.residual == 0 ? Real(100) : Real(-log10(m.residual));
    if (!ok)
        v.note = "residual " + to_decimal(m.residual, 3) + " above threshold";
    else if (!recognized)
        v.note = "fitted parameters not recognized";
    else if (!gate_fail.empty())
        v.note = gate_fail;
    else {
        v.fired = true;
        if (uses_constant) v.note = "parameter matched a library constant, not a rational";
    }
    v.witness = std::move(m);
}

// Weighted least squares for Q ~ b f + c with weights 1/Q^2.
std::pair<Real, Real> fit_affine(const std::vector<Real>& f, const std::vector<Real>& q) {
    Real sff = 0, sf = 0, s1 = 0, sfq = 0, sq = 0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        Real w = q[k] == 0 ? Real(1) : Real(1 / (q[k] * q[k]));
        sff += w * f[k] * f[k];
        sf += w * f[k];
        s1 += w;
        sfq += w * f[k] * q[k];
        sq += w * q[k];
    }
    Real det = sff * s1 - sf * sf;
    if (det == 0) return {Real(0), Real(0)};
    return {Real((sfq * s1 - sf * sq) / det), Real((sff * sq - sf * sfq) / det)};
}

Verdict exponential_fit(const LimitFamily& fam, const IdentifierConfig& cfg, bool inverse) {
    Verdict v;
    SerialData d = serial_data(fam);
    if (!d.problem.empty()) {
        v.note = d.problem;
        return v;
    }
    PrecisionScope scope(d.ctx);
    int sign = d.q.front() > 0 ? 1 : -1;
    for (std::size_t k = 0; k < d.q.size(); ++k) {
        if (d.q[k] == 0 || (d.q[k] > 0 ? 1 : -1) != sign) {
            v.note = "limits change sign or vanish";
            return v;
        }
        if (inverse && d.u[k] == 0) {
            v.note = "varied parameter hits zero";
            return v;
        }
    }
    // ln|Q| = beta0 + beta1 x
    std::vector<Real> x, z;
    for (std::size_t k = 0; k < d.q.size(); ++k) {
        x.push_back(inverse ? Real(1 / d.u[k]) : d.u[k]);
        z.push_back(log(abs(d.q[k])));
    }
    Real n = static_cast<long>(x.size()), sx = 0, sz = 0, sxx = 0, sxz = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sx += x[k];
        sz += z[k];
        sxx += x[k] * x[k];
        sxz += x[k] * z[k];
    }
    Real det = n * sxx - sx * sx;
    if (det == 0) {
        v.note = "degenerate sample";
        return v;
    }
    Real beta1 = (n * sxz - sx * sz) / det;
    Real beta0 = (sz - beta1 * sx) / n;
    Real a = exp(beta1), b = Real(sign) * exp(beta0);
    FittedModel m;
    m.form = inverse ? "IEP" : "EFP";
    m.residual = 0;
    for (std::size_t k = 0; k < x.size(); ++k) m.residual = std::max(m.residual, relative_error(Real(b * pow(a, x[k])), d.q[k]));
    Real tol = parameter_tolerance(m.residual, d.ctx);
    m.parameters = {recognize("a", a, tol, cfg, d.ctx), recognize("b", b, tol, cfg, d.ctx)};
    std::string gate;
    if (is_zero(m.parameters[0]) || is_zero(m.parameters[1]))
        gate = "gate: a*b = 0";
    else if (is_one(m.parameters[0]))
        gate = "gate: a = 1 (constant family)";
    finish_fit(v, std::move(m), cfg, gate);
    return v;
}

Verdict power_fit(const LimitFamily& fam, const IdentifierConfig& cfg, bool root) {
    Verdict v;
    SerialData d = serial_data(fam);
    if (!d.problem.empty()) {
        v.note = d.problem;
        return v;
    }
    PrecisionScope scope(d.ctx);
    std::vector<int> exps;
    if (root) {
        for (const auto& u : d.u)
            if (u <= 0) {
                v.note = "roots need a positive varied parameter";
                return v;
            }
        for (int a = 2; a <= cfg.rcp_max_root; ++a) exps.push_back(a);
    } else {
        bool has_zero = std::any_of(d.u.begin(), d.u.end(), [](const Real& u) { return u == 0; });
        for (int a = 1; a <= cfg.pcp_max_exponent; ++a) {
            exps.push_back(a);
            if (!has_zero) exps.push_back(-a);
        }
    }
    std::optional<FittedModel> best;
    for (int a : exps) {
        std::vector<Real> f;
        for (const auto& u : d.u) f.push_back(root ? Real(pow(u, Real(1) / a)) : Real(pow(u, a)));
        auto [b, c] = fit_affine(f, d.q);
        Real res = 0;
        for (std::size_t k = 0; k < f.size(); ++k) res = std::max(res, relative_error(Real(b * f[k] + c), d.q[k]));
        if (best && !(res < best->residual)) continue;
        FittedModel m;
        m.form = root ? "RCP" : "PCP";
        m.residual = res;
        FittedParameter pa;
        pa.name = "a";
        pa.value = Real(a);
        pa.rational = Rational(a);
        Real tol = parameter_tolerance(res, d.ctx);
        m.parameters = {pa, recognize("b", b, tol, cfg, d.ctx), recognize("c", c, tol, cfg, d.ctx)};
        best = std::move(m);
    }
    if (!best) {
        v.note = "no exponent candidates";
        return v;
    }
    std::string gate = is_zero(best->parameters[1]) ? (root ? "gate: a*b = 0" : "gate: b = 0") : "";
    finish_fit(v, std::move(*best), cfg, gate);
    return v;
}

}  // namespace

Verdict test_rfp(const LimitFamily& fam, const IdentifierConfig& cfg) {
    Verdict v;
    SerialData d = serial_data(fam);
    if (!d.problem.empty()) {
        v.note = d.problem;
        return v;
    }
    PrecisionScope scope(d.ctx);
    Real best_res = -1;
    for (int t = 0; t <= cfg.rfp_max_total_degree; ++t)
        for (int p = t; p >= 0; --p) {
            int qd = t - p;
            std::vector<std::vector<Real>> cols;
            for (std::size_t k = 0; k < d.u.size(); ++k) {
                std::vector<Real> col;
                Real pw = 1;
                for (int i = 0; i <= p; ++i, pw *= d.u[k]) col.push_back(pw);
                pw = 1;
                for (int j = 0; j <= qd; ++j, pw *= d.u[k]) col.push_back(Real(-d.q[k] * pw));
                cols.push_back(std::move(col));
            }
            auto rel = find_simultaneous_relation(cols, cfg.relation_bound, d.ctx, cfg.lll);
            if (!rel) continue;
            std::vector<IntVector> cands{rel->coefficients};
            cands.insert(cands.end(), rel->alternatives.begin(), rel->alternatives.end());
            for (const auto& c : cands) {
                IntegerPolynomial num{IntVector(c.begin(), c.begin() + p + 1)};
                IntegerPolynomial den{IntVector(c.begin() + p + 1, c.end())};
                if (max_norm(den.coefficients) == 0) continue;
                Real res = 0;
                bool pole = false;
                for (std::size_t k = 0; k < d.u.size(); ++k) {
                    Real dv = den.evaluate(d.u[k]);
                    if (dv == 0) {
                        pole = true;
                        break;
                    }
                    res = std::max(res, relative_error(Real(num.evaluate(d.u[k]) / dv), d.q[k]));
                }
                if (pole) continue;
                if (best_res < 0 || res < best_res) best_res = res;
                if (res >= Real(cfg.serial_linear_residual)) continue;
                FittedModel m;
                m.form = "RFP";
                // Sign convention: the denominator's leading coefficient is positive.
                if (*std::find_if(den.coefficients.rbegin(), den.coefficients.rend(), [](const Integer& x) { return x != 0; }) < 0) {
                    for (auto& x : num.coefficients) x = -x;
                    for (auto& x : den.coefficients) x = -x;
                }
                m.numerator = num;
                m.denominator = den;
                m.residual = res;
                v.fired = true;
                v.likelihood = res == 0 ? Real(100) : Real(-log10(res));
                v.witness = std::move(m);
                v.note = "degrees (" + std::to_string(p) + ", " + std::to_string(qd) + ")";
                return v;
            }
        }
    if (best_res >= 0) v.note = "best rational-function residual " + to_decimal(best_res, 3);
    return v;
}

Verdict test_efp(const LimitFamily& fam, const IdentifierConfig& cfg) { return exponential_fit(fam, cfg, false); }
Verdict test_iep(const LimitFamily& fam, const IdentifierConfig& cfg) { return exponential_fit(fam, cfg, true); }
Verdict test_pcp(const LimitFamily& fam, const IdentifierConfig& cfg) { return power_fit(fam, cfg, false); }
Verdict test_rcp(const LimitFamily& fam, const IdentifierConfig& cfg) { return power_fit(fam, cfg, true); }

// ---- aggregate ------------------------------------------------------------------

TestReport run_all(const LimitFamily& f, const IdentifierConfig& cfg) {
    f.validate();
    LimitFamily fam = serial_order(f);
    TestReport rep;
    rep.effective_ctx = effective_context(fam, &rep.flags);
    auto guarded = [&](const std::string& name, auto&& fn) {
        try {
            rep.verdicts[name] = fn();
        } catch (const std::exception& e) {
            Verdict v;
            v.note = std::string("error: ") + e.what();
            rep.verdicts[name] = v;
            rep.flags.push_back(name + ": " + e.what());
        }
    };
    guarded("RNI", [&] { return test_rni(fam, cfg); });
    const Verdict& rni = rep.verdicts["RNI"];
    guarded("ANI", [&] { return test_ani(fam, cfg, &rni); });
    guarded("CPI", [&] { return test_cpi(fam, cfg, &rni); });
    guarded("CEI", [&] { return test_cei(fam, cfg, &rni); });
    guarded("KCI", [&] { return test_kci(fam, cfg, &rni); });
    guarded("RFP", [&] { return test_rfp(fam, cfg); });
    guarded("EFP", [&] { return test_efp(fam, cfg); });
    guarded("IEP", [&] { return test_iep(fam, cfg); });
    guarded("PCP", [&] { return test_pcp(fam, cfg); });
    guarded("RCP", [&] { return test_rcp(fam, cfg); });
    for (const auto& [name, v] : rep.verdicts)
        if (v.fired && v.note.find("library constant") != std::string::npos)
            rep.flags.push_back(name + ": " + v.note);
    return rep;
}

TestReport merge_reports(const std::vector<TestReport>& reports) {
    TestReport out;
    for (const char* t : kTestNames) out.verdicts[t] = Verdict{};
    for (const auto& r : reports) {
        for (const auto& [name, v] : r.verdicts)
            if (v.fired && !out.verdicts[name].fired) out.verdicts[name] = v;
        out.flags.insert(out.flags.end(), r.flags.begin(), r.flags.end());
    }
    if (!reports.empty()) out.effective_ctx = reports.front().effective_ctx;
    return out;
}

}  // namespace cfm
