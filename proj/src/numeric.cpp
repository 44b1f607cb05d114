#include "cfm/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <regex>

namespace cfm {

namespace {

template <typename F>
Real from_mpfr(F&& f) {
    Real r;
    f(r.backend().data());
    return r;
}

}  // namespace

PrecisionContext PrecisionContext::make(int digits, int guard) {
    PrecisionContext c{digits, guard};
    c.validate();
    return c;
}

void PrecisionContext::validate() const {
    if (decimal_digits < 30)
        throw DomainError("decimal_digits must be at least 30, got " + std::to_string(decimal_digits));
    if (guard_digits < 10)
        throw DomainError("guard_digits must be at least 10, got " + std::to_string(guard_digits));
    if (guard_digits >= decimal_digits)
        throw DomainError("guard_digits must be smaller than decimal_digits");
}

PrecisionScope::PrecisionScope(const PrecisionContext& ctx) : PrecisionScope(ctx.decimal_digits) {}

// Writes only on change, so workers sharing the caller's context never
// touch the process-wide setting.
PrecisionScope::PrecisionScope(int digits) : saved_(Real::default_precision()) {
    if (saved_ != static_cast<unsigned>(digits)) Real::default_precision(static_cast<unsigned>(digits));
}

PrecisionScope::~PrecisionScope() {
    if (Real::default_precision() != saved_) Real::default_precision(saved_);
}

Real to_real(const Rational& q) {
    Real num(boost::multiprecision::numerator(q));
    Real den(boost::multiprecision::denominator(q));
    return num / den;
}

Real to_real(const Integer& z) { return Real(z); }

Real pow10(int e) { return boost::multiprecision::pow(Real(10), e); }

Real parse_real(std::string_view text) {
    static const std::regex decimal(R"(\s*[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?\s*)");
    std::string s(text);
    if (!std::regex_match(s, decimal)) throw ParseError("not a decimal number: '" + s + "'");
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
    Real r;
    if (mpfr_set_str(r.backend().data(), s.c_str(), 10, MPFR_RNDN) != 0)
        throw ParseError("not a decimal number: '" + s + "'");
    return r;
}

namespace {

// Base 10 always; the string constructor would read a leading 0 as octal.
Integer decimal_integer(const std::string& digits) {
    Integer z;
    if (mpz_set_str(z.backend().data(), digits.c_str(), 10) != 0) throw ParseError("not an integer: '" + digits + "'");
    return z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    static const std::regex frac(R"(\s*([+-]?\d+)(/(\d+))?\s*)");
    static const std::regex dec(R"(\s*([+-]?)(\d*)\.(\d*)\s*)");
    std::string s(text);
    std::smatch m;
    if (std::regex_match(s, m, frac)) {
        Integer num = decimal_integer(m[1].str()[0] == '+' ? m[1].str().substr(1) : m[1].str());
        Integer den = m[3].matched ? decimal_integer(m[3].str()) : Integer(1);
        if (den == 0) throw ParseError("zero denominator in '" + s + "'");
        return Rational(num, den);
    }
    if (std::regex_match(s, m, dec) && (m[2].length() + m[3].length()) > 0) {
        std::string digits = m[2].str() + m[3].str();
        Integer num = decimal_integer(digits.empty() ? std::string("0") : digits);
        Integer den = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(m[3].length()));
        Rational q(num, den);
        return m[1].str() == "-" ? Rational(-q) : q;
    }
    throw ParseError("not a rational: '" + s + "'");
}

std::string to_decimal(const Real& x, int digits) { return x.str(digits, std::ios_base::fmtflags(0)); }

std::string to_string(const Rational& q) {
    if (boost::multiprecision::denominator(q) == 1) return boost::multiprecision::numerator(q).str();
    return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

int agreement_digits(const Real& a, const Real& b, int cap) {
    Real diff = abs(a - b);
    if (diff == 0) return cap;
    Real scale = std::max(abs(a), abs(b));
    if (scale == 0) return cap;
    Real d = -log10(diff / scale);
    if (d > cap) return cap;
    if (d < 0) return 0;
    return static_cast<int>(floor(d).convert_to<double>());
}

// ---- constants --------------------------------------------------------

const ConstantLibrary& ConstantLibrary::standard() {
    static const ConstantLibrary lib = [] {
        ConstantLibrary l;
        auto pi = [] { return from_mpfr([](mpfr_ptr p) { mpfr_const_pi(p, MPFR_RNDN); }); };
        auto e = [] { return Real(exp(Real(1))); };
        auto add = [&l](std::string name, std::function<Real()> f) {
            l.entries_.push_back({std::move(name), [f](const PrecisionContext& ctx) {
                                      PrecisionScope scope(ctx);
                                      return f();
                                  }});
        };
        add("1", [] { return Real(1); });
        add("sqrt(pi)", [pi] { return Real(sqrt(pi())); });
        add("pi", pi);
        add("pi^2", [pi] { Real p = pi(); return Real(p * p); });
        add("pi^3", [pi] { Real p = pi(); return Real(p * p * p); });
        for (unsigned k : {3u, 5u, 7u})
            add("zeta(" + std::to_string(k) + ")",
                [k] { return from_mpfr([k](mpfr_ptr p) { mpfr_zeta_ui(p, k, MPFR_RNDN); }); });
        add("sqrt(e)", [] { return Real(exp(Real(1) / 2)); });
        add("e", e);
        add("e^2", [] { return Real(exp(Real(2))); });
        add("e^3", [] { return Real(exp(Real(3))); });
        add("phi^2", [] { Real phi = (1 + sqrt(Real(5))) / 2; return Real(phi * phi); });
        add("gamma", [] { return from_mpfr([](mpfr_ptr p) { mpfr_const_euler(p, MPFR_RNDN); }); });
        add("G", [] { return from_mpfr([](mpfr_ptr p) { mpfr_const_catalan(p, MPFR_RNDN); }); });
        for (unsigned k : {2u, 3u, 5u})
            add("ln" + std::to_string(k), [k] { return Real(log(Real(k))); });
        return l;
    }();
    return lib;
}

bool ConstantLibrary::contains(std::string_view name) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.name == name; });
}

std::vector<std::string> ConstantLibrary::names() const {
    std::vector<std::string> out;
    for (const auto& e : entries_) out.push_back(e.name);
    return out;
}

ConstantLibrary ConstantLibrary::subset(const std::vector<std::string>& names) const {
    for (const auto& n : names)
        if (!contains(n)) throw UnknownConstant(n);
    ConstantLibrary out;
    for (const auto& e : entries_)
        if (std::find(names.begin(), names.end(), e.name) != names.end()) out.entries_.push_back(e);
    return out;
}

std::vector<NamedConstant> ConstantLibrary::evaluate(const PrecisionContext& ctx) const {
    std::vector<NamedConstant> out;
    for (const auto& e : entries_) out.push_back({e.name, e.evaluate(ctx)});
    return out;
}

Real eval_constant(std::string_view name, const PrecisionContext& ctx) {
    for (const auto& e : ConstantLibrary::standard().entries())
        if (e.name == name) return e.evaluate(ctx);
    throw UnknownConstant(std::string(name));
}

// ---- rationals ----------------------------------------------------------

namespace {

// Walks the convergents of x.  visit(p, q, next_partial_quotient) returns
// true to stop; the next partial quotient is 0 when the expansion ended.
template <typename Visit>
void walk_convergents(const Real& x, int max_steps, Visit&& visit) {
    Integer p2 = 0, p1 = 1, q2 = 1, q1 = 0;
    Real y = x;
    for (int step = 0; step < max_steps; ++step) {
        Real fl = floor(y);
        Integer a = fl.convert_to<Integer>();
        Integer p = a * p1 + p2, q = a * q1 + q2;
        p2 = p1; p1 = p; q2 = q1; q1 = q;
        Real frac = y - fl;
        Integer next = 0;
        if (frac != 0) {
            y = 1 / frac;
            next = floor(y).convert_to<Integer>();
        }
        if (visit(p, q, next) || frac == 0) return;
    }
}

}  // namespace

std::optional<Rational> rationality_detect(const Real& x, const Integer& max_denominator,
                                           const PrecisionContext& ctx) {
    if (max_denominator < 1) throw DomainError("max_denominator must be >= 1");
    PrecisionScope scope(ctx);
    Real threshold = pow10(-ctx.significant_digits()) * std::max(Real(1), Real(abs(x)));
    Integer big = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(ctx.guard_digits));
    std::optional<Rational> found;
    walk_convergents(x, 4 * ctx.decimal_digits + 16, [&](const Integer& p, const Integer& q, const Integer& next) {
        if (q > max_denominator) return true;
        // A huge next partial quotient (or none) means p/q is the truncation point.
        if (next == 0 || next > big) {
            Rational cand(p, q);
            if (abs(x - to_real(cand)) < threshold) found = cand;
            return true;
        }
        return false;
    });
    return found;
}

std::optional<Rational> approximate_rational(const Real& x, const Integer& max_den, const Real& tol) {
    std::optional<Rational> found;
    walk_convergents(x, 200, [&](const Integer& p, const Integer& q, const Integer&) {
        if (q > max_den) return true;
        Rational cand(p, q);
        if (abs(x - to_real(cand)) <= tol) {
            found = cand;
            return true;
        }
        return false;
    });
    return found;
}

std::vector<Rational> farey(int order) {
    if (order < 1) throw DomainError("Farey order must be >= 1");
    std::vector<Rational> out;
    long a = 0, b = 1, c = 1, d = order;
    out.emplace_back(0, 1);
    while (c <= order) {
        long k = (order + b) / d;
        long na = c, nb = d, nc = k * c - a, nd = k * d - b;
        out.emplace_back(na, nb);
        a = na; b = nb; c = nc; d = nd;
    }
    return out;
}

}  // namespace cfm
