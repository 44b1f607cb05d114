#include "cfm/progressions.hpp"

#include <algorithm>
#include <sstream>

namespace cfm {

namespace {

Rational rpow(const Rational& base, long e) {
    if (e == 0) return Rational(1);  // 0^0 = 1
    if (base == 0) {
        if (e < 0) throw DomainError("division by zero: 0 raised to a negative power");
        return Rational(0);
    }
    if (base == 1) return Rational(1);
    if (base == -1) return Rational(e % 2 == 0 ? 1 : -1);
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    Integer num = boost::multiprecision::pow(boost::multiprecision::numerator(base), static_cast<unsigned>(k));
    Integer den = boost::multiprecision::pow(boost::multiprecision::denominator(base), static_cast<unsigned>(k));
    return e < 0 ? Rational(den, num) : Rational(num, den);
}

bool abs_then_sign_less(const Rational& a, const Rational& b) {
    Rational aa = abs(a), ab = abs(b);
    if (aa != ab) return aa < ab;
    return a > b;  // positive before negative
}

void sort_unique(std::vector<Rational>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    std::stable_sort(v.begin(), v.end(), abs_then_sign_less);
}

Integer floor_div(const Rational& q) {
    Integer n = boost::multiprecision::numerator(q), d = boost::multiprecision::denominator(q);
    Integer r = n / d;
    if (n < 0 && r * d != n) r -= 1;
    return r;
}

}  // namespace

void ProgressionParams::validate() const {
    if (u3 < -6 || u3 > 6 || u5 < -6 || u5 > 6) throw DomainError("progression exponents must satisfy |u3|, |u5| <= 6");
}

Rational mu(const ProgressionParams& p, long i) {
    if (i < 0) throw DomainError("progression index must be non-negative");
    Rational r = p.u4 * rpow(Rational(i), p.u5);
    if (p.u2 == 0 && i > 0) return r;  // the second term vanishes
    return r + rpow(p.u0 + Rational(i) * p.u1, p.u3) * rpow(p.u2, i);
}

// ---- domains --------------------------------------------------------------

std::vector<Rational> domain_values(const Domain& d) {
    std::vector<Rational> out;
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Fixed>) {
                out.push_back(x.value);
            } else if constexpr (std::is_same_v<T, IntegerRange>) {
                if (x.lo > x.hi) throw DomainError("empty integer range");
                for (long v = x.lo; v <= x.hi; ++v) out.emplace_back(v);
            } else if constexpr (std::is_same_v<T, RationalGrid>) {
                if (x.step <= 0) throw DomainError("grid step must be positive");
                if (x.lo > x.hi) throw DomainError("empty rational grid");
                for (Rational v = x.lo; v <= x.hi; v += x.step) out.push_back(v);
            } else if constexpr (std::is_same_v<T, FareyBox>) {
                if (x.scale <= 0) throw DomainError("Farey scale must be positive");
                if (x.lo > x.hi) throw DomainError("empty Farey box");
                auto f = farey(x.order);
                Integer n0 = floor_div(x.lo / x.scale) - 1, n1 = floor_div(x.hi / x.scale) + 1;
                for (Integer n = n0; n <= n1; ++n)
                    for (const auto& q : f) {
                        Rational v = x.scale * (Rational(n) + q);
                        if (v >= x.lo && v <= x.hi) out.push_back(v);
                    }
            } else {
                out = x.values;
            }
        },
        d);
    if (out.empty()) throw DomainError("domain is empty");
    sort_unique(out);
    return out;
}

bool domain_contains(const Domain& d, const Rational& v) {
    auto vals = domain_values(d);
    return std::find(vals.begin(), vals.end(), v) != vals.end();
}

std::string describe(const Domain& d) {
    std::ostringstream os;
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Fixed>)
                os << "Fixed(" << to_string(x.value) << ")";
            else if constexpr (std::is_same_v<T, IntegerRange>)
                os << "IntegerRange(" << x.lo << ", " << x.hi << ")";
            else if constexpr (std::is_same_v<T, RationalGrid>)
                os << "RationalGrid(" << to_string(x.lo) << ", " << to_string(x.hi) << ", " << to_string(x.step) << ")";
            else if constexpr (std::is_same_v<T, FareyBox>)
                os << "FareyBox(" << x.order << ", " << to_string(x.scale) << ", [" << to_string(x.lo) << ", "
                   << to_string(x.hi) << "])";
            else
                os << "Values(" << x.values.size() << ")";
        },
        d);
    return os.str();
}

bool SlotSpace::excluded(const Rational& v) const {
    for (std::size_t k = 0; k < exclude_lo.size(); ++k)
        if (v >= exclude_lo[k] && v <= exclude_hi[k]) return true;
    return false;
}

void SearchSpace::validate() const {
    for (const auto& [name, slot] : slots) {
        if (slot.stages.empty()) throw DomainError("slot '" + name + "' has no domain");
        if (slot.exclude_lo.size() != slot.exclude_hi.size()) throw DomainError("malformed exclusion list");
        bool any = false;
        for (const auto& d : slot.stages)
            for (const auto& v : domain_values(d))
                if (!slot.excluded(v)) any = true;
        if (!any) throw DomainError("slot '" + name + "' is empty after exclusions");
    }
}

std::size_t SearchSpace::stage_count() const {
    std::size_t n = slots.empty() ? 0 : 1;
    for (const auto& [name, slot] : slots) n = std::max(n, slot.stages.size());
    return n;
}

const Rational& ParameterAssignment::at(const std::string& slot) const {
    for (const auto& [k, v] : values)
        if (k == slot) return v;
    throw DomainError("assignment has no slot '" + slot + "'");
}

std::optional<Rational> ParameterAssignment::find(const std::string& slot) const {
    for (const auto& [k, v] : values)
        if (k == slot) return v;
    return std::nullopt;
}

std::string ParameterAssignment::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : values) {
        os << (first ? "" : ", ") << k << "=" << cfm::to_string(v);
        first = false;
    }
    return os.str();
}

// ---- iteration --------------------------------------------------------------

SpaceIterator::SpaceIterator(SearchSpace s) : space_(std::move(s)) {
    space_.validate();
    if (!space_.slots.empty()) load_stage(0);
}

void SpaceIterator::load_stage(int s) {
    stage_ = s;
    cur_.clear();
    for (const auto& [name, slot] : space_.slots) {
        std::vector<Rational> vals;
        std::size_t last = std::min<std::size_t>(static_cast<std::size_t>(s), slot.stages.size() - 1);
        for (std::size_t k = 0; k <= last; ++k)
            for (const auto& v : domain_values(slot.stages[k]))
                if (!slot.excluded(v)) vals.push_back(v);
        sort_unique(vals);
        cur_.push_back(std::move(vals));
    }
    idx_.assign(cur_.size(), 0);
    exhausted_ = std::any_of(cur_.begin(), cur_.end(), [](const auto& v) { return v.empty(); });
}

std::optional<ParameterAssignment> SpaceIterator::next() {
    while (stage_ >= 0) {
        while (!exhausted_) {
            std::vector<Rational> tuple;
            for (std::size_t k = 0; k < cur_.size(); ++k) tuple.push_back(cur_[k][idx_[k]]);
            // advance odometer, last slot fastest
            std::size_t k = cur_.size();
            while (k > 0) {
                --k;
                if (++idx_[k] < cur_[k].size()) break;
                idx_[k] = 0;
                if (k == 0) exhausted_ = true;
            }
            if (!emitted_.insert(tuple).second) continue;
            ParameterAssignment a;
            a.stage = stage_;
            for (std::size_t j = 0; j < tuple.size(); ++j) a.values.emplace_back(space_.slots[j].first, tuple[j]);
            return a;
        }
        if (static_cast<std::size_t>(stage_ + 1) >= space_.stage_count()) {
            stage_ = -1;
            break;
        }
        load_stage(stage_ + 1);
    }
    return std::nullopt;
}

std::vector<ParameterAssignment> iterate_space(const SearchSpace& s) {
    std::vector<ParameterAssignment> out;
    if (s.slots.empty()) return out;
    SpaceIterator it(s);
    while (auto a = it.next()) out.push_back(std::move(*a));
    return out;
}

}  // namespace cfm
