#include "cfm/explorer.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

namespace cfm {

using nlohmann::json;

// ---- templates ---------------------------------------------------------------

Rational ParamRef::resolve(const ParameterAssignment& a) const {
    if (slot.empty()) return offset;
    return offset + scale * a.at(slot);
}

namespace {

int resolve_int(const ParamRef& r, const ParameterAssignment& a, const char* what) {
    Rational v = r.resolve(a);
    if (boost::multiprecision::denominator(v) != 1)
        throw DomainError(std::string(what) + " must be an integer, got " + to_string(v));
    Integer n = boost::multiprecision::numerator(v);
    if (abs(n) > 1000) throw DomainError(std::string(what) + " out of range");
    return n.convert_to<int>();
}

TermSchedule instantiate_terms(const TermTemplate& t, const ParameterAssignment& a) {
    TermSchedule s;
    for (const auto& p : t.prefix) s.prefix.push_back(p.resolve(a));
    for (const auto& slot : t.cycle) {
        if (const auto* lit = std::get_if<LiteralTemplate>(&slot)) {
            s.cycle.push_back(LiteralSlot{lit->value.resolve(a)});
            continue;
        }
        const auto& p = std::get<ProgressionTemplate>(slot);
        ProgressionSlot ps;
        ps.params.u0 = p.u0.resolve(a);
        ps.params.u1 = p.u1.resolve(a);
        ps.params.u2 = p.u2.resolve(a);
        ps.params.u3 = resolve_int(p.u3, a, "u3");
        ps.params.u4 = p.u4.resolve(a);
        ps.params.u5 = resolve_int(p.u5, a, "u5");
        ps.period = p.period;
        ps.offset = p.offset;
        s.cycle.push_back(ps);
    }
    return s;
}

void collect_slots(const ParamRef& r, std::set<std::string>& out) {
    if (!r.slot.empty()) out.insert(r.slot);
}

void collect_slots(const TermTemplate& t, std::set<std::string>& out) {
    for (const auto& p : t.prefix) collect_slots(p, out);
    for (const auto& s : t.cycle) {
        if (const auto* lit = std::get_if<LiteralTemplate>(&s)) {
            collect_slots(lit->value, out);
            continue;
        }
        const auto& p = std::get<ProgressionTemplate>(s);
        for (const auto* r : {&p.u0, &p.u1, &p.u2, &p.u3, &p.u4, &p.u5}) collect_slots(*r, out);
    }
}

}  // namespace

std::vector<std::string> Query::tagged_slots() const {
    std::set<std::string> s;
    collect_slots(head, s);
    collect_slots(numerators, s);
    collect_slots(denominators, s);
    return {s.begin(), s.end()};
}

void Query::validate() const {
    if (name.empty()) throw DomainError("query needs a name");
    auto tagged = tagged_slots();
    std::vector<std::string> keys;
    for (const auto& [k, v] : space.slots) keys.push_back(k);
    std::vector<std::string> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != tagged) throw DomainError("tagged slots in the schedules must match the search-space keys");
    if (!serial.empty() && std::find(keys.begin(), keys.end(), serial) == keys.end())
        throw DomainError("serial slot '" + serial + "' is not a search-space key");
    if (numerators.cycle.empty() || denominators.cycle.empty()) throw DomainError("schedules need a cycle");
    space.validate();
    for (const auto& c : kci_constants)
        if (!ConstantLibrary::standard().contains(c)) throw UnknownConstant(c);
}

SequenceSchedule Query::instantiate(const ParameterAssignment& a) const {
    SequenceSchedule s;
    s.head = head.resolve(a);
    s.numerators = instantiate_terms(numerators, a);
    s.denominators = instantiate_terms(denominators, a);
    s.validate();
    return s;
}

// ---- query json ----------------------------------------------------------------

namespace {

Rational rational_from(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    throw ParseError(where + ": expected an integer or a rational string");
}

json rational_json(const Rational& q) {
    if (boost::multiprecision::denominator(q) == 1 && abs(boost::multiprecision::numerator(q)) < Integer(1000000000))
        return boost::multiprecision::numerator(q).convert_to<long long>();
    return to_string(q);
}

ParamRef param_from(const json& j, const std::string& where) {
    if (j.is_object()) {
        ParamRef r;
        if (!j.contains("slot") || !j["slot"].is_string()) throw ParseError(where + ": slot reference needs \"slot\"");
        r.slot = j["slot"].get<std::string>();
        if (j.contains("scale")) r.scale = rational_from(j["scale"], where + ".scale");
        if (j.contains("offset")) r.offset = rational_from(j["offset"], where + ".offset");
        return r;
    }
    return ParamRef::constant(rational_from(j, where));
}

json param_json(const ParamRef& r) {
    if (r.slot.empty()) return rational_json(r.offset);
    json j{{"slot", r.slot}};
    if (r.scale != 1) j["scale"] = rational_json(r.scale);
    if (r.offset != 0) j["offset"] = rational_json(r.offset);
    return j;
}

TermTemplate terms_from(const json& j, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    TermTemplate t;
    if (j.contains("prefix"))
        for (std::size_t i = 0; i < j["prefix"].size(); ++i)
            t.prefix.push_back(param_from(j["prefix"][i], where + ".prefix[" + std::to_string(i) + "]"));
    if (!j.contains("cycle") || !j["cycle"].is_array() || j["cycle"].empty())
        throw ParseError(where + ": \"cycle\" must be a non-empty array");
    for (std::size_t i = 0; i < j["cycle"].size(); ++i) {
        const json& s = j["cycle"][i];
        std::string w = where + ".cycle[" + std::to_string(i) + "]";
        if (s.contains("literal")) {
            t.cycle.push_back(LiteralTemplate{param_from(s["literal"], w)});
        } else if (s.contains("progression")) {
            const json& p = s["progression"];
            ProgressionTemplate pt;
            auto get = [&](const char* k, Rational def) {
                return p.contains(k) ? param_from(p[k], w + "." + k) : ParamRef::constant(def);
            };
            pt.u0 = get("u0", 0);
            pt.u1 = get("u1", 0);
            pt.u2 = get("u2", 1);
            pt.u3 = get("u3", 1);
            pt.u4 = get("u4", 0);
            pt.u5 = get("u5", 0);
            pt.period = s.value("period", 1L);
            pt.offset = s.value("offset", 0L);
            t.cycle.push_back(pt);
        } else {
            throw ParseError(w + ": slot needs \"literal\" or \"progression\"");
        }
    }
    return t;
}

json terms_json(const TermTemplate& t) {
    json j;
    if (!t.prefix.empty()) {
        j["prefix"] = json::array();
        for (const auto& p : t.prefix) j["prefix"].push_back(param_json(p));
    }
    j["cycle"] = json::array();
    for (const auto& s : t.cycle) {
        if (const auto* lit = std::get_if<LiteralTemplate>(&s)) {
            j["cycle"].push_back({{"literal", param_json(lit->value)}});
            continue;
        }
        const auto& p = std::get<ProgressionTemplate>(s);
        json pj{{"u0", param_json(p.u0)}, {"u1", param_json(p.u1)}, {"u2", param_json(p.u2)},
                {"u3", param_json(p.u3)}, {"u4", param_json(p.u4)}, {"u5", param_json(p.u5)}};
        j["cycle"].push_back({{"progression", pj}, {"period", p.period}, {"offset", p.offset}});
    }
    return j;
}

Domain domain_from(const json& j, const std::string& where) {
    if (!j.is_object() || j.size() != 1) throw ParseError(where + ": domain must be an object with one key");
    const auto& [key, v] = *j.items().begin();
    if (key == "fixed") return Fixed{rational_from(v, where + ".fixed")};
    if (key == "integer_range") {
        if (!v.is_array() || v.size() != 2) throw ParseError(where + ": integer_range needs [lo, hi]");
        return IntegerRange{v[0].get<long>(), v[1].get<long>()};
    }
    if (key == "grid") {
        if (!v.is_array() || v.size() != 3) throw ParseError(where + ": grid needs [lo, hi, step]");
        return RationalGrid{rational_from(v[0], where), rational_from(v[1], where), rational_from(v[2], where)};
    }
    if (key == "farey") {
        FareyBox f;
        f.order = v.value("order", 1);
        if (v.contains("scale")) f.scale = rational_from(v["scale"], where + ".scale");
        if (v.contains("lo")) f.lo = rational_from(v["lo"], where + ".lo");
        if (v.contains("hi")) f.hi = rational_from(v["hi"], where + ".hi");
        return f;
    }
    if (key == "values") {
        ValueList l;
        for (const auto& x : v) l.values.push_back(rational_from(x, where + ".values"));
        return l;
    }
    throw ParseError(where + ": unknown domain kind '" + key + "'");
}

json domain_json(const Domain& d) {
    return std::visit(
        [](const auto& x) -> json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Fixed>)
                return {{"fixed", rational_json(x.value)}};
            else if constexpr (std::is_same_v<T, IntegerRange>)
                return {{"integer_range", {x.lo, x.hi}}};
            else if constexpr (std::is_same_v<T, RationalGrid>)
                return {{"grid", {rational_json(x.lo), rational_json(x.hi), rational_json(x.step)}}};
            else if constexpr (std::is_same_v<T, FareyBox>)
                return {{"farey", {{"order", x.order}, {"scale", rational_json(x.scale)}, {"lo", rational_json(x.lo)}, {"hi", rational_json(x.hi)}}}};
            else {
                json a = json::array();
                for (const auto& v : x.values) a.push_back(rational_json(v));
                return {{"values", a}};
            }
        },
        d);
}

json assignment_json(const ParameterAssignment& a) {
    json j = json::array();
    for (const auto& [k, v] : a.values) j.push_back({k, to_string(v)});
    return j;
}

ParameterAssignment assignment_from(const json& j) {
    ParameterAssignment a;
    for (const auto& kv : j) a.values.emplace_back(kv.at(0).get<std::string>(), parse_rational(kv.at(1).get<std::string>()));
    return a;
}

}  // namespace

json query_to_json(const Query& q) {
    json j;
    j["name"] = q.name;
    j["head"] = param_json(q.head);
    j["numerators"] = terms_json(q.numerators);
    j["denominators"] = terms_json(q.denominators);
    j["space"] = json::array();
    for (const auto& [name, slot] : q.space.slots) {
        json s{{"slot", name}, {"stages", json::array()}};
        for (const auto& d : slot.stages) s["stages"].push_back(domain_json(d));
        if (!slot.exclude_lo.empty()) {
            s["exclude"] = json::array();
            for (std::size_t k = 0; k < slot.exclude_lo.size(); ++k)
                s["exclude"].push_back({rational_json(slot.exclude_lo[k]), rational_json(slot.exclude_hi[k])});
        }
        j["space"].push_back(s);
    }
    if (!q.serial.empty()) j["serial"] = q.serial;
    j["kci_constants"] = q.kci_constants;
    j["eval"] = {{"target_digits", q.eval.target_digits}, {"start_depth", q.eval.start_depth}, {"depth_cap", q.eval.depth_cap}};
    return j;
}

Query query_from_json(const json& j) {
    Query q;
    try {
        if (!j.is_object()) throw ParseError("query must be a JSON object");
        q.name = j.at("name").get<std::string>();
        q.head = j.contains("head") ? param_from(j["head"], "head") : ParamRef::constant(0);
        q.numerators = terms_from(j.at("numerators"), "numerators");
        q.denominators = terms_from(j.at("denominators"), "denominators");
        for (const auto& s : j.at("space")) {
            SlotSpace slot;
            std::string name = s.at("slot").get<std::string>();
            for (std::size_t i = 0; i < s.at("stages").size(); ++i)
                slot.stages.push_back(domain_from(s["stages"][i], "space." + name + ".stages[" + std::to_string(i) + "]"));
            if (s.contains("exclude"))
                for (const auto& iv : s["exclude"]) {
                    slot.exclude_lo.push_back(rational_from(iv.at(0), "space." + name + ".exclude"));
                    slot.exclude_hi.push_back(rational_from(iv.at(1), "space." + name + ".exclude"));
                }
            q.space.slots.emplace_back(name, std::move(slot));
        }
        q.serial = j.value("serial", std::string());
        if (j.contains("kci_constants")) q.kci_constants = j["kci_constants"].get<std::vector<std::string>>();
        if (j.contains("eval")) {
            const json& e = j["eval"];
            q.eval.target_digits = e.value("target_digits", 0);
            q.eval.start_depth = e.value("start_depth", 64L);
            q.eval.depth_cap = e.value("depth_cap", 1L << 20);
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed query: ") + e.what());
    }
    q.validate();
    return q;
}

Query load_query(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open query file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return query_from_json(j);
}

// ---- records ---------------------------------------------------------------------

json record_to_json(const ConjectureRecord& r) {
    json j;
    j["query_name"] = r.query_name;
    j["query"] = r.query;
    j["assignments"] = json::array();
    for (const auto& a : r.assignments) j["assignments"].push_back(assignment_json(a));
    j["limits"] = r.limits;
    j["depths"] = r.depths;
    j["precision"] = {{"decimal_digits", r.ctx.decimal_digits}, {"guard_digits", r.ctx.guard_digits}};
    j["verdicts"] = r.verdicts;
    j["report"] = r.report;
    j["witness_keys"] = r.witness_keys;
    j["config_hash"] = r.config_hash;
    j["timestamp"] = r.timestamp;
    return j;
}

ConjectureRecord record_from_json(const json& j) {
    try {
        ConjectureRecord r;
        r.query_name = j.at("query_name").get<std::string>();
        r.query = j.at("query");
        for (const auto& a : j.at("assignments")) r.assignments.push_back(assignment_from(a));
        r.limits = j.at("limits").get<std::vector<std::string>>();
        r.depths = j.at("depths").get<std::vector<long>>();
        r.ctx.decimal_digits = j.at("precision").at("decimal_digits").get<int>();
        r.ctx.guard_digits = j.at("precision").at("guard_digits").get<int>();
        r.verdicts = j.at("verdicts").get<std::string>();
        r.report = j.at("report");
        r.witness_keys = j.at("witness_keys").get<std::map<std::string, std::string>>();
        r.config_hash = j.at("config_hash").get<std::string>();
        r.timestamp = j.at("timestamp").get<std::string>();
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed record: ") + e.what());
    }
}

void persist(const std::vector<ConjectureRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open " + path + " for appending");
    for (const auto& r : records) out << record_to_json(r).dump() << '\n';
}

std::vector<ConjectureRecord> load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open record file " + path);
    std::vector<ConjectureRecord> out;
    std::string line;
    long n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(record_from_json(json::parse(line)));
        } catch (const std::exception& e) {
            throw ParseError(path + ":" + std::to_string(n) + ": " + e.what());
        }
    }
    return out;
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

// ---- dedup -----------------------------------------------------------------------

namespace {

IntVector primitive(IntVector c) {
    Integer g = 0;
    for (const auto& x : c) g = gcd(g, Integer(abs(x)));
    if (g > 1)
        for (auto& x : c) x /= g;
    for (const auto& x : c) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : c) y = -y;
        break;
    }
    return c;
}

std::string join(const IntVector& c) {
    std::string s;
    for (const auto& x : c) s += (s.empty() ? "" : ",") + x.str();
    return s;
}

}  // namespace

std::string canonical_witness(const std::string& test, const Verdict& v, const LimitFamily& fam) {
    return std::visit(
        [&](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>)
                return test;
            else if constexpr (std::is_same_v<T, Rational>)
                return "rational:" + to_string(x);
            else if constexpr (std::is_same_v<T, IntegerPolynomial>)
                return "poly:" + x.normalized().to_string();
            else if constexpr (std::is_same_v<T, ConstantCombination>) {
                IntVector c = x.denominator;
                c.insert(c.end(), x.numerator.begin(), x.numerator.end());
                std::string names;
                for (const auto& n : x.names) names += n + ";";
                return "const:" + names + join(primitive(c));
            } else if constexpr (std::is_same_v<T, ProductRelation>) {
                std::string s = test + ":" + join(primitive(x.relation.coefficients)) + "|";
                for (auto m : x.members) s += to_decimal(fam.points[m].limit.value, 20) + ";";
                return s;
            } else {
                if (x.form == "RFP") {
                    IntVector c = x.numerator.coefficients;
                    c.push_back(Integer(0));  // separator against length ambiguity
                    c.insert(c.end(), x.denominator.coefficients.begin(), x.denominator.coefficients.end());
                    return "fit:RFP:" + std::to_string(x.numerator.degree()) + ":" + join(primitive(c));
                }
                std::string s = "fit:" + x.form;
                for (const auto& p : x.parameters) s += ";" + p.to_string();
                return s;
            }
        },
        v.witness);
}

std::vector<ConjectureRecord> dedup(const std::vector<ConjectureRecord>& records) {
    std::vector<ConjectureRecord> out;
    std::set<std::string> seen;
    for (const auto& r : records) {
        bool fresh = r.witness_keys.empty();
        for (const auto& [t, k] : r.witness_keys)
            if (!seen.count(k)) fresh = true;
        if (!fresh) continue;
        for (const auto& [t, k] : r.witness_keys) seen.insert(k);
        out.push_back(r);
    }
    return out;
}

// ---- exploration -------------------------------------------------------------------

namespace {

std::string utc_now() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json report_json(const TestReport& rep) {
    json j = json::object();
    for (const char* t : kTestNames) {
        auto it = rep.verdicts.find(t);
        if (it == rep.verdicts.end()) continue;
        const Verdict& v = it->second;
        j[t] = {{"fired", v.fired},
                {"witness", witness_to_string(v.witness)},
                {"likelihood", to_decimal(v.likelihood, 6)},
                {"note", v.note},
                {"points", v.points}};
    }
    return j;
}

struct Evaluated {
    ParameterAssignment assignment;
    std::optional<LimitEstimate> limit;
    std::string error;
};

Evaluated evaluate_one(const Query& q, const ParameterAssignment& a, const PrecisionContext& ctx) {
    Evaluated e{a, std::nullopt, {}};
    try {
        int target = q.eval.target_digits > 0 ? q.eval.target_digits : ctx.significant_digits();
        auto est = auto_depth(q.instantiate(a), target, ctx, {q.eval.start_depth, q.eval.depth_cap});
        if (!est.converged)
            e.error = "did not converge by depth " + std::to_string(est.depth);
        else
            e.limit = std::move(est);
    } catch (const std::exception& ex) {
        e.error = ex.what();
    }
    return e;
}

std::vector<Evaluated> evaluate_all(const Query& q, const std::vector<ParameterAssignment>& as, const ExploreOptions& opt) {
    std::vector<Evaluated> out(as.size());
    unsigned threads = std::max(1u, opt.threads);
    if (threads == 1 || as.size() < 2) {
        for (std::size_t i = 0; i < as.size(); ++i) out[i] = evaluate_one(q, as[i], opt.ctx);
        return out;
    }
    // The caller's PrecisionScope is already at opt.ctx, so workers never
    // write the process-wide precision.
    for (std::size_t start = 0; start < as.size(); start += threads) {
        std::vector<std::future<Evaluated>> fs;
        for (std::size_t i = start; i < std::min(as.size(), start + threads); ++i)
            fs.push_back(std::async(std::launch::async, evaluate_one, std::cref(q), std::cref(as[i]), std::cref(opt.ctx)));
        for (std::size_t i = 0; i < fs.size(); ++i) out[start + i] = fs[i].get();
    }
    return out;
}

}  // namespace

ExploreResult explore(const Query& q, const ExploreOptions& opt, const std::function<void(const ConjectureRecord&)>& sink) {
    q.validate();
    opt.ctx.validate();
    PrecisionScope scope(opt.ctx);
    ExploreResult res;
    IdentifierConfig cfg = opt.identifier;
    if (!q.kci_constants.empty()) cfg.kci_constants = q.kci_constants;
    const json qj = query_to_json(q);

    SpaceIterator it(q.space);
    std::optional<ParameterAssignment> look = it.next();
    long used = 0;
    std::vector<TestReport> reports;
    while (look && used < opt.budget) {
        const int stage = look->stage;
        std::vector<ParameterAssignment> stage_as;
        while (look && look->stage == stage && used < opt.budget) {
            stage_as.push_back(std::move(*look));
            ++used;
            look = it.next();
        }
        auto evaluated = evaluate_all(q, stage_as, opt);

        // Group by the non-serial slots, keeping first-appearance order.
        std::vector<std::pair<std::vector<Rational>, std::vector<FamilyPoint>>> groups;
        for (auto& e : evaluated) {
            if (!e.limit) {
                res.failures.push_back(e.assignment.to_string() + ": " + e.error);
                continue;
            }
            std::vector<Rational> key;
            for (const auto& [k, v] : e.assignment.values)
                if (k != q.serial) key.push_back(v);
            auto g = std::find_if(groups.begin(), groups.end(), [&](const auto& p) { return p.first == key; });
            if (g == groups.end()) {
                groups.push_back({key, {}});
                g = groups.end() - 1;
            }
            g->second.push_back({e.assignment, std::move(*e.limit)});
        }

        bool stage_fired = false;
        for (auto& [key, pts] : groups) {
            std::size_t full = pts.size() - pts.size() % 10;
            for (std::size_t k = full; k < pts.size(); ++k) res.skipped.push_back(pts[k].assignment.to_string());
            for (std::size_t b = 0; b < full; b += 10) {
                BatchResult br;
                br.stage = stage;
                br.family.ctx = opt.ctx;
                br.family.varied_slot = q.serial;
                br.family.points.assign(pts.begin() + static_cast<long>(b), pts.begin() + static_cast<long>(b + 10));
                br.family = serial_order(br.family);
                br.report = run_all(br.family, cfg);
                reports.push_back(br.report);
                std::string vec = br.report.vector_string();
                if (vec.find('Y') != std::string::npos) {
                    stage_fired = true;
                    ConjectureRecord r;
                    r.query_name = q.name;
                    r.query = qj;
                    for (const auto& p : br.family.points) {
                        r.assignments.push_back(p.assignment);
                        r.limits.push_back(to_decimal(p.limit.value, opt.ctx.decimal_digits));
                        r.depths.push_back(p.limit.depth);
                    }
                    r.ctx = opt.ctx;
                    r.verdicts = vec;
                    r.report = report_json(br.report);
                    for (const auto& [t, v] : br.report.verdicts)
                        if (v.fired) r.witness_keys[t] = canonical_witness(t, v, br.family);
                    r.config_hash = opt.config_hash;
                    r.timestamp = opt.timestamps ? utc_now() : "";
                    if (sink) sink(r);
                    res.records.push_back(std::move(r));
                }
                res.batches.push_back(std::move(br));
            }
        }
        if (!stage_fired) break;  // refine only after a conclusive stage
    }
    res.summary = merge_reports(reports);
    return res;
}

}  // namespace cfm
