#include "cfm/config.hpp"

#include <fstream>

#include "cfm/explorer.hpp"

namespace cfm {

using nlohmann::json;

void Config::validate() const {
    precision().validate();
    LllOptions l = lll();
    // 1/4 < delta <= 1
    if (!(4 * l.delta_num > l.delta_den && l.delta_num <= l.delta_den))
        throw DomainError("lll_delta must lie in (1/4, 1], got " + lll_delta);
    if (relation_bound < 1) throw DomainError("relation_bound must be positive");
    if (!(serial_linear_residual > 0 && serial_linear_residual < 1)) throw DomainError("serial_linear_residual must lie in (0, 1)");
    if (!(nonlinear_residual > 0 && nonlinear_residual < 1)) throw DomainError("nonlinear_residual must lie in (0, 1)");
    if (max_degree < 1 || max_degree > 10) throw DomainError("max_degree must lie in 1..10");
    if (start_depth < 1 || depth_cap < start_depth) throw DomainError("need 1 <= start_depth <= depth_cap");
    if (budget < 1) throw DomainError("budget must be positive");
    if (threads < 1) throw DomainError("threads must be positive");
    for (const auto& c : constants)
        if (!ConstantLibrary::standard().contains(c)) throw UnknownConstant(c);
}

PrecisionContext Config::precision() const { return PrecisionContext{decimal_digits, guard_digits}; }

LllOptions Config::lll() const {
    Rational d;
    try {
        d = parse_rational(lll_delta);
    } catch (const ParseError&) {
        throw DomainError("lll_delta is not a rational: " + lll_delta);
    }
    Integer n = boost::multiprecision::numerator(d), m = boost::multiprecision::denominator(d);
    if (n > Integer(1000000) || m > Integer(1000000)) throw DomainError("lll_delta numerator and denominator must stay below 10^6");
    return LllOptions{n.convert_to<long>(), m.convert_to<long>()};
}

IdentifierConfig Config::identifier() const {
    IdentifierConfig c;
    c.relation_bound = relation_bound;
    c.lll = lll();
    c.max_degree = max_degree;
    c.serial_linear_residual = serial_linear_residual;
    c.nonlinear_residual = nonlinear_residual;
    c.kci_constants = constants;
    return c;
}

json Config::to_json() const {
    return json{{"decimal_digits", decimal_digits},
                {"guard_digits", guard_digits},
                {"lll_delta", lll_delta},
                {"relation_bound", relation_bound},
                {"serial_linear_residual", serial_linear_residual},
                {"nonlinear_residual", nonlinear_residual},
                {"max_degree", max_degree},
                {"start_depth", start_depth},
                {"depth_cap", depth_cap},
                {"budget", budget},
                {"threads", threads},
                {"records_out", records_out},
                {"constants", constants}};
}

std::string Config::hash() const {
    json j = to_json();
    // Output location and parallelism do not change results.
    j.erase("records_out");
    j.erase("threads");
    return fnv1a_hex(j.dump());
}

Config config_from_json(const json& j, Config c) {
    if (!j.is_object()) throw ParseError("config must be a JSON object");
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "decimal_digits") c.decimal_digits = v.get<int>();
            else if (key == "guard_digits") c.guard_digits = v.get<int>();
            else if (key == "lll_delta") c.lll_delta = v.is_string() ? v.get<std::string>() : v.dump();
            else if (key == "relation_bound") c.relation_bound = v.get<long>();
            else if (key == "serial_linear_residual") c.serial_linear_residual = v.get<double>();
            else if (key == "nonlinear_residual") c.nonlinear_residual = v.get<double>();
            else if (key == "max_degree") c.max_degree = v.get<int>();
            else if (key == "start_depth") c.start_depth = v.get<long>();
            else if (key == "depth_cap") c.depth_cap = v.get<long>();
            else if (key == "budget") c.budget = v.get<long>();
            else if (key == "threads") c.threads = v.get<unsigned>();
            else if (key == "records_out") c.records_out = v.get<std::string>();
            else if (key == "constants") c.constants = v.get<std::vector<std::string>>();
            else throw ParseError("unknown config key '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad config value: ") + e.what());
    }
    return c;
}

Config load_config(const std::string& path, Config base) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file " + path);
    try {
        return config_from_json(json::parse(in), std::move(base));
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace cfm
