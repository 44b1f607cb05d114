#pragma once

#include <algorithm>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "cfm/identifier.hpp"

namespace cfm {

// Run configuration.  Precedence: command-line flags > config file > these defaults.
struct Config {
    int decimal_digits = 50;
    int guard_digits = 10;
    std::string lll_delta = "99/100";
    long relation_bound = 10000;
    double serial_linear_residual = 1e-10;
    double nonlinear_residual = 1e-8;
    int max_degree = 10;
    long start_depth = 64;
    long depth_cap = 1L << 20;
    long budget = 1000;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::string records_out;
    std::vector<std::string> constants;  // KCI subset; empty: whole library

    void validate() const;  // DomainError / UnknownConstant
    PrecisionContext precision() const;
    LllOptions lll() const;
    IdentifierConfig identifier() const;

    nlohmann::json to_json() const;
    std::string hash() const;  // FNV-1a of the canonical JSON
};

// Overlays the keys present in j onto base; unknown keys are a ParseError.
Config config_from_json(const nlohmann::json& j, Config base = {});
Config load_config(const std::string& path, Config base = {});

inline constexpr const char* kConfigEnv = "CFMINER_CONFIG";

}  // namespace cfm
