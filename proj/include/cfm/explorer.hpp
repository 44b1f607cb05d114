#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cfm/identifier.hpp"

namespace cfm {

// A schedule parameter: offset + scale * slot (just offset when slot is empty).
struct ParamRef {
    Rational offset = 0;
    std::string slot;
    Rational scale = 1;

    Rational resolve(const ParameterAssignment& a) const;
    static ParamRef constant(Rational v) { return ParamRef{std::move(v), "", 1}; }
    static ParamRef of(std::string slot, Rational scale = 1, Rational offset = 0) {
        return ParamRef{std::move(offset), std::move(slot), std::move(scale)};
    }
};

struct ProgressionTemplate {
    ParamRef u0, u1, u2, u3, u4, u5;
    long period = 1;
    long offset = 0;
};
struct LiteralTemplate {
    ParamRef value;
};
using SlotTemplate = std::variant<ProgressionTemplate, LiteralTemplate>;

struct TermTemplate {
    std::vector<ParamRef> prefix;
    std::vector<SlotTemplate> cycle;
};

struct EvalSpec {
    int target_digits = 0;  // 0: decimal_digits - guard_digits
    long start_depth = 64;
    long depth_cap = 1L << 20;
};

struct Query {
    std::string name;
    ParamRef head;
    TermTemplate numerators, denominators;
    SearchSpace space;
    std::string serial;
    std::vector<std::string> kci_constants;
    EvalSpec eval;

    void validate() const;  // tagged slots must match the space keys exactly
    std::vector<std::string> tagged_slots() const;
    SequenceSchedule instantiate(const ParameterAssignment& a) const;
};

nlohmann::json query_to_json(const Query& q);
Query query_from_json(const nlohmann::json& j);  // throws ParseError
Query load_query(const std::string& path);

struct ConjectureRecord {
    std::string query_name;
    nlohmann::json query;                     // self-contained copy of the query
    std::vector<ParameterAssignment> assignments;
    std::vector<std::string> limits;          // full-precision decimal strings
    std::vector<long> depths;
    PrecisionContext ctx;
    std::string verdicts;                     // ten-character vector
    nlohmann::json report;                    // per test: fired, witness, likelihood, note, points
    std::map<std::string, std::string> witness_keys;  // fired test -> canonical witness
    std::string config_hash;
    std::string timestamp;
};

nlohmann::json record_to_json(const ConjectureRecord& r);
ConjectureRecord record_from_json(const nlohmann::json& j);

struct BatchResult {
    int stage = 0;
    LimitFamily family;
    TestReport report;
};

struct ExploreOptions {
    long budget = 1000;  // maximum assignments evaluated
    PrecisionContext ctx;
    IdentifierConfig identifier;
    unsigned threads = 1;
    std::string config_hash;
    bool timestamps = true;
};

struct ExploreResult {
    std::vector<ConjectureRecord> records;
    std::vector<BatchResult> batches;
    std::vector<std::string> failures;   // per-assignment evaluation errors
    std::vector<std::string> skipped;    // assignments left out of any batch of ten
    TestReport summary;                  // OR over all batches
};

ExploreResult explore(const Query& q, const ExploreOptions& opt,
                      const std::function<void(const ConjectureRecord&)>& sink = {});

std::string canonical_witness(const std::string& test, const Verdict& v, const LimitFamily& fam);

std::vector<ConjectureRecord> dedup(const std::vector<ConjectureRecord>& records);

void persist(const std::vector<ConjectureRecord>& records, const std::string& path);  // appends
std::vector<ConjectureRecord> load(const std::string& path);                          // ParseError names the line

std::string fnv1a_hex(const std::string& data);

}  // namespace cfm
