// cfminer: identify a number, explore a query file, reproduce a casebook scenario.
//
// Exit status: 0 success, 1 assertion failure, 2 usage or config error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cfm/casebook.hpp"
#include "cfm/config.hpp"

using namespace cfm;

namespace {

constexpr int kOk = 0, kAssert = 1, kUsage = 2;

struct Flags {
    std::optional<std::string> config;
    std::optional<int> digits, guard, max_degree;
    std::optional<std::string> lll_delta, out;
    std::optional<long> relation_bound, start_depth, depth_cap, budget;
    std::optional<double> serial_residual, nonlinear_residual;
    std::optional<unsigned> threads;
    std::vector<std::string> constants;
};

Config resolve_config(const Flags& f) {
    Config c;
    std::string path = f.config.value_or("");
    if (path.empty())
        if (const char* env = std::getenv(kConfigEnv)) path = env;
    if (!path.empty()) c = load_config(path, c);
    if (f.digits) c.decimal_digits = *f.digits;
    if (f.guard) c.guard_digits = *f.guard;
    if (f.max_degree) c.max_degree = *f.max_degree;
    if (f.lll_delta) c.lll_delta = *f.lll_delta;
    if (f.out) c.records_out = *f.out;
    if (f.relation_bound) c.relation_bound = *f.relation_bound;
    if (f.start_depth) c.start_depth = *f.start_depth;
    if (f.depth_cap) c.depth_cap = *f.depth_cap;
    if (f.budget) c.budget = *f.budget;
    if (f.serial_residual) c.serial_linear_residual = *f.serial_residual;
    if (f.nonlinear_residual) c.nonlinear_residual = *f.nonlinear_residual;
    if (f.threads) c.threads = *f.threads;
    if (!f.constants.empty()) c.constants = f.constants;
    c.validate();
    return c;
}

// ---- identify ---------------------------------------------------------------------

struct Input {
    std::string text;  // without trailing ellipsis
    int significant = 0;
};

Input scan_decimal(std::string s) {
    for (const std::string tail : {"\xe2\x80\xa6", "..."})
        if (s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0)
            s.erase(s.size() - tail.size());
    Input in{s, 0};
    bool leading = true;
    for (char ch : s) {
        if (ch == 'e' || ch == 'E') break;
        if (ch < '0' || ch > '9') continue;
        if (leading && ch == '0') continue;
        leading = false;
        ++in.significant;
    }
    return in;
}

int cmd_identify(const std::string& raw, const Config& cfg) {
    Input in = scan_decimal(raw);
    PrecisionContext ctx = cfg.precision();
    bool exact = false;
    if (in.significant < ctx.decimal_digits) {
        // The last two digits are treated as noise; the guard absorbs the
        // difference to the 30-digit floor.
        int s = in.significant - 2;
        int digits = std::max(30, in.significant);
        int guard = std::max(cfg.guard_digits, digits - s);
        if (s - guard > 0) {
            ctx = PrecisionContext::make(digits, guard);
        } else {
            exact = true;
        }
    }

    Real x;
    {
        PrecisionScope scope(ctx);
        x = exact ? to_real(parse_rational(in.text)) : parse_real(in.text);
    }
    FamilyPoint p;
    p.limit.value = x;
    p.limit.ctx = ctx;
    p.limit.error_estimate = 0;
    LimitFamily fam{{p}, "", ctx};
    IdentifierConfig icfg = cfg.identifier();

    std::cout << "value " << to_decimal(x, ctx.decimal_digits) << "\n";
    std::cout << "precision " << ctx.decimal_digits << " digits, guard " << ctx.guard_digits;
    if (exact) std::cout << " (input taken as an exact decimal)";
    std::cout << "\n";

    Verdict rni = test_rni(fam, icfg);
    Verdict ani = test_ani(fam, icfg, &rni);
    Verdict kci = test_kci(fam, icfg, &rni);
    bool any = false;
    for (auto [name, v] : {std::pair{"RNI", &rni}, {"ANI", &ani}, {"KCI", &kci}}) {
        if (!v->fired) continue;
        any = true;
        std::cout << name << "  " << witness_to_string(v->witness) << "\n";
    }
    if (!any) std::cout << "no structure found\n";
    return kOk;
}

// ---- explore ----------------------------------------------------------------------

std::string verdict_table(const TestReport& r) {
    std::ostringstream os;
    for (const char* t : kTestNames) os << t << (t == kTestNames.back() ? "\n" : "  ");
    for (const char* t : kTestNames) os << " " << (r.fired(t) ? "✓" : "✗") << (t == kTestNames.back() ? "\n" : "   ");
    return os.str();
}

std::string assignment_text(const ParameterAssignment& a) {
    std::string s;
    for (const auto& [k, v] : a.values) s += (s.empty() ? "" : ",") + k + "=" + to_string(v);
    return s;
}

int cmd_explore(const std::string& path, const Config& cfg) {
    Query q = load_query(path);
    q.eval.depth_cap = std::min(q.eval.depth_cap, cfg.depth_cap);
    q.eval.start_depth = std::min(q.eval.start_depth, q.eval.depth_cap);
    ExploreOptions opt;
    opt.budget = cfg.budget;
    opt.ctx = cfg.precision();
    opt.identifier = cfg.identifier();
    opt.threads = cfg.threads;
    opt.config_hash = cfg.hash();
    opt.timestamps = !cfg.records_out.empty();

    ExploreResult res = explore(q, opt);
    std::cout << "query " << q.name << "\n";
    for (std::size_t k = 0; k < res.batches.size(); ++k) {
        const auto& b = res.batches[k];
        std::cout << "batch " << k << " stage " << b.stage << "  " << b.report.vector_string() << "  ";
        const auto& pts = b.family.points;
        std::cout << assignment_text(pts.front().assignment) << " .. " << assignment_text(pts.back().assignment) << "\n";
    }
    std::cout << res.records.size() << " record(s), " << res.failures.size() << " failed evaluation(s), "
              << res.skipped.size() << " skipped assignment(s)\n\n";
    std::cout << verdict_table(res.summary);
    for (const char* t : kTestNames)
        if (res.summary.fired(t)) std::cout << t << ": " << res.summary.witness_text(t) << "\n";
    for (const auto& f : res.failures) std::cout << "failed: " << f << "\n";

    if (!cfg.records_out.empty()) {
        persist(dedup(res.records), cfg.records_out);
        std::cout << "records appended to " << cfg.records_out << "\n";
    }
    return kOk;
}

// ---- reproduce --------------------------------------------------------------------

int cmd_reproduce(const std::string& name, long depth, const std::string& record_path, const Config& cfg) {
    casebook::CaseOptions opt;
    opt.ctx = cfg.precision();
    opt.depth = depth;
    opt.identifier = cfg.identifier();
    opt.threads = cfg.threads;
    casebook::CaseOutput out = casebook::run_case(name, opt);
    std::cout << out.table();
    if (!record_path.empty()) {
        std::ofstream f(record_path);
        if (!f) throw ParseError("cannot write " + record_path);
        f << out.record.dump(2) << "\n";
    }
    return out.ok() ? kOk : kAssert;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cfminer: continued fraction and series conjecture miner"};
    app.require_subcommand(1);
    app.fallthrough();
    Flags f;
    app.add_option("--config", f.config, std::string("JSON config file (default: $") + kConfigEnv + ")");
    app.add_option("--digits", f.digits, "working precision in decimal digits");
    app.add_option("--guard", f.guard, "guard digits");
    app.add_option("--lll-delta", f.lll_delta, "Lovasz parameter, as p/q");
    app.add_option("--relation-bound", f.relation_bound, "largest accepted relation coefficient");
    app.add_option("--serial-residual", f.serial_residual, "RFP residual threshold");
    app.add_option("--nonlinear-residual", f.nonlinear_residual, "EFP/IEP/PCP/RCP residual threshold");
    app.add_option("--start-depth", f.start_depth, "first evaluation depth");
    app.add_option("--depth-cap", f.depth_cap, "largest evaluation depth");
    app.add_option("--threads", f.threads, "worker threads (default: available processors)");

    std::string value, query_path, case_name, record_path;
    long depth = 0;

    auto* identify = app.add_subcommand("identify", "run RNI, ANI and KCI on one decimal value");
    identify->add_option("value", value, "decimal value")->required();
    identify->add_option("--constants", f.constants, "KCI constants (default: whole library)")->delimiter(',');
    identify->add_option("--max-degree", f.max_degree, "largest ANI degree");

    auto* exp = app.add_subcommand("explore", "evaluate a query and run the identifier on each batch");
    exp->add_option("query", query_path, "query file")->required()->check(CLI::ExistingFile);
    exp->add_option("--budget", f.budget, "maximum assignments evaluated");
    exp->add_option("--out", f.out, "append records to this JSONL file");

    auto* rep = app.add_subcommand("reproduce", "run a casebook scenario");
    rep->add_option("case", case_name, "scenario")->required()->check(CLI::IsMember(casebook::case_names()));
    rep->add_option("--depth", depth, "override the listing depth")->check(CLI::PositiveNumber);
    rep->add_option("--record", record_path, "write the machine-readable record here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    Config cfg;
    try {
        cfg = resolve_config(f);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (*identify) return cmd_identify(value, cfg);
        if (*exp) return cmd_explore(query_path, cfg);
        return cmd_reproduce(case_name, depth, record_path, cfg);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kAssert;
    }
}
