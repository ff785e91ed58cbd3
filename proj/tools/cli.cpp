#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cbc/bounds.hpp"
#include "cbc/construct.hpp"
#include "cbc/oracle.hpp"

namespace cbc::cli {

using nlohmann::json;

std::vector<std::size_t> sample_batch(SplitMix64& rng, std::size_t n, std::size_t k) {
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

Simulation simulate_load(const SetSystem& sys, int k, std::uint64_t batches, std::uint64_t seed) {
    if (k < 1 || static_cast<std::size_t>(k) > sys.size()) throw ParamError("batch size must be in [1, n]");
    Simulation sim;
    sim.stats.per_server_reads.assign(static_cast<std::size_t>(sys.servers()), 0);
    SplitMix64 rng(seed);
    std::vector<std::uint64_t> batch_reads(static_cast<std::size_t>(sys.servers()));
    for (std::uint64_t b = 0; b < batches; ++b) {
        const auto request = sample_batch(rng, sys.size(), static_cast<std::size_t>(k));
        RetrievalPlan plan;
        try {
            plan = plan_batch(sys, request);
        } catch (const NoPlan& e) {
            sim.failure = e.witness();
            return sim;
        }
        std::fill(batch_reads.begin(), batch_reads.end(), 0);
        for (const Assignment& a : plan.assignment) {
            const auto s = static_cast<std::size_t>(a.server);
            ++batch_reads[s];
            ++sim.stats.per_server_reads[s];
            sim.stats.max_reads_in_any_single_batch_per_server =
                std::max(sim.stats.max_reads_in_any_single_batch_per_server, batch_reads[s]);
        }
        ++sim.stats.batches_served;
    }
    return sim;
}

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

json big_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
        return v.convert_to<std::int64_t>();
    }
    return v.str();
}

json optional_json(const std::optional<BigInt>& v) { return v ? big_json(*v) : json(nullptr); }

json bound_json(const BoundResult& b) {
    json sources = json::array();
    for (Regime r : b.sources) sources.push_back(std::string(regime_name(r)));
    return {{"lower", big_json(b.lower)},
            {"exact", optional_json(b.exact)},
            {"upper", optional_json(b.upper)},
            {"source", sources},
            {"chosen_c", b.chosen_c}};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
}

std::string set_json_text(const std::vector<std::size_t>& v) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out + "}";
}

std::string bound_text(const BoundResult& b) {
    std::vector<std::string> exact_sources;
    bool counting = false;
    std::vector<std::string> other;
    for (Regime r : b.sources) {
        if (r == Regime::CountingBound) {
            counting = true;
        } else if (b.exact && r != Regime::CodeRange) {
            exact_sources.emplace_back(regime_name(r));
        } else {
            other.emplace_back(regime_name(r));
        }
    }
    auto join = [](const std::vector<std::string>& v, const char* sep) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
        return s;
    };
    std::string out;
    if (b.exact) {
        out = "exact " + b.exact->str() + " (" + join(exact_sources, " / ");
        if (exact_sources.size() > 1) out += " agree";
        if (counting) out += "; lower bound counting = " + b.lower.str();
        out += ")";
    } else {
        out = "lower " + b.lower.str();
        if (b.upper) out += ", upper " + b.upper->str();
        if (counting) other.emplace_back("counting c=" + std::to_string(b.chosen_c));
        out += " (" + join(other, "; ") + ")";
    }
    return out;
}

std::string verdict(std::uint64_t storage, const BoundResult& b) {
    const BigInt n_storage = storage;
    if ((b.exact && n_storage == *b.exact) || n_storage == b.lower) return "optimal";
    if (n_storage - b.lower == 1) return "gap ≤ 1 (lower bound " + b.lower.str() + ")";
    return "upper-bound-only (lower bound " + b.lower.str() + ")";
}

Method parse_method(const std::string& name) {
    for (Method m : {Method::Trivial, Method::MEqualsK, Method::MPlus1, Method::LargeN, Method::RangeA,
                     Method::RangeB, Method::Uniform}) {
        if (method_name(m) == name) return m;
    }
    throw ParamError("unknown method '" + name + "'");
}

struct ConstructArgs {
    std::optional<std::size_t> n;
    int k = 0;
    int m = 0;
    std::optional<int> c;
    std::string method = "auto";
    std::string out_path;
    std::string trace_path;
    std::string code_path;
    bool json = false;
};

int cmd_construct(const ConstructArgs& a, std::ostream& out, std::ostream& err) {
    std::optional<SetSystem> system;
    std::optional<ConstructionTrace> trace;
    std::optional<ConstantWeightCode> code;
    std::string method = a.method;

    auto need_n = [&]() -> std::size_t {
        if (!a.n) throw ParamError("-n is required for method " + method);
        return *a.n;
    };
    if (method == "auto") {
        BestConstruction best = construct_best(need_n(), a.k, a.m);
        method = std::string(method_name(best.method));
        if (best.method == Method::RangeA) trace = construct_range_a(*a.n, a.k, a.m).second;
        if (best.method == Method::RangeB) {
            trace = construct_range_b(*a.n, a.k, a.m).second;
            code = distance4_code(a.m, a.k - 3);
        }
        system = std::move(best.system);
    } else {
        switch (parse_method(method)) {
            case Method::Trivial: system = construct_trivial(need_n(), a.k, a.m); break;
            case Method::MEqualsK:
                if (a.m != a.k) throw RangeError("m_equals_k needs m = k");
                system = construct_m_equals_k(need_n(), a.k);
                break;
            case Method::MPlus1: system = construct_m_plus_1(a.k, a.m); break;
            case Method::LargeN: system = construct_large_n(need_n(), a.k, a.m); break;
            case Method::RangeA: {
                auto [s, t] = construct_range_a(need_n(), a.k, a.m);
                system = std::move(s);
                trace = std::move(t);
                break;
            }
            case Method::RangeB: {
                auto [s, t] = construct_range_b(need_n(), a.k, a.m);
                system = std::move(s);
                trace = std::move(t);
                code = distance4_code(a.m, a.k - 3);
                break;
            }
            case Method::Uniform:
                if (!a.c) throw ParamError("-c is required for method uniform");
                system = construct_uniform(*a.c, a.k, a.m);
                code = uniform_code(*a.c, a.k, a.m);
                break;
        }
    }

    const std::uint64_t storage = total_storage(*system);
    const BoundResult bound = known_n(Params{BigInt(system->size()), a.k, a.m});
    const std::string layout = serialize(*system);
    const std::string report_verdict = verdict(storage, bound);

    if (!a.trace_path.empty()) {
        if (!trace) throw ParamError("method " + method + " has no deletion trace");
        write_file(a.trace_path, serialize(*trace));
    }
    if (!a.code_path.empty()) {
        if (!code) throw ParamError("method " + method + " uses no constant-weight code");
        write_file(a.code_path, serialize(*code));
    }
    if (!a.out_path.empty()) write_file(a.out_path, layout);

    if (a.json) {
        json j = {{"method", method},
                  {"n", system->size()},
                  {"k", a.k},
                  {"m", a.m},
                  {"N", storage},
                  {"bound", bound_json(bound)},
                  {"verdict", report_verdict}};
        if (a.out_path.empty()) j["layout"] = layout;
        out << j.dump(2) << "\n";
    } else {
        if (a.out_path.empty()) out << layout;
        err << "method: " << method << "\n"
            << "n=" << system->size() << " k=" << a.k << " m=" << a.m << " N=" << storage << "\n"
            << "lower bound: " << bound.lower.str() << "\n"
            << "verdict: " << report_verdict << "\n";
    }
    return kOk;
}

int cmd_verify(const std::string& path, int k, bool use_hc1, bool as_json, std::ostream& out) {
    const SetSystem sys = parse(read_file(path));
    const ValidityReport report = use_hc1 ? verify_hc1(sys, k) : verify_hc2(sys, k);
    const std::uint64_t storage = total_storage(sys);
    if (as_json) {
        json j = {{"valid", report.valid()}, {"k", k}, {"n", sys.size()}, {"m", sys.servers()}, {"N", storage}};
        if (report.witness) {
            j["witness"] = describe(*report.witness);
            if (const auto* h2 = std::get_if<Hc2Violation>(&*report.witness)) {
                j["servers"] = elements(h2->servers);
                j["contained"] = h2->contained;
            } else {
                const auto& h1 = std::get<Hc1Violation>(*report.witness);
                j["items"] = h1.items;
                j["servers"] = elements(h1.servers);
            }
        }
        out << j.dump(2) << "\n";
    } else if (report.valid()) {
        out << "valid CBC for k=" << k << ", N=" << storage << "\n";
    } else {
        out << "invalid CBC for k=" << k << ": " << describe(*report.witness) << "\n";
    }
    return report.valid() ? kOk : kInvalid;
}

int cmd_bound(const std::string& n_text, int k, int m, bool as_json, std::ostream& out) {
    BigInt n;
    try {
        n = BigInt(n_text);
    } catch (const std::exception&) {
        throw ParamError("-n must be an integer, got '" + n_text + "'");
    }
    const BoundResult b = known_n(Params{n, k, m});
    if (as_json) {
        json j = bound_json(b);
        j["n"] = big_json(n);
        j["k"] = k;
        j["m"] = m;
        out << j.dump(2) << "\n";
    } else {
        out << bound_text(b) << "\n";
    }
    return kOk;
}

int cmd_plan(const std::string& path, int k, const std::vector<std::size_t>& items, bool as_json,
             std::ostream& out) {
    const SetSystem sys = parse(read_file(path));
    if (k < 1 || k > sys.servers()) throw ParamError("k must be in [1, m]");
    if (items.empty() || items.size() > static_cast<std::size_t>(k)) {
        throw ParamError("request between 1 and k=" + std::to_string(k) + " items");
    }
    try {
        const RetrievalPlan plan = plan_batch(sys, items);
        if (as_json) {
            json j = json::array();
            for (const auto& a : plan.assignment) j.push_back({{"item", a.item}, {"server", a.server}});
            out << json{{"plan", j}}.dump(2) << "\n";
        } else {
            for (const auto& a : plan.assignment) out << "item " << a.item << " ← server " << a.server << "\n";
        }
        return kOk;
    } catch (const NoPlan& e) {
        const Deficiency& d = e.witness();
        if (as_json) {
            out << json{{"plan", nullptr}, {"items", d.members}, {"servers", elements(d.servers)}}.dump(2) << "\n";
        } else {
            out << "no plan: items " << set_json_text(d.members) << " are stored only on " << format_set(d.servers)
                << "\n";
        }
        return kInvalid;
    }
}

int cmd_simulate(const std::string& path, int k, std::uint64_t batches, std::uint64_t seed, bool as_json,
                 std::ostream& out) {
    const SetSystem sys = parse(read_file(path));
    if (k < 1 || k > sys.servers()) throw ParamError("k must be in [1, m]");
    const Simulation sim = simulate_load(sys, k, batches, seed);
    const LoadStats& s = sim.stats;

    const auto [lo, hi] = std::minmax_element(s.per_server_reads.begin(), s.per_server_reads.end());
    const std::uint64_t total = std::accumulate(s.per_server_reads.begin(), s.per_server_reads.end(), std::uint64_t{0});
    std::ostringstream mean;
    mean << std::fixed << std::setprecision(3)
         << static_cast<double>(total) / static_cast<double>(s.per_server_reads.size());

    if (as_json) {
        json j = {{"k", k},
                  {"seed", seed},
                  {"batches_requested", batches},
                  {"batches_served", s.batches_served},
                  {"per_server_reads", s.per_server_reads},
                  {"max", *hi},
                  {"min", *lo},
                  {"mean", mean.str()},
                  {"max_reads_in_any_single_batch_per_server", s.max_reads_in_any_single_batch_per_server}};
        if (sim.failure) {
            j["failure"] = {{"batch", s.batches_served},
                            {"items", sim.failure->members},
                            {"servers", elements(sim.failure->servers)}};
        }
        out << j.dump(2) << "\n";
    } else {
        out << "batches served: " << s.batches_served << " of " << batches << " (k=" << k << ", seed=" << seed
            << ")\n";
        for (std::size_t i = 0; i < s.per_server_reads.size(); ++i) {
            out << "server " << i << ": " << s.per_server_reads[i] << "\n";
        }
        out << "max: " << *hi << "\nmin: " << *lo << "\nmean: " << mean.str() << "\n"
            << "max reads per server in one batch: " << s.max_reads_in_any_single_batch_per_server << "\n";
        if (sim.failure) {
            out << "batch " << s.batches_served << " unplannable: items " << set_json_text(sim.failure->members)
                << " are stored only on " << format_set(sim.failure->servers) << "\n";
        }
    }
    return sim.failure ? kInvalid : kOk;
}

int cmd_search(std::size_t n, int k, int m, std::uint64_t budget, bool as_json, std::ostream& out) {
    try {
        const SearchResult r = search_optimal(n, k, m, budget);
        if (as_json) {
            out << json{{"n", n},
                        {"k", k},
                        {"m", m},
                        {"optimal_N", r.optimal_storage},
                        {"nodes_explored", r.nodes_explored},
                        {"witness", serialize(r.witness)}}
                       .dump(2)
                << "\n";
        } else {
            out << "optimal N = " << r.optimal_storage << "\n"
                << "nodes explored: " << r.nodes_explored << "\n"
                << serialize(r.witness);
        }
        return kOk;
    } catch (const BudgetExceeded& e) {
        if (as_json) {
            out << json{{"n", n}, {"k", k}, {"m", m}, {"budget_exceeded", true}, {"best_upper", e.best_upper()}}
                       .dump(2)
                << "\n";
        } else {
            out << "budget of " << budget << " nodes exceeded; best upper bound N <= " << e.best_upper() << "\n";
        }
        return kBudget;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Combinatorial batch codes: construct, verify, bound, plan, simulate, search"};
    app.name(args.empty() ? "cbc" : args.front());
    app.require_subcommand(1);

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "Build a layout for (n, k, m)");
    construct->add_option("-n", ca.n, "Number of items");
    construct->add_option("-k", ca.k, "Batch size")->required();
    construct->add_option("-m", ca.m, "Number of servers")->required();
    construct->add_option("-c", ca.c, "Servers per item for the uniform method");
    construct->add_option("--method", ca.method,
                          "auto, trivial, m_equals_k, m_plus_1, large_n, range_a, range_b or uniform");
    construct->add_option("--out", ca.out_path, "Write the layout here instead of stdout");
    construct->add_option("--trace", ca.trace_path, "Write the deletion trace here");
    construct->add_option("--code-out", ca.code_path, "Write the constant-weight code used here");
    construct->add_flag("--json", ca.json, "Machine-readable report");

    std::string file;
    int k = 0;
    bool as_json = false;
    bool use_hc1 = false;
    auto* verify = app.add_subcommand("verify", "Check a layout file at batch size k");
    verify->add_option("file", file, "Layout in cbc format")->required();
    verify->add_option("-k", k, "Batch size")->required();
    verify->add_flag("--hc1", use_hc1, "Check unions of item subcollections instead of server subsets");
    verify->add_flag("--json", as_json, "Machine-readable report");

    std::string n_text;
    int m = 0;
    auto* bound = app.add_subcommand("bound", "Lower, exact and constructive values of N(n, k, m)");
    bound->add_option("-n", n_text, "Number of items")->required();
    bound->add_option("-k", k, "Batch size")->required();
    bound->add_option("-m", m, "Number of servers")->required();
    bound->add_flag("--json", as_json, "Machine-readable report");

    std::vector<std::size_t> items;
    auto* plan = app.add_subcommand("plan", "Assign requested items to distinct servers");
    plan->add_option("file", file, "Layout in cbc format")->required();
    plan->add_option("items", items, "Item indices")->required();
    plan->add_option("-k", k, "Batch size")->required();
    plan->add_flag("--json", as_json, "Machine-readable report");

    std::uint64_t batches = 1000;
    std::uint64_t seed = 0;
    auto* simulate = app.add_subcommand("simulate", "Serve random batches and report per-server load");
    simulate->add_option("file", file, "Layout in cbc format")->required();
    simulate->add_option("-k", k, "Batch size")->required();
    simulate->add_option("--batches", batches, "Number of batches")->capture_default_str();
    simulate->add_option("--seed", seed, "Generator seed")->capture_default_str();
    simulate->add_flag("--json", as_json, "Machine-readable report");

    std::size_t n = 0;
    std::uint64_t budget = kDefaultSearchBudget;
    auto* search = app.add_subcommand("search", "Exhaustive search for the optimal N on tiny instances");
    search->add_option("-n", n, "Number of items")->required();
    search->add_option("-k", k, "Batch size")->required();
    search->add_option("-m", m, "Number of servers")->required();
    search->add_option("--budget", budget, "Node limit")->capture_default_str();
    search->add_flag("--json", as_json, "Machine-readable report");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kUsage;
    }

    try {
        if (construct->parsed()) return cmd_construct(ca, out, err);
        if (verify->parsed()) return cmd_verify(file, k, use_hc1, as_json, out);
        if (bound->parsed()) return cmd_bound(n_text, k, m, as_json, out);
        if (plan->parsed()) return cmd_plan(file, k, items, as_json, out);
        if (simulate->parsed()) return cmd_simulate(file, k, batches, seed, as_json, out);
        if (search->parsed()) return cmd_search(n, k, m, budget, as_json, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

int run(int argc, char** argv) { return run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr); }

}  // namespace cbc::cli
