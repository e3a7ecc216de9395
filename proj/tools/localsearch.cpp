// localsearch: planning, simulation, sweeps, cost tables and routing for
// Grover, partial and hardware-efficient local search.
//
// Exit codes: 0 ok, 2 usage, 3 input error, 4 resource cap.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "localsearch/algorithms/execute.hpp"
#include "localsearch/algorithms/search.hpp"
#include "localsearch/analytic/med.hpp"
#include "localsearch/analytic/model.hpp"
#include "localsearch/analytic/plan.hpp"
#include "localsearch/circuit/json.hpp"
#include "localsearch/circuit/lowering.hpp"
#include "localsearch/transpile/coupling_map.hpp"
#include "localsearch/transpile/route.hpp"

namespace ls = localsearch;
namespace alg = localsearch::algorithms;
namespace an = localsearch::analytic;
namespace tp = localsearch::transpile;
using json = nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitCap = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "16", "6,7,8", "16..48", "16..48:8"
std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    auto to_int = [&](const std::string& s) {
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(s, &pos);
        } catch (const std::exception&) {
            throw UsageError("bad integer '" + s + "' in '" + text + "'");
        }
        if (pos != s.size()) throw UsageError("bad integer '" + s + "' in '" + text + "'");
        return v;
    };
    while (std::getline(ss, item, ',')) {
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(to_int(item));
            continue;
        }
        auto rest = item.substr(dots + 2);
        int step = 1;
        if (const auto colon = rest.find(':'); colon != std::string::npos) {
            step = to_int(rest.substr(colon + 1));
            rest = rest.substr(0, colon);
        }
        const int lo = to_int(item.substr(0, dots)), hi = to_int(rest);
        if (step < 1 || hi < lo) throw UsageError("bad range '" + item + "'");
        for (int v = lo; v <= hi; v += step) out.push_back(v);
    }
    if (out.empty()) throw UsageError("empty list '" + text + "'");
    return out;
}

std::string fmt(double v, int digits = 6) {
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

/// Writes to --out when given, else stdout.
void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw ls::InvalidArgument("cannot write '" + path + "'");
    f << text;
}

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ls::InvalidArgument("cannot read '" + path + "'");
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw ls::InvalidArgument("'" + path + "': " + e.what());
    }
}

struct Common {
    std::string out;
    std::string format{"csv"};
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--out", c.out, "Output path (default stdout)");
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

// Search-spec flags shared by simulate, route and circuit.
struct SpecFlags {
    std::string algo{"grover"};
    int n{4};
    std::optional<int> m;
    int k{-1};
    int k1{1};
    int k2{1};
    std::vector<std::string> targets;
    std::string tail{"none"};
    bool swap{false};
    std::string pattern{"LGL"};
    std::string preset;
    std::string spec_file;

    alg::SearchSpec build() const {
        if (!spec_file.empty()) return alg::search_spec_from_json(read_json_file(spec_file));
        alg::SearchSpec s;
        s.variant = alg::variant_from_string(algo);
        s.n = n;
        s.m = m;
        s.k1 = k1;
        s.k2 = k2;
        s.tail = alg::tail_from_string(tail);
        s.swap = swap;
        s.pattern = pattern;
        if (!preset.empty()) s.preset = preset;
        s.targets = targets;
        if (s.targets.empty()) throw UsageError("--target is required");
        if (k >= 0) {
            s.k = k;
        } else if (s.variant == alg::Variant::Grover) {
            s.k = static_cast<int>(alg::grover_iteration_count(n).argmax);
        } else {
            s.k = 1;
        }
        (void)alg::sequence_for(s);
        return s;
    }
};

void add_spec_flags(CLI::App* sub, SpecFlags& f) {
    sub->add_option("--algo", f.algo, "grover | partial | efficient")->check(CLI::IsMember({"grover", "partial", "efficient"}));
    sub->add_option("--n", f.n, "Number of data qubits");
    sub->add_option("--m", f.m, "Partition size (efficient: first local width; partial: local width)");
    sub->add_option("--k", f.k, "Repetitions (grover default: probability-maximizing count)");
    sub->add_option("--k1", f.k1, "Consecutive first-subset steps per repetition");
    sub->add_option("--k2", f.k2, "Consecutive second-subset steps per repetition");
    sub->add_option("--target", f.targets, "Target bitstring(s), qubit 0 first");
    sub->add_option("--tail", f.tail, "none | extra-first-local");
    sub->add_flag("--swap", f.swap, "Run the first local search on the first m qubits");
    sub->add_option("--pattern", f.pattern, "Partial search pattern over L/G");
    sub->add_option("--preset", f.preset, "Partial preset: paper-4q | paper-6q | lgl");
    sub->add_option("--spec", f.spec_file, "SearchSpec JSON file (overrides the flags above)");
}

void add_model_flags(CLI::App* sub, ls::circuit::CostModel& model, std::optional<std::int64_t>& oracle_depth,
                     std::string& scheme) {
    sub->add_option("--oracle-depth", oracle_depth, "Constant oracle depth override");
    sub->add_option("--alpha", model.diffusion_alpha, "Diffusion depth slope");
    sub->add_option("--beta", model.diffusion_beta, "Diffusion depth offset");
    sub->add_option("--mcx", scheme, "MCX lowering: borrowed | vchain | noancilla");
}

void finish_model(ls::circuit::CostModel& model, const std::optional<std::int64_t>& oracle_depth, const std::string& scheme) {
    if (oracle_depth) {
        const auto d = *oracle_depth;
        model.oracle_depth_fn = [d](int) { return d; };
    }
    if (!scheme.empty()) model.mcx_scheme = ls::circuit::mcx_scheme_from_string(scheme);
    model.validate();
}

// ---- plan ---------------------------------------------------------------

struct PlanArgs {
    Common io;
    std::string n{"16,24,32,40,44,48"};
    std::string m;  // default: n/2, n/2-2, n/2-4
    int k1{1}, k2{1};
    double threshold{an::kTableThreshold};
    double tolerance{an::kThresholdTolerance};
    std::optional<std::uint64_t> cap;
};

int cmd_plan(const PlanArgs& a) {
    const auto ns = parse_int_list(a.n);
    std::ostringstream os;
    json rows = json::array();
    if (a.io.format == "csv") os << "n,algo,m,k_total,diff\n";
    for (int n : ns) {
        const auto g = an::plan_grover(n, a.threshold, a.cap, a.tolerance);
        auto add_row = [&](const std::string& algo, std::optional<int> m, const an::PlanResult& r) {
            std::optional<std::int64_t> diff;
            if (m && r.k_total && g.k_total)
                diff = static_cast<std::int64_t>(*r.k_total) - static_cast<std::int64_t>(*g.k_total);
            if (a.io.format == "csv") {
                os << n << ',' << algo << ',' << (m ? std::to_string(*m) : "") << ','
                   << (r.k_total ? std::to_string(*r.k_total) : "NA") << ','
                   << (!m ? "" : diff ? std::to_string(*diff) : "NA") << '\n';
            } else {
                json j{{"n", n}, {"algo", algo}, {"best_probability", r.best_probability}, {"scanned", r.scanned}};
                j["m"] = m ? json(*m) : json(nullptr);
                j["k_total"] = r.k_total ? json(*r.k_total) : json("NA");
                if (m) j["diff"] = diff ? json(*diff) : json("NA");
                rows.push_back(j);
            }
        };
        add_row("grover", std::nullopt, g);
        std::vector<int> ms;
        if (a.m.empty()) {
            for (int off : {0, 2, 4})
                if (n / 2 - off >= 1) ms.push_back(n / 2 - off);
        } else {
            ms = parse_int_list(a.m);
        }
        for (int m : ms) add_row("efficient", m, an::plan_iterations(n, m, a.k1, a.k2, a.threshold, a.cap, a.tolerance));
    }
    emit(a.io.out, a.io.format == "csv" ? os.str() : rows.dump(2) + "\n");
    return 0;
}

// ---- simulate -----------------------------------------------------------

struct SimArgs {
    Common io;
    SpecFlags spec;
    std::uint64_t shots{1024};
    std::uint64_t seed{1};
    double p1{0.0}, p2{0.0}, readout{0.0};
    std::string report;
};

int cmd_simulate(const SimArgs& a) {
    const auto spec = a.spec.build();
    alg::ExecOptions opt;
    opt.shots = a.shots;
    opt.seed = a.seed;
    opt.noise = {a.p1, a.p2, a.readout};
    opt.noise.validate();
    const auto r = alg::execute(spec, opt);
    auto report = alg::to_json(r);
    report["spec"] = alg::to_json(spec);
    report["seed"] = a.seed;
    report["noise"] = {{"p1", a.p1}, {"p2", a.p2}, {"readout", a.readout}};
    if (!a.report.empty()) emit(a.report, report.dump(2) + "\n");
    if (a.io.format == "csv") {
        emit(a.io.out, ls::sim::to_csv(*r.histogram));
    } else {
        report["counts"] = r.histogram->counts;
        emit(a.io.out, report.dump(2) + "\n");
    }
    return 0;
}

// ---- sweep --------------------------------------------------------------

struct SweepArgs {
    Common io;
    int n{10};
    std::string m{"5,3,2"};
    std::string k1{"1"}, k2{"1"};
    std::uint64_t calls{120};
};

int cmd_sweep(const SweepArgs& a) {
    std::ostringstream os;
    json designs = json::array();
    if (a.io.format == "csv") os << "n,m,k1,k2,k_total,probability\n";
    for (int m : parse_int_list(a.m))
        for (int k1 : parse_int_list(a.k1))
            for (int k2 : parse_int_list(a.k2)) {
                const auto trace = an::call_trace(a.n, m, k1, k2, a.calls);
                if (a.io.format == "csv") {
                    for (std::size_t c = 0; c < trace.size(); ++c)
                        os << a.n << ',' << m << ',' << k1 << ',' << k2 << ',' << c << ',' << fmt(trace[c], 12) << '\n';
                } else {
                    designs.push_back({{"n", a.n}, {"m", m}, {"k1", k1}, {"k2", k2}, {"probability", trace}});
                }
            }
    emit(a.io.out, a.io.format == "csv" ? os.str() : designs.dump(2) + "\n");
    return 0;
}

// ---- cost ---------------------------------------------------------------

struct CostArgs {
    Common io;
    std::string algo{"all"};
    std::string n{"6..10"};
    std::optional<int> m;
    std::optional<std::int64_t> max_j;
    ls::circuit::CostModel model{ls::circuit::CostModel::defaults()};
    std::optional<std::int64_t> oracle_depth;
    std::string scheme;
};

int cmd_cost(CostArgs a) {
    finish_model(a.model, a.oracle_depth, a.scheme);
    std::vector<alg::Variant> algos;
    if (a.algo == "all") {
        algos = {alg::Variant::Grover, alg::Variant::Partial, alg::Variant::Efficient};
    } else {
        algos = {alg::variant_from_string(a.algo)};
    }
    std::ostringstream os;
    json rows = json::array();
    if (a.io.format == "csv") os << "algo,n,m,j_star,d_total,probability,med,shape\n";
    for (int n : parse_int_list(a.n))
        for (auto v : algos) {
            const auto r = an::med(v, n, a.m, a.model, a.max_j.value_or(an::default_max_j(v, n)));
            const int m = v == alg::Variant::Grover ? n : a.m.value_or(an::default_med_m(v, n));
            if (a.io.format == "csv") {
                os << alg::to_string(v) << ',' << n << ',' << m << ',' << r.j_star << ',' << r.d_total << ','
                   << fmt(r.probability) << ',' << fmt(r.med) << ',' << r.shape << '\n';
            } else {
                rows.push_back({{"algo", alg::to_string(v)}, {"n", n}, {"m", m}, {"j_star", r.j_star},
                                {"d_total", r.d_total}, {"probability", r.probability}, {"med", r.med},
                                {"shape", r.shape}});
            }
        }
    emit(a.io.out, a.io.format == "csv" ? os.str() : rows.dump(2) + "\n");
    return 0;
}

// ---- route --------------------------------------------------------------

struct RouteArgs {
    Common io;
    SpecFlags spec;
    std::string circuit_file;
    std::string coupling{"casablanca"};
    std::string layout{"trivial"};
    std::string routed_out;
};

tp::CouplingMap load_coupling(const std::string& s) {
    std::ifstream probe(s);
    if (probe) return tp::coupling_from_json(read_json_file(s));
    return tp::coupling_by_name(s);
}

int cmd_route(const RouteArgs& a) {
    ls::circuit::Circuit c;
    std::string label;
    if (!a.circuit_file.empty()) {
        c = ls::circuit::circuit_from_json(read_json_file(a.circuit_file));
        label = a.circuit_file;
    } else {
        const auto s = a.spec.build();
        c = alg::to_circuit(s, alg::OracleForm::Expanded);
        label = std::string(alg::to_string(s.variant));
    }
    if (!c.is_lowered()) c = ls::circuit::lower(c);
    const auto map = load_coupling(a.coupling);
    const auto r = tp::route(c, map, tp::layout_strategy_from_string(a.layout));
    const auto after = tp::mapped_metrics(r.circuit);
    const auto cn = ls::circuit::cnot_count(c), dp = ls::circuit::depth(c);
    std::string verified = "skipped";
    if (std::max(c.total_qubits(), map.qubits()) <= tp::kMaxVerifyQubits)
        verified = tp::verify_equivalence(c, r) ? "true" : "false";
    if (!a.routed_out.empty()) {
        json j{{"circuit", ls::circuit::to_json(r.circuit)},
               {"initial_layout", r.initial.physical},
               {"final_layout", r.final_layout.physical}};
        emit(a.routed_out, j.dump(2) + "\n");
    }
    if (a.io.format == "csv") {
        std::ostringstream os;
        os << "circuit,layout,cnots,cnots_mapped,depth,depth_mapped,swaps,verified\n"
           << label << ',' << a.layout << ',' << cn << ',' << after.cnots << ',' << dp << ',' << after.depth << ','
           << r.swaps << ',' << verified << '\n';
        emit(a.io.out, os.str());
    } else {
        json j{{"circuit", label},        {"layout", a.layout},           {"cnots", cn},
               {"cnots_mapped", after.cnots}, {"depth", dp},             {"depth_mapped", after.depth},
               {"swaps", r.swaps},        {"verified", verified},         {"initial_layout", r.initial.physical},
               {"final_layout", r.final_layout.physical}};
        emit(a.io.out, j.dump(2) + "\n");
    }
    if (verified == "false") throw std::logic_error("routed circuit failed the equivalence check");
    return 0;
}

// ---- circuit ------------------------------------------------------------

struct CircuitArgs {
    std::string out;
    SpecFlags spec;
    std::string form{"opaque"};
};

int cmd_circuit(const CircuitArgs& a) {
    const auto s = a.spec.build();
    auto c = alg::to_circuit(s, a.form == "opaque" ? alg::OracleForm::Opaque : alg::OracleForm::Expanded);
    if (a.form == "lowered") c = ls::circuit::lower(c);
    emit(a.out, ls::circuit::to_json(c).dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grover, partial and hardware-efficient local search toolkit"};
    app.require_subcommand(1);
    std::function<int()> run;

    PlanArgs plan;
    auto* p = app.add_subcommand("plan", "Oracle calls needed to reach a success threshold");
    add_common(p, plan.io);
    p->add_option("--n", plan.n, "Qubit counts: 16, 6,8, 16..48 or 16..48:8");
    p->add_option("--m", plan.m, "Partition sizes (default n/2, n/2-2, n/2-4)");
    p->add_option("--k1", plan.k1)->check(CLI::PositiveNumber);
    p->add_option("--k2", plan.k2)->check(CLI::PositiveNumber);
    p->add_option("--threshold", plan.threshold, "Success threshold")->check(CLI::Range(0.0, 1.0));
    p->add_option("--tolerance", plan.tolerance, "Comparison slack below the threshold")->check(CLI::Range(0.0, 0.01));
    p->add_option("--cap", plan.cap, "Maximum oracle calls scanned");
    p->callback([&] { run = [&] { return cmd_plan(plan); }; });

    SimArgs sim;
    auto* s = app.add_subcommand("simulate", "State-vector run with sampled measurements");
    add_common(s, sim.io);
    add_spec_flags(s, sim.spec);
    s->add_option("--shots", sim.shots, "Measurement shots")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
    s->add_option("--seed", sim.seed, "RNG seed");
    s->add_option("--noise-p1", sim.p1, "Depolarizing probability after 1-qubit gates");
    s->add_option("--noise-p2", sim.p2, "Depolarizing probability after CNOTs");
    s->add_option("--readout", sim.readout, "Readout bit-flip probability");
    s->add_option("--report", sim.report, "Also write the JSON report here");
    s->callback([&] { run = [&] { return cmd_simulate(sim); }; });

    SweepArgs sweep;
    auto* w = app.add_subcommand("sweep", "Per-call success probability traces from the analytic model");
    add_common(w, sweep.io);
    w->add_option("--n", sweep.n);
    w->add_option("--m", sweep.m, "Partition sizes");
    w->add_option("--k1", sweep.k1, "k1 values");
    w->add_option("--k2", sweep.k2, "k2 values");
    w->add_option("--calls", sweep.calls, "Oracle calls per trace");
    w->callback([&] { run = [&] { return cmd_sweep(sweep); }; });

    CostArgs cost;
    auto* c = app.add_subcommand("cost", "Minimum expected depth per algorithm");
    add_common(c, cost.io);
    c->add_option("--algo", cost.algo, "grover | partial | efficient | all");
    c->add_option("--n", cost.n, "Qubit counts");
    c->add_option("--m", cost.m, "Partition size");
    c->add_option("--max-j", cost.max_j, "Largest oracle-call count considered");
    add_model_flags(c, cost.model, cost.oracle_depth, cost.scheme);
    c->callback([&] { run = [&] { return cmd_cost(cost); }; });

    RouteArgs route;
    auto* r = app.add_subcommand("route", "Map a lowered circuit onto a coupling map");
    add_common(r, route.io);
    add_spec_flags(r, route.spec);
    r->add_option("--circuit", route.circuit_file, "Circuit JSON (default: build from the search flags)");
    r->add_option("--coupling", route.coupling, "Coupling JSON file or casablanca, line:K, ring:K, grid:RxC, full:K");
    r->add_option("--layout", route.layout, "trivial | degree")->check(CLI::IsMember({"trivial", "degree"}));
    r->add_option("--routed", route.routed_out, "Write the routed circuit JSON here");
    r->callback([&] { run = [&] { return cmd_route(route); }; });

    CircuitArgs circ;
    auto* e = app.add_subcommand("circuit", "Emit the circuit JSON of a search");
    e->add_option("--out", circ.out);
    add_spec_flags(e, circ.spec);
    e->add_option("--form", circ.form, "opaque | expanded | lowered")->check(CLI::IsMember({"opaque", "expanded", "lowered"}));
    e->callback([&] { run = [&] { return cmd_circuit(circ); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::CallForAllHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::ParseError& ex) {
        app.exit(ex);
        return kExitUsage;
    }
    try {
        return run();
    } catch (const UsageError& ex) {
        std::cerr << "usage error: " << ex.what() << '\n';
        return kExitUsage;
    } catch (const ls::ResourceCapExceeded& ex) {
        std::cerr << "resource cap: " << ex.what() << '\n';
        return kExitCap;
    } catch (const ls::InvalidArgument& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kExitInput;
    } catch (const ls::RoutingError& ex) {
        std::cerr << "routing error: " << ex.what() << '\n';
        return kExitInput;
    } catch (const ls::InsufficientAncillas& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kExitInput;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 1;
    }
}
