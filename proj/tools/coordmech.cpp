// coordmech: exact-arithmetic engine for selfish scheduling on unrelated
// machines. Subcommands: gen, eval, psi, dynamics, graph, verify, pne, sweep.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coordmech/analysis.hpp"
#include "coordmech/io.hpp"
#include "coordmech/scenarios.hpp"

using nlohmann::json;
using namespace coordmech;

namespace {

struct PolicyFlags {
    std::string mechanism = "makespan";
    int p = 0;

    PolicyConfig config() const { return {mechanism_from_name(mechanism), p}; }
};

void add_policy_flags(CLI::App* cmd, PolicyFlags& flags) {
    cmd->add_option("--policy", flags.mechanism,
                    "mechanism: makespan|shortestfirst|longestfirst|randomized|"
                    "acoord|bcoord|ccoord")
        ->required();
    cmd->add_option("--p", flags.p, "parameter p (>= 1); default max(1, ceil(log2 m))");
}

Instance load_instance_file(const std::string& path) {
    return parse_instance(read_file(path));
}

std::vector<Rat> parse_rat_list(const std::string& csv) {
    std::vector<Rat> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    return out;
}

json trace_to_json(const DynamicsTrace& trace) {
    json moves = json::array();
    for (const MoveRecord& mv : trace.moves)
        moves.push_back({{"job", mv.job},
                         {"from", mv.from},
                         {"to", mv.to},
                         {"old_key", to_exact_string(mv.old_key)},
                         {"new_key", to_exact_string(mv.new_key)},
                         {"round", mv.round}});
    return {{"moves", std::move(moves)},
            {"status", trace.converged ? "converged-to-PNE" : "round-limit-hit"},
            {"rounds", trace.rounds_executed},
            {"final_state", trace.final_state.machine_of}};
}

json report_to_json(const BoundReport& report) {
    json rows = json::array();
    for (const BoundRow& row : report.rows) {
        json r = {{"pne_index", row.pne_index},
                  {"max_completion", row.max_completion},
                  {"ratio", row.ratio},
                  {"pass", row.pass}};
        if (!std::isnan(row.bound)) r["bound"] = row.bound;
        rows.push_back(std::move(r));
    }
    json out = {{"status", report.status},
                {"optimal_makespan", to_exact_string(report.opt_makespan)},
                {"optimal_assignment", report.opt_assignment.machine_of},
                {"rows", std::move(rows)}};
    if (report.status == "ok") {
        out["poa"] = report.poa;
        out["pos"] = report.pos;
        if (report.min_potential_index) {
            out["min_potential_pne"] = *report.min_potential_index;
            out["min_potential_ratio"] = report.min_potential_ratio;
        }
    }
    return out;
}

int cmd_gen(const std::string& out, const RandomInstanceSpec& spec) {
    Instance inst = random_instance(spec);
    std::string text = serialize_instance(inst);
    if (out.empty())
        std::cout << text << "\n";
    else
        write_file(out, text);
    return 0;
}

int cmd_eval(const std::string& instance_path, const std::string& assignment_path,
             const PolicyFlags& flags, bool as_json) {
    Instance inst = load_instance_file(instance_path);
    Assignment a = parse_assignment(read_file(assignment_path), inst);
    PolicyConfig cfg = flags.config();
    FeasibilityReport feas = check_feasibility(cfg, inst, a);
    if (as_json) {
        json jobs = json::array();
        for (int i = 0; i < inst.n; ++i)
            jobs.push_back({{"job", i},
                            {"machine", a.machine_of[i]},
                            {"completion", completion_time(cfg, inst, a, i)}});
        json machines = json::array();
        for (int j = 0; j < inst.m; ++j)
            machines.push_back({{"machine", j},
                                {"load", to_exact_string(machine_load(inst, a, j))}});
        json violations = json::array();
        for (const auto& v : feas.violations)
            violations.push_back({{"job", v.job}, {"machine", v.machine}});
        std::cout << json{{"jobs", std::move(jobs)},
                          {"machines", std::move(machines)},
                          {"feasible", feas.ok},
                          {"violations", std::move(violations)}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "job  machine  completion\n";
        for (int i = 0; i < inst.n; ++i)
            std::cout << i << "    " << a.machine_of[i] << "        "
                      << to_decimal_string(completion_time(cfg, inst, a, i)) << "\n";
        std::cout << "machine  load\n";
        for (int j = 0; j < inst.m; ++j)
            std::cout << j << "        " << to_exact_string(machine_load(inst, a, j)) << "\n";
        std::cout << "feasibility: " << (feas.ok ? "pass" : "FAIL") << "\n";
        for (const auto& v : feas.violations)
            std::cout << "  violated by job " << v.job << " on machine " << v.machine << "\n";
    }
    return feas.ok ? 0 : 1;
}

int cmd_psi(const std::string& set_csv, int k) {
    std::vector<Rat> elements = parse_rat_list(set_csv);
    Rat value = psi(k, elements);
    std::cout << to_exact_string(value) << " (" << to_decimal_string(to_double(value)) << ")\n";
    return 0;
}

int cmd_dynamics(const std::string& instance_path, const PolicyFlags& flags,
                 const std::string& init, std::uint64_t seed, const std::string& order_name,
                 int max_rounds) {
    Instance inst = load_instance_file(instance_path);
    PolicyConfig cfg = flags.config();
    Assignment initial;
    if (init == "random") {
        std::mt19937_64 rng(seed);
        for (int i = 0; i < inst.n; ++i) {
            auto s = inst.strategies(i);
            initial.machine_of.push_back(s[rng() % s.size()]);
        }
    } else {
        initial = parse_assignment(read_file(init), inst);
    }
    std::vector<int> order = ascending_order(inst.n);
    if (order_name == "random") {
        std::mt19937_64 rng(seed + 1);
        for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
    } else if (order_name != "round-robin") {
        throw DomainError("unknown order: " + order_name);
    }
    DynamicsTrace trace = run_rounds(cfg, inst, initial, order, max_rounds);
    json out = trace_to_json(trace);
    out["initial_state"] = initial.machine_of;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_graph(const std::string& instance_path, const PolicyFlags& flags,
              const std::string& dot_path, bool detect_cycles, std::uint64_t cap) {
    Instance inst = load_instance_file(instance_path);
    PolicyConfig cfg = flags.config();
    NashGraph g = nash_dynamics_graph(cfg, inst, cap);
    if (!dot_path.empty()) {
        std::ostringstream dot;
        dot << "digraph nash {\n";
        std::vector<bool> is_sink(g.state_count, false);
        for (std::uint32_t s : g.sinks) is_sink[s] = true;
        StateSpace space(inst, cap);
        for (std::uint64_t s = 0; s < g.state_count; ++s) {
            Assignment a = space.decode(s);
            dot << "  s" << s << " [label=\"";
            for (size_t i = 0; i < a.machine_of.size(); ++i)
                dot << (i ? "," : "") << a.machine_of[i];
            dot << "\"" << (is_sink[s] ? ", style=filled, fillcolor=lightblue" : "") << "];\n";
        }
        for (std::uint64_t s = 0; s < g.state_count; ++s)
            for (std::uint32_t t : g.edges[s]) dot << "  s" << s << " -> s" << t << ";\n";
        dot << "}\n";
        write_file(dot_path, dot.str());
    }
    json out = {{"states", g.state_count},
                {"sinks", g.sinks},
                {"scc_count", g.scc_count},
                {"acyclic", g.acyclic()}};
    if (detect_cycles && g.cycle) {
        StateSpace space(inst, cap);
        json cert = json::array();
        for (std::uint32_t s : *g.cycle) cert.push_back(space.decode(s).machine_of);
        out["cycle"] = std::move(cert);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_verify(const std::string& name) {
    ScenarioBundle sc = load_scenario(name);
    CycleReport report = verify_cycle(sc.policy, sc.instance, sc.states);
    std::cout << "scenario " << sc.name << ": " << report.steps.size() << " moves\n";
    for (size_t t = 0; t < report.steps.size(); ++t) {
        const CycleStep& s = report.steps[t];
        std::cout << "  step " << t + 1 << ": job " << s.job << " " << s.from << "->" << s.to
                  << "  key " << to_exact_string(s.old_key) << " -> "
                  << to_exact_string(s.new_key) << "  "
                  << (s.improving ? "improving" : "NOT IMPROVING") << "\n";
    }
    std::cout << "closed: " << (report.closed ? "yes" : "NO")
              << "  all improving: " << (report.all_improving ? "yes" : "NO") << "\n";
    return report.ok() ? 0 : 1;
}

int cmd_pne(const std::string& instance_path, const PolicyFlags& flags,
            const std::string& report_path, std::uint64_t cap) {
    Instance inst = load_instance_file(instance_path);
    BoundReport report = equilibrium_report(flags.config(), inst, cap);
    json out = report_to_json(report);
    if (!report_path.empty()) write_file(report_path, out.dump(2));
    std::cout << out.dump(2) << "\n";
    for (const BoundRow& row : report.rows)
        if (!row.pass) return 1;
    return 0;
}

int cmd_sweep(const std::string& policies_csv, int trials, std::uint64_t seed, int n_max,
              int m_max) {
    std::vector<std::string> names;
    std::stringstream ss(policies_csv);
    std::string item;
    while (std::getline(ss, item, ',')) names.push_back(item);
    bool all_pass = true;
    for (const std::string& name : names) {
        Mechanism mech = mechanism_from_name(name);
        int checked = 0, violations = 0, no_pne = 0;
        for (int t = 0; t < trials; ++t) {
            std::mt19937_64 rng(seed + static_cast<std::uint64_t>(t));
            RandomInstanceSpec spec;
            spec.n = 1 + static_cast<int>(rng() % static_cast<unsigned>(n_max));
            spec.m = 1 + static_cast<int>(rng() % static_cast<unsigned>(m_max));
            spec.seed = rng();
            spec.inf_probability = 0.2;
            Instance inst = random_instance(spec);
            PolicyConfig cfg{mech, uses_parameter_p(mech) ? 1 + t % 3 : 0};
            BoundReport report = equilibrium_report(cfg, inst);
            if (report.status != "ok") {
                ++no_pne;
                continue;
            }
            for (const BoundRow& row : report.rows) {
                ++checked;
                if (!row.pass) ++violations;
            }
        }
        bool pass = violations == 0;
        all_pass = all_pass && pass;
        std::cout << name << ": " << (pass ? "pass" : "FAIL") << " (" << checked
                  << " PNE ratios checked, " << violations << " bound violations, " << no_pne
                  << " instances without PNE)\n";
    }
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic coordination mechanism engine for selfish scheduling"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a reproducible random instance");
    RandomInstanceSpec gen_spec;
    std::string gen_out;
    gen->add_option("--n", gen_spec.n, "jobs")->required();
    gen->add_option("--m", gen_spec.m, "machines")->required();
    gen->add_option("--seed", gen_spec.seed, "RNG seed");
    gen->add_option("--max-numerator", gen_spec.max_numerator, "load numerator range");
    gen->add_option("--max-denominator", gen_spec.max_denominator, "load denominator range");
    gen->add_option("--inf-prob", gen_spec.inf_probability, "per-entry infinite probability");
    gen->add_option("--out", gen_out, "output file (stdout if omitted)");

    // eval
    auto* eval = app.add_subcommand("eval", "completion times, loads, feasibility");
    std::string eval_instance, eval_assignment;
    PolicyFlags eval_flags;
    bool eval_json = false;
    eval->add_option("--instance", eval_instance, "instance JSON file")->required();
    eval->add_option("--assignment", eval_assignment, "assignment JSON file")->required();
    add_policy_flags(eval, eval_flags);
    eval->add_flag("--json", eval_json, "JSON output");

    // psi
    auto* psi_cmd = app.add_subcommand("psi", "evaluate the monomial-sum function");
    std::string psi_set;
    int psi_k = 0;
    psi_cmd->add_option("--set", psi_set, "comma-separated rationals")->required();
    psi_cmd->add_option("--k", psi_k, "degree k >= 0")->required();

    // dynamics
    auto* dyn = app.add_subcommand("dynamics", "run best-response rounds");
    std::string dyn_instance, dyn_init = "random", dyn_order = "round-robin";
    PolicyFlags dyn_flags;
    std::uint64_t dyn_seed = 0;
    int dyn_max_rounds = 100;
    dyn->add_option("--instance", dyn_instance, "instance JSON file")->required();
    add_policy_flags(dyn, dyn_flags);
    dyn->add_option("--init", dyn_init, "\"random\" or an assignment JSON file");
    dyn->add_option("--seed", dyn_seed, "RNG seed");
    dyn->add_option("--order", dyn_order, "round-robin|random");
    dyn->add_option("--max-rounds", dyn_max_rounds, "round limit");

    // graph
    auto* graph = app.add_subcommand("graph", "full Nash dynamics graph");
    std::string graph_instance, graph_dot;
    PolicyFlags graph_flags;
    bool graph_cycles = false;
    std::uint64_t graph_cap = StateSpace::kDefaultCap;
    graph->add_option("--instance", graph_instance, "instance JSON file")->required();
    add_policy_flags(graph, graph_flags);
    graph->add_option("--dot", graph_dot, "write DOT file (sinks highlighted)");
    graph->add_flag("--detect-cycles", graph_cycles, "emit a cycle certificate if cyclic");
    graph->add_option("--cap", graph_cap, "state-count cap");

    // verify
    auto* verify = app.add_subcommand("verify", "replay an embedded counterexample cycle");
    std::string verify_name;
    verify->add_option("--scenario", verify_name,
                       "longestfirst-cycle|randomized-cycle|bcoord-cycle")
        ->required();

    // pne
    auto* pne = app.add_subcommand("pne", "enumerate PNE and report PoA/PoS vs bounds");
    std::string pne_instance, pne_report;
    PolicyFlags pne_flags;
    std::uint64_t pne_cap = StateSpace::kDefaultCap;
    pne->add_option("--instance", pne_instance, "instance JSON file")->required();
    add_policy_flags(pne, pne_flags);
    pne->add_option("--report", pne_report, "write BoundReport JSON here");
    pne->add_option("--cap", pne_cap, "state-count cap");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "bound sweep over random instances");
    std::string sweep_policies = "acoord,bcoord,ccoord";
    int sweep_trials = 100, sweep_n_max = 5, sweep_m_max = 4;
    std::uint64_t sweep_seed = 1;
    sweep->add_option("--policies", sweep_policies, "comma-separated mechanisms");
    sweep->add_option("--trials", sweep_trials, "instances per mechanism");
    sweep->add_option("--seed", sweep_seed, "RNG seed");
    sweep->add_option("--n-max", sweep_n_max, "max jobs");
    sweep->add_option("--m-max", sweep_m_max, "max machines");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gen) return cmd_gen(gen_out, gen_spec);
        if (*eval) return cmd_eval(eval_instance, eval_assignment, eval_flags, eval_json);
        if (*psi_cmd) return cmd_psi(psi_set, psi_k);
        if (*dyn)
            return cmd_dynamics(dyn_instance, dyn_flags, dyn_init, dyn_seed, dyn_order,
                                dyn_max_rounds);
        if (*graph)
            return cmd_graph(graph_instance, graph_flags, graph_dot, graph_cycles, graph_cap);
        if (*verify) return cmd_verify(verify_name);
        if (*pne) return cmd_pne(pne_instance, pne_flags, pne_report, pne_cap);
        if (*sweep)
            return cmd_sweep(sweep_policies, sweep_trials, sweep_seed, sweep_n_max,
                             sweep_m_max);
    } catch (const CapExceeded& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
