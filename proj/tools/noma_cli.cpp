// noma: scenario generation, single solves, sweeps and solution checks.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "noma/noma.hpp"

namespace {

using noma::json;

void emit(const json& j, const std::string& out)
{
    if (out.empty() || out == "-")
        std::cout << j.dump(1) << "\n";
    else
        noma::write_json_file(j, out);
}

noma::NetworkConfig load_config(const std::string& path, std::optional<std::uint64_t> seed,
                                std::optional<double> epsilon)
{
    noma::NetworkConfig cfg;
    if (!path.empty()) cfg = noma::config_from_json(noma::read_json_file(path));
    if (seed) cfg.rng_seed = *seed;
    if (epsilon) cfg.epsilon = *epsilon;
    noma::validate(cfg);
    return cfg;
}

struct SolveOptions {
    std::string config, instance, strategy = "noma-opt", out;
    std::optional<double> demand, epsilon;
    std::optional<std::uint64_t> seed;
    bool filtered = true;
};

int run_solve(const SolveOptions& o)
{
    const auto cfg = load_config(o.config, o.seed, o.epsilon);
    noma::NetworkInstance inst = o.instance.empty() ? noma::generate_instance(cfg) : noma::load_instance(o.instance);
    std::optional<double> unit;
    if (o.demand) {
        if (!(*o.demand >= 0.0)) throw noma::invalid_input("--demand must be non-negative");
        unit = noma::calibrate_demand_unit(inst, cfg.load_limit);
        inst = noma::with_uniform_demand(inst, *o.demand * *unit);
    }
    const auto strategy = noma::parse_strategy(o.strategy);
    const auto pairs = noma::build_candidate_pairs(inst, o.filtered);
    noma::MCellOptions opt;
    opt.epsilon = cfg.epsilon;
    opt.load_limit = cfg.load_limit;

    json out{{"strategy", o.strategy}, {"filtered", o.filtered}, {"epsilon", cfg.epsilon},
             {"load_limit", cfg.load_limit}};
    if (o.demand) {
        out["demand"] = *o.demand;
        out["demand_unit"] = *unit;
    }
    json demands = json::array();
    for (const auto& u : inst.ues) demands.push_back(u.demand);
    out["demands"] = demands;
    int code = 0;
    try {
        const auto sol = noma::m_cell(inst.n_cells(), noma::make_cell_map(inst, pairs, strategy),
                                      std::vector<double>(inst.n_cells(), 1.0), opt);
        out["converged"] = true;
        out["solution"] = noma::solution_to_json(sol);
        if (!sol.feasible) code = 2;
    } catch (const noma::non_convergence_error& e) {
        out["converged"] = false;
        json trace = json::array();
        for (const auto& t : e.trace) trace.push_back({{"k", t.k}, {"rho", t.rho}, {"residual", t.residual}});
        out["trace"] = trace;
        code = 2;
    }
    emit(out, o.out);
    return code;
}

int run_verify(const std::string& instance_path, const std::string& solution_path, std::optional<double> epsilon,
               const std::string& out_path)
{
    if (instance_path.empty()) throw noma::invalid_input("verify needs --instance");
    noma::NetworkInstance inst = noma::load_instance(instance_path);
    const json s = noma::read_json_file(solution_path);
    const auto demands = noma::detail::field<std::vector<double>>(s, "demands", "solution");
    if (demands.size() != inst.n_ues()) throw noma::parse_error("solution: demand count does not match the instance");
    for (std::size_t j = 0; j < inst.n_ues(); ++j) inst.ues[j].demand = demands[j];
    if (!s.value("converged", false)) throw noma::invalid_input("solution did not converge; nothing to verify");
    const auto name = noma::detail::field<std::string>(s, "strategy", "solution");
    const bool filtered = noma::detail::field<bool>(s, "filtered", "solution");
    const double eps = epsilon.value_or(noma::detail::field<double>(s, "epsilon", "solution"));
    const double limit = noma::detail::field<double>(s, "load_limit", "solution");
    const auto rho = noma::detail::field<std::vector<double>>(s.at("solution"), "rho", "solution");
    if (rho.size() != inst.n_cells()) throw noma::parse_error("solution: load vector length does not match the instance");

    const auto strategy = noma::parse_strategy(name);
    const auto pairs = noma::build_candidate_pairs(inst, filtered);
    const auto map = noma::make_cell_map(inst, pairs, strategy);
    noma::NetworkSolution at;
    at.cell_solutions = noma::f_map_solutions(inst.n_cells(), map, rho);
    for (const auto& c : at.cell_solutions) at.rho.push_back(c.rho);
    at.interference_rho = rho;
    const auto check = noma::check_solution(inst, at, strategy.split == noma::SplitMode::Optimal);
    const double residual = noma::inf_distance(at.rho, rho);
    double peak = 0.0;
    for (double r : rho) peak = std::max(peak, r);
    const bool fixed_point = residual <= eps;
    const bool feasible = peak <= limit + eps;

    json problems = json::array();
    for (const auto& p : check.problems) problems.push_back(p);
    json report{{"residual", residual},
                {"epsilon", eps},
                {"fixed_point", fixed_point},
                {"max_load", peak},
                {"feasible", feasible},
                {"max_demand_error", check.max_demand_error},
                {"power_sums_exact", check.power_sums_exact},
                {"max_reconstruction_error", check.max_reconstruction_error},
                {"problems", problems}};
    emit(report, out_path);
    return fixed_point && feasible && noma::ok(check) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Multi-cell NOMA load-coupling solver"};
    app.require_subcommand(1);

    std::string config, instance, out, strategy = "noma-opt";
    std::optional<double> demand, epsilon;
    std::optional<std::uint64_t> seed;
    bool filtered = true;

    auto* gen = app.add_subcommand("generate", "Draw a network instance from a config");
    gen->add_option("--config", config, "NetworkConfig JSON file")->check(CLI::ExistingFile);
    gen->add_option("--seed", seed, "RNG seed (overrides the config)");
    gen->add_option("--demand", demand, "Normalized demand per UE (1 = OMA at the resource limit)");
    gen->add_option("--out", out, "Instance JSON output (default stdout)");

    auto* solve = app.add_subcommand("solve", "Solve the network fixed point for one strategy");
    solve->add_option("--config", config, "NetworkConfig JSON file")->check(CLI::ExistingFile);
    solve->add_option("--instance", instance, "Instance JSON (otherwise generated from the config)")
        ->check(CLI::ExistingFile);
    solve->add_option("--demand", demand, "Normalized demand per UE; default keeps the instance demands");
    solve->add_option("--strategy", strategy, "Strategy")->check(CLI::IsMember(noma::strategy_names()));
    solve->add_option("--filtered", filtered, "Apply the decoding-order filter to candidate pairs");
    solve->add_option("--seed", seed, "RNG seed when generating");
    solve->add_option("--epsilon", epsilon, "Fixed-point tolerance");
    solve->add_option("--out", out, "Solution JSON output (default stdout)");

    std::string spec_path;
    auto* sweep = app.add_subcommand("sweep", "Run an experiment grid and write CSVs");
    sweep->add_option("--config", spec_path, "Experiment JSON file")->required()->check(CLI::ExistingFile);
    sweep->add_option("--out", out, "Output directory (overrides the experiment file)");
    sweep->add_option("--epsilon", epsilon, "Fixed-point tolerance");

    std::string solution_path;
    auto* verify = app.add_subcommand("verify", "Check a solution against its instance");
    verify->add_option("solution", solution_path, "Solution JSON from solve")->required()->check(CLI::ExistingFile);
    verify->add_option("--instance", instance, "Instance JSON the solution was computed on")
        ->required()
        ->check(CLI::ExistingFile);
    verify->add_option("--epsilon", epsilon, "Fixed-point tolerance (default: the solve tolerance)");
    verify->add_option("--out", out, "Report JSON output (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            const auto cfg = load_config(config, seed, std::nullopt);
            auto inst = noma::generate_instance(cfg);
            const double d = demand.value_or(cfg.demand);
            inst = noma::with_uniform_demand(inst, d * noma::calibrate_demand_unit(inst, cfg.load_limit));
            emit(noma::to_json(inst), out);
            return 0;
        }
        if (solve->parsed()) return run_solve({config, instance, strategy, out, demand, epsilon, seed, filtered});
        if (sweep->parsed()) {
            auto spec = noma::experiment_from_json(noma::read_json_file(spec_path));
            if (!out.empty()) spec.out_dir = out;
            if (epsilon) spec.config.epsilon = *epsilon;
            const auto result = noma::run_experiment(spec);
            std::cout << noma::summarize(result.rows);
            return 0;
        }
        if (verify->parsed()) return run_verify(instance, solution_path, epsilon, out);
    } catch (const noma::non_convergence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
