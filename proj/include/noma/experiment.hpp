#pragma once

// Experiment runner: (seed, demand, strategy) grid over generated or loaded
// instances, CSV/JSON emitters and a per-strategy summary.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "json.hpp"
#include "noma/baselines.hpp"
#include "noma/instance_io.hpp"
#include "noma/netopt.hpp"
#include "noma/pairing.hpp"
#include "noma/scenario.hpp"

namespace noma {

struct EmitFlags {
    bool loads = true;
    bool trace = false;
    bool pairing = false;
    bool cell_loads = false;
};

struct ExperimentSpec {
    NetworkConfig config;
    std::optional<std::string> instance_path;
    std::vector<double> demands;
    std::vector<std::string> strategies;
    std::vector<std::uint64_t> seeds;
    bool filtered = true;
    std::string out_dir;
    EmitFlags emit;
};

struct ResultRow {
    std::uint64_t seed = 0;
    double demand = 0.0;
    std::string strategy;
    bool filtered = true;
    double total_load = 0.0;
    double max_load = 0.0;
    double avg_load = 0.0;
    bool feasible = false;
    bool converged = false;
    std::size_t iterations = 0;
    double wall_seconds = 0.0;  // written to timing.csv only
};

inline std::string fmt9(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline void validate(const ExperimentSpec& s)
{
    if (s.demands.empty()) throw invalid_input("experiment: demands must be non-empty");
    if (s.strategies.empty()) throw invalid_input("experiment: strategies must be non-empty");
    if (s.seeds.empty()) throw invalid_input("experiment: seeds must be non-empty");
    for (double d : s.demands)
        if (!(d >= 0.0) || !std::isfinite(d)) throw invalid_input("experiment: demands must be non-negative");
    for (const auto& n : s.strategies) parse_strategy(n);
    if (!s.instance_path) validate(s.config);
}

inline ExperimentSpec experiment_from_json(const json& j)
{
    if (!j.is_object()) throw parse_error("experiment: top level must be an object");
    ExperimentSpec s;
    if (j.contains("config")) s.config = config_from_json(j.at("config"));
    if (j.contains("instance")) s.instance_path = detail::field<std::string>(j, "instance", "experiment");
    s.demands = detail::field<std::vector<double>>(j, "demands", "experiment");
    s.strategies = detail::field<std::vector<std::string>>(j, "strategies", "experiment");
    if (j.contains("seeds"))
        s.seeds = detail::field<std::vector<std::uint64_t>>(j, "seeds", "experiment");
    else
        s.seeds = {s.config.rng_seed};
    detail::optional_field(j, "filtered", s.filtered, "experiment");
    detail::optional_field(j, "out", s.out_dir, "experiment");
    if (j.contains("emit")) {
        const auto& e = j.at("emit");
        detail::optional_field(e, "loads", s.emit.loads, "emit");
        detail::optional_field(e, "trace", s.emit.trace, "emit");
        detail::optional_field(e, "pairing", s.emit.pairing, "emit");
        detail::optional_field(e, "cell_loads", s.emit.cell_loads, "emit");
    }
    return s;
}

inline json solution_to_json(const NetworkSolution& sol)
{
    json cells = json::array();
    for (const auto& c : sol.cell_solutions) {
        json pairs = json::array();
        for (const auto& sp : c.selected_pairs)
            pairs.push_back({{"strong", sp.pair.strong},
                             {"weak", sp.pair.weak},
                             {"q_strong", sp.split.q_strong},
                             {"q_weak", sp.split.q_weak},
                             {"x_strong", sp.split.x_strong},
                             {"x_weak", sp.split.x_weak},
                             {"x_pair", sp.split.x_pair},
                             {"z_min", sp.split.z_min},
                             {"case", to_string(sp.split.case_at_opt)}});
        json solo = json::array();
        for (const auto& s : c.solo_allocations) solo.push_back({{"ue", s.ue}, {"x", s.x}});
        cells.push_back({{"cell", c.cell}, {"rho", c.rho}, {"pairs", pairs}, {"solo", solo}});
    }
    json trace = json::array();
    for (const auto& t : sol.trace) trace.push_back({{"k", t.k}, {"rho", t.rho}, {"residual", t.residual}});
    return {{"rho", sol.rho},
            {"interference_rho", sol.interference_rho},
            {"feasible", sol.feasible},
            {"iterations", sol.iterations},
            {"cells", cells},
            {"trace", trace}};
}

struct ExperimentResult {
    std::vector<ResultRow> rows;
};

namespace detail {

inline std::string run_tag(std::uint64_t seed, double d, const std::string& strategy)
{
    return "s" + std::to_string(seed) + "_d" + fmt9(d) + "_" + strategy;
}

inline void write_text(const std::filesystem::path& p, const std::string& s)
{
    std::ofstream out(p, std::ios::binary);
    if (!out) throw invalid_input("cannot write '" + p.string() + "'");
    out << s;
}

}  // namespace detail

inline std::string loads_csv(const std::vector<ResultRow>& rows)
{
    std::ostringstream os;
    os << "seed,demand,strategy,filtered,total_load,max_load,avg_load,feasible,converged,iterations\n";
    for (const auto& r : rows)
        os << r.seed << ',' << fmt9(r.demand) << ',' << r.strategy << ',' << (r.filtered ? 1 : 0) << ','
           << fmt9(r.total_load) << ',' << fmt9(r.max_load) << ',' << fmt9(r.avg_load) << ',' << (r.feasible ? 1 : 0)
           << ',' << (r.converged ? 1 : 0) << ',' << r.iterations << '\n';
    return os.str();
}

inline std::vector<ResultRow> parse_loads_csv(std::istream& in)
{
    std::vector<ResultRow> rows;
    std::string line;
    if (!std::getline(in, line)) return rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (f.size() != 10) throw parse_error("loads csv: expected 10 columns in '" + line + "'");
        try {
            ResultRow r;
            r.seed = std::stoull(f[0]);
            r.demand = std::stod(f[1]);
            r.strategy = f[2];
            r.filtered = f[3] == "1";
            r.total_load = std::stod(f[4]);
            r.max_load = std::stod(f[5]);
            r.avg_load = std::stod(f[6]);
            r.feasible = f[7] == "1";
            r.converged = f[8] == "1";
            r.iterations = std::stoul(f[9]);
            rows.push_back(r);
        } catch (const std::logic_error&) {
            throw parse_error("loads csv: malformed row '" + line + "'");
        }
    }
    return rows;
}

inline ExperimentResult run_experiment(const ExperimentSpec& spec)
{
    validate(spec);
    namespace fs = std::filesystem;
    const bool write = !spec.out_dir.empty();
    if (write) {
        fs::create_directories(spec.out_dir);
        if (spec.emit.trace) fs::create_directories(fs::path(spec.out_dir) / "trace");
        if (spec.emit.pairing) fs::create_directories(fs::path(spec.out_dir) / "pairing");
    }
    ExperimentResult result;
    std::ostringstream cell_csv;
    cell_csv << "seed,demand,strategy,cell,rho\n";

    const std::vector<std::uint64_t> seeds = spec.instance_path ? std::vector<std::uint64_t>{0} : spec.seeds;
    for (auto seed : seeds) {
        NetworkInstance base;
        if (spec.instance_path) {
            base = load_instance(*spec.instance_path);
        } else {
            NetworkConfig cfg = spec.config;
            cfg.rng_seed = seed;
            base = generate_instance(cfg);
        }
        const double unit = calibrate_demand_unit(base, spec.config.load_limit);
        const PairSet pairs = build_candidate_pairs(base, spec.filtered);
        for (double d : spec.demands) {
            const NetworkInstance inst = with_uniform_demand(base, d * unit);
            for (const auto& name : spec.strategies) {
                const Strategy strat = parse_strategy(name);
                const CellMap map = make_cell_map(inst, pairs, strat);
                MCellOptions opt;
                opt.epsilon = spec.config.epsilon;
                opt.load_limit = spec.config.load_limit;
                ResultRow row;
                row.seed = seed;
                row.demand = d;
                row.strategy = name;
                row.filtered = spec.filtered;
                const auto t0 = std::chrono::steady_clock::now();
                std::optional<NetworkSolution> sol;
                std::vector<TraceEntry> trace;
                try {
                    sol = m_cell(inst.n_cells(), map, std::vector<double>(inst.n_cells(), 1.0), opt);
                    trace = sol->trace;
                } catch (const non_convergence_error& e) {
                    trace = e.trace;
                }
                row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                const std::vector<double> rho = sol ? sol->rho : (trace.empty() ? std::vector<double>{} : trace.back().rho);
                row.converged = sol.has_value();
                row.feasible = sol && sol->feasible;
                row.iterations = sol ? sol->iterations : trace.size();
                for (double r : rho) {
                    row.total_load += r;
                    row.max_load = std::max(row.max_load, r);
                }
                row.avg_load = rho.empty() ? 0.0 : row.total_load / static_cast<double>(rho.size());
                result.rows.push_back(row);

                if (!write) continue;
                const std::string tag = detail::run_tag(seed, d, name);
                for (std::size_t i = 0; i < rho.size(); ++i)
                    cell_csv << seed << ',' << fmt9(d) << ',' << name << ',' << i << ',' << fmt9(rho[i]) << '\n';
                if (spec.emit.trace) {
                    std::ostringstream os;
                    write_trace_csv(os, trace);
                    detail::write_text(fs::path(spec.out_dir) / "trace" / (tag + ".csv"), os.str());
                }
                if (spec.emit.pairing && sol) {
                    std::vector<std::vector<char>> selected;
                    for (const auto& c : sol->cell_solutions) selected.push_back(c.pairing_vector);
                    json j = solution_to_json(*sol);
                    if (strat.pairing == PairingMode::Optimal) j["candidates"] = pairing_to_json(pairs, selected);
                    detail::write_text(fs::path(spec.out_dir) / "pairing" / (tag + ".json"), j.dump(1) + "\n");
                }
            }
        }
    }
    if (write) {
        if (spec.emit.loads) detail::write_text(fs::path(spec.out_dir) / "loads.csv", loads_csv(result.rows));
        if (spec.emit.cell_loads) detail::write_text(fs::path(spec.out_dir) / "cell_loads.csv", cell_csv.str());
        std::ostringstream t;
        t << "seed,demand,strategy,wall_seconds\n";
        for (const auto& r : result.rows)
            t << r.seed << ',' << fmt9(r.demand) << ',' << r.strategy << ',' << fmt9(r.wall_seconds) << '\n';
        detail::write_text(fs::path(spec.out_dir) / "timing.csv", t.str());
    }
    return result;
}

struct MeanInterval {
    std::size_t n = 0;
    double mean = 0.0;
    double half_width = 0.0;  // 95% Student-t
};

inline MeanInterval mean_interval(const std::vector<double>& xs)
{
    MeanInterval m;
    m.n = xs.size();
    if (xs.empty()) return m;
    for (double x : xs) m.mean += x;
    m.mean /= static_cast<double>(m.n);
    if (m.n < 2) return m;
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    const double sd = std::sqrt(ss / static_cast<double>(m.n - 1));
    boost::math::students_t dist(static_cast<double>(m.n - 1));
    m.half_width = boost::math::quantile(boost::math::complement(dist, 0.025)) * sd / std::sqrt(static_cast<double>(m.n));
    return m;
}

struct SummaryLine {
    double demand = 0.0;
    std::string strategy;
    MeanInterval total, max, avg;
    std::optional<double> total_gain_pct;  // improvement over OMA at the same demand
    std::optional<double> max_gain_pct;
};

inline std::vector<SummaryLine> summary_lines(const std::vector<ResultRow>& rows)
{
    std::map<std::pair<double, std::string>, std::vector<const ResultRow*>> groups;
    std::vector<std::pair<double, std::string>> order;
    for (const auto& r : rows) {
        auto key = std::pair{r.demand, r.strategy};
        if (!groups.count(key)) order.push_back(key);
        groups[key].push_back(&r);
    }
    std::vector<SummaryLine> out;
    for (const auto& key : order) {
        SummaryLine s;
        s.demand = key.first;
        s.strategy = key.second;
        std::vector<double> t, m, a;
        for (auto* r : groups[key]) {
            t.push_back(r->total_load);
            m.push_back(r->max_load);
            a.push_back(r->avg_load);
        }
        s.total = mean_interval(t);
        s.max = mean_interval(m);
        s.avg = mean_interval(a);
        out.push_back(s);
    }
    for (auto& s : out) {
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const SummaryLine& o) { return o.demand == s.demand && o.strategy == "oma"; });
        if (it == out.end()) continue;
        if (it->total.mean > 0.0) s.total_gain_pct = 100.0 * (it->total.mean - s.total.mean) / it->total.mean;
        if (it->max.mean > 0.0) s.max_gain_pct = 100.0 * (it->max.mean - s.max.mean) / it->max.mean;
    }
    return out;
}

inline std::string summarize(const std::vector<ResultRow>& rows)
{
    if (rows.empty()) return "no results to summarize\n";
    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-8s %-10s %3s %22s %22s %9s %9s\n", "demand", "strategy", "n", "total load (95% CI)",
                  "max load (95% CI)", "gain tot", "gain max");
    os << buf;
    for (const auto& s : summary_lines(rows)) {
        auto pct = [](const std::optional<double>& v) { return v ? fmt9(*v).substr(0, 7) + "%" : std::string("-"); };
        std::snprintf(buf, sizeof buf, "%-8s %-10s %3zu %11.6f +- %-8.6f %11.6f +- %-8.6f %9s %9s\n",
                      fmt9(s.demand).c_str(), s.strategy.c_str(), s.total.n, s.total.mean, s.total.half_width,
                      s.max.mean, s.max.half_width, pct(s.total_gain_pct).c_str(), pct(s.max_gain_pct).c_str());
        os << buf;
    }
    return os.str();
}

}  // namespace noma
