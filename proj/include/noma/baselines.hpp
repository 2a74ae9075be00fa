#pragma once

// Comparison schemes: OMA, fixed power splits (uniform, FTPC) and fixed
// pairings (best-worst, best-second-best), all usable as M-CELL cell maps.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "noma/cellopt.hpp"
#include "noma/errors.hpp"
#include "noma/netopt.hpp"
#include "noma/pairing.hpp"
#include "noma/powersplit.hpp"
#include "noma/scenario.hpp"

namespace noma {

enum class SplitMode { Optimal, Uniform, Ftpc };
enum class PairingMode { Optimal, BestWorst, BestSecondBest, None };

struct Strategy {
    SplitMode split = SplitMode::Optimal;
    PairingMode pairing = PairingMode::Optimal;
    double ftpc_alpha = 0.4;

    bool operator==(const Strategy&) const = default;
};

inline const std::vector<std::string>& strategy_names()
{
    static const std::vector<std::string> names{"noma-opt", "oma",    "uni",     "ftpc",    "bw-opt",
                                                "bw-uni",   "bw-ftpc", "bsb-opt", "bsb-uni", "bsb-ftpc"};
    return names;
}

inline Strategy parse_strategy(const std::string& name)
{
    if (name == "noma-opt") return {SplitMode::Optimal, PairingMode::Optimal};
    if (name == "oma") return {SplitMode::Optimal, PairingMode::None};
    if (name == "uni") return {SplitMode::Uniform, PairingMode::Optimal};
    if (name == "ftpc") return {SplitMode::Ftpc, PairingMode::Optimal};
    if (name == "bw-opt") return {SplitMode::Optimal, PairingMode::BestWorst};
    if (name == "bw-uni") return {SplitMode::Uniform, PairingMode::BestWorst};
    if (name == "bw-ftpc") return {SplitMode::Ftpc, PairingMode::BestWorst};
    if (name == "bsb-opt") return {SplitMode::Optimal, PairingMode::BestSecondBest};
    if (name == "bsb-uni") return {SplitMode::Uniform, PairingMode::BestSecondBest};
    if (name == "bsb-ftpc") return {SplitMode::Ftpc, PairingMode::BestSecondBest};
    throw invalid_input("unknown strategy '" + name + "'");
}

inline void validate(const Strategy& s)
{
    if (s.split == SplitMode::Ftpc && !(s.ftpc_alpha >= 0.0 && s.ftpc_alpha <= 1.0))
        throw invalid_input("FTPC alpha must lie in [0, 1]");
}

inline double oma_cell_map(const NetworkInstance& inst, std::size_t i, std::span<const double> rho)
{
    double load = 0.0;
    for (auto j : inst.ues_of(i)) load += solo_cost(inst, j, rho);
    return load;
}

inline CellSolution oma_cell_solution(const NetworkInstance& inst, std::size_t i, std::span<const double> rho)
{
    CellSolution sol;
    sol.cell = i;
    for (auto j : inst.ues_of(i)) sol.solo_allocations.push_back({j, solo_cost(inst, j, rho)});
    sol.rho = reconstruct_load(sol);
    return sol;
}

// Uniform: equal halves. FTPC: q_j proportional to w_j^alpha, so the UE with
// the worse effective channel gets more power.
inline std::pair<double, double> fixed_split(const SplitContext& ctx, SplitMode mode, double alpha = 0.4)
{
    if (mode == SplitMode::Uniform) return {ctx.p / 2.0, ctx.p / 2.0};
    if (mode != SplitMode::Ftpc) throw invalid_input("fixed_split: mode must be Uniform or Ftpc");
    const double ws = std::pow(ctx.w_strong, alpha), ww = std::pow(ctx.w_weak, alpha);
    const double qs = ctx.p * ws / (ws + ww);
    return exact_split(ctx.p, qs);
}

// Least resource for a pair with fixed powers: Z is piecewise linear in x
// with breakpoints where either demand is met on the shared RBs.
inline SplitResult fixed_split_result(const SplitContext& ctx, double q_strong, double q_weak)
{
    const double a = strong_rate(q_strong, ctx), b = weak_rate(q_strong, q_weak, ctx);
    auto zval = [&](double x) {
        return x + std::max(0.0, ctx.d_strong - a * x) / ctx.c_strong_oma +
               std::max(0.0, ctx.d_weak - b * x) / ctx.c_weak_oma;
    };
    double best_x = 0.0, best_z = zval(0.0);
    double bps[2] = {a > 0.0 ? ctx.d_strong / a : 0.0, b > 0.0 ? ctx.d_weak / b : 0.0};
    std::sort(bps, bps + 2);
    for (double x : bps) {
        if (!(x > 0.0) || !std::isfinite(x)) continue;
        const double v = zval(x);
        if (v < best_z - 1e-13 * std::max(1.0, best_z)) {
            best_z = v;
            best_x = x;
        }
    }
    SplitResult r;
    r.q_strong = q_strong;
    r.q_weak = q_weak;
    r.x_pair = best_x;
    r.x_strong = std::max(0.0, ctx.d_strong - a * best_x) / ctx.c_strong_oma;
    r.x_weak = std::max(0.0, ctx.d_weak - b * best_x) / ctx.c_weak_oma;
    r.z_min = r.x_strong + r.x_weak + r.x_pair;
    r.c_strong_pair = a;
    r.c_weak_pair = b;
    if (best_x == 0.0)
        r.case_at_opt = SplitCase::Case1;
    else if (a * best_x >= ctx.d_strong && b * best_x >= ctx.d_weak)
        r.case_at_opt = SplitCase::Case3;
    else
        r.case_at_opt = SplitCase::Case2;
    return r;
}

inline PairSolver pair_solver(const Strategy& s)
{
    switch (s.split) {
    case SplitMode::Optimal: return [](const SplitContext& ctx) { return split(ctx); };
    case SplitMode::Uniform:
    case SplitMode::Ftpc: {
        const SplitMode mode = s.split;
        const double alpha = s.ftpc_alpha;
        return [mode, alpha](const SplitContext& ctx) {
            auto [qs, qw] = fixed_split(ctx, mode, alpha);
            return fixed_split_result(ctx, qs, qw);
        };
    }
    }
    throw internal_error("pair_solver: unknown split mode");
}

// Forced pairs by serving-cell gain rank (descending, ties by UE id).
inline std::vector<Pair> fixed_pairing(const NetworkInstance& inst, std::size_t i, PairingMode mode)
{
    auto members = inst.ues_of(i);
    std::stable_sort(members.begin(), members.end(),
                     [&](std::size_t a, std::size_t b) { return inst.gain[i][a] > inst.gain[i][b]; });
    std::vector<Pair> out;
    const std::size_t m = members.size();
    if (mode == PairingMode::BestWorst) {
        for (std::size_t r = 0; r < m / 2; ++r) out.push_back({i, members[r], members[m - 1 - r]});
    } else if (mode == PairingMode::BestSecondBest) {
        for (std::size_t r = 0; r + 1 < m; r += 2) out.push_back({i, members[r], members[r + 1]});
    } else {
        throw invalid_input("fixed_pairing: mode must be BestWorst or BestSecondBest");
    }
    return out;
}

inline CellSolution strategy_cell_map(const NetworkInstance& inst, const PairSet& pairs, std::size_t i,
                                      std::span<const double> rho, const Strategy& s)
{
    validate(s);
    if (s.pairing == PairingMode::None) return oma_cell_solution(inst, i, rho);
    if (s.pairing == PairingMode::Optimal) {
        if (s.split == SplitMode::Optimal) return s_cell(inst, i, rho, pairs.per_cell[i]);
        return solve_cell(inst, i, rho, pairs.per_cell[i], pair_solver(s));
    }
    const auto forced = fixed_pairing(inst, i, s.pairing);
    const auto solver = pair_solver(s);
    CellSolution sol;
    sol.cell = i;
    std::vector<char> paired(inst.n_ues(), 0);
    for (const auto& p : forced) {
        sol.selected_pairs.push_back({p, solver(make_context(inst, p, rho))});
        paired[p.strong] = paired[p.weak] = 1;
    }
    sol.pairing_vector.assign(forced.size(), 1);
    for (auto j : inst.ues_of(i))
        if (!paired[j]) sol.solo_allocations.push_back({j, solo_cost(inst, j, rho)});
    sol.rho = reconstruct_load(sol);
    return sol;
}

// References must outlive the returned map.
inline CellMap make_cell_map(const NetworkInstance& inst, const PairSet& pairs, const Strategy& s)
{
    validate(s);
    return [&inst, &pairs, s](std::size_t i, std::span<const double> rho) {
        return strategy_cell_map(inst, pairs, i, rho, s);
    };
}

// Demand per unit of normalized demand: the scale at which the OMA fixed
// point's largest cell load equals load_limit.
inline double calibrate_demand_unit(const NetworkInstance& inst, double load_limit = 1.0)
{
    if (!(load_limit > 0.0)) throw invalid_input("calibrate_demand_unit: load limit must be positive");
    const std::size_t n = inst.n_cells();
    // Sum of 1/c_j per cell, i.e. the OMA load at unit demand.
    auto unit_load = [&](std::size_t i, const std::vector<double>& rho) {
        double s = 0.0;
        for (auto j : inst.ues_of(i)) s += 1.0 / oma_capacity(inst, j, rho);
        return s;
    };
    // From zero the iterates increase monotonically to the fixed point.
    auto fits = [&](double u) {
        std::vector<double> rho(n, 0.0), next(n);
        for (int it = 0; it < 100000; ++it) {
            double diff = 0.0, peak = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                next[i] = u * unit_load(i, rho);
                diff = std::max(diff, std::abs(next[i] - rho[i]));
                peak = std::max(peak, next[i]);
            }
            if (peak > load_limit) return false;
            rho.swap(next);
            if (diff <= 1e-15 * std::max(1.0, peak)) return true;
        }
        return true;
    };
    double lo = 0.0, hi = 1e-6;
    while (fits(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) throw internal_error("calibrate_demand_unit: no bracket");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (fits(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace noma
