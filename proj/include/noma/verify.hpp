#pragma once

// Post-hoc checks of a network solution: per-UE demand delivery, power sums
// and load reconstruction, evaluated at the loads the solution was built for.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "noma/cellopt.hpp"
#include "noma/netopt.hpp"
#include "noma/powersplit.hpp"
#include "noma/scenario.hpp"

namespace noma {

struct SolutionCheck {
    double max_demand_error = 0.0;  // relative |delivered - d| / d, 0 for zero demand
    double max_demand_shortfall = 0.0;  // relative max(0, d - delivered) / d
    bool power_sums_exact = true;
    double max_reconstruction_error = 0.0;  // |rho_i - sum of allocations|
    bool every_ue_served_once = true;
    std::vector<std::string> problems;
};

// With exact_demand (optimal splits) delivery must match demand; fixed
// splits may over-deliver to one UE of a pair.
inline SolutionCheck check_solution(const NetworkInstance& inst, const NetworkSolution& sol, bool exact_demand,
                                    double demand_tol = 1e-8, double load_tol = 1e-10)
{
    SolutionCheck c;
    const auto& rho = sol.interference_rho;
    if (sol.cell_solutions.size() != inst.n_cells() || rho.size() != inst.n_cells() || sol.rho.size() != inst.n_cells()) {
        c.problems.push_back("solution does not cover every cell");
        c.every_ue_served_once = false;
        return c;
    }
    std::vector<int> served(inst.n_ues(), 0);
    std::vector<double> delivered(inst.n_ues(), 0.0);
    for (const auto& cs : sol.cell_solutions) {
        for (const auto& sp : cs.selected_pairs) {
            const auto ctx = make_context(inst, sp.pair, rho);
            if (sp.split.q_strong + sp.split.q_weak != ctx.p) c.power_sums_exact = false;
            delivered[sp.pair.strong] += sp.split.c_strong_pair * sp.split.x_pair + ctx.c_strong_oma * sp.split.x_strong;
            delivered[sp.pair.weak] += sp.split.c_weak_pair * sp.split.x_pair + ctx.c_weak_oma * sp.split.x_weak;
            ++served[sp.pair.strong];
            ++served[sp.pair.weak];
            if (inst.ues[sp.pair.strong].cell != cs.cell || inst.ues[sp.pair.weak].cell != cs.cell)
                c.problems.push_back("pair served by a foreign cell");
        }
        for (const auto& s : cs.solo_allocations) {
            delivered[s.ue] += oma_capacity(inst, s.ue, rho) * s.x;
            ++served[s.ue];
            if (inst.ues[s.ue].cell != cs.cell) c.problems.push_back("UE served by a foreign cell");
        }
        const double err = std::abs(reconstruct_load(cs) - sol.rho[cs.cell]);
        c.max_reconstruction_error = std::max(c.max_reconstruction_error, err);
    }
    for (std::size_t j = 0; j < inst.n_ues(); ++j) {
        if (served[j] != 1) c.every_ue_served_once = false;
        const double d = inst.ues[j].demand;
        if (d == 0.0) continue;
        c.max_demand_error = std::max(c.max_demand_error, std::abs(delivered[j] - d) / d);
        c.max_demand_shortfall = std::max(c.max_demand_shortfall, std::max(0.0, d - delivered[j]) / d);
    }
    if (!c.every_ue_served_once) c.problems.push_back("some UE is not served exactly once");
    if (!c.power_sums_exact) c.problems.push_back("power split does not sum to the RB power");
    if (c.max_reconstruction_error > load_tol) c.problems.push_back("cell load differs from its allocations");
    const double demand_err = exact_demand ? c.max_demand_error : c.max_demand_shortfall;
    if (demand_err > demand_tol) c.problems.push_back("demand not delivered");
    return c;
}

inline bool ok(const SolutionCheck& c) { return c.problems.empty(); }

}  // namespace noma
