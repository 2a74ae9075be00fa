#pragma once

// Network fixed point rho = f(rho), where f_i is a per-cell optimum given the
// other cells' loads. Sweeps are synchronous (Jacobi), so cells of one sweep
// are independent and run on worker threads.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <exception>
#include <functional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "noma/cellopt.hpp"
#include "noma/errors.hpp"
#include "noma/pairing.hpp"
#include "noma/scenario.hpp"

namespace noma {

// Maps (cell, full load vector) to that cell's solution; must be thread-safe.
using CellMap = std::function<CellSolution(std::size_t, std::span<const double>)>;

struct TraceEntry {
    std::size_t k = 0;
    std::vector<double> rho;
    double residual = 0.0;
};

struct NetworkSolution {
    std::vector<double> rho;
    std::vector<CellSolution> cell_solutions;
    std::vector<double> interference_rho;  // loads the final sweep was evaluated at
    bool feasible = false;
    std::vector<TraceEntry> trace;
    std::size_t iterations = 0;
};

struct MCellOptions {
    double epsilon = 1e-4;
    double load_limit = 1.0;
    std::size_t k_max = 100;
    std::size_t threads = 0;  // 0: hardware concurrency
};

struct non_convergence_error : std::runtime_error {
    std::vector<TraceEntry> trace;
    explicit non_convergence_error(std::vector<TraceEntry> t)
        : std::runtime_error("fixed-point iteration did not converge"), trace(std::move(t))
    {
    }
};

inline std::vector<CellSolution> f_map_solutions(std::size_t n_cells, const CellMap& map, std::span<const double> rho,
                                                 std::size_t threads = 0)
{
    if (rho.size() != n_cells) throw invalid_input("f_map: load vector length must equal the cell count");
    for (double r : rho)
        if (!(r >= 0.0) || !std::isfinite(r)) throw invalid_input("f_map: loads must be non-negative and finite");
    std::vector<CellSolution> out(n_cells);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, n_cells);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n_cells; ++i) out[i] = map(i, rho);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n_cells);
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n_cells; i = next++) {
                    try {
                        out[i] = map(i, rho);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

inline std::vector<double> f_map(std::size_t n_cells, const CellMap& map, std::span<const double> rho,
                                 std::size_t threads = 0)
{
    std::vector<double> out;
    for (const auto& s : f_map_solutions(n_cells, map, rho, threads)) out.push_back(s.rho);
    return out;
}

inline double inf_distance(std::span<const double> a, std::span<const double> b)
{
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

inline NetworkSolution m_cell(std::size_t n_cells, const CellMap& map, std::vector<double> rho0,
                              const MCellOptions& opt = {})
{
    if (!(opt.epsilon > 0.0)) throw invalid_input("m_cell: epsilon must be positive");
    if (rho0.size() != n_cells) throw invalid_input("m_cell: initial load vector has the wrong length");
    NetworkSolution sol;
    std::vector<double> rho = std::move(rho0);
    for (std::size_t k = 1; k <= opt.k_max; ++k) {
        auto cells = f_map_solutions(n_cells, map, rho, opt.threads);
        std::vector<double> next;
        next.reserve(n_cells);
        for (const auto& c : cells) next.push_back(c.rho);
        const double res = inf_distance(next, rho);
        sol.trace.push_back({k, next, res});
        sol.interference_rho = std::move(rho);
        rho = std::move(next);
        if (!std::isfinite(res)) break;  // loads blew up; no fixed point
        if (res <= opt.epsilon) {
            sol.rho = rho;
            sol.cell_solutions = std::move(cells);
            sol.iterations = k;
            sol.feasible = *std::max_element(sol.rho.begin(), sol.rho.end()) <= opt.load_limit + opt.epsilon;
            return sol;
        }
    }
    throw non_convergence_error(std::move(sol.trace));
}

struct FixedPointReport {
    std::vector<double> f_rho;
    double residual = 0.0;  // ||rho - f(rho)||_inf
    bool achievable = false;  // f(rho) <= rho + eps componentwise
};

inline FixedPointReport verify_fixed_point(std::size_t n_cells, const CellMap& map, std::span<const double> rho,
                                           double epsilon, std::size_t threads = 0)
{
    FixedPointReport r;
    r.f_rho = f_map(n_cells, map, rho, threads);
    r.residual = inf_distance(r.f_rho, rho);
    r.achievable = true;
    for (std::size_t i = 0; i < n_cells; ++i)
        if (r.f_rho[i] > rho[i] + epsilon) r.achievable = false;
    return r;
}

inline void write_trace_csv(std::ostream& os, const std::vector<TraceEntry>& trace)
{
    if (trace.empty()) return;
    os << "k";
    for (std::size_t i = 0; i < trace.front().rho.size(); ++i) os << ",rho_" << i;
    os << ",residual\n";
    char buf[64];
    for (const auto& t : trace) {
        os << t.k;
        for (double r : t.rho) {
            std::snprintf(buf, sizeof buf, ",%.9g", r);
            os << buf;
        }
        std::snprintf(buf, sizeof buf, ",%.9g\n", t.residual);
        os << buf;
    }
}

// Optimal NOMA cell map over a fixed candidate set; references must outlive it.
inline CellMap noma_cell_map(const NetworkInstance& inst, const PairSet& pairs)
{
    return [&inst, &pairs](std::size_t i, std::span<const double> rho) {
        return s_cell(inst, i, rho, pairs.per_cell[i]);
    };
}

}  // namespace noma
