#pragma once

// Single-cell optimum at fixed external load: one split per candidate pair,
// then a maximum-weight matching picks the pairs.

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "noma/errors.hpp"
#include "noma/matching.hpp"
#include "noma/pairing.hpp"
#include "noma/powersplit.hpp"
#include "noma/scenario.hpp"

namespace noma {

struct SelectedPair {
    Pair pair;
    SplitResult split;
};

struct SoloAllocation {
    std::size_t ue = 0;
    double x = 0.0;
};

struct CellSolution {
    std::size_t cell = 0;
    double rho = 0.0;
    std::vector<SelectedPair> selected_pairs;
    std::vector<SoloAllocation> solo_allocations;
    std::vector<char> pairing_vector;  // aligned with the candidate list
};

// Per-pair resource solver; split() for the optimum, fixed splits otherwise.
using PairSolver = std::function<SplitResult(const SplitContext&)>;

enum class EdgeKind {
    Candidate,   // shared-RB pair, weight T - z_min
    Orthogonal,  // non-candidate UE pair served orthogonally, weight T - s_j - s_h
    Dummy,       // UE matched to the dummy vertex, weight T - s_j
};

struct CellGraph {
    WeightedGraph<double> graph;
    std::vector<std::size_t> vertex_ue;  // dummy vertex maps to npos
    std::vector<EdgeKind> kind;
    std::vector<std::size_t> candidate_index;  // per edge, npos unless Candidate
    double T = 0.0;
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
};

inline double solo_cost(const NetworkInstance& inst, std::size_t j, std::span<const double> rho)
{
    return inst.ues[j].demand / oma_capacity(inst, j, rho);
}

// Candidate pairs do not always admit a perfect matching, so every other UE
// pair gets an orthogonal edge; with T above the total cost every maximum
// matching is then perfect and its weight is an affine image of the load.
inline CellGraph build_cell_graph(const NetworkInstance& inst, std::size_t i, std::span<const double> rho,
                                  const std::vector<Pair>& candidates, const std::vector<SplitResult>& splits)
{
    if (splits.size() != candidates.size()) throw invalid_input("build_cell_graph: one split per candidate required");
    const auto members = inst.ues_of(i);
    const std::size_t m = members.size();
    std::vector<std::size_t> vertex_of(inst.n_ues(), CellGraph::npos);
    std::vector<double> solo(m);
    CellGraph cg;
    cg.vertex_ue = members;
    for (std::size_t v = 0; v < m; ++v) {
        vertex_of[members[v]] = v;
        solo[v] = solo_cost(inst, members[v], rho);
    }
    const bool dummy = m % 2 == 1;
    if (dummy) cg.vertex_ue.push_back(CellGraph::npos);
    cg.graph.n_vertices = cg.vertex_ue.size();

    double total = 0.0;
    for (double s : solo) total += s;
    for (const auto& s : splits) total += s.z_min;
    cg.T = 1.0 + total;

    std::vector<std::vector<char>> is_candidate(m, std::vector<char>(m, 0));
    auto push = [&](std::size_t u, std::size_t v, double w, EdgeKind k, std::size_t idx) {
        if (!(w > 0.0)) throw internal_error("build_cell_graph: non-positive edge weight");
        cg.graph.add_edge(u, v, w);
        cg.kind.push_back(k);
        cg.candidate_index.push_back(idx);
    };
    for (std::size_t u = 0; u < candidates.size(); ++u) {
        const auto& p = candidates[u];
        if (p.cell != i) throw invalid_input("build_cell_graph: candidate from another cell");
        const std::size_t a = vertex_of[p.strong], b = vertex_of[p.weak];
        is_candidate[a][b] = is_candidate[b][a] = 1;
        push(std::min(a, b), std::max(a, b), cg.T - splits[u].z_min, EdgeKind::Candidate, u);
    }
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            if (!is_candidate[a][b]) push(a, b, cg.T - solo[a] - solo[b], EdgeKind::Orthogonal, CellGraph::npos);
    if (dummy)
        for (std::size_t a = 0; a < m; ++a) push(a, m, cg.T - solo[a], EdgeKind::Dummy, CellGraph::npos);
    return cg;
}

inline CellSolution solve_cell(const NetworkInstance& inst, std::size_t i, std::span<const double> rho,
                               const std::vector<Pair>& candidates, const PairSolver& solver)
{
    std::vector<SplitResult> splits;
    splits.reserve(candidates.size());
    for (const auto& p : candidates) splits.push_back(solver(make_context(inst, p, rho)));

    const CellGraph cg = build_cell_graph(inst, i, rho, candidates, splits);
    const auto matching = max_weight_matching(cg.graph);

    CellSolution sol;
    sol.cell = i;
    sol.pairing_vector.assign(candidates.size(), 0);
    const std::size_t m = inst.ues_of(i).size();
    std::vector<char> paired(m, 0);
    // Edges are unique per vertex pair, so look the matched ones up directly.
    std::vector<std::vector<std::size_t>> edge_at(cg.graph.n_vertices,
                                                  std::vector<std::size_t>(cg.graph.n_vertices, CellGraph::npos));
    for (std::size_t k = 0; k < cg.graph.edges.size(); ++k) {
        const auto& e = cg.graph.edges[k];
        edge_at[e.u][e.v] = edge_at[e.v][e.u] = k;
    }
    for (auto [a, b] : matching.edges) {
        const std::size_t k = edge_at[a][b];
        if (cg.kind[k] != EdgeKind::Candidate) continue;
        const std::size_t u = cg.candidate_index[k];
        sol.pairing_vector[u] = 1;
        sol.selected_pairs.push_back({candidates[u], splits[u]});
        paired[a] = paired[b] = 1;
    }
    for (std::size_t v = 0; v < m; ++v)
        if (!paired[v]) sol.solo_allocations.push_back({cg.vertex_ue[v], solo_cost(inst, cg.vertex_ue[v], rho)});

    double load = 0.0;
    for (const auto& sp : sol.selected_pairs) load += sp.split.x_strong + sp.split.x_weak + sp.split.x_pair;
    for (const auto& s : sol.solo_allocations) load += s.x;
    sol.rho = load;
    return sol;
}

inline CellSolution s_cell(const NetworkInstance& inst, std::size_t i, std::span<const double> rho,
                           const std::vector<Pair>& candidates)
{
    return solve_cell(inst, i, rho, candidates, [](const SplitContext& ctx) { return split(ctx); });
}

// Load a cell solution implies, recomputed from its parts.
inline double reconstruct_load(const CellSolution& s)
{
    double load = 0.0;
    for (const auto& sp : s.selected_pairs) load += sp.split.x_strong + sp.split.x_weak + sp.split.x_pair;
    for (const auto& a : s.solo_allocations) load += a.x;
    return load;
}

}  // namespace noma
