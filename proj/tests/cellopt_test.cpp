#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "noma/baselines.hpp"
#include "noma/cellopt.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace noma;
using noma::testing::make_instance;

namespace {

std::size_t count(const CellGraph& g, EdgeKind k)
{
    std::size_t n = 0;
    for (auto e : g.kind) n += e == k;
    return n;
}

// Exhaustive oracle for cell i: every partial pairing, each pair priced by
// the grid search.
double exhaustive(const NetworkInstance& inst, std::size_t i, std::span<const double> rho,
                  const std::vector<Pair>& candidates, double x_step)
{
    std::vector<double> solo(inst.n_ues(), 0.0), cost;
    for (std::size_t j = 0; j < inst.n_ues(); ++j) solo[j] = oracle::solo(inst, j, rho);
    for (const auto& p : candidates) cost.push_back(oracle::grid_split(make_context(inst, p, rho), x_step, 100).z);
    return oracle::enumerate_cell(inst.ues_of(i), candidates, cost, solo);
}

}  // namespace

TEST(CellGraph, EvenCell)
{
    const auto inst = make_instance({{4.0, 3.0, 2.0, 1.0}}, {0, 0, 0, 0});
    const std::vector<double> rho{0.0};
    const std::vector<Pair> cand{{0, 0, 1}, {0, 0, 2}, {0, 2, 3}};
    std::vector<SplitResult> splits;
    for (const auto& p : cand) splits.push_back(split(inst, p, rho));
    const auto g = build_cell_graph(inst, 0, rho, cand, splits);
    EXPECT_EQ(g.graph.n_vertices, 4u);
    EXPECT_EQ(count(g, EdgeKind::Candidate), 3u);
    EXPECT_EQ(count(g, EdgeKind::Dummy), 0u);
    // Remaining UE pairs are offered orthogonally.
    EXPECT_EQ(count(g, EdgeKind::Orthogonal), 3u);
    for (const auto& e : g.graph.edges) EXPECT_GT(e.weight, 0.0);
}

TEST(CellGraph, OddCellHasDummy)
{
    const auto inst = make_instance({{5.0, 4.0, 3.0, 2.0, 1.0}}, {0, 0, 0, 0, 0});
    const std::vector<double> rho{0.0};
    const auto cand = build_candidate_pairs(inst, true).per_cell[0];
    std::vector<SplitResult> splits;
    for (const auto& p : cand) splits.push_back(split(inst, p, rho));
    const auto g = build_cell_graph(inst, 0, rho, cand, splits);
    EXPECT_EQ(g.graph.n_vertices, 6u);
    EXPECT_EQ(count(g, EdgeKind::Candidate), cand.size());
    EXPECT_EQ(count(g, EdgeKind::Dummy), 5u);
    EXPECT_EQ(g.vertex_ue.back(), CellGraph::npos);
    for (const auto& e : g.graph.edges) EXPECT_GT(e.weight, 0.0);
    EXPECT_THROW(build_cell_graph(inst, 0, rho, cand, {}), invalid_input);
}

TEST(SCell, SingleUe)
{
    const auto inst = make_instance({{3.0}}, {0}, 1.0, 1.0, 0.5);
    const std::vector<double> rho{0.0};
    const auto s = s_cell(inst, 0, rho, {});
    EXPECT_NEAR(s.rho, 0.5 / std::log(4.0), 1e-15);
    EXPECT_NEAR(s.rho, 0.3607, 1e-4);
    ASSERT_EQ(s.solo_allocations.size(), 1u);
    EXPECT_TRUE(s.selected_pairs.empty());
}

TEST(SCell, WorkedPair)
{
    // g = 3 and 1, sigma^2 = 1, p = 1: w = 1/3 and 1.
    const auto inst = make_instance({{3.0, 1.0}}, {0, 0}, 1.0, 1.0, 0.5);
    const std::vector<double> rho{0.0};
    const auto cand = build_candidate_pairs(inst, true).per_cell[0];
    const auto s = s_cell(inst, 0, rho, cand);
    ASSERT_EQ(s.selected_pairs.size(), 1u);
    EXPECT_NEAR(s.rho, 1.0036190, 1e-7);
    EXPECT_LT(s.rho, oma_cell_map(inst, 0, rho));
    EXPECT_NEAR(oma_cell_map(inst, 0, rho), 1.0821, 1e-4);
    EXPECT_EQ(s.pairing_vector, std::vector<char>{1});
}

TEST(SCell, EmptyCandidatesEqualsOma)
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        const auto inst = noma::testing::random_instance(rng, 3, 5);
        const std::vector<double> rho{u(rng), u(rng), u(rng)};
        for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(s_cell(inst, i, rho, {}).rho, oma_cell_map(inst, i, rho));
    }
}

TEST(SCell, SplitCalledOncePerCandidate)
{
    std::mt19937_64 rng(3);
    const auto inst = noma::testing::random_instance(rng, 2, 6);
    const auto ps = build_candidate_pairs(inst, false);
    const std::vector<double> rho{0.4, 0.6};
    std::atomic<int> calls{0};
    const PairSolver counting = [&](const SplitContext& ctx) {
        ++calls;
        return split(ctx);
    };
    const auto s = solve_cell(inst, 0, rho, ps.per_cell[0], counting);
    EXPECT_EQ(calls.load(), static_cast<int>(ps.per_cell[0].size()));
    EXPECT_EQ(s.rho, s_cell(inst, 0, rho, ps.per_cell[0]).rho);
}

TEST(SCell, MatchesExhaustiveOracle)
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> m(1, 6);
    for (int t = 0; t < 25; ++t) {
        const auto inst = noma::testing::random_instance(rng, 2, m(rng));
        const std::vector<double> rho{u(rng), u(rng)};
        for (bool filtered : {true, false}) {
            const auto cand = build_candidate_pairs(inst, filtered).per_cell[0];
            const auto s = s_cell(inst, 0, rho, cand);
            const double ref = exhaustive(inst, 0, rho, cand, 2e-3);
            EXPECT_LE(s.rho, ref * (1 + 1e-9)) << "instance " << t;
            EXPECT_NEAR(s.rho / ref, 1.0, 1e-3) << "instance " << t;
        }
    }
}

TEST(SCell, SolutionStructure)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 30; ++t) {
        const auto inst = noma::testing::random_instance(rng, 3, 7);
        const std::vector<double> rho{u(rng), u(rng), u(rng)};
        const auto cand = build_candidate_pairs(inst, false).per_cell[1];
        const auto s = s_cell(inst, 1, rho, cand);
        EXPECT_EQ(s.rho, reconstruct_load(s));
        std::map<std::size_t, int> seen;
        for (const auto& sp : s.selected_pairs) {
            ++seen[sp.pair.strong];
            ++seen[sp.pair.weak];
            const auto ctx = make_context(inst, sp.pair, rho);
            EXPECT_NEAR(sp.split.c_strong_pair * sp.split.x_pair + ctx.c_strong_oma * sp.split.x_strong, ctx.d_strong,
                        1e-8 * ctx.d_strong);
            EXPECT_NEAR(sp.split.c_weak_pair * sp.split.x_pair + ctx.c_weak_oma * sp.split.x_weak, ctx.d_weak,
                        1e-8 * ctx.d_weak);
            EXPECT_EQ(sp.split.q_strong + sp.split.q_weak, inst.cells[1].rb_power_mw);
        }
        for (const auto& a : s.solo_allocations) ++seen[a.ue];
        EXPECT_EQ(seen.size(), inst.ues_of(1).size());
        for (auto [ue, n] : seen) EXPECT_EQ(n, 1) << "UE " << ue;
        std::size_t selected = 0;
        for (char y : s.pairing_vector) selected += y;
        EXPECT_EQ(selected, s.selected_pairs.size());
    }
}

TEST(SCell, MonotoneInExternalLoad)
{
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 30; ++t) {
        const auto inst = noma::testing::random_instance(rng, 3, 6);
        const auto ps = build_candidate_pairs(inst, true);
        std::vector<double> lo{u(rng), u(rng), u(rng)}, hi = lo;
        for (auto& r : hi) r += u(rng) * (1.0 - r);
        for (std::size_t i = 0; i < 3; ++i)
            EXPECT_LE(s_cell(inst, i, lo, ps.per_cell[i]).rho, s_cell(inst, i, hi, ps.per_cell[i]).rho * (1 + 1e-12));
    }
}

TEST(SCell, NeverWorseThanOma)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 30; ++t) {
        const auto inst = noma::testing::random_instance(rng, 2, 8);
        const std::vector<double> rho{u(rng), u(rng)};
        const auto cand = build_candidate_pairs(inst, false).per_cell[0];
        EXPECT_LE(s_cell(inst, 0, rho, cand).rho, oma_cell_map(inst, 0, rho) * (1 + 1e-12));
    }
}
