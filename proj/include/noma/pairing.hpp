#pragma once

// Candidate UE pairs per cell. In a pair the strong UE applies SIC and
// decodes the weak UE's signal first.

#include <cstddef>
#include <vector>

#include "json.hpp"
#include "noma/errors.hpp"
#include "noma/scenario.hpp"

namespace noma {

struct Pair {
    std::size_t cell = 0;
    std::size_t strong = 0;
    std::size_t weak = 0;

    bool operator==(const Pair&) const = default;
};

struct PairSet {
    std::vector<std::vector<Pair>> per_cell;    // U_i
    std::vector<std::vector<std::size_t>> of_ue;  // V_j as flat indices into all()

    std::size_t size() const
    {
        std::size_t s = 0;
        for (const auto& c : per_cell) s += c.size();
        return s;
    }

    std::vector<Pair> all() const
    {
        std::vector<Pair> out;
        for (const auto& c : per_cell) out.insert(out.end(), c.begin(), c.end());
        return out;
    }
};

// Strong/weak ordering by serving-cell gain; equal gains put the lower id first.
inline Pair ordered_pair(const NetworkInstance& inst, std::size_t cell, std::size_t a, std::size_t b)
{
    const double ga = inst.gain[cell][a], gb = inst.gain[cell][b];
    if (ga > gb || (ga == gb && a < b)) return {cell, a, b};
    return {cell, b, a};
}

// True iff the decoding order (strong=j, weak=h) stays valid for every load
// vector: g_ij g_kh >= g_ih g_kj for all other cells k.
inline bool decoding_order_stable(const NetworkInstance& inst, std::size_t i, std::size_t j, std::size_t h)
{
    if (j == h) throw invalid_input("decoding_order_stable: j and h must differ");
    if (inst.ues.at(j).cell != i || inst.ues.at(h).cell != i) throw invalid_input("decoding_order_stable: UEs not served by cell");
    if (inst.gain[i][j] < inst.gain[i][h]) throw invalid_input("decoding_order_stable: requires g[i][j] >= g[i][h]");
    for (std::size_t k = 0; k < inst.n_cells(); ++k) {
        if (k == i) continue;
        if (inst.gain[i][j] * inst.gain[k][h] < inst.gain[i][h] * inst.gain[k][j]) return false;
    }
    return true;
}

inline PairSet build_candidate_pairs(const NetworkInstance& inst, bool filtered)
{
    PairSet ps;
    ps.per_cell.resize(inst.n_cells());
    ps.of_ue.resize(inst.n_ues());
    std::size_t flat = 0;
    for (std::size_t i = 0; i < inst.n_cells(); ++i) {
        const auto members = inst.ues_of(i);
        for (std::size_t a = 0; a < members.size(); ++a)
            for (std::size_t b = a + 1; b < members.size(); ++b) {
                const Pair p = ordered_pair(inst, i, members[a], members[b]);
                if (filtered && !decoding_order_stable(inst, i, p.strong, p.weak)) continue;
                ps.per_cell[i].push_back(p);
                ps.of_ue[p.strong].push_back(flat);
                ps.of_ue[p.weak].push_back(flat);
                ++flat;
            }
    }
    return ps;
}

// Pairing-pattern dump: one entry per candidate with its selection flag.
inline nlohmann::json pairing_to_json(const PairSet& ps, const std::vector<std::vector<char>>& selected)
{
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t i = 0; i < ps.per_cell.size(); ++i)
        for (std::size_t u = 0; u < ps.per_cell[i].size(); ++u) {
            const auto& p = ps.per_cell[i][u];
            const bool sel = i < selected.size() && u < selected[i].size() && selected[i][u];
            out.push_back({{"cell", p.cell}, {"strong", p.strong}, {"weak", p.weak}, {"selected", sel}});
        }
    return out;
}

}  // namespace noma
