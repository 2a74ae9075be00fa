#pragma once

// Network instances: hexagonal layout with wrap-around, COST-231-Hata path
// loss, log-normal shadowing and Rayleigh fading folded into one gain per
// (cell, UE) link.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "noma/errors.hpp"

namespace noma {

struct NetworkConfig {
    std::size_t n_cells = 19;
    double cell_radius_m = 500.0;
    std::size_t ues_per_cell = 30;
    double carrier_freq_hz = 2.0e9;
    double total_bandwidth_hz = 20.0e6;
    double rb_bandwidth_hz = 180.0e3;
    double rb_power_mw = 800.0;
    double noise_psd_dbm_hz = -173.0;
    double shadowing_std_db = 6.0;
    double load_limit = 1.0;
    double demand = 1.0;  // normalized, see calibrate_demand_unit
    double epsilon = 1e-4;
    std::uint64_t rng_seed = 1;
};

struct Cell {
    double x_m = 0.0;
    double y_m = 0.0;
    double rb_power_mw = 0.0;

    bool operator==(const Cell&) const = default;
};

struct Ue {
    std::size_t cell = 0;
    double demand = 0.0;
    double x_m = 0.0;
    double y_m = 0.0;

    bool operator==(const Ue&) const = default;
};

struct NetworkInstance {
    std::vector<Cell> cells;
    std::vector<Ue> ues;
    std::vector<std::vector<double>> gain;  // gain[k][j]: cell k to UE j
    double noise_mw = 0.0;

    std::size_t n_cells() const { return cells.size(); }
    std::size_t n_ues() const { return ues.size(); }

    std::vector<std::size_t> ues_of(std::size_t cell) const
    {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < ues.size(); ++j)
            if (ues[j].cell == cell) out.push_back(j);
        return out;
    }

    bool operator==(const NetworkInstance&) const = default;
};

inline void validate(const NetworkConfig& c)
{
    if (c.n_cells < 1) throw config_error("n_cells must be >= 1");
    if (c.ues_per_cell < 1) throw config_error("ues_per_cell must be >= 1");
    if (!(c.load_limit > 0.0 && c.load_limit <= 1.0)) throw config_error("load_limit must lie in (0, 1]");
    if (!(c.epsilon > 0.0)) throw config_error("epsilon must be positive");
    if (!(c.demand > 0.0)) throw config_error("demand must be positive");
    if (!(c.rb_bandwidth_hz > 0.0)) throw config_error("rb_bandwidth_hz must be positive");
    if (c.rb_bandwidth_hz > c.total_bandwidth_hz)
        throw config_error("rb_bandwidth_hz exceeds total_bandwidth_hz");
    if (!(c.cell_radius_m > 0.0)) throw config_error("cell_radius_m must be positive");
    if (!(c.rb_power_mw > 0.0)) throw config_error("rb_power_mw must be positive");
    if (!(c.shadowing_std_db >= 0.0)) throw config_error("shadowing_std_db must be non-negative");
    if (!(c.carrier_freq_hz > 0.0)) throw config_error("carrier_freq_hz must be positive");
}

inline void validate(const NetworkInstance& inst)
{
    const std::size_t n = inst.n_cells(), m = inst.n_ues();
    if (n == 0) throw invalid_input("instance has no cells");
    if (!(inst.noise_mw > 0.0) || !std::isfinite(inst.noise_mw)) throw invalid_input("noise_mw must be positive");
    if (inst.gain.size() != n) throw invalid_input("gain matrix must have one row per cell");
    for (const auto& c : inst.cells)
        if (!(c.rb_power_mw > 0.0) || !std::isfinite(c.rb_power_mw))
            throw invalid_input("rb_power_mw must be positive");
    for (std::size_t k = 0; k < n; ++k) {
        if (inst.gain[k].size() != m) throw invalid_input("gain row length must equal the UE count");
        for (double g : inst.gain[k])
            if (!(g > 0.0) || !std::isfinite(g)) throw invalid_input("gains must be positive and finite");
    }
    for (const auto& u : inst.ues) {
        if (u.cell >= n) throw invalid_input("UE serving cell out of range");
        if (!(u.demand >= 0.0) || !std::isfinite(u.demand)) throw invalid_input("demands must be non-negative");
    }
}

// Urban COST-231-Hata, base 30 m, UE 1.5 m, metropolitan correction 3 dB.
struct PathLossModel {
    double base_height_m = 30.0;
    double ue_height_m = 1.5;
    double metro_correction_db = 3.0;
    double min_distance_m = 35.0;
};

inline bool cost231_frequency_valid(double carrier_freq_hz)
{
    const double f = carrier_freq_hz / 1e6;
    return f >= 1500.0 && f <= 2000.0;
}

inline double path_loss_db(double distance_m, double carrier_freq_hz, const PathLossModel& pm = {})
{
    if (!(distance_m > 0.0) || !std::isfinite(distance_m)) throw invalid_input("path_loss_db: distance must be positive");
    const double d = std::max(distance_m, pm.min_distance_m);
    if (!(d > 0.0)) throw invalid_input("path_loss_db: non-positive distance after clamping");
    const double lf = std::log10(carrier_freq_hz / 1e6);
    const double lhb = std::log10(pm.base_height_m);
    const double a_hm = (1.1 * lf - 0.7) * pm.ue_height_m - (1.56 * lf - 0.8);
    return 46.3 + 33.9 * lf - 13.82 * lhb - a_hm + (44.9 - 6.55 * lhb) * std::log10(d / 1000.0) +
           pm.metro_correction_db;
}

inline double noise_power_per_rb(const NetworkConfig& c)
{
    if (!(c.rb_bandwidth_hz > 0.0)) throw invalid_input("noise_power_per_rb: rb bandwidth must be positive");
    return std::pow(10.0, c.noise_psd_dbm_hz / 10.0) * c.rb_bandwidth_hz;
}

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Sites of a 1-, 7- or 19-cell hexagonal cluster and its torus shifts.
struct HexLayout {
    double radius = 0.0;
    std::vector<Point> sites;
    std::vector<Point> shifts;  // excludes the zero shift

    HexLayout(std::size_t n_cells, double cell_radius_m) : radius(cell_radius_m)
    {
        int rings;
        if (n_cells == 1)
            rings = 0;
        else if (n_cells == 7)
            rings = 1;
        else if (n_cells == 19)
            rings = 2;
        else
            throw config_error("hex layout supports 1, 7 or 19 cells, got " + std::to_string(n_cells));

        const double d = std::sqrt(3.0) * radius;
        const Point u{d, 0.0}, v{d / 2.0, d * std::sqrt(3.0) / 2.0};
        auto at = [&](int q, int r) { return Point{q * u.x + r * v.x, q * u.y + r * v.y}; };
        static constexpr std::array<std::array<int, 2>, 6> dirs{{{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};
        sites.push_back(at(0, 0));
        for (int k = 1; k <= rings; ++k) {
            int q = dirs[4][0] * k, r = dirs[4][1] * k;
            for (int side = 0; side < 6; ++side)
                for (int step = 0; step < k; ++step) {
                    sites.push_back(at(q, r));
                    q += dirs[side][0];
                    r += dirs[side][1];
                }
        }
        if (rings > 0) {
            const Point s0 = rings == 2 ? at(3, 2) : at(2, 1);
            for (int k = 0; k < 6; ++k) {
                const double a = k * std::numbers::pi / 3.0;
                shifts.push_back({s0.x * std::cos(a) - s0.y * std::sin(a), s0.x * std::sin(a) + s0.y * std::cos(a)});
            }
        }
    }

    bool in_hexagon(Point p, std::size_t cell) const
    {
        const double half = std::sqrt(3.0) * radius / 2.0;
        const double dx = p.x - sites[cell].x, dy = p.y - sites[cell].y;
        for (int k = 0; k < 3; ++k) {
            const double a = k * std::numbers::pi / 3.0;
            if (std::abs(dx * std::cos(a) + dy * std::sin(a)) > half) return false;
        }
        return true;
    }

    double wrap_distance(Point p, std::size_t cell) const
    {
        const Point s = sites[cell];
        double best = std::hypot(p.x - s.x, p.y - s.y);
        for (const auto& sh : shifts) best = std::min(best, std::hypot(p.x - s.x - sh.x, p.y - s.y - sh.y));
        return best;
    }
};

inline NetworkInstance generate_instance(const NetworkConfig& cfg, const PathLossModel& pm = {})
{
    validate(cfg);
    const HexLayout layout(cfg.n_cells, cfg.cell_radius_m);
    if (!cost231_frequency_valid(cfg.carrier_freq_hz))
        std::clog << "warning: carrier frequency outside the COST-231-Hata range 1500-2000 MHz\n";

    std::mt19937_64 rng(cfg.rng_seed);
    std::uniform_real_distribution<double> ux(-std::sqrt(3.0) * cfg.cell_radius_m / 2.0,
                                              std::sqrt(3.0) * cfg.cell_radius_m / 2.0);
    std::uniform_real_distribution<double> uy(-cfg.cell_radius_m, cfg.cell_radius_m);
    std::normal_distribution<double> shadow(0.0, cfg.shadowing_std_db);
    std::exponential_distribution<double> fading(1.0);

    NetworkInstance inst;
    inst.noise_mw = noise_power_per_rb(cfg);
    for (const auto& s : layout.sites) inst.cells.push_back({s.x, s.y, cfg.rb_power_mw});
    for (std::size_t i = 0; i < cfg.n_cells; ++i) {
        for (std::size_t n = 0; n < cfg.ues_per_cell; ++n) {
            Point p;
            do {
                p = {layout.sites[i].x + ux(rng), layout.sites[i].y + uy(rng)};
            } while (!layout.in_hexagon(p, i));
            inst.ues.push_back({i, cfg.demand, p.x, p.y});
        }
    }
    inst.gain.assign(cfg.n_cells, std::vector<double>(inst.ues.size()));
    for (std::size_t j = 0; j < inst.ues.size(); ++j) {
        const Point p{inst.ues[j].x_m, inst.ues[j].y_m};
        for (std::size_t k = 0; k < cfg.n_cells; ++k) {
            const double pl = path_loss_db(layout.wrap_distance(p, k), cfg.carrier_freq_hz, pm);
            const double sh = cfg.shadowing_std_db > 0.0 ? shadow(rng) : 0.0;
            double fade = fading(rng);
            while (fade == 0.0) fade = fading(rng);
            inst.gain[k][j] = std::pow(10.0, (sh - pl) / 10.0) * fade;
        }
    }
    validate(inst);
    return inst;
}

// Copy with every UE demand replaced.
inline NetworkInstance with_uniform_demand(NetworkInstance inst, double demand)
{
    for (auto& u : inst.ues) u.demand = demand;
    return inst;
}

}  // namespace noma
