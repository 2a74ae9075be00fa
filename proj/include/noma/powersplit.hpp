#pragma once

// Optimal power split and resource allocation for one UE pair at fixed
// external load.
//
// Capacities are in nats per RB use. For a pair with interference-normalised
// powers w_s <= w_w the achievable capacity pairs (a, b) form the convex set
// cv(a, b) <= 0. Serving the pair on x RBs and the residual demand
// orthogonally costs
//     Z(x) = x + (d_s - a x)/c_s + (d_w - b x)/c_w,
// minimised over the achievable (a, b) with a x <= d_s and b x <= d_w.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "noma/errors.hpp"
#include "noma/pairing.hpp"
#include "noma/scenario.hpp"

namespace noma {

struct SplitContext {
    std::size_t cell = 0;
    Pair pair{};
    double w_strong = 0.0;
    double w_weak = 0.0;
    double c_strong_oma = 0.0;
    double c_weak_oma = 0.0;
    double p = 0.0;
    double d_strong = 0.0;
    double d_weak = 0.0;
};

struct CapacityPoint {
    double strong = 0.0;
    double weak = 0.0;
};

enum class SplitCase { Case1, Case2, Case3 };

struct SplitResult {
    double q_strong = 0.0;
    double q_weak = 0.0;
    double x_strong = 0.0;
    double x_weak = 0.0;
    double x_pair = 0.0;
    double z_min = 0.0;
    SplitCase case_at_opt = SplitCase::Case1;
    double c_strong_pair = 0.0;
    double c_weak_pair = 0.0;
};

inline const char* to_string(SplitCase c)
{
    switch (c) {
    case SplitCase::Case1: return "case1";
    case SplitCase::Case2: return "case2";
    case SplitCase::Case3: return "case3";
    }
    return "?";
}

inline SplitContext make_context(double w_strong, double w_weak, double p, double d_strong, double d_weak,
                                 Pair pair = {})
{
    if (!(w_strong > 0.0) || !(w_weak > 0.0) || !std::isfinite(w_strong) || !std::isfinite(w_weak))
        throw invalid_input("split context: w must be positive and finite");
    if (!(p > 0.0) || !std::isfinite(p)) throw invalid_input("split context: p must be positive");
    if (!(d_strong >= 0.0) || !(d_weak >= 0.0) || !std::isfinite(d_strong) || !std::isfinite(d_weak))
        throw invalid_input("split context: demands must be non-negative");
    SplitContext ctx;
    ctx.cell = pair.cell;
    ctx.pair = pair;
    ctx.w_strong = w_strong;
    ctx.w_weak = w_weak;
    ctx.p = p;
    ctx.c_strong_oma = std::log1p(p / w_strong);
    ctx.c_weak_oma = std::log1p(p / w_weak);
    ctx.d_strong = d_strong;
    ctx.d_weak = d_weak;
    if (!(ctx.c_strong_oma > 0.0) || !(ctx.c_weak_oma > 0.0))
        throw invalid_input("split context: OMA capacities underflow to zero");
    return ctx;
}

// Interference-plus-noise over serving gain for UE j in cell i; rho[i] is ignored.
inline double normalised_interference(const NetworkInstance& inst, std::size_t i, std::size_t j,
                                      std::span<const double> rho)
{
    if (rho.size() != inst.n_cells()) throw invalid_input("load vector length must equal the cell count");
    double acc = inst.noise_mw;
    for (std::size_t k = 0; k < inst.n_cells(); ++k) {
        if (k == i) continue;
        if (!(rho[k] >= 0.0) || !std::isfinite(rho[k])) throw invalid_input("loads must be non-negative and finite");
        acc += inst.cells[k].rb_power_mw * inst.gain[k][j] * rho[k];
    }
    return acc / inst.gain[i][j];
}

inline double oma_capacity(const NetworkInstance& inst, std::size_t j, std::span<const double> rho)
{
    const std::size_t i = inst.ues[j].cell;
    return std::log1p(inst.cells[i].rb_power_mw / normalised_interference(inst, i, j, rho));
}

inline SplitContext make_context(const NetworkInstance& inst, const Pair& pair, std::span<const double> rho)
{
    const std::size_t i = pair.cell;
    return make_context(normalised_interference(inst, i, pair.strong, rho),
                        normalised_interference(inst, i, pair.weak, rho), inst.cells[i].rb_power_mw,
                        inst.ues[pair.strong].demand, inst.ues[pair.weak].demand, pair);
}

namespace detail {

// log(w_s e^a + w_w - w_s) without overflow for large a.
inline double log_curve_term(double a, const SplitContext& ctx)
{
    const double delta = ctx.w_weak - ctx.w_strong;
    return a + std::log(ctx.w_strong + delta * std::exp(-a));
}

inline double ratio_or_inf(double d, double c)
{
    if (d == 0.0) return 0.0;
    return c > 0.0 ? d / c : std::numeric_limits<double>::infinity();
}

}  // namespace detail

// Weak capacity on the boundary given the strong one. Written through the
// strong power so that tiny capacities (huge w) do not cancel.
inline double curve_weak(double c_strong, const SplitContext& ctx)
{
    const double qs = std::expm1(c_strong) * ctx.w_strong;
    if (std::isfinite(qs)) return std::log1p((ctx.p - qs) / (qs + ctx.w_weak));
    return std::log(ctx.p + ctx.w_weak) - detail::log_curve_term(c_strong, ctx);
}

// <= 0 exactly on the achievable capacity pairs.
inline double cv(double c_strong, double c_weak, const SplitContext& ctx)
{
    if (!(c_strong >= 0.0) || !(c_weak >= 0.0)) throw invalid_input("cv: capacities must be non-negative");
    return c_weak - curve_weak(c_strong, ctx);
}

// Strong capacity on the boundary given the weak one.
inline double curve_strong(double c_weak, const SplitContext& ctx)
{
    // q_w = (p + w_w)(1 - e^{-c_w}), q_s = p - q_w.
    const double qs = ctx.p + (ctx.p + ctx.w_weak) * std::expm1(-c_weak);
    if (!(qs > -ctx.w_strong)) throw infeasible_capacity("curve_strong: weak capacity beyond the power budget");
    return std::log1p(qs / ctx.w_strong);
}

inline double strong_rate(double q_strong, const SplitContext& ctx) { return std::log1p(q_strong / ctx.w_strong); }

inline double weak_rate(double q_strong, double q_weak, const SplitContext& ctx)
{
    return std::log1p(q_weak / (q_strong + ctx.w_weak));
}

// Split of p into (q_strong, q_weak) whose floating-point sum is exactly p.
// Subtracting the larger share is exact (Sterbenz), so at most one ulp of
// the smaller share moves.
inline std::pair<double, double> exact_split(double p, double q_strong)
{
    q_strong = std::clamp(q_strong, 0.0, p);
    if (q_strong >= 0.5 * p) return {q_strong, p - q_strong};
    const double q_weak = p - q_strong;
    return {p - q_weak, q_weak};
}

inline std::pair<double, double> capacities_to_powers(double c_strong, double c_weak, const SplitContext& ctx)
{
    if (cv(c_strong, c_weak, ctx) > 1e-9) throw infeasible_capacity("capacities_to_powers: capacity pair not achievable");
    double qs = std::expm1(c_strong) * ctx.w_strong;
    if (qs > ctx.p * (1.0 + 1e-12)) throw infeasible_capacity("capacities_to_powers: strong power exceeds budget");
    qs = std::min(qs, ctx.p);
    return exact_split(ctx.p, qs);
}

// Intersection of the ray c_s a = c_w b with the boundary, by bisection.
inline CapacityPoint point_k(const SplitContext& ctx)
{
    const double r = ctx.c_strong_oma / ctx.c_weak_oma;
    double lo = 0.0;
    double hi = std::min(ctx.c_strong_oma, ctx.c_weak_oma / r);
    auto g = [&](double a) { return cv(a, r * a, ctx); };
    if (!(g(lo) < 0.0) || !(g(hi) >= -1e-15)) throw internal_error("point_k: bisection bracket failure");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    const double a = std::abs(g(lo)) <= std::abs(g(hi)) ? lo : hi;
    if (std::abs(g(a)) > 1e-10) throw internal_error("point_k: bisection did not reach the curve");
    return {a, r * a};
}

// Maximiser of a/c_s + b/c_w over the achievable set. With w_s >= w_w the
// boundary is not convex and both endpoints attain the maximum value 1.
inline CapacityPoint tangent_point(const SplitContext& ctx)
{
    const double delta = ctx.w_weak - ctx.w_strong;
    if (!(delta > 0.0)) return {0.0, ctx.c_weak_oma};
    const double gap = std::log1p(ctx.p * delta / (ctx.w_strong * (ctx.w_weak + ctx.p)));
    const double a = std::log(ctx.c_weak_oma * delta / (ctx.w_strong * gap));
    if (!(a > 0.0)) return {0.0, ctx.c_weak_oma};
    if (a >= ctx.c_strong_oma) return {ctx.c_strong_oma, 0.0};
    return {a, std::max(0.0, curve_weak(a, ctx))};
}

// Largest x at which the anchor point still fits under both demand caps.
inline double x_k(const SplitContext& ctx, CapacityPoint anchor)
{
    return std::min(detail::ratio_or_inf(ctx.d_strong, anchor.strong), detail::ratio_or_inf(ctx.d_weak, anchor.weak));
}

inline SplitCase classify_case(double x_pair, const SplitContext& ctx, CapacityPoint anchor)
{
    if (!(x_pair >= 0.0)) throw invalid_input("classify_case: x_pair must be non-negative");
    if (x_pair == 0.0 || x_pair <= x_k(ctx, anchor)) return SplitCase::Case1;
    if (cv(ctx.d_strong / x_pair, ctx.d_weak / x_pair, ctx) <= 0.0) return SplitCase::Case3;
    return SplitCase::Case2;
}

struct CapacityChoice {
    CapacityPoint point;
    SplitCase which = SplitCase::Case1;
};

inline CapacityChoice optimal_capacities(double x_pair, const SplitContext& ctx, CapacityPoint anchor)
{
    const SplitCase c = classify_case(x_pair, ctx, anchor);
    if (c == SplitCase::Case1) return {anchor, c};
    const double cap_s = ctx.d_strong / x_pair, cap_w = ctx.d_weak / x_pair;
    if (c == SplitCase::Case3) return {{cap_s, cap_w}, c};

    const double viol_s = anchor.strong * x_pair - ctx.d_strong;
    const double viol_w = anchor.weak * x_pair - ctx.d_weak;
    const bool strong_binds = viol_s > 0.0 && (viol_w <= 0.0 || viol_s >= viol_w);
    if (strong_binds) {
        if (cap_s > ctx.c_strong_oma * (1.0 + 1e-12))
            throw infeasible_capacity("optimal_capacities: strong cap beyond the curve");
        const double a = std::min(cap_s, ctx.c_strong_oma);
        return {{a, std::clamp(curve_weak(a, ctx), 0.0, cap_w)}, c};
    }
    const double b = std::min(cap_w, ctx.c_weak_oma);
    return {{std::clamp(curve_strong(b, ctx), 0.0, cap_s), b}, c};
}

namespace detail {

inline double z_from(double x_pair, CapacityPoint cp, const SplitContext& ctx)
{
    return x_pair + std::max(0.0, ctx.d_strong - cp.strong * x_pair) / ctx.c_strong_oma +
           std::max(0.0, ctx.d_weak - cp.weak * x_pair) / ctx.c_weak_oma;
}

}  // namespace detail

inline double z(double x_pair, const SplitContext& ctx, CapacityPoint anchor)
{
    return detail::z_from(x_pair, optimal_capacities(x_pair, ctx, anchor).point, ctx);
}

// Assemble a result at a chosen x; z_min is the exact sum of its parts.
inline SplitResult finish_split(double x_pair, CapacityPoint cp, SplitCase which, const SplitContext& ctx)
{
    SplitResult r;
    auto [qs, qw] = capacities_to_powers(cp.strong, cp.weak, ctx);
    r.q_strong = qs;
    r.q_weak = qw;
    r.x_pair = x_pair;
    r.x_strong = std::max(0.0, ctx.d_strong - cp.strong * x_pair) / ctx.c_strong_oma;
    r.x_weak = std::max(0.0, ctx.d_weak - cp.weak * x_pair) / ctx.c_weak_oma;
    r.z_min = r.x_strong + r.x_weak + r.x_pair;
    r.case_at_opt = which;
    r.c_strong_pair = cp.strong;
    r.c_weak_pair = cp.weak;
    return r;
}

// Global minimiser of Z. Z is linear up to x_T (where the tangent point first
// meets a demand cap), convex in between, and equal to x beyond the point
// where the demand corner becomes achievable.
inline SplitResult split(const SplitContext& ctx)
{
    const CapacityPoint t = tangent_point(ctx);
    const double z0 = ctx.d_strong / ctx.c_strong_oma + ctx.d_weak / ctx.c_weak_oma;
    const double gain = t.strong / ctx.c_strong_oma + t.weak / ctx.c_weak_oma;
    if (z0 == 0.0 || !(gain > 1.0)) return finish_split(0.0, t, SplitCase::Case1, ctx);

    auto zval = [&](double x) { return z(x, ctx, t); };
    const double xt = x_k(ctx, t);

    // Corner (d_s/x, d_w/x) becomes achievable at x_black; by convexity it is
    // achievable once it lies under the chord, i.e. for x >= z0.
    double lo = xt, hi = z0;
    auto corner = [&](double x) { return cv(ctx.d_strong / x, ctx.d_weak / x, ctx); };
    if (hi > lo && corner(hi) <= 0.0) {
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (mid > 0.0 && corner(mid) <= 0.0 ? hi : lo) = mid;
        }
    }
    const double x_black = std::max(hi, xt);

    // Golden-section search over the convex middle piece.
    double a = xt, b = x_black;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = zval(c), fd = zval(d);
    for (int it = 0; it < 200 && (b - a) > 1e-13 * std::max(1.0, b); ++it) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = zval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = zval(d);
        }
    }
    const double x_mid = fc <= fd ? c : d;

    double best_x = 0.0, best_z = z0;
    for (double x : {xt, x_mid, x_black}) {
        if (!std::isfinite(x) || x <= 0.0) continue;
        const double v = zval(x);
        if (v < best_z - 1e-13 * std::max(1.0, best_z)) {
            best_z = v;
            best_x = x;
        }
    }
    const auto choice = optimal_capacities(best_x, ctx, t);
    return finish_split(best_x, choice.point, choice.which, ctx);
}

inline SplitResult split(const NetworkInstance& inst, const Pair& pair, std::span<const double> rho)
{
    return split(make_context(inst, pair, rho));
}

}  // namespace noma
