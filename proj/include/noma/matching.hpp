#pragma once

// Maximum-weight matching on general graphs.
//
// Primal-dual blossom method in O(V^3), following the structure of
// Galil's exposition and van Rantwijk's reference implementation. Dual
// variables are stored doubled so that integral weights stay integral.
// Among all maximum-weight matchings the lexicographically smallest sorted
// edge list is returned.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <numeric>
#include <type_traits>
#include <utility>
#include <vector>

#include "noma/errors.hpp"

namespace noma {

template <class W>
struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
    W weight{};
};

template <class W>
struct WeightedGraph {
    std::size_t n_vertices = 0;
    std::vector<Edge<W>> edges;

    void add_edge(std::size_t u, std::size_t v, W w) { edges.push_back({u, v, w}); }
};

template <class W>
struct Matching {
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // (min, max), sorted
    W weight{};
};

template <class W>
void validate_graph(const WeightedGraph<W>& g)
{
    std::vector<std::pair<std::size_t, std::size_t>> seen;
    seen.reserve(g.edges.size());
    for (const auto& e : g.edges) {
        if (e.u >= g.n_vertices || e.v >= g.n_vertices)
            throw invalid_input("matching: edge endpoint out of range");
        if (e.u == e.v) throw invalid_input("matching: self-loop");
        if (!(e.weight > W{0})) throw invalid_input("matching: weights must be positive");
        if constexpr (std::is_floating_point_v<W>)
            if (!std::isfinite(e.weight)) throw invalid_input("matching: non-finite weight");
        seen.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw invalid_input("matching: duplicate edge");
}

namespace detail {

// Sum in sorted edge order so equal edge sets give bit-equal weights.
template <class W>
W weight_of(const WeightedGraph<W>& g, const std::vector<std::size_t>& edge_ids,
            std::vector<std::pair<std::size_t, std::size_t>>* out)
{
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::size_t>> keyed;
    keyed.reserve(edge_ids.size());
    for (auto k : edge_ids) {
        const auto& e = g.edges[k];
        keyed.push_back({{std::min(e.u, e.v), std::max(e.u, e.v)}, k});
    }
    std::sort(keyed.begin(), keyed.end());
    W total{};
    if (out) out->clear();
    for (const auto& [key, k] : keyed) {
        total += g.edges[k].weight;
        if (out) out->push_back(key);
    }
    return total;
}

template <class W>
bool weight_equal(W a, W b)
{
    if constexpr (std::is_floating_point_v<W>)
        return std::abs(a - b) <= W(1e-12) * std::max({W(1), std::abs(a), std::abs(b)});
    else
        return a == b;
}

template <class W>
class Blossom {
public:
    Blossom(const WeightedGraph<W>& g, const std::vector<char>& active)
        : g_(g), n_(g.n_vertices), m_(g.edges.size()), active_(active)
    {
        W maxw{};
        for (std::size_t k = 0; k < m_; ++k)
            if (active_[k]) maxw = std::max(maxw, g_.edges[k].weight);
        if constexpr (std::is_floating_point_v<W>) eps_ = W(1e-13) * std::max(W(1), maxw);

        endpoint_.resize(2 * m_);
        neighbend_.assign(n_, {});
        for (std::size_t k = 0; k < m_; ++k) {
            endpoint_[2 * k] = static_cast<int>(g_.edges[k].u);
            endpoint_[2 * k + 1] = static_cast<int>(g_.edges[k].v);
            if (!active_[k]) continue;
            neighbend_[g_.edges[k].u].push_back(static_cast<int>(2 * k + 1));
            neighbend_[g_.edges[k].v].push_back(static_cast<int>(2 * k));
        }
        const std::size_t nn = 2 * n_;
        mate_.assign(n_, -1);
        label_.assign(nn, 0);
        labelend_.assign(nn, -1);
        inblossom_.resize(n_);
        std::iota(inblossom_.begin(), inblossom_.end(), 0);
        blossomparent_.assign(nn, -1);
        blossomchilds_.assign(nn, {});
        blossombase_.assign(nn, -1);
        for (std::size_t v = 0; v < n_; ++v) blossombase_[v] = static_cast<int>(v);
        blossomendps_.assign(nn, {});
        bestedge_.assign(nn, -1);
        blossombestedges_.assign(nn, {});
        has_bestlist_.assign(nn, 0);
        for (std::size_t b = nn; b-- > n_;) unused_.push_back(static_cast<int>(b));
        dualvar_.assign(nn, W{});
        for (std::size_t v = 0; v < n_; ++v) dualvar_[v] = maxw;
        allowedge_.assign(m_, 0);
    }

    void run()
    {
        for (std::size_t stage = 0; stage < n_; ++stage) {
            std::fill(label_.begin(), label_.end(), 0);
            std::fill(bestedge_.begin(), bestedge_.end(), -1);
            for (std::size_t b = n_; b < 2 * n_; ++b) {
                blossombestedges_[b].clear();
                has_bestlist_[b] = 0;
            }
            std::fill(allowedge_.begin(), allowedge_.end(), 0);
            queue_.clear();
            for (std::size_t v = 0; v < n_; ++v)
                if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(static_cast<int>(v), 1, -1);

            bool augmented = false;
            for (;;) {
                while (!queue_.empty() && !augmented) {
                    int v = queue_.back();
                    queue_.pop_back();
                    for (int p : neighbend_[v]) {
                        int k = p / 2;
                        int w = endpoint_[p];
                        if (inblossom_[v] == inblossom_[w]) continue;
                        W kslack{};
                        if (!allowedge_[k]) {
                            kslack = slack(k);
                            if (kslack <= eps_) allowedge_[k] = 1;
                        }
                        if (allowedge_[k]) {
                            if (label_[inblossom_[w]] == 0) {
                                assign_label(w, 2, p ^ 1);
                            } else if (label_[inblossom_[w]] == 1) {
                                int base = scan_blossom(v, w);
                                if (base >= 0) {
                                    add_blossom(base, k);
                                } else {
                                    augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if (label_[w] == 0) {
                                label_[w] = 2;
                                labelend_[w] = p ^ 1;
                            }
                        } else if (label_[inblossom_[w]] == 1) {
                            int b = inblossom_[v];
                            if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
                        } else if (label_[w] == 0) {
                            if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
                        }
                    }
                }
                if (augmented) break;

                // Dual update.
                int deltatype = 1;
                W delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + static_cast<long>(n_));
                int deltaedge = -1, deltablossom = -1;
                for (std::size_t v = 0; v < n_; ++v) {
                    if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
                        W d = slack(bestedge_[v]);
                        if (d < delta) {
                            delta = d;
                            deltatype = 2;
                            deltaedge = bestedge_[v];
                        }
                    }
                }
                for (std::size_t b = 0; b < 2 * n_; ++b) {
                    if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
                        W d = slack(bestedge_[b]) / W(2);
                        if (d < delta) {
                            delta = d;
                            deltatype = 3;
                            deltaedge = bestedge_[b];
                        }
                    }
                }
                for (std::size_t b = n_; b < 2 * n_; ++b) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
                        dualvar_[b] < delta) {
                        delta = dualvar_[b];
                        deltatype = 4;
                        deltablossom = static_cast<int>(b);
                    }
                }
                for (std::size_t v = 0; v < n_; ++v) {
                    if (label_[inblossom_[v]] == 1)
                        dualvar_[v] -= delta;
                    else if (label_[inblossom_[v]] == 2)
                        dualvar_[v] += delta;
                }
                for (std::size_t b = n_; b < 2 * n_; ++b) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
                        if (label_[b] == 1)
                            dualvar_[b] += delta;
                        else if (label_[b] == 2)
                            dualvar_[b] -= delta;
                    }
                }
                if (deltatype == 1) break;
                if (deltatype == 2) {
                    allowedge_[deltaedge] = 1;
                    int i = endpoint_[2 * deltaedge], j = endpoint_[2 * deltaedge + 1];
                    if (label_[inblossom_[i]] == 0) std::swap(i, j);
                    queue_.push_back(i);
                } else if (deltatype == 3) {
                    allowedge_[deltaedge] = 1;
                    queue_.push_back(endpoint_[2 * deltaedge]);
                } else {
                    expand_blossom(deltablossom, false);
                }
            }
            if (!augmented) break;
            for (std::size_t b = n_; b < 2 * n_; ++b)
                if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == W{})
                    expand_blossom(static_cast<int>(b), true);
        }
    }

    std::vector<std::size_t> matched_edges() const
    {
        std::vector<std::size_t> out;
        for (std::size_t v = 0; v < n_; ++v)
            if (mate_[v] >= 0 && static_cast<std::size_t>(endpoint_[mate_[v]]) > v)
                out.push_back(static_cast<std::size_t>(mate_[v] / 2));
        return out;
    }

    // Reduced cost of edge k including enclosing blossom duals; zero on every
    // edge that some maximum-weight matching can use.
    W reduced_cost(std::size_t k) const
    {
        const auto& e = g_.edges[k];
        W s = dualvar_[e.u] + dualvar_[e.v] - W(2) * e.weight;
        auto chain = [&](std::size_t v) {
            std::vector<int> c;
            for (int b = blossomparent_[v]; b != -1; b = blossomparent_[b]) c.push_back(b);
            return c;
        };
        auto ci = chain(e.u), cj = chain(e.v);
        auto ii = ci.rbegin();
        auto jj = cj.rbegin();
        while (ii != ci.rend() && jj != cj.rend() && *ii == *jj) {
            s += W(2) * dualvar_[*ii];
            ++ii;
            ++jj;
        }
        return s;
    }

private:
    W slack(int k) const
    {
        const auto& e = g_.edges[static_cast<std::size_t>(k)];
        return dualvar_[e.u] + dualvar_[e.v] - W(2) * e.weight;
    }

    template <class F>
    void for_leaves(int b, F&& f) const
    {
        if (b < static_cast<int>(n_)) {
            f(b);
            return;
        }
        for (int t : blossomchilds_[b]) for_leaves(t, f);
    }

    static int wrap(int j, int len) { return ((j % len) + len) % len; }

    void assign_label(int w, int t, int p)
    {
        int b = inblossom_[w];
        label_[w] = label_[b] = t;
        labelend_[w] = labelend_[b] = p;
        bestedge_[w] = bestedge_[b] = -1;
        if (t == 1) {
            for_leaves(b, [&](int v) { queue_.push_back(v); });
        } else if (t == 2) {
            int base = blossombase_[b];
            if (mate_[base] < 0) throw internal_error("blossom: T-labelled base is unmatched");
            assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
        }
    }

    int scan_blossom(int v, int w)
    {
        std::vector<int> path;
        int base = -1;
        while (v != -1 || w != -1) {
            int b = inblossom_[v];
            if (label_[b] & 4) {
                base = blossombase_[b];
                break;
            }
            path.push_back(b);
            label_[b] = 5;
            if (labelend_[b] == -1) {
                v = -1;
            } else {
                v = endpoint_[labelend_[b]];
                b = inblossom_[v];
                v = endpoint_[labelend_[b]];
            }
            if (w != -1) std::swap(v, w);
        }
        for (int b : path) label_[b] = 1;
        return base;
    }

    void add_blossom(int base, int k)
    {
        int v = endpoint_[2 * k], w = endpoint_[2 * k + 1];
        int bb = inblossom_[base], bv = inblossom_[v], bw = inblossom_[w];
        if (unused_.empty()) throw internal_error("blossom: out of blossom slots");
        int b = unused_.back();
        unused_.pop_back();
        blossombase_[b] = base;
        blossomparent_[b] = -1;
        blossomparent_[bb] = b;
        auto& path = blossomchilds_[b];
        auto& endps = blossomendps_[b];
        path.clear();
        endps.clear();
        while (bv != bb) {
            blossomparent_[bv] = b;
            path.push_back(bv);
            endps.push_back(labelend_[bv]);
            v = endpoint_[labelend_[bv]];
            bv = inblossom_[v];
        }
        path.push_back(bb);
        std::reverse(path.begin(), path.end());
        std::reverse(endps.begin(), endps.end());
        endps.push_back(2 * k);
        while (bw != bb) {
            blossomparent_[bw] = b;
            path.push_back(bw);
            endps.push_back(labelend_[bw] ^ 1);
            w = endpoint_[labelend_[bw]];
            bw = inblossom_[w];
        }
        label_[b] = 1;
        labelend_[b] = labelend_[bb];
        dualvar_[b] = W{};
        for_leaves(b, [&](int x) {
            if (label_[inblossom_[x]] == 2) queue_.push_back(x);
            inblossom_[x] = b;
        });

        std::vector<int> bestedgeto(2 * n_, -1);
        auto consider = [&](int kk) {
            int i = endpoint_[2 * kk], j = endpoint_[2 * kk + 1];
            if (inblossom_[j] == b) std::swap(i, j);
            int bj = inblossom_[j];
            if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj])))
                bestedgeto[bj] = kk;
        };
        for (int sub : path) {
            if (!has_bestlist_[sub]) {
                for_leaves(sub, [&](int x) {
                    for (int p : neighbend_[x]) consider(p / 2);
                });
            } else {
                for (int kk : blossombestedges_[sub]) consider(kk);
            }
            blossombestedges_[sub].clear();
            has_bestlist_[sub] = 0;
            bestedge_[sub] = -1;
        }
        auto& list = blossombestedges_[b];
        list.clear();
        for (int kk : bestedgeto)
            if (kk != -1) list.push_back(kk);
        has_bestlist_[b] = 1;
        bestedge_[b] = -1;
        for (int kk : list)
            if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
    }

    void expand_blossom(int b, bool endstage)
    {
        const auto childs = blossomchilds_[b];
        for (int s : childs) {
            blossomparent_[s] = -1;
            if (s < static_cast<int>(n_)) {
                inblossom_[s] = s;
            } else if (endstage && dualvar_[s] == W{}) {
                expand_blossom(s, endstage);
            } else {
                for_leaves(s, [&](int x) { inblossom_[x] = s; });
            }
        }
        if (!endstage && label_[b] == 2) {
            const auto& endps = blossomendps_[b];
            const int len = static_cast<int>(childs.size());
            int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
            int j = static_cast<int>(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
            int jstep, endptrick;
            if (j & 1) {
                j -= len;
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            int p = labelend_[b];
            while (j != 0) {
                label_[endpoint_[p ^ 1]] = 0;
                label_[endpoint_[endps[wrap(j - endptrick, len)] ^ endptrick ^ 1]] = 0;
                assign_label(endpoint_[p ^ 1], 2, p);
                allowedge_[endps[wrap(j - endptrick, len)] / 2] = 1;
                j += jstep;
                p = endps[wrap(j - endptrick, len)] ^ endptrick;
                allowedge_[p / 2] = 1;
                j += jstep;
            }
            int bv = childs[wrap(j, len)];
            label_[endpoint_[p ^ 1]] = label_[bv] = 2;
            labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
            bestedge_[bv] = -1;
            j += jstep;
            while (childs[wrap(j, len)] != entrychild) {
                bv = childs[wrap(j, len)];
                if (label_[bv] == 1) {
                    j += jstep;
                    continue;
                }
                int found = -1;
                for_leaves(bv, [&](int x) {
                    if (found == -1 && label_[x] != 0) found = x;
                });
                if (found != -1) {
                    label_[found] = 0;
                    label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
                    assign_label(found, 2, labelend_[found]);
                }
                j += jstep;
            }
        }
        label_[b] = labelend_[b] = -1;
        blossomchilds_[b].clear();
        blossomendps_[b].clear();
        blossombase_[b] = -1;
        blossombestedges_[b].clear();
        has_bestlist_[b] = 0;
        bestedge_[b] = -1;
        unused_.push_back(b);
    }

    void augment_blossom(int b, int v)
    {
        int t = v;
        while (blossomparent_[t] != b) t = blossomparent_[t];
        if (t >= static_cast<int>(n_)) augment_blossom(t, v);
        auto& childs = blossomchilds_[b];
        auto& endps = blossomendps_[b];
        const int len = static_cast<int>(childs.size());
        int i = static_cast<int>(std::find(childs.begin(), childs.end(), t) - childs.begin());
        int j = i;
        int jstep, endptrick;
        if (i & 1) {
            j -= len;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        while (j != 0) {
            j += jstep;
            t = childs[wrap(j, len)];
            int p = endps[wrap(j - endptrick, len)] ^ endptrick;
            if (t >= static_cast<int>(n_)) augment_blossom(t, endpoint_[p]);
            j += jstep;
            t = childs[wrap(j, len)];
            if (t >= static_cast<int>(n_)) augment_blossom(t, endpoint_[p ^ 1]);
            mate_[endpoint_[p]] = p ^ 1;
            mate_[endpoint_[p ^ 1]] = p;
        }
        std::rotate(childs.begin(), childs.begin() + i, childs.end());
        std::rotate(endps.begin(), endps.begin() + i, endps.end());
        blossombase_[b] = blossombase_[childs[0]];
    }

    void augment_matching(int k)
    {
        int v = endpoint_[2 * k], w = endpoint_[2 * k + 1];
        const std::pair<int, int> starts[2] = {{v, 2 * k + 1}, {w, 2 * k}};
        for (auto [s, p] : starts) {
            for (;;) {
                int bs = inblossom_[s];
                if (bs >= static_cast<int>(n_)) augment_blossom(bs, s);
                mate_[s] = p;
                if (labelend_[bs] == -1) break;
                int t = endpoint_[labelend_[bs]];
                int bt = inblossom_[t];
                s = endpoint_[labelend_[bt]];
                int j = endpoint_[labelend_[bt] ^ 1];
                if (bt >= static_cast<int>(n_)) augment_blossom(bt, j);
                mate_[j] = labelend_[bt];
                p = labelend_[bt] ^ 1;
            }
        }
    }

    const WeightedGraph<W>& g_;
    std::size_t n_, m_;
    const std::vector<char>& active_;
    W eps_{};
    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_, label_, labelend_, inblossom_, blossomparent_, blossombase_, bestedge_;
    std::vector<std::vector<int>> blossomchilds_, blossomendps_, blossombestedges_;
    std::vector<char> has_bestlist_;
    std::vector<int> unused_;
    std::vector<W> dualvar_;
    std::vector<char> allowedge_;
    std::vector<int> queue_;
};

// Solve on the sub-graph of active edges with the given vertices removed.
template <class W>
std::vector<std::size_t> solve_restricted(const WeightedGraph<W>& g, std::vector<char> active,
                                          const std::vector<char>& removed)
{
    for (std::size_t k = 0; k < g.edges.size(); ++k)
        if (removed[g.edges[k].u] || removed[g.edges[k].v]) active[k] = 0;
    Blossom<W> b(g, active);
    b.run();
    return b.matched_edges();
}

}  // namespace detail

template <class W>
Matching<W> max_weight_matching(const WeightedGraph<W>& g)
{
    validate_graph(g);
    Matching<W> result;
    const std::size_t m = g.edges.size();
    if (m == 0) return result;

    std::vector<char> active(m, 1);
    detail::Blossom<W> solver(g, active);
    solver.run();
    std::vector<std::size_t> current = solver.matched_edges();
    const W opt = detail::weight_of(g, current, nullptr);

    // Edges with zero reduced cost are the only ones any optimum can use.
    W tol{};
    if constexpr (std::is_floating_point_v<W>) {
        W maxw{};
        for (const auto& e : g.edges) maxw = std::max(maxw, e.weight);
        tol = W(1e-9) * std::max(W(1), maxw);
    }
    std::vector<std::size_t> tight;
    for (std::size_t k = 0; k < m; ++k)
        if (solver.reduced_cost(k) <= tol) tight.push_back(k);
    for (auto k : current)
        if (std::find(tight.begin(), tight.end(), k) == tight.end()) tight.push_back(k);
    auto key = [&](std::size_t k) {
        const auto& e = g.edges[k];
        return std::pair{std::min(e.u, e.v), std::max(e.u, e.v)};
    };
    std::sort(tight.begin(), tight.end(), [&](auto a, auto b) { return key(a) < key(b); });

    // Greedy lexicographic canonicalisation: keep the smallest edge that some
    // optimum (consistent with earlier choices) contains.
    std::vector<std::size_t> forced;
    std::vector<char> removed(g.n_vertices, 0);
    std::vector<char> allowed(m, 0);
    for (auto k : tight) allowed[k] = 1;
    for (auto k : tight) {
        const auto& e = g.edges[k];
        if (removed[e.u] || removed[e.v]) continue;
        if (std::find(current.begin(), current.end(), k) != current.end()) {
            forced.push_back(k);
            removed[e.u] = removed[e.v] = 1;
            continue;
        }
        auto trial_removed = removed;
        trial_removed[e.u] = trial_removed[e.v] = 1;
        auto rest = detail::solve_restricted(g, allowed, trial_removed);
        std::vector<std::size_t> cand = forced;
        cand.push_back(k);
        cand.insert(cand.end(), rest.begin(), rest.end());
        if (detail::weight_equal(detail::weight_of(g, cand, nullptr), opt)) {
            current = cand;
            forced.push_back(k);
            removed = trial_removed;
        } else {
            allowed[k] = 0;
        }
    }
    result.weight = detail::weight_of(g, current, &result.edges);
    return result;
}

// Exhaustive search with the same lexicographic tie rule. Test oracle only.
template <class W>
Matching<W> brute_force_matching(const WeightedGraph<W>& g)
{
    validate_graph(g);
    if (g.n_vertices > 12) throw invalid_input("brute_force_matching: more than 12 vertices");
    const std::size_t n = g.n_vertices;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);  // (other, edge)
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        adj[g.edges[k].u].push_back({g.edges[k].v, k});
        adj[g.edges[k].v].push_back({g.edges[k].u, k});
    }
    std::vector<std::vector<std::size_t>> all;
    std::vector<std::size_t> chosen;
    std::vector<char> used(n, 0);
    auto rec = [&](auto&& self, std::size_t v) -> void {
        while (v < n && used[v]) ++v;
        if (v == n) {
            all.push_back(chosen);
            return;
        }
        used[v] = 1;
        self(self, v + 1);
        for (auto [w, k] : adj[v]) {
            if (used[w]) continue;
            used[w] = 1;
            chosen.push_back(k);
            self(self, v + 1);
            chosen.pop_back();
            used[w] = 0;
        }
        used[v] = 0;
    };
    rec(rec, 0);

    W best{};
    for (const auto& mset : all) best = std::max(best, detail::weight_of(g, mset, nullptr));
    Matching<W> result;
    bool have = false;
    for (const auto& mset : all) {
        Matching<W> cand;
        cand.weight = detail::weight_of(g, mset, &cand.edges);
        if (!detail::weight_equal(cand.weight, best)) continue;
        if (!have || cand.edges < result.edges) {
            result = std::move(cand);
            have = true;
        }
    }
    return result;
}

}  // namespace noma
