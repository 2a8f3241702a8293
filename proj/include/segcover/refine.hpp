#pragma once

// Local improvement of a two-drone plan by cutting a heavy tour in two or
// enlarging a light tour at the expense of an adjacent heavy tour.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "segcover/core.hpp"

namespace segcover {

enum class MoveKind { Cut, Enlarge };

inline const char* to_string(MoveKind k)
{
    return k == MoveKind::Cut ? "cut" : "enlarge";
}

struct Move {
    MoveKind kind = MoveKind::Cut;
    std::size_t heavy = 1;       ///< drone losing load
    std::size_t light = 0;       ///< drone gaining load
    std::size_t heavy_tour = 0;  ///< index into plan.drones[heavy]
    std::size_t light_tour = 0;  ///< index into plan.drones[light] (enlarge only)
    double r = 0.0;              ///< split point
    double makespan_after = 0.0;
    Plan after;
};

/// Restricts split points to a sorted grid (e.g. discretization waypoints)
/// when set; otherwise split points are continuous.
struct RefineOptions {
    const std::vector<double>* grid = nullptr;
};

namespace detail {

// Largest r in [a, b] with pred(r) true, pred monotone (true then false).
// The second value is the smallest point known to be false, if any.
struct Boundary {
    std::optional<double> last_true;
    std::optional<double> first_false;
};

inline Boundary find_boundary(const std::function<bool(double)>& pred, double a, double b,
                              const RefineOptions& opt)
{
    Boundary out;
    if (opt.grid) {
        const auto& g = *opt.grid;
        auto lo = std::lower_bound(g.begin(), g.end(), a - kTol);
        auto hi = std::upper_bound(g.begin(), g.end(), b + kTol);
        auto first_false = std::partition_point(lo, hi, pred);
        if (first_false != lo)
            out.last_true = *(first_false - 1);
        if (first_false != hi)
            out.first_false = *first_false;
        return out;
    }
    if (!pred(a)) {
        out.first_false = a;
        return out;
    }
    if (pred(b)) {
        out.last_true = b;
        return out;
    }
    double lo = a;
    double hi = b;
    while (hi - lo > 1e-10) {
        double mid = 0.5 * (lo + hi);
        (pred(mid) ? lo : hi) = mid;
    }
    out.last_true = lo;
    out.first_false = hi;
    return out;
}

inline std::optional<Tour> piece(const Instance& inst, double p, double q)
{
    auto hull = covered_hull(inst, p, q);
    // Pieces narrower than the tolerance cover nothing the neighbouring piece does not.
    if (!hull || hull->second - hull->first <= 0.5 * kTol)
        return std::nullopt;
    return make_tour(inst.base, hull->first, hull->second);
}

inline double piece_length(const Instance& inst, double p, double q)
{
    auto t = piece(inst, p, q);
    return t ? t->length : 0.0;
}

inline std::pair<std::size_t, std::size_t> heavy_light(const Plan& plan)
{
    double l0 = drone_load(plan.drones[0]);
    double l1 = drone_load(plan.drones[1]);
    return l1 >= l0 ? std::make_pair<std::size_t, std::size_t>(1, 0) : std::make_pair<std::size_t, std::size_t>(0, 1);
}

inline Plan replace_tours(const Plan& plan, std::size_t heavy, std::size_t heavy_tour,
                          std::vector<Tour> heavy_new, std::size_t light,
                          std::optional<std::size_t> light_tour, std::vector<Tour> light_new)
{
    auto drones = plan.drones;
    auto& h = drones[heavy];
    h.erase(h.begin() + static_cast<std::ptrdiff_t>(heavy_tour));
    h.insert(h.end(), heavy_new.begin(), heavy_new.end());
    auto& l = drones[light];
    if (light_tour)
        l.erase(l.begin() + static_cast<std::ptrdiff_t>(*light_tour));
    l.insert(l.end(), light_new.begin(), light_new.end());
    return make_plan(std::move(drones));
}

} // namespace detail

/// Cut candidates: a heavy-drone tour BxyB with 2 min(d(B,x), d(B,y)) below
/// the load gap is split at r so that one piece moves to the light drone.
/// r balances the two loads where possible; only improving moves are returned.
inline std::vector<Move> find_cut_moves(const Plan& plan, const Instance& inst, const RefineOptions& opt = {})
{
    std::vector<Move> moves;
    if (plan.drones.size() != 2)
        return moves;
    auto [heavy, light] = detail::heavy_light(plan);
    const double lh = drone_load(plan.drones[heavy]);
    const double ll = drone_load(plan.drones[light]);
    const double gap = lh - ll;
    const double improve_tol = kTol * std::max(1.0, lh);
    if (gap <= improve_tol)
        return moves;

    const auto& tours = plan.drones[heavy];
    for (std::size_t i = 0; i < tours.size(); ++i) {
        const Tour& t = tours[i];
        double x = t.p;
        double y = t.q;
        if (2.0 * std::min(base_distance(inst.base, x), base_distance(inst.base, y)) >= gap)
            continue;

        std::optional<Move> best;
        for (bool left_to_light : {true, false}) {
            auto loads = [&](double r) {
                double left = detail::piece_length(inst, x, r);
                double right = detail::piece_length(inst, r, y);
                double to_light = left_to_light ? left : right;
                double stay = left_to_light ? right : left;
                return std::make_pair(ll + to_light, lh - t.length + stay);
            };
            // Predicate "the drone whose load grows with r is still the lighter one".
            auto pred = [&](double r) {
                auto [l_new, h_new] = loads(r);
                return left_to_light ? l_new <= h_new : h_new <= l_new;
            };
            auto b = detail::find_boundary(pred, x, y, opt);
            // r = x or r = y hands the whole tour over.
            for (std::optional<double> r : {b.last_true, b.first_false, std::optional<double>(x), std::optional<double>(y)}) {
                if (!r)
                    continue;
                auto lp = detail::piece(inst, x, *r);
                auto rp = detail::piece(inst, *r, y);
                if (!(left_to_light ? lp : rp))
                    continue;
                auto [l_new, h_new] = loads(*r);
                double ms = std::max(l_new, h_new);
                if (ms >= lh - improve_tol)
                    continue;
                if (best && ms >= best->makespan_after)
                    continue;
                Move m;
                m.kind = MoveKind::Cut;
                m.heavy = heavy;
                m.light = light;
                m.heavy_tour = i;
                m.r = *r;
                m.makespan_after = ms;
                const auto& to_light = left_to_light ? lp : rp;
                const auto& stay = left_to_light ? rp : lp;
                std::vector<Tour> heavy_new;
                if (stay)
                    heavy_new.push_back(*stay);
                m.after = detail::replace_tours(plan, heavy, i, std::move(heavy_new), light, std::nullopt, {*to_light});
                best = std::move(m);
            }
        }
        if (best)
            moves.push_back(std::move(*best));
    }
    return moves;
}

/// Enlarge candidates: a light-drone tour below budget sharing an endpoint
/// with a heavy-drone tour absorbs part of it, up to the budget, the
/// balance point or the whole heavy tour, whichever comes first.
inline std::vector<Move> find_enlarge_moves(const Plan& plan, const Instance& inst, const RefineOptions& opt = {})
{
    std::vector<Move> moves;
    if (plan.drones.size() != 2)
        return moves;
    auto [heavy, light] = detail::heavy_light(plan);
    const double lh = drone_load(plan.drones[heavy]);
    const double ll = drone_load(plan.drones[light]);
    const double improve_tol = kTol * std::max(1.0, lh);
    if (lh - ll <= improve_tol)
        return moves;
    const double L = inst.budget_L;
    const auto& H = plan.drones[heavy];
    const auto& Lt = plan.drones[light];

    // Grid mirrored for the leftward search.
    std::vector<double> mirrored;
    RefineOptions mopt;
    if (opt.grid) {
        mirrored.reserve(opt.grid->size());
        for (auto it = opt.grid->rbegin(); it != opt.grid->rend(); ++it)
            mirrored.push_back(-*it);
        mopt.grid = &mirrored;
    }

    for (std::size_t li = 0; li < Lt.size(); ++li) {
        const Tour& t1 = Lt[li];
        if (t1.length >= L - kTol)
            continue;
        for (std::size_t hi = 0; hi < H.size(); ++hi) {
            const Tour& t2 = H[hi];
            bool rightward = std::abs(t2.p - t1.q) <= kTol && t2.q > t1.q;
            bool leftward = std::abs(t2.q - t1.p) <= kTol && t2.p < t1.p;
            if (!rightward && !leftward)
                continue;

            // s is the split point in the direction of growth: r = s (right) or r = -s (left).
            auto light_piece = [&](double r) {
                return rightward ? detail::piece(inst, t1.p, r) : detail::piece(inst, r, t1.q);
            };
            auto heavy_piece = [&](double r) -> std::optional<Tour> {
                if (rightward)
                    return r >= t2.q - kTol ? std::nullopt : detail::piece(inst, r, t2.q);
                return r <= t2.p + kTol ? std::nullopt : detail::piece(inst, t2.p, r);
            };
            auto loads = [&](double r) {
                auto lp = light_piece(r);
                auto hp = heavy_piece(r);
                return std::make_pair(ll - t1.length + (lp ? lp->length : 0.0),
                                      lh - t2.length + (hp ? hp->length : 0.0));
            };

            double start = rightward ? t1.q : -t1.p;
            double stop;
            if (rightward) {
                auto reach = reach_forward(inst.base, L, t1.p);
                stop = std::min(t2.q, reach ? *reach : t1.q);
            } else {
                auto reach = reach_backward(inst.base, L, t1.q);
                stop = -std::max(t2.p, reach ? *reach : t1.p);
            }
            if (stop <= start)
                continue;
            auto pred = [&](double s) {
                double r = rightward ? s : -s;
                auto lp = light_piece(r);
                if (lp && lp->length > L + kTol)
                    return false;
                auto [l_new, h_new] = loads(r);
                return l_new <= h_new;
            };
            auto b = detail::find_boundary(pred, start, stop, rightward ? opt : mopt);
            if (!b.last_true || *b.last_true <= start + 1e-12 * std::max(1.0, std::abs(start)))
                continue;
            double r = rightward ? *b.last_true : -*b.last_true;
            auto lp = light_piece(r);
            if (!lp)
                continue;
            auto [l_new, h_new] = loads(r);
            double ms = std::max(l_new, h_new);
            if (ms >= lh - improve_tol)
                continue;

            Move m;
            m.kind = MoveKind::Enlarge;
            m.heavy = heavy;
            m.light = light;
            m.heavy_tour = hi;
            m.light_tour = li;
            m.r = r;
            m.makespan_after = ms;
            std::vector<Tour> heavy_new;
            if (auto hp = heavy_piece(r))
                heavy_new.push_back(*hp);
            m.after = detail::replace_tours(plan, heavy, hi, std::move(heavy_new), light, li, {*lp});
            moves.push_back(std::move(m));
        }
    }
    return moves;
}

/// Pairs (light tour below budget, heavy tour sharing an endpoint); the
/// quantity bounding the number of improvement rounds.
inline std::size_t count_enlarge_candidates(const Plan& plan, const Instance& inst)
{
    if (plan.drones.size() != 2)
        return 0;
    auto [heavy, light] = detail::heavy_light(plan);
    std::size_t n = 0;
    for (const auto& t1 : plan.drones[light]) {
        if (t1.length >= inst.budget_L - kTol)
            continue;
        for (const auto& t2 : plan.drones[heavy])
            if (std::abs(t2.p - t1.q) <= kTol || std::abs(t2.q - t1.p) <= kTol)
                ++n;
    }
    return n;
}

struct MoveRecord {
    MoveKind kind;
    double r;
    double makespan_after;
};

struct RefineResult {
    Plan plan;
    std::vector<MoveRecord> log;
    std::size_t initial_enlarge_candidates = 0;
};

/// Repeatedly applies the best move (largest makespan decrease; ties prefer
/// cuts, then the lowest tour index) until the loads balance or no move helps.
inline RefineResult improve(const Plan& plan, const Instance& inst, const RefineOptions& opt = {})
{
    RefineResult res;
    res.plan = plan;
    if (plan.drones.size() != 2)
        return res;
    res.initial_enlarge_candidates = count_enlarge_candidates(plan, inst);
    const double balance_tol = 1e-7 * inst.budget_L;
    // Each move lowers the makespan; the cap only guards against pathological inputs.
    const std::size_t max_rounds = 4 * (plan.drones[0].size() + plan.drones[1].size()) + 8;
    for (std::size_t round = 0; round < max_rounds; ++round) {
        double l0 = drone_load(res.plan.drones[0]);
        double l1 = drone_load(res.plan.drones[1]);
        if (std::abs(l0 - l1) <= balance_tol)
            break;
        auto moves = find_cut_moves(res.plan, inst, opt);
        auto enlarge = find_enlarge_moves(res.plan, inst, opt);
        moves.insert(moves.end(), std::make_move_iterator(enlarge.begin()), std::make_move_iterator(enlarge.end()));
        if (moves.empty())
            break;
        const Move* best = &moves.front();
        for (const auto& m : moves)
            if (m.makespan_after < best->makespan_after - kTol)
                best = &m;
        res.log.push_back({best->kind, best->r, best->makespan_after});
        res.plan = best->after;
    }
    return res;
}

} // namespace segcover
