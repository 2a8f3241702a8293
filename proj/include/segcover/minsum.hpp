#pragma once

// Exact one-drone covers: minimum number of tours (greedy) and minimum total
// length (dynamic program over a candidate breakpoint set).

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "segcover/core.hpp"

namespace segcover {

/// Tours sorted by entry point, covering every segment, each within budget.
struct TourSet {
    std::vector<Tour> tours;
    double total_length = 0.0;
};

inline TourSet make_tour_set(std::vector<Tour> tours)
{
    std::sort(tours.begin(), tours.end(), [](const Tour& a, const Tour& b) { return a.p < b.p; });
    TourSet ts;
    ts.total_length = drone_load(tours);
    ts.tours = std::move(tours);
    return ts;
}

/// Minimum-cardinality cover: each tour starts at the leftmost uncovered point
/// and runs as far as the budget allows.
inline TourSet solve_mintour(const Instance& inst)
{
    if (!is_feasible(inst))
        throw Error("mintour: infeasible instance (farthest endpoint out of reach)");
    std::vector<Tour> tours;
    const auto& segs = inst.segments;
    if (segs.empty())
        return {};
    const double last = segs.back().right;
    std::size_t seg = 0;
    double p = segs.front().left;
    while (true) {
        auto reach = reach_forward(inst.base, inst.budget_L, p);
        if (!reach)
            throw Error("mintour: point out of reach");
        double q = *reach;
        if (q >= last - kTol) {
            tours.push_back(make_tour(inst.base, p, last));
            break;
        }
        auto at = segment_at(inst, q, 0.0);
        if (!at) {
            // The tour ends in a gap: shrink it to the last covered point.
            auto next = std::upper_bound(segs.begin(), segs.end(), q,
                                         [](double v, const Segment& s) { return v < s.left; });
            std::size_t nidx = static_cast<std::size_t>(next - segs.begin());
            tours.push_back(make_tour(inst.base, p, segs[nidx - 1].right));
            seg = nidx;
            p = segs[seg].left;
            continue;
        }
        if (*at == seg && q - p <= 1e-12 * std::max(1.0, std::abs(p)))
            throw Error("mintour: budget too tight to make progress near x = " + std::to_string(p));
        tours.push_back(make_tour(inst.base, p, q));
        seg = *at;
        p = q;
    }
    return make_tour_set(std::move(tours));
}

namespace detail {

struct Candidate {
    double x = 0.0;
    std::size_t seg = 0;
    bool left_end = false;
    bool right_end = false;
};

inline void add_candidate(std::vector<Candidate>& out, const Instance& inst, double x)
{
    auto at = segment_at(inst, x);
    if (!at)
        return;
    const auto& s = inst.segments[*at];
    out.push_back({std::clamp(x, s.left, s.right), *at, false, false});
}

inline std::vector<Candidate> normalize_candidates(const Instance& inst, std::vector<Candidate> cands)
{
    for (std::size_t i = 0; i < inst.segments.size(); ++i) {
        cands.push_back({inst.segments[i].left, i, true, false});
        cands.push_back({inst.segments[i].right, i, false, true});
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.x != b.x)
            return a.x < b.x;
        return (a.left_end || a.right_end) > (b.left_end || b.right_end);
    });
    std::vector<Candidate> out;
    for (const auto& c : cands) {
        if (!out.empty() && out.back().seg == c.seg &&
            std::abs(out.back().x - c.x) <= 1e-12 * std::max(1.0, std::abs(c.x))) {
            out.back().left_end |= c.left_end;
            out.back().right_end |= c.right_end;
            continue;
        }
        out.push_back(c);
    }
    return out;
}

// Dynamic program: best[c] is the cheapest cover of everything up to
// candidate c whose last tour ends exactly at c.
inline TourSet cover_dp(const Instance& inst, const std::vector<Candidate>& cands)
{
    const std::size_t n = cands.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n);
    for (std::size_t i = 0; i < n; ++i)
        dist[i] = base_distance(inst.base, cands[i].x);

    std::vector<std::size_t> right_index(inst.segments.size(), 0);
    for (std::size_t i = 0; i < n; ++i)
        if (cands[i].right_end)
            right_index[cands[i].seg] = i;

    std::vector<double> best(n, inf);
    std::vector<std::size_t> count(n, 0);
    std::vector<std::size_t> from(n, n);
    const double limit = inst.budget_L + kTol;

    auto before = [&](std::size_t s, std::size_t& cnt) -> double {
        const auto& c = cands[s];
        if (c.left_end) {
            if (c.seg == 0) {
                cnt = 0;
                return 0.0;
            }
            std::size_t r = right_index[c.seg - 1];
            cnt = count[r];
            return best[r];
        }
        cnt = count[s];
        return best[s];
    };

    for (std::size_t c = 1; c < n; ++c) {
        // tour_length(s, c) decreases in s, so feasible starts form a suffix.
        std::size_t lo = c;
        while (lo > 0 && dist[lo - 1] + (cands[c].x - cands[lo - 1].x) + dist[c] <= limit)
            --lo;
        for (std::size_t s = lo; s < c; ++s) {
            std::size_t cnt = 0;
            double prev = before(s, cnt);
            if (prev == inf)
                continue;
            double cost = prev + dist[s] + (cands[c].x - cands[s].x) + dist[c];
            ++cnt;
            if (cost < best[c] - kTol || (cost <= best[c] + kTol && cnt < count[c])) {
                best[c] = cost;
                count[c] = cnt;
                from[c] = s;
            }
        }
    }

    std::size_t end = right_index.back();
    if (best[end] == inf)
        throw Error("minsum: no covering tour set within budget");

    std::vector<Tour> tours;
    std::size_t c = end;
    while (true) {
        std::size_t s = from[c];
        tours.push_back(make_tour(inst.base, cands[s].x, cands[c].x));
        const auto& sc = cands[s];
        if (sc.left_end) {
            if (sc.seg == 0)
                break;
            c = right_index[sc.seg - 1];
        } else {
            c = s;
        }
    }
    return make_tour_set(std::move(tours));
}

} // namespace detail

/// Breakpoint candidates: segment endpoints, the base projection, the
/// endpoints of the widest budget-L tour centred on the projection, and
/// chains of budget-L tours propagated both ways from each of those.
inline std::vector<double> minsum_candidates(const Instance& inst)
{
    if (inst.segments.empty())
        return {};
    const double L = inst.budget_L;
    const double h = std::abs(inst.base.y);
    std::size_t chain = solve_mintour(inst).tours.size() + 1;

    std::vector<double> anchors;
    for (const auto& s : inst.segments) {
        anchors.push_back(s.left);
        anchors.push_back(s.right);
    }
    anchors.push_back(inst.base.x);
    double w = (L * L / 4.0 - h * h) / L;
    if (w > 0.0) {
        anchors.push_back(inst.base.x - w);
        anchors.push_back(inst.base.x + w);
    }

    const double first = inst.segments.front().left;
    const double last = inst.segments.back().right;
    std::vector<double> out;
    for (double a : anchors) {
        if (!segment_at(inst, a))
            continue;
        out.push_back(a);
        double p = a;
        for (std::size_t i = 0; i < chain; ++i) {
            auto q = reach_forward(inst.base, L, p);
            if (!q || *q >= last - kTol || *q <= p || !segment_at(inst, *q))
                break;
            out.push_back(*q);
            p = *q;
        }
        double q = a;
        for (std::size_t i = 0; i < chain; ++i) {
            auto p2 = reach_backward(inst.base, L, q);
            if (!p2 || *p2 <= first + kTol || *p2 >= q || !segment_at(inst, *p2))
                break;
            out.push_back(*p2);
            q = *p2;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Minimum total length cover; ties go to fewer tours, then earlier breakpoints.
inline TourSet solve_minsum(const Instance& inst)
{
    if (!is_feasible(inst))
        throw Error("minsum: infeasible instance (farthest endpoint out of reach)");
    if (inst.segments.empty())
        return {};
    std::vector<detail::Candidate> cands;
    for (double x : minsum_candidates(inst))
        detail::add_candidate(cands, inst, x);
    return detail::cover_dp(inst, detail::normalize_candidates(inst, std::move(cands)));
}

/// Minimum total length cover with tour endpoints restricted to `grid`
/// (which must contain every segment endpoint).
inline TourSet solve_minsum_on_grid(const Instance& inst, const std::vector<double>& grid)
{
    if (inst.segments.empty())
        return {};
    std::vector<detail::Candidate> cands;
    for (double x : grid)
        detail::add_candidate(cands, inst, x);
    return detail::cover_dp(inst, detail::normalize_candidates(inst, std::move(cands)));
}

/// Deals tours to k drones in order: tour i goes to drone i mod k.
inline Plan distribute_round_robin(const TourSet& ts, std::size_t k)
{
    if (k == 0)
        throw Error("distribute_round_robin: k must be positive");
    std::vector<std::vector<Tour>> drones(k);
    for (std::size_t i = 0; i < ts.tours.size(); ++i)
        drones[i % k].push_back(ts.tours[i]);
    return make_plan(std::move(drones));
}

inline Plan single_drone_plan(const TourSet& ts)
{
    return make_plan({ts.tours});
}

} // namespace segcover
