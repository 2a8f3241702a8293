#pragma once

// Geometry and data model for covering collinear segments with closed
// base -> p -> q -> base tours of bounded length.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace segcover {

/// Comparison tolerance for lengths and coverage.
inline constexpr double kTol = 1e-9;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BasePoint {
    double x = 0.0;
    double y = -1.0;

    friend bool operator==(const BasePoint&, const BasePoint&) = default;
};

struct Segment {
    double left = 0.0;
    double right = 0.0;

    double length() const { return right - left; }
    bool contains(double v, double tol = kTol) const { return v >= left - tol && v <= right + tol; }

    friend bool operator==(const Segment&, const Segment&) = default;
};

/// Segments are sorted by left endpoint and pairwise disjoint.
struct Instance {
    BasePoint base;
    double budget_L = 0.0;
    std::vector<Segment> segments;

    friend bool operator==(const Instance&, const Instance&) = default;
};

/// A closed trip base -> p -> q -> base; `length` is cached.
struct Tour {
    double p = 0.0;
    double q = 0.0;
    double length = 0.0;

    friend bool operator==(const Tour&, const Tour&) = default;
};

struct Plan {
    std::vector<std::vector<Tour>> drones;
    double makespan = 0.0;
    double total_length = 0.0;
};

inline double base_distance(const BasePoint& base, double x)
{
    return std::hypot(x - base.x, base.y);
}

inline double tour_length(const BasePoint& base, double p, double q)
{
    if (!std::isfinite(p) || !std::isfinite(q) || !std::isfinite(base.x) || !std::isfinite(base.y))
        throw Error("tour_length: non-finite input");
    if (p > q)
        throw Error("tour_length: entry point after exit point");
    return base_distance(base, p) + (q - p) + base_distance(base, q);
}

inline Tour make_tour(const BasePoint& base, double p, double q)
{
    return Tour{p, q, tour_length(base, p, q)};
}

/// Validates the instance invariants, sorting segments first. Throws on overlap.
inline Instance make_instance(BasePoint base, double budget_L, std::vector<Segment> segments)
{
    if (!std::isfinite(base.x) || !std::isfinite(base.y))
        throw Error("instance: base coordinates must be finite");
    if (base.y == 0.0)
        throw Error("instance: base must lie off the segment line (y != 0)");
    if (!std::isfinite(budget_L) || budget_L <= 0.0)
        throw Error("instance: budget L must be a positive finite number");
    for (const auto& s : segments) {
        if (!std::isfinite(s.left) || !std::isfinite(s.right))
            throw Error("instance: segment endpoints must be finite");
        if (!(s.left < s.right))
            throw Error("instance: segment [" + std::to_string(s.left) + ", " + std::to_string(s.right) +
                        "] must have left < right");
    }
    std::sort(segments.begin(), segments.end(),
              [](const Segment& a, const Segment& b) { return a.left < b.left; });
    for (std::size_t i = 1; i < segments.size(); ++i) {
        if (segments[i].left <= segments[i - 1].right)
            throw Error("instance: segments " + std::to_string(i - 1) + " and " + std::to_string(i) +
                        " overlap or touch");
    }
    return Instance{base, budget_L, std::move(segments)};
}

/// Shifts coordinates so the base projects onto the origin.
inline Instance canonicalize(const Instance& inst)
{
    Instance out = inst;
    for (auto& s : out.segments) {
        s.left -= inst.base.x;
        s.right -= inst.base.x;
    }
    out.base.x = 0.0;
    return out;
}

/// True iff the farthest segment endpoint can be reached and left again within L.
inline bool is_feasible(const Instance& inst)
{
    if (inst.segments.empty())
        return true;
    double far = std::max(base_distance(inst.base, inst.segments.front().left),
                          base_distance(inst.base, inst.segments.back().right));
    return 2.0 * far <= inst.budget_L + kTol;
}

/// Index of the segment containing x (within tol), if any.
inline std::optional<std::size_t> segment_at(const Instance& inst, double x, double tol = kTol)
{
    const auto& segs = inst.segments;
    auto it = std::upper_bound(segs.begin(), segs.end(), x + tol,
                               [](double v, const Segment& s) { return v < s.left; });
    if (it == segs.begin())
        return std::nullopt;
    --it;
    if (x <= it->right + tol)
        return static_cast<std::size_t>(it - segs.begin());
    return std::nullopt;
}

/// Smallest interval containing [p, q] intersected with the segments.
inline std::optional<std::pair<double, double>> covered_hull(const Instance& inst, double p, double q)
{
    if (p > q)
        return std::nullopt;
    double lo = 0.0;
    double hi = 0.0;
    bool found = false;
    for (const auto& s : inst.segments) {
        if (s.right < p || s.left > q)
            continue;
        double a = std::max(s.left, p);
        double b = std::min(s.right, q);
        if (!found) {
            lo = a;
            found = true;
        }
        hi = b;
    }
    if (!found)
        return std::nullopt;
    return std::make_pair(lo, hi);
}

namespace detail {

// Solves d(p) + (q - p) + d(q) = L for q by bisection; f is increasing in q.
inline double reach_bisect(const BasePoint& base, double L, double p)
{
    double dp = base_distance(base, p);
    auto f = [&](double q) { return dp + (q - p) + base_distance(base, q) - L; };
    double lo = p;
    double hi = p + L;
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi)); ++it) {
        double mid = 0.5 * (lo + hi);
        (f(mid) <= 0.0 ? lo : hi) = mid;
    }
    return lo;
}

} // namespace detail

/// Farthest q >= p with tour_length(p, q) <= L, or nullopt when 2 d(B, p) > L.
inline std::optional<double> reach_forward(const BasePoint& base, double L, double p)
{
    double dp = base_distance(base, p);
    if (2.0 * dp > L + kTol)
        return std::nullopt;
    // d(q) + q = L - d(p) + p; with u = q - base.x this is sqrt(u^2 + h^2) = R - u.
    double h = base.y;
    double R = L - dp + (p - base.x);
    if (R > 1e-6 * L) {
        double u = (R * R - h * h) / (2.0 * R);
        double q = base.x + u;
        double residual = std::abs(dp + (q - p) + base_distance(base, q) - L);
        if (q >= p - kTol && residual <= 1e-9 * std::max(1.0, L))
            return std::max(q, p);
    }
    return std::max(detail::reach_bisect(base, L, p), p);
}

/// Smallest p <= q with tour_length(p, q) <= L (mirror of reach_forward).
inline std::optional<double> reach_backward(const BasePoint& base, double L, double q)
{
    BasePoint mirrored{-base.x, base.y};
    auto r = reach_forward(mirrored, L, -q);
    if (!r)
        return std::nullopt;
    return -*r;
}

inline double drone_load(const std::vector<Tour>& tours)
{
    double s = 0.0;
    for (const auto& t : tours)
        s += t.length;
    return s;
}

/// Sorts each drone's tours by entry point and recomputes the aggregates.
inline Plan make_plan(std::vector<std::vector<Tour>> drones)
{
    Plan plan;
    plan.drones = std::move(drones);
    for (auto& d : plan.drones) {
        std::sort(d.begin(), d.end(), [](const Tour& a, const Tour& b) {
            return a.p < b.p || (a.p == b.p && a.q < b.q);
        });
        double load = drone_load(d);
        plan.makespan = std::max(plan.makespan, load);
        plan.total_length += load;
    }
    return plan;
}

/// Maximal sub-intervals of the segments not covered by any tour, longer than tol.
inline std::vector<Segment> coverage_gaps(const Instance& inst, const Plan& plan, double tol = kTol)
{
    std::vector<std::pair<double, double>> cover;
    for (const auto& d : plan.drones)
        for (const auto& t : d)
            cover.emplace_back(t.p, t.q);
    std::sort(cover.begin(), cover.end());
    std::vector<std::pair<double, double>> merged;
    for (const auto& c : cover) {
        if (!merged.empty() && c.first <= merged.back().second + tol)
            merged.back().second = std::max(merged.back().second, c.second);
        else
            merged.push_back(c);
    }

    std::vector<Segment> gaps;
    std::size_t k = 0;
    for (const auto& s : inst.segments) {
        double cursor = s.left;
        while (k < merged.size() && merged[k].second < s.left)
            ++k;
        std::size_t j = k;
        while (cursor < s.right && j < merged.size() && merged[j].first <= s.right) {
            if (merged[j].first > cursor + tol)
                gaps.push_back({cursor, merged[j].first});
            cursor = std::max(cursor, merged[j].second);
            ++j;
        }
        if (s.right > cursor + tol)
            gaps.push_back({cursor, s.right});
    }
    return gaps;
}

/// Every tour fits the budget and its cached length matches the geometry.
inline bool tours_within_budget(const Instance& inst, const Plan& plan, double tol = kTol)
{
    for (const auto& d : plan.drones)
        for (const auto& t : d) {
            if (t.length > inst.budget_L + tol)
                return false;
            if (std::abs(t.length - tour_length(inst.base, t.p, t.q)) > tol * std::max(1.0, t.length))
                return false;
        }
    return true;
}

inline bool is_valid_plan(const Instance& inst, const Plan& plan, double tol = kTol)
{
    return coverage_gaps(inst, plan, tol).empty() && tours_within_budget(inst, plan, tol);
}

} // namespace segcover
