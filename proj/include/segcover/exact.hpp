#pragma once

// Discretized k-drone makespan problem: waypoint sequence, MILP model with
// LP-format export, and an exact branch-and-bound solver.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "segcover/core.hpp"
#include "segcover/makespan.hpp"
#include "segcover/minsum.hpp"
#include "segcover/refine.hpp"

namespace segcover {

/// Waypoints a_1..a_n: segments stepped by delta, jumping from each right
/// vertex to the next left vertex. beta[i] = d(B, a_i).
struct DiscreteInstance {
    std::vector<double> points;
    std::vector<double> beta;
    std::vector<bool> is_right_vertex;
    std::vector<bool> is_left_vertex;
    double delta = 0.0;
    Instance source;

    std::size_t size() const { return points.size(); }
    double cost(std::size_t i, std::size_t j) const { return beta[i] + beta[j] + points[j] - points[i]; }
};

inline DiscreteInstance discretize(const Instance& inst, double delta)
{
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw Error("discretize: delta must be positive");
    DiscreteInstance d;
    d.delta = delta;
    d.source = inst;
    for (std::size_t s = 0; s < inst.segments.size(); ++s) {
        const auto& seg = inst.segments[s];
        double steps = seg.length() / delta;
        double count = std::round(steps);
        if (count < 1.0 || std::abs(count * delta - seg.length()) > 1e-9 * std::max(1.0, seg.length())) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "discretize: segment %zu [%.12g, %.12g] length is not a multiple of delta %.12g",
                          s, seg.left, seg.right, delta);
            throw Error(buf);
        }
        auto n = static_cast<std::size_t>(count);
        for (std::size_t i = 0; i <= n; ++i) {
            double x = i == n ? seg.right : seg.left + static_cast<double>(i) * delta;
            d.points.push_back(x);
            d.beta.push_back(base_distance(inst.base, x));
            d.is_left_vertex.push_back(i == 0);
            d.is_right_vertex.push_back(i == n);
        }
    }
    return d;
}

/// Moves every endpoint inward onto the global delta grid; segments that
/// vanish are an error.
inline Instance snap_inward(const Instance& inst, double delta)
{
    std::vector<Segment> segs;
    for (const auto& s : inst.segments) {
        double l = std::ceil(s.left / delta - 1e-9) * delta;
        double r = std::floor(s.right / delta + 1e-9) * delta;
        if (!(r > l))
            throw Error("snap_inward: a segment is shorter than delta");
        segs.push_back({l, r});
    }
    return make_instance(inst.base, inst.budget_L, std::move(segs));
}

// ---------------------------------------------------------------------------
// MILP model

struct LinearTerm {
    double coef = 1.0;
    std::string var;
};

struct Row {
    std::string name;
    std::vector<LinearTerm> terms;
    std::string sense;  // "<=", "=", ">="
    double rhs = 0.0;
};

/// min T subject to per-drone load rows, per-tour budget rows, linking rows
/// s_q^d = sum_{i <= q < j} z_ij^d and one cover row per required subinterval.
/// Only pairs i < j with c_ij <= L are instantiated.
struct MilpModel {
    std::size_t drones = 0;
    double budget_L = 0.0;
    std::size_t points = 0;
    std::size_t z_count = 0;
    std::size_t s_count = 0;
    std::vector<std::string> binaries;
    std::vector<Row> rows;
};

inline std::string z_name(std::size_t i, std::size_t j, std::size_t d)
{
    return "z_" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + "_" + std::to_string(d + 1);
}

inline std::string s_name(std::size_t r, std::size_t d)
{
    return "s_" + std::to_string(r + 1) + "_" + std::to_string(d + 1);
}

inline MilpModel build_model(const DiscreteInstance& disc, std::size_t k)
{
    if (k == 0)
        throw Error("build_model: number of drones must be positive");
    MilpModel m;
    m.drones = k;
    m.budget_L = disc.source.budget_L;
    m.points = disc.size();
    const std::size_t n = disc.size();
    const double limit = m.budget_L + kTol;

    struct Pair {
        std::size_t i, j;
        double c;
    };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (disc.cost(i, j) <= limit)
                pairs.push_back({i, j, disc.cost(i, j)});
    std::vector<std::size_t> required;
    for (std::size_t r = 0; r + 1 < n; ++r)
        if (!disc.is_right_vertex[r])
            required.push_back(r);

    m.z_count = pairs.size() * k;
    m.s_count = required.size() * k;

    for (std::size_t d = 0; d < k; ++d) {
        if (pairs.empty())
            break;
        Row load{"load_" + std::to_string(d + 1), {}, "<=", 0.0};
        for (const auto& p : pairs)
            load.terms.push_back({p.c, z_name(p.i, p.j, d)});
        load.terms.push_back({-1.0, "T"});
        m.rows.push_back(std::move(load));
    }
    for (std::size_t d = 0; d < k; ++d)
        for (const auto& p : pairs)
            m.rows.push_back({"len_" + std::to_string(p.i + 1) + "_" + std::to_string(p.j + 1) + "_" + std::to_string(d + 1),
                              {{p.c, z_name(p.i, p.j, d)}},
                              "<=",
                              m.budget_L});
    for (std::size_t d = 0; d < k; ++d)
        for (std::size_t q : required) {
            Row link{"link_" + std::to_string(q + 1) + "_" + std::to_string(d + 1), {{1.0, s_name(q, d)}}, "=", 0.0};
            for (const auto& p : pairs)
                if (p.i <= q && q < p.j)
                    link.terms.push_back({-1.0, z_name(p.i, p.j, d)});
            m.rows.push_back(std::move(link));
        }
    for (std::size_t r : required) {
        Row cover{"cover_" + std::to_string(r + 1), {}, "=", 1.0};
        for (std::size_t d = 0; d < k; ++d)
            cover.terms.push_back({1.0, s_name(r, d)});
        m.rows.push_back(std::move(cover));
    }

    for (std::size_t d = 0; d < k; ++d)
        for (const auto& p : pairs)
            m.binaries.push_back(z_name(p.i, p.j, d));
    for (std::size_t d = 0; d < k; ++d)
        for (std::size_t r : required)
            m.binaries.push_back(s_name(r, d));
    return m;
}

namespace detail {

inline std::string lp_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline void write_row(std::ostringstream& out, const Row& row)
{
    out << " " << row.name << ":";
    std::size_t on_line = 0;
    for (std::size_t t = 0; t < row.terms.size(); ++t) {
        const auto& term = row.terms[t];
        if (on_line == 8) {
            out << "\n  ";
            on_line = 0;
        }
        double c = term.coef;
        out << (c < 0 ? (t == 0 ? " -" : " - ") : (t == 0 ? " " : " + "));
        if (std::abs(c) != 1.0)
            out << lp_number(std::abs(c)) << " ";
        out << term.var;
        ++on_line;
    }
    out << " " << row.sense << " " << lp_number(row.rhs) << "\n";
}

} // namespace detail

/// LP-format text (Minimize / Subject To / Bounds / Binary / End).
inline std::string export_lp(const MilpModel& m)
{
    std::ostringstream out;
    out << "\\ segcover k-min-makespan model\n";
    out << "\\ points " << m.points << ", drones " << m.drones << ", budget " << detail::lp_number(m.budget_L) << "\n";
    out << "Minimize\n obj: T\n";
    if (!m.rows.empty()) {
        out << "Subject To\n";
        for (const auto& row : m.rows)
            detail::write_row(out, row);
        out << "Bounds\n T >= 0\n";
    }
    if (!m.binaries.empty()) {
        out << "Binary\n";
        for (const auto& b : m.binaries)
            out << " " << b << "\n";
    }
    out << "End\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Branch and bound

struct ExactResult {
    Plan plan;
    bool optimal = false;
    std::size_t nodes = 0;
};

/// Per subinterval r (with a_r not a right vertex), the number of tours
/// covering [a_r, a_{r+1}]; the model requires exactly one.
inline std::vector<int> implied_cover_counts(const DiscreteInstance& disc, const Plan& plan)
{
    std::vector<int> counts(disc.size() > 0 ? disc.size() - 1 : 0, 0);
    for (const auto& d : plan.drones)
        for (const auto& t : d)
            for (std::size_t r = 0; r + 1 < disc.size(); ++r)
                if (!disc.is_right_vertex[r] && disc.points[r] >= t.p - kTol && disc.points[r + 1] <= t.q + kTol)
                    ++counts[r];
    return counts;
}

namespace detail {

class BranchAndBound {
public:
    BranchAndBound(const DiscreteInstance& disc, std::size_t k, double time_budget)
        : disc_(disc), k_(k), n_(disc.size()), limit_(disc.source.budget_L + kTol),
          deadline_(std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(time_budget)))
    {
        suffix_.assign(n_, std::numeric_limits<double>::infinity());
        suffix_[n_ - 1] = 0.0;
        for (std::size_t pos = n_ - 1; pos-- > 0;) {
            if (disc_.is_right_vertex[pos])
                continue;
            for (std::size_t j = pos + 1; j < n_; ++j) {
                double c = disc_.cost(pos, j);
                if (c > limit_)
                    break;
                suffix_[pos] = std::min(suffix_[pos], c + suffix_[next(j)]);
            }
        }
        if (!std::isfinite(suffix_[0]))
            throw Error("solve_exact: infeasible discretization (a waypoint cannot be covered within L)");
    }

    void set_incumbent(const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& tours, double makespan)
    {
        best_ = makespan;
        best_tours_ = tours;
    }

    bool run()
    {
        loads_.assign(k_, 0.0);
        current_.assign(k_, {});
        timed_out_ = false;
        dfs(0);
        return !timed_out_;
    }

    double best() const { return best_; }
    std::size_t nodes() const { return nodes_; }
    const auto& best_tours() const { return best_tours_; }

private:
    std::size_t next(std::size_t j) const { return (j + 1 < n_ && disc_.is_right_vertex[j]) ? j + 1 : j; }

    bool seen(std::size_t pos)
    {
        std::vector<std::int64_t> key;
        key.reserve(k_ + 1);
        key.push_back(static_cast<std::int64_t>(pos));
        std::vector<double> sorted = loads_;
        std::sort(sorted.begin(), sorted.end());
        for (double l : sorted)
            key.push_back(std::llround(l * 1e6));
        if (memo_.size() > kMemoCap)
            return false;
        return !memo_.insert(std::move(key)).second;
    }

    void dfs(std::size_t pos)
    {
        if (timed_out_)
            return;
        if ((++nodes_ & 1023u) == 0 && std::chrono::steady_clock::now() > deadline_) {
            timed_out_ = true;
            return;
        }
        double ms = *std::max_element(loads_.begin(), loads_.end());
        if (pos == n_ - 1) {
            if (ms < best_ - kTol) {
                best_ = ms;
                best_tours_ = current_;
            }
            return;
        }
        if (seen(pos))
            return;

        double total = 0.0;
        for (double l : loads_)
            total += l;

        struct Child {
            double bound;
            std::size_t j, d;
        };
        std::vector<Child> children;
        for (std::size_t j = pos + 1; j < n_; ++j) {
            double c = disc_.cost(pos, j);
            if (c > limit_)
                break;
            if (disc_.is_left_vertex[j])
                continue;
            double rest = suffix_[next(j)];
            for (std::size_t d = 0; d < k_; ++d) {
                bool duplicate = false;
                for (std::size_t e = 0; e < d; ++e)
                    duplicate |= loads_[e] == loads_[d];
                if (duplicate)
                    continue;
                double bound = std::max({ms, loads_[d] + c, (total + c + rest) / static_cast<double>(k_)});
                if (bound < best_ - kTol)
                    children.push_back({bound, j, d});
            }
        }
        std::stable_sort(children.begin(), children.end(), [](const Child& a, const Child& b) {
            return a.bound < b.bound || (a.bound == b.bound && a.j > b.j);
        });
        for (const auto& ch : children) {
            if (ch.bound >= best_ - kTol)
                continue;
            loads_[ch.d] += disc_.cost(pos, ch.j);
            current_[ch.d].emplace_back(pos, ch.j);
            dfs(next(ch.j));
            current_[ch.d].pop_back();
            loads_[ch.d] -= disc_.cost(pos, ch.j);
            if (timed_out_)
                return;
        }
    }

    static constexpr std::size_t kMemoCap = 4'000'000;

    struct KeyHash {
        std::size_t operator()(const std::vector<std::int64_t>& v) const
        {
            std::size_t h = 1469598103934665603ull;
            for (auto x : v)
                h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
            return h;
        }
    };

    const DiscreteInstance& disc_;
    std::size_t k_;
    std::size_t n_;
    double limit_;
    std::chrono::steady_clock::time_point deadline_;
    std::vector<double> suffix_;
    std::vector<double> loads_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> current_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> best_tours_;
    double best_ = std::numeric_limits<double>::infinity();
    std::size_t nodes_ = 0;
    bool timed_out_ = false;
    std::unordered_set<std::vector<std::int64_t>, KeyHash> memo_;
};

inline std::optional<std::size_t> grid_index(const DiscreteInstance& disc, double x)
{
    auto it = std::lower_bound(disc.points.begin(), disc.points.end(), x - 1e-9);
    if (it == disc.points.end() || std::abs(*it - x) > 1e-6)
        return std::nullopt;
    return static_cast<std::size_t>(it - disc.points.begin());
}

} // namespace detail

/// Heuristic plan on the waypoint grid: grid minsum, greedy split, and for
/// two drones the grid-restricted improvement.
inline Plan grid_heuristic_plan(const DiscreteInstance& disc, std::size_t k)
{
    auto ts = solve_minsum_on_grid(disc.source, disc.points);
    Plan plan = g2d_k(ts, k);
    if (k == 2)
        plan = improve(plan, disc.source, RefineOptions{&disc.points}).plan;
    return plan;
}

/// Optimal k-drone plan over waypoint tours, or the best incumbent with
/// optimal = false if the time budget runs out.
inline ExactResult solve_exact(const DiscreteInstance& disc, std::size_t k, double time_budget_s,
                               const std::optional<Plan>& warm_start = std::nullopt)
{
    if (k == 0)
        throw Error("solve_exact: number of drones must be positive");
    ExactResult res;
    if (disc.size() == 0) {
        res.plan = make_plan(std::vector<std::vector<Tour>>(k));
        res.optimal = true;
        return res;
    }
    detail::BranchAndBound bb(disc, k, time_budget_s);

    auto seed = [&](const Plan& plan) {
        if (plan.drones.size() != k)
            return;
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> tours(k);
        for (std::size_t d = 0; d < k; ++d)
            for (const auto& t : plan.drones[d]) {
                auto i = detail::grid_index(disc, t.p);
                auto j = detail::grid_index(disc, t.q);
                if (!i || !j)
                    return;  // off-grid plans cannot seed the search
                tours[d].emplace_back(*i, *j);
            }
        if (plan.makespan < bb.best())
            bb.set_incumbent(tours, plan.makespan);
    };
    seed(grid_heuristic_plan(disc, k));
    if (warm_start)
        seed(*warm_start);

    res.optimal = bb.run();
    res.nodes = bb.nodes();
    std::vector<std::vector<Tour>> drones(k);
    for (std::size_t d = 0; d < k; ++d)
        for (auto [i, j] : bb.best_tours()[d])
            drones[d].push_back(make_tour(disc.source.base, disc.points[i], disc.points[j]));
    res.plan = make_plan(std::move(drones));
    return res;
}

} // namespace segcover
