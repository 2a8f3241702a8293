#pragma once

// Greedy distribution of a one-drone cover over k drones, and the
// output-sensitive approximation certificate for two drones.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "segcover/core.hpp"
#include "segcover/minsum.hpp"

namespace segcover {

/// Load gap a (in units of L), Gamma and the resulting factor Delta.
/// When a == 0 the plan is optimal; gamma is then +inf and delta_bound 1.
struct ApproxCertificate {
    double a = 0.0;
    double gamma = std::numeric_limits<double>::infinity();
    double delta_bound = 1.0;
    bool optimal = true;
    double lighter_load = 0.0;
    double heavier_load = 0.0;

    /// Sandwich on the optimum: lighter + aL/2 <= OPT <= lighter + aL.
    double lower_bound(double L) const { return lighter_load + a * L / 2.0; }
    double upper_bound(double L) const { return lighter_load + a * L; }
};

/// List scheduling in the given tour order: each tour goes to the lightest
/// drone, ties to the lowest index.
inline Plan g2d_k(const TourSet& ts, std::size_t k)
{
    if (k == 0)
        throw Error("g2d: number of drones must be positive");
    std::vector<std::vector<Tour>> drones(k);
    std::vector<double> load(k, 0.0);
    for (const auto& t : ts.tours) {
        std::size_t target = static_cast<std::size_t>(std::min_element(load.begin(), load.end()) - load.begin());
        drones[target].push_back(t);
        load[target] += t.length;
    }
    return make_plan(std::move(drones));
}

inline Plan g2d(const TourSet& ts)
{
    return g2d_k(ts, 2);
}

/// Certificate for a 2-drone plan seeded by a minimum-total-length cover.
inline ApproxCertificate certify(const Plan& plan, double budget_L)
{
    if (plan.drones.size() != 2)
        throw Error("certify: expected a two-drone plan");
    double l1 = drone_load(plan.drones[0]);
    double l2 = drone_load(plan.drones[1]);
    if (l1 > l2)
        std::swap(l1, l2);
    double a = (l2 - l1) / budget_L;
    if (a < -kTol || a > 1.0 + kTol)
        throw Error("certify: load gap a = " + std::to_string(a) +
                    " outside [0, 1]; plan is not a greedy split of budget-feasible tours");
    a = std::clamp(a, 0.0, 1.0);

    ApproxCertificate cert;
    cert.lighter_load = l1;
    cert.heavier_load = l2;
    cert.a = a;
    if (l2 - l1 <= kTol * std::max(1.0, l2)) {
        cert.a = 0.0;
        return cert;
    }
    cert.optimal = false;
    cert.gamma = 2.0 * l1 / (a * budget_L);
    cert.delta_bound = (cert.gamma + 2.0) / (cert.gamma + 1.0);
    return cert;
}

/// k-drone factor (Gamma + k) / (Gamma + 1) with Gamma = k l_min / (l_max - l_min).
inline double delta_bound_k(const Plan& plan)
{
    if (plan.drones.empty())
        return 1.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& d : plan.drones) {
        double l = drone_load(d);
        lo = std::min(lo, l);
        hi = std::max(hi, l);
    }
    if (hi - lo <= kTol * std::max(1.0, hi))
        return 1.0;
    double k = static_cast<double>(plan.drones.size());
    double gamma = k * lo / (hi - lo);
    return (gamma + k) / (gamma + 1.0);
}

} // namespace segcover
