#pragma once

// Reduction from the balanced min-max partition problem to 2-drone makespan:
// a partition oracle, the segment construction, and a numeric check that the
// two optima correspond.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "segcover/core.hpp"
#include "segcover/exact.hpp"
#include "segcover/minsum.hpp"

namespace segcover {

/// 2n positive values sorted ascending (so the maximum is last). When every
/// input was an exact rational, `scaled` holds them over a common denominator.
struct PartitionInstance {
    std::vector<double> values;
    std::optional<std::vector<std::int64_t>> scaled;

    std::size_t n() const { return values.size() / 2; }
    double max_value() const { return values.back(); }
};

inline PartitionInstance make_partition(std::vector<double> values)
{
    if (values.empty() || values.size() % 2 != 0)
        throw Error("partition: need an even, non-zero number of values");
    for (double v : values)
        if (!(v > 0.0) || !std::isfinite(v))
            throw Error("partition: values must be positive and finite");
    std::sort(values.begin(), values.end());
    return PartitionInstance{std::move(values), std::nullopt};
}

namespace detail {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
};

inline std::optional<Rational> parse_rational(const std::string& tok)
{
    auto parse_int = [](const std::string& s, std::int64_t& out) {
        if (s.empty() || s.size() > 15 || s.find_first_not_of("0123456789") != std::string::npos)
            return false;
        out = std::stoll(s);
        return true;
    };
    Rational r;
    if (auto slash = tok.find('/'); slash != std::string::npos) {
        if (!parse_int(tok.substr(0, slash), r.num) || !parse_int(tok.substr(slash + 1), r.den) || r.den == 0)
            return std::nullopt;
    } else if (auto dot = tok.find('.'); dot != std::string::npos) {
        std::string digits = tok.substr(0, dot) + tok.substr(dot + 1);
        std::size_t frac = tok.size() - dot - 1;
        if (frac > 9 || !parse_int(digits, r.num))
            return std::nullopt;
        r.den = 1;
        for (std::size_t i = 0; i < frac; ++i)
            r.den *= 10;
    } else if (!parse_int(tok, r.num)) {
        return std::nullopt;
    }
    std::int64_t g = std::gcd(r.num, r.den);
    if (g > 1) {
        r.num /= g;
        r.den /= g;
    }
    return r;
}

} // namespace detail

/// Parses "1,2,3/2,0.5". Rationals given as integers, p/q or finite decimals
/// keep an exact integer representation for the partition oracle.
inline PartitionInstance parse_partition(const std::string& text)
{
    std::vector<double> values;
    std::vector<detail::Rational> rationals;
    bool exact = true;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char c) { return std::isspace(c); }), tok.end());
        if (tok.empty())
            throw Error("partition: empty value in list");
        auto r = detail::parse_rational(tok);
        if (r) {
            rationals.push_back(*r);
            values.push_back(static_cast<double>(r->num) / static_cast<double>(r->den));
        } else {
            exact = false;
            try {
                values.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw Error("partition: cannot parse value `" + tok + "`");
            }
        }
    }
    PartitionInstance inst = make_partition(values);
    if (!exact)
        return inst;

    std::int64_t lcm = 1;
    for (const auto& r : rationals) {
        lcm = std::lcm(lcm, r.den);
        if (lcm > (std::int64_t{1} << 40))
            return inst;
    }
    std::vector<std::int64_t> scaled;
    for (const auto& r : rationals) {
        std::int64_t v = r.num * (lcm / r.den);
        if (v > (std::int64_t{1} << 56) / 24)
            return inst;
        scaled.push_back(v);
    }
    std::sort(scaled.begin(), scaled.end());
    inst.scaled = std::move(scaled);
    return inst;
}

/// Heavier side A (|A| = n) of a most balanced equal-cardinality split.
/// `indices` refer to the sorted values.
struct PartitionResult {
    std::vector<std::size_t> indices;
    double m1 = 0.0;
    double m2 = 0.0;
};

/// Exhaustive search over all C(2n, n) subsets. Among optimal subsets the
/// lexicographically smallest index set wins; with floating-point inputs,
/// sums within 1e-9 (relative) count as ties.
inline PartitionResult partition_minmax(const PartitionInstance& S)
{
    const std::size_t m = S.values.size();
    if (m == 0 || m % 2 != 0)
        throw Error("partition_minmax: need an even, non-zero number of values");
    if (m > 24)
        throw Error("partition_minmax: at most 24 values are supported");
    const std::size_t n = m / 2;

    // Bit i of a mask selects value i; a smaller lowest differing bit means a
    // lexicographically smaller index set.
    auto lex_less = [](std::uint32_t a, std::uint32_t b) {
        std::uint32_t diff = a ^ b;
        return diff != 0 && (a & (diff & (~diff + 1))) != 0;
    };

    std::uint32_t best = 0;
    bool have = false;
    const std::uint32_t full = (m == 32) ? ~0u : ((1u << m) - 1);

    if (S.scaled) {
        const auto& v = *S.scaled;
        std::int64_t total = std::accumulate(v.begin(), v.end(), std::int64_t{0});
        std::int64_t best_m2 = std::numeric_limits<std::int64_t>::max();
        for (std::uint32_t mask = (1u << n) - 1; mask <= full;) {
            std::int64_t sum = 0;
            for (std::size_t i = 0; i < m; ++i)
                if (mask >> i & 1u)
                    sum += v[i];
            if (2 * sum >= total && (sum < best_m2 || (sum == best_m2 && lex_less(mask, best)))) {
                best_m2 = sum;
                best = mask;
                have = true;
            }
            std::uint32_t c = mask & (~mask + 1);
            std::uint32_t r = mask + c;
            if (r == 0 || r > full)
                break;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    } else {
        const auto& v = S.values;
        double total = std::accumulate(v.begin(), v.end(), 0.0);
        double tol = 1e-9 * std::max(1.0, total);
        double best_m2 = std::numeric_limits<double>::infinity();
        for (std::uint32_t mask = (1u << n) - 1; mask <= full;) {
            double sum = 0.0;
            for (std::size_t i = 0; i < m; ++i)
                if (mask >> i & 1u)
                    sum += v[i];
            if (2.0 * sum >= total - tol) {
                if (sum < best_m2 - tol || (std::abs(sum - best_m2) <= tol && lex_less(mask, best))) {
                    best_m2 = std::min(best_m2, sum);
                    best = mask;
                    have = true;
                }
            }
            std::uint32_t c = mask & (~mask + 1);
            std::uint32_t r = mask + c;
            if (r == 0 || r > full)
                break;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    if (!have)
        throw Error("partition_minmax: no admissible subset");

    PartitionResult res;
    for (std::size_t i = 0; i < m; ++i) {
        if (best >> i & 1u) {
            res.indices.push_back(i);
            res.m2 += S.values[i];
        } else {
            res.m1 += S.values[i];
        }
    }
    return res;
}

/// Applies s -> K s + C and checks that the optimal index set is unchanged
/// and that M2 maps to K M2 + n C.
inline bool affine_invariance_check(const PartitionInstance& S, double K, double C)
{
    if (!(K > 0.0) || !(C >= 0.0))
        return false;
    std::vector<double> mapped;
    for (double s : S.values)
        mapped.push_back(K * s + C);
    PartitionInstance T = make_partition(mapped);
    auto a = partition_minmax(S);
    auto b = partition_minmax(T);
    double expected = K * a.m2 + static_cast<double>(S.n()) * C;
    return a.indices == b.indices && std::abs(b.m2 - expected) <= 1e-9 * std::max(1.0, std::abs(expected));
}

// ---------------------------------------------------------------------------
// Construction

/// Segments a_1..a_{2n}: [x_i, y_i] for even i, [-y_i, -x_i] for odd i, with
/// the base at height L/3 above the origin. Index 0 of x, b and sprime is unused.
struct Construction {
    double L = 0.0;
    double epsilon = 0.0;
    double height = 0.0;
    double c_point = 0.0;  // line point at distance L/2 from the base
    std::vector<double> y, c, x, b, sprime;
    double K = 0.0;
    double C = 0.0;  // 2 c_{2n}
    std::vector<Segment> segments;  // in construction order a_1..a_{2n}
    Instance instance;
    std::size_t operations = 0;
};

struct ConstructionOptions {
    std::optional<double> y0;  // any point in (max(y0', y0'', y0'''), c_point)
};

namespace detail {

inline void require(bool ok, const std::string& what)
{
    if (!ok)
        throw Error("construction: " + what + " violated");
}

} // namespace detail

/// Reports every construction equation as (name, residual); all should be ~0
/// except the inequalities, which are reported as margins that must be > 0.
struct ConstructionCheck {
    std::string name;
    double value = 0.0;
    bool ok = false;
};

inline std::vector<ConstructionCheck> check_construction(const Construction& c)
{
    std::vector<ConstructionCheck> out;
    const std::size_t m = c.y.size() - 1;
    const double h = c.height;
    const double n = static_cast<double>(m / 2);
    auto eq = [&](const std::string& name, double residual) {
        out.push_back({name, residual, std::abs(residual) <= 1e-9});
    };
    auto gt = [&](const std::string& name, double margin) { out.push_back({name, margin, margin > 0.0}); };

    double c0_bound = std::max({c.L / 2.0 - c.epsilon * c.L / (4.0 * n), c.L - c.y[0] - c.L / 3.0, std::sqrt(5.0) * c.L / 6.0});
    gt("c0 lower bound", c.c[0] - c0_bound);
    eq("c0 distance", c.c[0] - std::hypot(c.y[0], h));
    for (std::size_t i = 0; i < m; ++i) {
        eq("budget-L tour y" + std::to_string(i) + "->y" + std::to_string(i + 1), c.y[i + 1] - c.y[i] + c.c[i] + c.c[i + 1] - c.L);
        eq("distance c" + std::to_string(i + 1), c.c[i + 1] * c.c[i + 1] - c.y[i + 1] * c.y[i + 1] - h * h);
    }
    for (std::size_t i = 1; i <= m; ++i) {
        eq("tour length s'" + std::to_string(i), c.c[i] + (c.y[i] - c.x[i]) + c.b[i] - c.sprime[i]);
        eq("distance b" + std::to_string(i), c.b[i] * c.b[i] - c.x[i] * c.x[i] - h * h);
        gt("x" + std::to_string(i) + " >= y" + std::to_string(i - 1), c.x[i] - c.y[i - 1] + 1e-9);
        gt("x" + std::to_string(i) + " < y" + std::to_string(i), c.y[i] - c.x[i]);
    }
    gt("cardinality condition", c.epsilon * c.L - 2.0 * n * (c.L - c.C));
    return out;
}

inline Construction build_construction(const PartitionInstance& S, double L, double epsilon,
                                       const ConstructionOptions& opt = {})
{
    if (!(L > 0.0) || !std::isfinite(L))
        throw Error("construction: L must be positive");
    if (!(epsilon > 0.0) || !(epsilon < 1.0 / 3.0))
        throw Error("construction: epsilon must lie in (0, 1/3)");
    const std::size_t m = S.values.size();
    const double n = static_cast<double>(S.n());
    Construction c;
    c.L = L;
    c.epsilon = epsilon;
    c.height = L / 3.0;
    const double h = c.height;
    c.c_point = std::sqrt(L * L / 4.0 - h * h);
    auto& ops = c.operations;

    // y0: halfway between the largest of three lower limits and c_point.
    double y0a = ((L - h) * (L - h) - h * h) / (2.0 * (L - h));
    double y0b = std::sqrt(5.0 * L * L / 36.0 - h * h);
    double c0c = L / 2.0 - epsilon * L / (4.0 * n);
    double y0c = c0c > h ? std::sqrt(c0c * c0c - h * h) : 0.0;
    double y0_floor = std::max({y0a, y0b, y0c});
    ops += 8;
    double y0 = opt.y0 ? *opt.y0 : (y0_floor + c.c_point) / 2.0;
    if (!(y0 > y0_floor) || !(y0 < c.c_point))
        throw Error("construction: y0 must lie strictly between " + std::to_string(y0_floor) + " and " +
                    std::to_string(c.c_point));

    const BasePoint base{0.0, -h};
    c.y.push_back(y0);
    c.c.push_back(std::hypot(y0, h));
    for (std::size_t i = 0; i < m; ++i) {
        // y_{i+1}: end of the budget-L tour entering at y_i.
        double R = L - c.c[i] + c.y[i];
        double next = (R * R - h * h) / (2.0 * R);
        c.y.push_back(next);
        c.c.push_back(std::hypot(next, h));
        ops += 6;
    }

    c.C = 2.0 * c.c[m];
    c.K = (L - c.C) / S.max_value();
    c.x.assign(m + 1, 0.0);
    c.b.assign(m + 1, 0.0);
    c.sprime.assign(m + 1, 0.0);
    for (std::size_t i = 1; i <= m; ++i) {
        double sp = c.K * S.values[i - 1] + c.C;
        c.sprime[i] = sp;
        double A = sp - c.c[i] - c.y[i];
        double xi;
        if (A > 1e-6 * L) {
            xi = (h * h - A * A) / (2.0 * A);
            ops += 6;
        } else {
            // Tour length from x to y_i decreases in x on [y_{i-1}, y_i].
            auto length = [&](double v) { return std::hypot(v, h) + c.y[i] - v + c.c[i]; };
            double lo = c.y[i - 1], hi = c.y[i];
            while (hi - lo > 1e-12 * std::max(1.0, hi)) {
                double mid = 0.5 * (lo + hi);
                (length(mid) > sp ? lo : hi) = mid;
                ++ops;
            }
            xi = 0.5 * (lo + hi);
        }
        xi = std::clamp(xi, c.y[i - 1], c.y[i]);
        c.x[i] = xi;
        c.b[i] = std::hypot(xi, h);
        ops += 3;
        if (i % 2 == 0)
            c.segments.push_back({xi, c.y[i]});
        else
            c.segments.push_back({-c.y[i], -xi});
    }

    for (const auto& chk : check_construction(c))
        detail::require(chk.ok, chk.name + " (value " + std::to_string(chk.value) + ")");
    c.instance = make_instance(base, L, c.segments);
    return c;
}

/// Length of the per-segment tour for a_i (1-based).
inline double segment_tour_length(const Construction& c, std::size_t i)
{
    const auto& s = c.segments[i - 1];
    return tour_length(c.instance.base, s.left, s.right);
}

/// Cheapest tour touching both a_i and a_j.
inline double spanning_tour_length(const Construction& c, std::size_t i, std::size_t j)
{
    const auto& a = c.segments[i - 1];
    const auto& b = c.segments[j - 1];
    const auto& lo = a.left < b.left ? a : b;
    const auto& hi = a.left < b.left ? b : a;
    return tour_length(c.instance.base, lo.right, hi.left);
}

/// Minimum makespan over all 2^{2n} ways of giving the per-segment tours to
/// two drones.
inline double best_assignment_makespan(const std::vector<double>& lengths)
{
    const std::size_t m = lengths.size();
    if (m > 24)
        throw Error("best_assignment_makespan: too many tours");
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        double a = 0.0, b = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            (mask >> i & 1u ? a : b) += lengths[i];
        best = std::min(best, std::max(a, b));
    }
    return best;
}

struct VerifyOptions {
    bool run_exact = true;
    double delta = 1.0 / 64.0;
    double time_budget_s = 60.0;
};

struct ReductionReport {
    double partition_m2 = 0.0;
    double predicted = 0.0;
    std::size_t minsum_tours = 0;
    bool minsum_per_segment = false;
    double assignment_makespan = 0.0;
    bool assignment_ok = false;
    std::optional<double> exact_makespan;
    bool exact_optimal = false;
    double exact_slack = 0.0;
    bool exact_ok = true;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

inline ReductionReport verify_reduction(const PartitionInstance& S, const Construction& c, const VerifyOptions& opt = {})
{
    if (S.values.size() > 8)
        throw Error("verify_reduction: at most 8 values are supported");
    const std::size_t m = S.values.size();
    ReductionReport rep;
    auto part = partition_minmax(S);
    rep.partition_m2 = part.m2;
    rep.predicted = c.K * part.m2 + static_cast<double>(S.n()) * c.C;

    auto fail = [&](const std::string& msg) { rep.failures.push_back(msg); };

    auto ts = solve_minsum(c.instance);
    rep.minsum_tours = ts.tours.size();
    rep.minsum_per_segment = ts.tours.size() == m;
    if (rep.minsum_per_segment) {
        for (const auto& t : ts.tours) {
            auto seg = segment_at(c.instance, t.p);
            if (!seg || !c.instance.segments[*seg].contains(t.q) ||
                std::abs(t.p - c.instance.segments[*seg].left) > 1e-9 ||
                std::abs(t.q - c.instance.segments[*seg].right) > 1e-9)
                rep.minsum_per_segment = false;
        }
    }
    if (!rep.minsum_per_segment)
        fail("minsum does not consist of one tour per segment (" + std::to_string(ts.tours.size()) + " tours)");

    std::vector<double> lengths;
    for (std::size_t i = 1; i <= m; ++i)
        lengths.push_back(segment_tour_length(c, i));
    rep.assignment_makespan = best_assignment_makespan(lengths);
    rep.assignment_ok = std::abs(rep.assignment_makespan - rep.predicted) <= 1e-6;
    if (!rep.assignment_ok)
        fail("best tour assignment " + std::to_string(rep.assignment_makespan) + " differs from predicted " +
             std::to_string(rep.predicted));

    if (opt.run_exact) {
        Instance snapped = snap_inward(c.instance, opt.delta);
        auto disc = discretize(snapped, opt.delta);
        auto res = solve_exact(disc, 2, opt.time_budget_s);
        rep.exact_makespan = res.plan.makespan;
        rep.exact_optimal = res.optimal;
        rep.exact_slack = 4.0 * opt.delta * static_cast<double>(m);
        rep.exact_ok = res.optimal && std::abs(res.plan.makespan - rep.predicted) <= rep.exact_slack;
        if (!rep.exact_ok)
            fail("exact optimum on the snapped construction " + std::to_string(res.plan.makespan) +
                 (res.optimal ? "" : " (not proven)") + " is not within " + std::to_string(rep.exact_slack) +
                 " of predicted " + std::to_string(rep.predicted));
    }
    return rep;
}

} // namespace segcover
