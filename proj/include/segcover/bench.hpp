#pragma once

// Randomized scenario generation, the heuristic-vs-exact pipeline, and
// CSV / summary / SVG reporting for batches of scenarios.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "segcover/core.hpp"
#include "segcover/exact.hpp"
#include "segcover/makespan.hpp"
#include "segcover/minsum.hpp"
#include "segcover/refine.hpp"

namespace segcover::bench {

enum class Preset { Exp1, Exp2 };

enum class LPolicy { Uniform, Low, Medium, High };

inline const char* to_string(LPolicy p)
{
    switch (p) {
    case LPolicy::Uniform: return "uniform";
    case LPolicy::Low: return "low";
    case LPolicy::Medium: return "medium";
    case LPolicy::High: return "high";
    }
    return "?";
}

struct ScenarioConfig {
    std::uint64_t seed = 0;
    double m = -250.0;
    double M = 250.0;
    double span_d = 100.0;
    std::optional<BasePoint> base;  // fixed base, else sampled from the ranges below
    double base_x_min = 0.0, base_x_max = 1000.0;
    double base_y_min = 1.0, base_y_max = 10000.0;
    LPolicy l_policy = LPolicy::Uniform;
    double l_low_width = 15.0;   // low level: [L_min, L_min + l_low_width]
    double l_mid_width = 120.0;  // medium level: [L_min + l_low_width, L_min + l_mid_width]
    double cv = 0.2;
    double mean_len = 10.0;
    double rho = 0.2;
    std::size_t drones = 2;
    double delta = 1.0;
};

struct Scenario {
    ScenarioConfig config;
    Instance instance;
    double L_min = 0.0;
    double L_max = 0.0;
    double rho = 0.0;          // covered length / span
    double cv_measured = 0.0;  // of the generated segment lengths
};

namespace detail {

inline double round_to(double v, double delta) { return std::round(v / delta) * delta; }

inline double cv_of(const std::vector<double>& v)
{
    if (v.size() < 2)
        return 0.0;
    double mean = 0.0;
    for (double x : v)
        mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v)
        var += (x - mean) * (x - mean);
    var /= static_cast<double>(v.size() - 1);
    return mean > 0.0 ? std::sqrt(var) / mean : 0.0;
}

/// Largest cost of a subinterval between consecutive waypoints.
inline double max_step_cost(const Instance& inst, double delta)
{
    double worst = 0.0;
    for (const auto& s : inst.segments) {
        double steps = std::round(s.length() / delta);
        for (double i = 0; i < steps; ++i) {
            double a = s.left + i * delta;
            double b = i + 1 == steps ? s.right : a + delta;
            worst = std::max(worst, tour_length(inst.base, a, b));
        }
    }
    return worst;
}

} // namespace detail

/// Segments inside a window of width span_d placed uniformly in [m, M]:
/// normal lengths (resampled when <= 0) are drawn until they reach the
/// density target, rescaled to it, rounded to delta and separated by random
/// gaps of at least delta. L follows the configured policy.
inline Scenario generate_scenario(const ScenarioConfig& cfg)
{
    if (!(cfg.span_d > 0.0) || cfg.M - cfg.m < cfg.span_d)
        throw Error("scenario: span must be positive and fit in [m, M]");
    if (!(cfg.rho > 0.0) || !(cfg.rho < 1.0))
        throw Error("scenario: density target must lie in (0, 1)");
    if (!(cfg.mean_len > 0.0) || cfg.cv < 0.0)
        throw Error("scenario: invalid length distribution");
    const double delta = cfg.delta;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    double start = detail::round_to(cfg.m + unit(rng) * (cfg.M - cfg.span_d - cfg.m), delta);
    start = std::clamp(start, std::ceil(cfg.m / delta) * delta, std::floor((cfg.M - cfg.span_d) / delta) * delta);
    const double target = std::max(delta, detail::round_to(cfg.rho * cfg.span_d, delta));

    std::normal_distribution<double> len_dist(cfg.mean_len, cfg.cv * cfg.mean_len);
    std::vector<double> raw;
    double sum = 0.0;
    while (sum < target) {
        double l = len_dist(rng);
        if (l <= 0.0)
            continue;
        raw.push_back(l);
        sum += l;
    }
    std::vector<double> lengths;
    std::vector<double> residual;
    double total = 0.0;
    for (double l : raw) {
        double scaled = l * target / sum;
        double r = std::max(delta, detail::round_to(scaled, delta));
        lengths.push_back(r);
        residual.push_back(scaled - r);
        total += r;
    }
    // Rounding drift: nudge the lengths with the largest residuals by one step.
    const double drift_tol = 0.025 * cfg.span_d;
    while (std::abs(total - target) > std::max(drift_tol, delta / 2.0)) {
        bool up = total < target;
        std::size_t pick = lengths.size();
        for (std::size_t i = 0; i < lengths.size(); ++i) {
            if (!up && lengths[i] <= delta)
                continue;
            if (pick == lengths.size() || (up ? residual[i] > residual[pick] : residual[i] < residual[pick]))
                pick = i;
        }
        if (pick == lengths.size())
            break;
        lengths[pick] += up ? delta : -delta;
        residual[pick] += up ? -delta : delta;
        total += up ? delta : -delta;
    }

    // Too many short pieces leave no room for the unit gaps: fuse the shortest
    // piece with its shorter neighbour until they fit.
    while (lengths.size() > 1 && cfg.span_d - total - static_cast<double>(lengths.size() - 1) * delta < 0.0) {
        auto it = std::min_element(lengths.begin(), lengths.end());
        std::size_t i = static_cast<std::size_t>(it - lengths.begin());
        std::size_t j = i == 0 ? 1 : (i + 1 == lengths.size() || lengths[i - 1] < lengths[i + 1] ? i - 1 : i + 1);
        lengths[std::min(i, j)] += lengths[std::max(i, j)];
        lengths.erase(lengths.begin() + static_cast<std::ptrdiff_t>(std::max(i, j)));
    }
    const std::size_t count = lengths.size();
    double free_space = cfg.span_d - total - static_cast<double>(count - 1) * delta;
    if (free_space < 0.0)
        throw Error("scenario: density target unreachable within the span (seed " + std::to_string(cfg.seed) + ")");
    std::vector<double> weights(count + 1);
    double wsum = 0.0;
    for (auto& w : weights) {
        w = unit(rng);
        wsum += w;
    }
    std::vector<Segment> segs;
    double x = start + std::floor(weights[0] / wsum * free_space / delta) * delta;
    for (std::size_t i = 0; i < count; ++i) {
        segs.push_back({x, x + lengths[i]});
        x += lengths[i] + delta + std::floor(weights[i + 1] / wsum * free_space / delta) * delta;
    }

    BasePoint base;
    if (cfg.base) {
        base = *cfg.base;
    } else {
        base.x = cfg.base_x_min + unit(rng) * (cfg.base_x_max - cfg.base_x_min);
        base.y = cfg.base_y_min + unit(rng) * (cfg.base_y_max - cfg.base_y_min);
    }

    Scenario sc;
    sc.config = cfg;
    double d1 = base_distance(base, segs.front().left);
    double dn = base_distance(base, segs.back().right);
    sc.L_min = 2.0 * std::max(d1, dn);
    sc.L_max = d1 + (segs.back().right - segs.front().left) + dn;

    double lo = sc.L_min, hi = sc.L_max;
    switch (cfg.l_policy) {
    case LPolicy::Uniform: break;
    case LPolicy::Low: hi = std::min(sc.L_max, sc.L_min + cfg.l_low_width); break;
    case LPolicy::Medium:
        lo = std::min(sc.L_max, sc.L_min + cfg.l_low_width);
        hi = std::min(sc.L_max, sc.L_min + cfg.l_mid_width);
        break;
    case LPolicy::High: lo = std::min(sc.L_max, sc.L_min + cfg.l_mid_width); break;
    }
    // Every waypoint-to-waypoint step must fit in one tour.
    Instance probe{base, sc.L_max, segs};
    double step = detail::max_step_cost(probe, delta);
    lo = std::max(lo, step);
    hi = std::max(hi, lo);
    double L = lo + unit(rng) * (hi - lo);

    sc.instance = make_instance(base, L, std::move(segs));
    sc.rho = total / cfg.span_d;
    sc.cv_measured = detail::cv_of(lengths);
    return sc;
}

// ---------------------------------------------------------------------------
// Pipeline

struct PipelineOptions {
    bool continuous = false;  // continuous minsum and refinement instead of waypoint-restricted
    bool run_exact = true;
    double exact_budget_s = 10.0;
};

struct ScenarioResult {
    std::uint64_t seed = 0;
    std::size_t n_segments = 0;
    double L = 0.0;
    double L_norm = 0.0;
    double rho = 0.0;
    double cv_measured = 0.0;
    std::size_t minsum_tours = 0;
    double len_g2d = 0.0;
    double len_improved = 0.0;
    std::optional<double> len_exact;
    bool exact_optimal = false;
    std::optional<double> delta_emp;
    std::optional<double> delta_I_emp;
    double delta_bound = 1.0;
    double a = 0.0;
    double slack = 0.0;  // 4 delta m, in length units
    double t_g2d = 0.0;
    double t_improve = 0.0;
    double t_exact = 0.0;
    std::size_t improve_moves = 0;
    std::string error;
};

inline ScenarioResult run_pipeline(const Instance& inst, std::size_t drones, double delta, const PipelineOptions& opt)
{
    using clock = std::chrono::steady_clock;
    auto secs = [](clock::time_point a, clock::time_point b) { return std::chrono::duration<double>(b - a).count(); };

    ScenarioResult r;
    r.n_segments = inst.segments.size();
    r.L = inst.budget_L;

    std::optional<DiscreteInstance> disc;
    if (opt.run_exact || !opt.continuous)
        disc = discretize(inst, delta);

    auto t0 = clock::now();
    TourSet ts = opt.continuous ? solve_minsum(inst) : solve_minsum_on_grid(inst, disc->points);
    Plan g = g2d_k(ts, drones);
    auto t1 = clock::now();
    r.minsum_tours = ts.tours.size();
    r.len_g2d = g.makespan;
    r.t_g2d = secs(t0, t1);
    if (drones == 2) {
        auto cert = certify(g, inst.budget_L);
        r.a = cert.a;
        r.delta_bound = cert.delta_bound;
    } else {
        r.delta_bound = delta_bound_k(g);
    }

    Plan improved = g;
    if (drones == 2) {
        RefineOptions ro;
        if (!opt.continuous)
            ro.grid = &disc->points;
        auto res = improve(g, inst, ro);
        improved = res.plan;
        r.improve_moves = res.log.size();
    }
    auto t2 = clock::now();
    r.len_improved = improved.makespan;
    r.t_improve = secs(t1, t2);
    r.slack = 4.0 * delta * static_cast<double>(ts.tours.size());

    if (opt.run_exact) {
        std::optional<Plan> warm;
        if (!opt.continuous)
            warm = improved;
        auto ex = solve_exact(*disc, drones, opt.exact_budget_s, warm);
        r.t_exact = secs(t2, clock::now());
        r.len_exact = ex.plan.makespan;
        r.exact_optimal = ex.optimal;
        if (ex.plan.makespan > 0.0) {
            r.delta_emp = r.len_g2d / ex.plan.makespan;
            r.delta_I_emp = r.len_improved / ex.plan.makespan;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Experiments

enum class FactorKind { LLevel, Cv, Rho };

struct BenchOptions {
    Preset preset = Preset::Exp2;
    std::size_t scenarios = 100;
    std::uint64_t seed = 1;
    bool full_scale = false;
    std::optional<double> span;  // overrides the preset span
    double delta = 1.0;
    std::size_t drones = 2;
    PipelineOptions pipeline;
    unsigned threads = 0;  // 0: SEGCOVER_THREADS or hardware concurrency
};

/// Per-seed configuration; factor levels are drawn from the seed's own stream
/// so every scenario is reproducible in isolation.
inline ScenarioConfig sample_config(const BenchOptions& opt, std::uint64_t seed)
{
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    ScenarioConfig c;
    c.seed = seed;
    c.delta = opt.delta;
    c.drones = opt.drones;
    if (opt.preset == Preset::Exp1) {
        c.m = -1000.0;
        c.M = 1000.0;
        c.span_d = opt.span.value_or(opt.full_scale ? 1000.0 : 200.0);
        c.base_x_min = 0.0;
        c.base_x_max = 1000.0;
        c.base_y_min = 1.0;
        c.base_y_max = 10000.0;
        c.l_policy = LPolicy::Uniform;
        const double cvs[] = {0.2, 0.6, 0.8};
        c.cv = cvs[std::min<std::size_t>(2, static_cast<std::size_t>(unit(rng) * 3.0))];
        c.mean_len = 10.0;
        c.rho = 0.1 + 0.2 * unit(rng);
    } else {
        c.m = -250.0;
        c.M = 250.0;
        c.span_d = opt.span.value_or(opt.full_scale ? 500.0 : 100.0);
        const double scale = c.span_d / 500.0;
        c.base = BasePoint{250.0, 500.0};
        const LPolicy levels[] = {LPolicy::Low, LPolicy::Medium, LPolicy::High};
        c.l_policy = levels[std::min<std::size_t>(2, static_cast<std::size_t>(unit(rng) * 3.0))];
        c.l_low_width = 15.0 * scale;
        c.l_mid_width = 120.0 * scale;
        c.cv = unit(rng) < 0.5 ? 0.2 : 0.8;
        c.mean_len = (10.0 + 90.0 * unit(rng)) * scale;
        c.rho = unit(rng) < 0.76 ? 0.2 : 0.8;
    }
    return c;
}

struct Row {
    ScenarioConfig config;
    ScenarioResult result;
};

inline unsigned thread_count(unsigned requested)
{
    unsigned n = requested;
    if (n == 0) {
        n = std::max(1u, std::thread::hardware_concurrency());
        if (const char* env = std::getenv("SEGCOVER_THREADS")) {
            int cap = std::atoi(env);
            if (cap > 0)
                n = std::min(n, static_cast<unsigned>(cap));
        }
    }
    return std::max(1u, n);
}

/// Runs scenarios seed, seed+1, ... on a worker pool. Rows come back in seed
/// order; a failing scenario is recorded in its row and the batch continues.
inline std::vector<Row> run_experiment(const BenchOptions& opt)
{
    std::vector<Row> rows(opt.scenarios);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < opt.scenarios; i = next++) {
            Row& row = rows[i];
            row.config = sample_config(opt, opt.seed + i);
            row.result.seed = row.config.seed;
            try {
                Scenario sc = generate_scenario(row.config);
                row.result = run_pipeline(sc.instance, opt.drones, opt.delta, opt.pipeline);
                row.result.seed = row.config.seed;
                row.result.rho = sc.rho;
                row.result.cv_measured = sc.cv_measured;
                row.result.L_norm = sc.instance.budget_L / sc.L_max;
            } catch (const std::exception& e) {
                row.result.error = e.what();
            }
        }
    };
    unsigned n = std::min<unsigned>(thread_count(opt.threads), static_cast<unsigned>(std::max<std::size_t>(1, opt.scenarios)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
    return rows;
}

// ---------------------------------------------------------------------------
// Reporting

inline const char* csv_header_version = "# segcover-bench v1";

namespace detail {

inline std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline std::string fmt(const std::optional<double>& v)
{
    return v ? fmt(*v) : std::string();
}

inline std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

} // namespace detail

inline std::string to_csv(const std::vector<Row>& rows)
{
    std::ostringstream out;
    out << csv_header_version << "\n";
    out << "seed,n_segments,L,L_norm,L_level,cv,cv_measured,mean_len,rho_target,rho,minsum_tours,"
           "len_g2d,len_improved,len_exact,exact_optimal,delta_emp,delta_I_emp,delta_bound,D,a,slack,"
           "improve_moves,t_g2d,t_improve,t_exact,error\n";
    for (const auto& row : rows) {
        const auto& c = row.config;
        const auto& r = row.result;
        std::optional<double> D;
        if (r.delta_emp)
            D = r.delta_bound - *r.delta_emp;
        using detail::fmt;
        out << c.seed << "," << r.n_segments << "," << fmt(r.L) << "," << fmt(r.L_norm) << "," << to_string(c.l_policy)
            << "," << fmt(c.cv) << "," << fmt(r.cv_measured) << "," << fmt(c.mean_len) << "," << fmt(c.rho) << ","
            << fmt(r.rho) << "," << r.minsum_tours << "," << fmt(r.len_g2d) << "," << fmt(r.len_improved) << ","
            << fmt(r.len_exact) << "," << (r.exact_optimal ? 1 : 0) << "," << fmt(r.delta_emp) << ","
            << fmt(r.delta_I_emp) << "," << fmt(r.delta_bound) << "," << fmt(D) << "," << fmt(r.a) << ","
            << fmt(r.slack) << "," << r.improve_moves << "," << fmt(r.t_g2d) << "," << fmt(r.t_improve) << ","
            << fmt(r.t_exact) << "," << detail::csv_escape(r.error) << "\n";
    }
    return out.str();
}

struct Stats {
    std::size_t count = 0;
    double mean = 0.0;
    double sd = 0.0;
    double max = 0.0;
    double p50 = 0.0;
    double p95 = 0.0;
    double frac_one = 0.0;  // share of values equal to 1 (within 1e-9)
};

inline Stats describe(std::vector<double> v)
{
    Stats s;
    s.count = v.size();
    if (v.empty())
        return s;
    std::sort(v.begin(), v.end());
    for (double x : v)
        s.mean += x;
    s.mean /= static_cast<double>(v.size());
    for (double x : v)
        s.sd += (x - s.mean) * (x - s.mean);
    s.sd = v.size() > 1 ? std::sqrt(s.sd / static_cast<double>(v.size() - 1)) : 0.0;
    s.max = v.back();
    auto quantile = [&](double q) {
        double pos = q * static_cast<double>(v.size() - 1);
        auto lo = static_cast<std::size_t>(std::floor(pos));
        auto hi = std::min(v.size() - 1, lo + 1);
        return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
    };
    s.p50 = quantile(0.5);
    s.p95 = quantile(0.95);
    std::size_t ones = 0;
    for (double x : v)
        ones += std::abs(x - 1.0) <= 1e-9;
    s.frac_one = static_cast<double>(ones) / static_cast<double>(v.size());
    return s;
}

struct Summary {
    std::size_t scenarios = 0;
    std::size_t failed = 0;
    std::size_t proven = 0;  // rows with a proven-optimal exact makespan
    Stats delta;
    Stats delta_I;
    std::size_t improved_worse = 0;  // rows with delta_I > delta + tol
    double min_D_margin = 0.0;       // min over proven rows of D + slack / OPT
    double max_heuristic_seconds = 0.0;
    std::map<std::string, std::pair<Stats, Stats>> groups;  // "factor=level" -> (delta, delta_I)
};

inline Summary summarize(const std::vector<Row>& rows)
{
    Summary s;
    s.scenarios = rows.size();
    std::vector<double> d, dI;
    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> grouped;
    s.min_D_margin = std::numeric_limits<double>::infinity();
    for (const auto& row : rows) {
        const auto& r = row.result;
        if (!r.error.empty()) {
            ++s.failed;
            continue;
        }
        s.max_heuristic_seconds = std::max(s.max_heuristic_seconds, r.t_g2d + r.t_improve);
        if (!r.exact_optimal || !r.delta_emp)
            continue;
        ++s.proven;
        d.push_back(*r.delta_emp);
        dI.push_back(*r.delta_I_emp);
        if (*r.delta_I_emp > *r.delta_emp + 1e-9)
            ++s.improved_worse;
        s.min_D_margin = std::min(s.min_D_margin, r.delta_bound - *r.delta_emp + r.slack / *r.len_exact);

        std::string cv = "cv=" + detail::fmt(row.config.cv);
        std::string level = row.config.l_policy == LPolicy::Uniform ? std::string(r.L_norm < 0.5 ? "L=low" : "L=high")
                                                                    : std::string("L=") + to_string(row.config.l_policy);
        std::vector<std::string> keys{cv, level};
        if (row.config.l_policy != LPolicy::Uniform)
            keys.push_back("rho=" + detail::fmt(row.config.rho));
        for (const auto& k : keys) {
            grouped[k].first.push_back(*r.delta_emp);
            grouped[k].second.push_back(*r.delta_I_emp);
        }
    }
    if (s.proven == 0)
        s.min_D_margin = 0.0;
    s.delta = describe(d);
    s.delta_I = describe(dI);
    for (auto& [k, v] : grouped)
        s.groups[k] = {describe(v.first), describe(v.second)};
    return s;
}

inline nlohmann::json stats_json(const Stats& s)
{
    return {{"count", s.count}, {"mean", s.mean}, {"sd", s.sd}, {"max", s.max},
            {"p50", s.p50},     {"p95", s.p95},   {"frac_equal_1", s.frac_one}};
}

inline nlohmann::json summary_json(const Summary& s)
{
    nlohmann::json groups = nlohmann::json::object();
    for (const auto& [k, v] : s.groups)
        groups[k] = {{"delta", stats_json(v.first)}, {"delta_I", stats_json(v.second)}};
    return {{"scenarios", s.scenarios},
            {"failed", s.failed},
            {"proven_optimal", s.proven},
            {"delta", stats_json(s.delta)},
            {"delta_I", stats_json(s.delta_I)},
            {"rows_delta_I_above_delta", s.improved_worse},
            {"min_D_plus_slack", s.min_D_margin},
            {"max_heuristic_seconds", s.max_heuristic_seconds},
            {"groups", groups}};
}

inline std::string summary_text(const Summary& s)
{
    std::ostringstream out;
    auto line = [&](const char* name, const Stats& st) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "%-8s n=%zu mean=%.5f sd=%.5f max=%.5f p50=%.5f p95=%.5f =1: %.1f%%\n", name,
                      st.count, st.mean, st.sd, st.max, st.p50, st.p95, 100.0 * st.frac_one);
        out << buf;
    };
    out << "scenarios " << s.scenarios << ", failed " << s.failed << ", proven optimal " << s.proven << "\n";
    line("delta", s.delta);
    line("delta_I", s.delta_I);
    for (const auto& [k, v] : s.groups) {
        out << "[" << k << "]\n";
        line("  delta", v.first);
        line("  delta_I", v.second);
    }
    return out.str();
}

/// Plain SVG bar chart of a histogram over [lo, hi].
inline std::string histogram_svg(const std::vector<double>& values, const std::string& title, std::size_t bins = 20)
{
    const double W = 640, H = 360, pad = 48;
    double lo = 1.0, hi = 1.0;
    for (double v : values)
        hi = std::max(hi, v);
    if (hi - lo < 1e-6)
        hi = lo + 0.01;
    std::vector<std::size_t> counts(bins, 0);
    for (double v : values) {
        auto b = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins));
        ++counts[std::min(bins - 1, b)];
    }
    std::size_t top = std::max<std::size_t>(1, *std::max_element(counts.begin(), counts.end()));
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title << " (n=" << values.size() << ")</text>\n";
    const double bw = (W - 2 * pad) / static_cast<double>(bins);
    for (std::size_t i = 0; i < bins; ++i) {
        double h = (H - 2 * pad) * static_cast<double>(counts[i]) / static_cast<double>(top);
        out << "<rect x=\"" << detail::fmt(pad + static_cast<double>(i) * bw) << "\" y=\"" << detail::fmt(H - pad - h)
            << "\" width=\"" << detail::fmt(bw - 1) << "\" height=\"" << detail::fmt(h)
            << "\" fill=\"#4a78b5\"><title>" << counts[i] << "</title></rect>\n";
    }
    out << "<line x1=\"" << pad << "\" y1=\"" << H - pad << "\" x2=\"" << W - pad << "\" y2=\"" << H - pad << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << H - pad << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        double v = lo + (hi - lo) * t / 4.0;
        double x = pad + (W - 2 * pad) * t / 4.0;
        out << "<text x=\"" << detail::fmt(x) << "\" y=\"" << H - pad + 18 << "\" text-anchor=\"middle\">"
            << detail::fmt(std::round(v * 1000.0) / 1000.0) << "</text>\n";
    }
    out << "<text x=\"" << pad - 6 << "\" y=\"" << pad + 4 << "\" text-anchor=\"end\">" << top << "</text>\n";
    out << "<text x=\"" << pad - 6 << "\" y=\"" << H - pad << "\" text-anchor=\"end\">0</text>\n";
    out << "</svg>\n";
    return out.str();
}

} // namespace segcover::bench
