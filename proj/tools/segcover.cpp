// Command-line front end: solve, improve, exact, export-lp, hardness, bench.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "segcover/segcover.hpp"

namespace {

using namespace segcover;
using json = nlohmann::json;

json certificate_json(const ApproxCertificate& c)
{
    return {{"a", io::round_sig(c.a)},
            {"gamma", std::isfinite(c.gamma) ? json(io::round_sig(c.gamma)) : json(nullptr)},
            {"delta_bound", io::round_sig(c.delta_bound)},
            {"optimal", c.optimal}};
}

void emit(const json& j, const std::string& out)
{
    std::string text = j.dump(2) + "\n";
    if (out.empty())
        std::cout << text;
    else
        io::write_file(out, text);
}

Plan seed_plan(const Instance& inst, std::size_t drones)
{
    return g2d_k(solve_minsum(inst), drones);
}

json plan_with_certificate(const Instance& inst, const Plan& plan)
{
    json j = io::plan_to_json(inst, plan);
    if (plan.drones.size() == 2)
        j["certificate"] = certificate_json(certify(plan, inst.budget_L));
    else
        j["delta_bound"] = io::round_sig(delta_bound_k(plan));
    return j;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cover collinear segments with bounded-length drone tours from a fixed base."};
    app.require_subcommand(1);

    std::string instance_path, out_path, plan_path;
    std::size_t drones = 2;
    double delta = 1.0;
    double time_budget = 10.0;

    auto* solve = app.add_subcommand("solve", "Minimum-total-length cover distributed greedily over the drones");
    solve->add_option("instance", instance_path, "Instance file")->required()->check(CLI::ExistingFile);
    solve->add_option("-k,--drones", drones, "Number of drones")->check(CLI::PositiveNumber);
    solve->add_option("-o,--out", out_path, "Write the plan here instead of stdout");

    auto* improve_cmd = app.add_subcommand("improve", "Apply cutting/enlarging moves to a two-drone plan");
    improve_cmd->add_option("instance", instance_path, "Instance file")->required()->check(CLI::ExistingFile);
    improve_cmd->add_option("--plan", plan_path, "Start from this plan (default: the greedy plan)")->check(CLI::ExistingFile);
    bool grid_moves = false;
    improve_cmd->add_flag("--grid", grid_moves, "Restrict split points to the waypoints of --delta");
    improve_cmd->add_option("--delta", delta, "Waypoint spacing for --grid");
    improve_cmd->add_option("-o,--out", out_path, "Write the plan here instead of stdout");

    auto* exact = app.add_subcommand("exact", "Optimal plan over waypoint-to-waypoint tours");
    exact->add_option("instance", instance_path, "Instance file")->required()->check(CLI::ExistingFile);
    exact->add_option("--delta", delta, "Waypoint spacing")->check(CLI::PositiveNumber);
    exact->add_option("-k,--drones", drones, "Number of drones")->check(CLI::PositiveNumber);
    exact->add_option("--time-budget", time_budget, "Seconds before returning the best plan found");
    bool snap = false;
    exact->add_flag("--snap", snap, "Move segment endpoints inward onto the waypoint grid first");
    exact->add_option("-o,--out", out_path, "Write the plan here instead of stdout");

    auto* export_lp_cmd = app.add_subcommand("export-lp", "Write the MILP model in LP format");
    export_lp_cmd->add_option("instance", instance_path, "Instance file")->required()->check(CLI::ExistingFile);
    export_lp_cmd->add_option("--delta", delta, "Waypoint spacing")->check(CLI::PositiveNumber);
    export_lp_cmd->add_option("-k,--drones", drones, "Number of drones")->check(CLI::PositiveNumber);
    export_lp_cmd->add_option("-o,--out", out_path, "Output .lp file (default stdout)");

    auto* hardness = app.add_subcommand("hardness", "Build the partition reduction instance and optionally verify it");
    std::string values;
    double L = 1000.0;
    double epsilon = 0.3;
    bool verify = false;
    std::optional<double> y0;
    double verify_delta = 1.0 / 64.0;
    hardness->add_option("--values", values, "Comma-separated positive rationals, e.g. 1,2,3/2,0.5")->required();
    hardness->add_option("--L", L, "Tour budget")->check(CLI::PositiveNumber);
    hardness->add_option("--epsilon", epsilon, "Epsilon in (0, 1/3)");
    hardness->add_option("--y0", y0, "First anchor point (default: midpoint rule)");
    hardness->add_flag("--verify", verify, "Check the makespan/partition correspondence");
    hardness->add_option("--delta", verify_delta, "Waypoint spacing for the exact check");
    hardness->add_option("--time-budget", time_budget, "Seconds for the exact check");
    hardness->add_option("-o,--out", out_path, "Also write the instance file here");

    auto* bench_cmd = app.add_subcommand("bench", "Run a batch of random scenarios against the exact oracle");
    std::string preset = "exp2";
    bench::BenchOptions bo;
    std::string out_dir = "bench-out";
    std::optional<double> span;
    bench_cmd->add_option("--preset", preset, "exp1 or exp2")->check(CLI::IsMember({"exp1", "exp2"}));
    bench_cmd->add_option("--scenarios", bo.scenarios, "Number of scenarios");
    bench_cmd->add_option("--seed", bo.seed, "First seed; scenario i uses seed + i");
    bench_cmd->add_option("--out", out_dir, "Output directory");
    bench_cmd->add_flag("--full-scale", bo.full_scale, "Use the full span (1000 / 500)");
    bench_cmd->add_option("--span", span, "Override the span d");
    bench_cmd->add_option("--delta", bo.delta, "Waypoint spacing")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--time-budget", bo.pipeline.exact_budget_s, "Exact-oracle seconds per scenario");
    bench_cmd->add_flag("--continuous", bo.pipeline.continuous, "Unrestricted minsum and refinement");
    bench_cmd->add_flag("!--no-exact", bo.pipeline.run_exact, "Skip the exact oracle");
    bench_cmd->add_option("--threads", bo.threads, "Worker threads (default: SEGCOVER_THREADS or all cores)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) {
            auto inst = io::load_instance(instance_path);
            emit(plan_with_certificate(inst, seed_plan(inst, drones)), out_path);
        } else if (*improve_cmd) {
            auto inst = io::load_instance(instance_path);
            Plan start = plan_path.empty() ? seed_plan(inst, 2) : io::plan_from_json(json::parse(io::read_file(plan_path)));
            if (start.drones.size() != 2)
                throw Error("improve: expected a two-drone plan");
            std::optional<DiscreteInstance> disc;
            RefineOptions ro;
            if (grid_moves) {
                disc = discretize(inst, delta);
                ro.grid = &disc->points;
            }
            auto res = segcover::improve(start, inst, ro);
            json j = io::plan_to_json(inst, res.plan);
            j["improved"] = true;
            json moves = json::array();
            for (const auto& m : res.log)
                moves.push_back({{"kind", to_string(m.kind)}, {"r", io::round_sig(m.r)}, {"makespan_after", io::round_sig(m.makespan_after)}});
            j["moves"] = moves;
            j["initial_makespan"] = io::round_sig(start.makespan);
            emit(j, out_path);
        } else if (*exact) {
            auto inst = io::load_instance(instance_path);
            if (snap)
                inst = snap_inward(inst, delta);
            auto disc = discretize(inst, delta);
            auto res = solve_exact(disc, drones, time_budget);
            json j = io::plan_to_json(inst, res.plan);
            j["optimal"] = res.optimal;
            j["nodes"] = res.nodes;
            j["delta"] = delta;
            j["waypoints"] = disc.size();
            emit(j, out_path);
        } else if (*export_lp_cmd) {
            auto inst = io::load_instance(instance_path);
            std::string text = export_lp(build_model(discretize(inst, delta), drones));
            if (out_path.empty())
                std::cout << text;
            else
                io::write_file(out_path, text);
        } else if (*hardness) {
            auto S = parse_partition(values);
            ConstructionOptions co;
            co.y0 = y0;
            auto c = build_construction(S, L, epsilon, co);
            if (!out_path.empty())
                io::write_file(out_path, io::render_instance(c.instance));
            auto arr = [](const std::vector<double>& v, std::size_t from) {
                json a = json::array();
                for (std::size_t i = from; i < v.size(); ++i)
                    a.push_back(io::round_sig(v[i]));
                return a;
            };
            json j;
            j["base_height_note"] = "base at height L/3; L/2 is the distance from the base to the line point C";
            j["instance"] = io::instance_to_json(c.instance);
            j["construction"] = {{"values_sorted", arr(S.values, 0)},
                                 {"K", io::round_sig(c.K)},
                                 {"C", io::round_sig(c.C)},
                                 {"c_point", io::round_sig(c.c_point)},
                                 {"y", arr(c.y, 0)},
                                 {"c", arr(c.c, 0)},
                                 {"x", arr(c.x, 1)},
                                 {"b", arr(c.b, 1)},
                                 {"s_prime", arr(c.sprime, 1)},
                                 {"operations", c.operations}};
            if (verify) {
                VerifyOptions vo;
                vo.delta = verify_delta;
                vo.time_budget_s = time_budget;
                auto rep = verify_reduction(S, c, vo);
                j["verification"] = {{"partition_M2", io::round_sig(rep.partition_m2)},
                                     {"predicted_makespan", io::round_sig(rep.predicted)},
                                     {"minsum_tours", rep.minsum_tours},
                                     {"minsum_one_tour_per_segment", rep.minsum_per_segment},
                                     {"best_assignment_makespan", io::round_sig(rep.assignment_makespan)},
                                     {"exact_makespan", rep.exact_makespan ? json(io::round_sig(*rep.exact_makespan)) : json(nullptr)},
                                     {"exact_optimal", rep.exact_optimal},
                                     {"exact_slack", io::round_sig(rep.exact_slack)},
                                     {"ok", rep.ok()},
                                     {"failures", rep.failures}};
                std::cout << j.dump(2) << "\n";
                return rep.ok() ? 0 : 2;
            }
            std::cout << j.dump(2) << "\n";
        } else if (*bench_cmd) {
            bo.preset = preset == "exp1" ? bench::Preset::Exp1 : bench::Preset::Exp2;
            bo.span = span;
            auto rows = bench::run_experiment(bo);
            auto summary = bench::summarize(rows);
            std::filesystem::create_directories(out_dir);
            namespace fs = std::filesystem;
            io::write_file((fs::path(out_dir) / "scenarios.csv").string(), bench::to_csv(rows));
            io::write_file((fs::path(out_dir) / "summary.json").string(), bench::summary_json(summary).dump(2) + "\n");
            std::vector<double> d, dI;
            for (const auto& r : rows) {
                if (r.result.exact_optimal && r.result.delta_emp) {
                    d.push_back(*r.result.delta_emp);
                    dI.push_back(*r.result.delta_I_emp);
                }
            }
            io::write_file((fs::path(out_dir) / "delta.svg").string(), bench::histogram_svg(d, "Delta (greedy / optimum)"));
            io::write_file((fs::path(out_dir) / "delta_I.svg").string(), bench::histogram_svg(dI, "Delta_I (improved / optimum)"));
            std::cout << bench::summary_text(summary);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
