#pragma once

// Instance and plan files. Numbers are written with 12 significant digits.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "segcover/core.hpp"

namespace segcover::io {

using json = nlohmann::json;

/// Rounds to the value printed with 12 significant digits.
inline double round_sig(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

inline json instance_to_json(const Instance& inst)
{
    json segs = json::array();
    for (const auto& s : inst.segments)
        segs.push_back({round_sig(s.left), round_sig(s.right)});
    return json{{"base", {round_sig(inst.base.x), round_sig(inst.base.y)}},
                {"L", round_sig(inst.budget_L)},
                {"segments", segs}};
}

inline std::string render_instance(const Instance& inst)
{
    return instance_to_json(inst).dump(2) + "\n";
}

inline Instance instance_from_json(const json& j)
{
    try {
        const auto& b = j.at("base");
        if (!b.is_array() || b.size() != 2)
            throw Error("instance file: `base` must be [x, y]");
        BasePoint base{b[0].get<double>(), b[1].get<double>()};
        double L = j.at("L").get<double>();
        std::vector<Segment> segs;
        for (const auto& s : j.at("segments")) {
            if (!s.is_array() || s.size() != 2)
                throw Error("instance file: each segment must be [left, right]");
            segs.push_back({s[0].get<double>(), s[1].get<double>()});
        }
        return make_instance(base, L, std::move(segs));
    } catch (const json::exception& e) {
        throw Error(std::string("instance file: ") + e.what());
    }
}

inline Instance parse_instance(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("instance file: ") + e.what());
    }
    return instance_from_json(j);
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path);
    out << text;
}

inline Instance load_instance(const std::string& path)
{
    return parse_instance(read_file(path));
}

inline json tour_to_json(const Tour& t)
{
    return json{{"p", round_sig(t.p)}, {"q", round_sig(t.q)}, {"length", round_sig(t.length)}};
}

/// Plan object; callers append `certificate`, `improved` and `moves` as needed.
inline json plan_to_json(const Instance& inst, const Plan& plan)
{
    json drones = json::array();
    for (const auto& d : plan.drones) {
        json tours = json::array();
        for (const auto& t : d)
            tours.push_back(tour_to_json(t));
        drones.push_back(tours);
    }
    return json{{"drones", drones},
                {"makespan", round_sig(plan.makespan)},
                {"total_length", round_sig(plan.total_length)},
                {"covered", coverage_gaps(inst, plan).empty()}};
}

inline Plan plan_from_json(const json& j)
{
    std::vector<std::vector<Tour>> drones;
    for (const auto& d : j.at("drones")) {
        std::vector<Tour> tours;
        for (const auto& t : d)
            tours.push_back({t.at("p").get<double>(), t.at("q").get<double>(), t.at("length").get<double>()});
        drones.push_back(std::move(tours));
    }
    return make_plan(std::move(drones));
}

} // namespace segcover::io
