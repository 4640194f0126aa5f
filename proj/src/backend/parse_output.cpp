#include "t3/backend/parse_output.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace t3::backend {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool parse_point(const std::string& text, signal::Point& out) {
    size_t comma = text.find(',');
    if (comma == std::string::npos) return false;
    std::istringstream xs(trim(text.substr(0, comma)));
    std::istringstream ys(trim(text.substr(comma + 1)));
    std::string rest;
    return (xs >> out.x) && !(xs >> rest) && (ys >> out.y) && !(ys >> rest) &&
           std::isfinite(out.x) && std::isfinite(out.y);
}

bool parse_goal(const std::string& text, signal::Subgoal& out) {
    if (text.empty()) return false;
    if (text.find(',') != std::string::npos) {
        signal::Point p;
        if (!parse_point(text, p)) return false;
        out = p;
        return true;
    }
    for (char c : text)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    out = text;
    return true;
}

template <typename T>
PlanResult<T> reject(const std::string& raw, std::string why) {
    PlanResult<T> r;
    r.raw = raw;
    r.error = std::move(why);
    return r;
}

}  // namespace

PlanResult<signal::SubgoalSequence> parse_subgoals(const std::string& raw) {
    signal::SubgoalSequence seq;
    std::istringstream in(raw);
    int lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        line = trim(line);
        if (line.empty()) continue;
        if (line.rfind("GOTO ", 0) != 0)
            return reject<signal::SubgoalSequence>(
                raw, "line " + std::to_string(lineno) + ": expected 'GOTO <label>' or 'GOTO <x>,<y>'");
        signal::Subgoal goal;
        if (!parse_goal(trim(line.substr(5)), goal))
            return reject<signal::SubgoalSequence>(
                raw, "line " + std::to_string(lineno) + ": malformed subgoal '" + line + "'");
        seq.push_back(std::move(goal));
    }
    if (seq.empty()) return reject<signal::SubgoalSequence>(raw, "no subgoals in output");
    PlanResult<signal::SubgoalSequence> r;
    r.raw = raw;
    r.value = std::move(seq);
    return r;
}

PlanResult<signal::TimedWaypoints> parse_waypoints(const std::string& raw) {
    signal::TimedWaypoints wps;
    std::istringstream in(raw);
    int lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        line = trim(line);
        if (line.empty()) continue;
        size_t at = line.find('@');
        if (at == std::string::npos)
            return reject<signal::TimedWaypoints>(
                raw, "line " + std::to_string(lineno) + ": expected '<goal> @ <t>'");
        signal::TimedWaypoint wp;
        if (!parse_goal(trim(line.substr(0, at)), wp.goal))
            return reject<signal::TimedWaypoints>(
                raw, "line " + std::to_string(lineno) + ": malformed goal '" + line + "'");
        std::istringstream ts(trim(line.substr(at + 1)));
        std::string rest;
        if (!(ts >> wp.t) || (ts >> rest) || !std::isfinite(wp.t))
            return reject<signal::TimedWaypoints>(
                raw, "line " + std::to_string(lineno) + ": malformed timestamp '" + line + "'");
        wps.push_back(std::move(wp));
    }
    if (wps.empty()) return reject<signal::TimedWaypoints>(raw, "no waypoints in output");
    if (wps.front().t < 0.0)
        return reject<signal::TimedWaypoints>(raw, "first timestamp must be >= 0");
    for (size_t i = 1; i < wps.size(); ++i)
        if (!(wps[i].t > wps[i - 1].t))
            return reject<signal::TimedWaypoints>(
                raw, "timestamps must be strictly increasing (waypoint " + std::to_string(i + 1) + ")");
    PlanResult<signal::TimedWaypoints> r;
    r.raw = raw;
    r.value = std::move(wps);
    return r;
}

std::string format_subgoals(const signal::SubgoalSequence& subgoals) {
    std::ostringstream os;
    os.precision(9);
    for (const auto& g : subgoals) {
        os << "GOTO ";
        if (const auto* label = std::get_if<std::string>(&g))
            os << *label;
        else
            os << std::get<signal::Point>(g).x << "," << std::get<signal::Point>(g).y;
        os << "\n";
    }
    return os.str();
}

std::string format_waypoints(const signal::TimedWaypoints& waypoints) {
    std::ostringstream os;
    os.precision(9);
    for (const auto& wp : waypoints) {
        if (const auto* label = std::get_if<std::string>(&wp.goal))
            os << *label;
        else
            os << std::get<signal::Point>(wp.goal).x << "," << std::get<signal::Point>(wp.goal).y;
        os << " @ " << wp.t << "\n";
    }
    return os.str();
}

}  // namespace t3::backend
