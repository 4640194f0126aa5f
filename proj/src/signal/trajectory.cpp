#include "t3/signal/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace t3::signal {

bool TimedTrajectory::channel_at(const std::string& name, double t) const {
    auto it = channels.find(name);
    if (it == channels.end()) throw std::invalid_argument("unknown channel: " + name);
    const auto& ch = it->second;
    bool value = false;
    for (const auto& [ct, cv] : ch) {
        if (ct > t) break;
        value = cv;
    }
    return value;
}

void TimedTrajectory::validate() const {
    if (samples.empty()) throw std::invalid_argument("trajectory has no samples");
    for (size_t i = 0; i < samples.size(); ++i) {
        const Sample& s = samples[i];
        if (!std::isfinite(s.x) || !std::isfinite(s.y) || !std::isfinite(s.t))
            throw std::invalid_argument("trajectory contains non-finite sample");
        if (i > 0 && !(s.t > samples[i - 1].t))
            throw std::invalid_argument("trajectory timestamps are not strictly increasing");
    }
}

std::string subgoal_text(const Subgoal& g) {
    if (const auto* label = std::get_if<std::string>(&g)) return *label;
    const Point& p = std::get<Point>(g);
    std::ostringstream os;
    os.precision(9);
    os << "(" << p.x << ", " << p.y << ")";
    return os.str();
}

Point subgoal_position(const Subgoal& g, const world::Scenario& scenario) {
    if (const auto* label = std::get_if<std::string>(&g)) {
        const world::Region& r = scenario.require(*label);
        return Point{r.box.cx(), r.box.cy()};
    }
    return std::get<Point>(g);
}

TimedTrajectory resample(const TimedTrajectory& traj, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("resample dt must be positive");
    traj.validate();
    if (traj.samples.size() < 2)
        throw std::invalid_argument("resample needs at least two samples");

    const double t0 = traj.start_time();
    const double tn = traj.end_time();
    TimedTrajectory out;
    size_t seg = 0;
    for (long k = 0;; ++k) {
        double t = t0 + static_cast<double>(k) * dt;
        if (t > tn - 1e-12 * std::max(1.0, std::abs(tn))) break;
        while (seg + 2 < traj.samples.size() && traj.samples[seg + 1].t <= t) ++seg;
        const Sample& a = traj.samples[seg];
        const Sample& b = traj.samples[seg + 1];
        double u = (t - a.t) / (b.t - a.t);
        u = std::clamp(u, 0.0, 1.0);
        out.samples.push_back({a.x + u * (b.x - a.x), a.y + u * (b.y - a.y), t});
    }
    out.samples.push_back(traj.samples.back());

    // Channels: zero-order hold re-evaluated at the new timestamps.
    for (const auto& [name, ch] : traj.channels) {
        std::vector<std::pair<double, bool>> resampled;
        for (const Sample& s : out.samples) resampled.emplace_back(s.t, traj.channel_at(name, s.t));
        out.channels[name] = std::move(resampled);
    }
    return out;
}

TimedTrajectory derive_channels(const TimedTrajectory& traj, const world::Scenario& scenario) {
    traj.validate();
    TimedTrajectory out = traj;

    for (const world::Region& key : scenario.regions) {
        if (key.kind != world::RegionKind::KeyPickup) continue;
        std::vector<std::pair<double, bool>> ch;
        bool held = false;
        for (const Sample& s : traj.samples) {
            held = held || key.box.contains(s.x, s.y);
            ch.emplace_back(s.t, held);
        }
        out.channels[key.label] = std::move(ch);
    }

    if (scenario.has_kind(world::RegionKind::Charger)) {
        std::vector<std::pair<double, bool>> ch;
        bool charged = false;
        const world::Region* current = nullptr;  // charger of the ongoing dwell run
        double run_start = 0.0;
        for (const Sample& s : traj.samples) {
            const world::Region* inside = nullptr;
            for (const world::Region& r : scenario.regions)
                if (r.kind == world::RegionKind::Charger && r.box.contains(s.x, s.y)) {
                    inside = &r;
                    break;
                }
            if (inside != current) {
                current = inside;
                run_start = s.t;
            }
            if (current && s.t - run_start >= kChargeDwellSeconds - 1e-12) charged = true;
            ch.emplace_back(s.t, charged);
        }
        out.channels["charged"] = std::move(ch);
    }
    return out;
}

std::string export_trajectory(const TimedTrajectory& traj) {
    traj.validate();
    std::vector<std::string> names;
    for (const auto& [name, ch] : traj.channels) names.push_back(name);

    std::ostringstream os;
    os << "t x y";
    for (const std::string& n : names) os << " " << n;
    os << "\n";
    char buf[64];
    for (const Sample& s : traj.samples) {
        std::snprintf(buf, sizeof buf, "%.9g %.9g %.9g", s.t, s.x, s.y);
        os << buf;
        for (const std::string& n : names) os << " " << (traj.channel_at(n, s.t) ? 1 : 0);
        os << "\n";
    }
    return os.str();
}

TimedTrajectory import_trajectory(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("empty trajectory file");
    std::istringstream hs(header);
    std::vector<std::string> cols;
    for (std::string col; hs >> col;) cols.push_back(col);
    if (cols.size() < 3 || cols[0] != "t" || cols[1] != "x" || cols[2] != "y")
        throw std::runtime_error("trajectory header must start with 't x y'");

    TimedTrajectory traj;
    for (std::string line; std::getline(in, line);) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Sample s{};
        if (!(ls >> s.t >> s.x >> s.y)) throw std::runtime_error("malformed trajectory row: " + line);
        for (size_t c = 3; c < cols.size(); ++c) {
            int v;
            if (!(ls >> v)) throw std::runtime_error("malformed channel value in row: " + line);
            traj.channels[cols[c]].emplace_back(s.t, v != 0);
        }
        traj.samples.push_back(s);
    }
    traj.validate();
    return traj;
}

void save_trajectory(const TimedTrajectory& traj, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write trajectory file: " + path);
    out << export_trajectory(traj);
}

TimedTrajectory load_trajectory(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trajectory file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return import_trajectory(buf.str());
}

}  // namespace t3::signal
