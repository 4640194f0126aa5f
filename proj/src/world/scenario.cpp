#include "t3/world/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace t3::world {

using nlohmann::json;

std::string to_string(RegionKind k) {
    switch (k) {
        case RegionKind::Room: return "room";
        case RegionKind::Obstacle: return "obstacle";
        case RegionKind::Wall: return "wall";
        case RegionKind::KeyPickup: return "key-pickup";
        case RegionKind::Door: return "door";
        case RegionKind::Goal: return "goal";
        case RegionKind::Charger: return "charger";
    }
    throw std::logic_error("unreachable");
}

RegionKind region_kind_from_string(const std::string& s) {
    if (s == "room") return RegionKind::Room;
    if (s == "obstacle") return RegionKind::Obstacle;
    if (s == "wall") return RegionKind::Wall;
    if (s == "key-pickup") return RegionKind::KeyPickup;
    if (s == "door") return RegionKind::Door;
    if (s == "goal") return RegionKind::Goal;
    if (s == "charger") return RegionKind::Charger;
    throw std::invalid_argument("unknown region kind: " + s);
}

const Region* Scenario::find(const std::string& label) const {
    for (const Region& r : regions)
        if (r.label == label) return &r;
    return nullptr;
}

const Region& Scenario::require(const std::string& label) const {
    if (const Region* r = find(label)) return *r;
    throw std::invalid_argument("scenario '" + name + "' has no region '" + label + "'");
}

bool Scenario::has_kind(RegionKind k) const {
    return std::any_of(regions.begin(), regions.end(), [k](const Region& r) { return r.kind == k; });
}

double signed_distance(const Box& b, double x, double y) {
    if (b.contains(x, y))
        return std::min(std::min(x - b.x0, b.x1 - x), std::min(y - b.y0, b.y1 - y));
    double dx = std::max({b.x0 - x, 0.0, x - b.x1});
    double dy = std::max({b.y0 - y, 0.0, y - b.y1});
    return -std::hypot(dx, dy);
}

double signed_distance(const Scenario& s, const std::string& label, double x, double y) {
    return signed_distance(s.require(label).box, x, y);
}

std::string nearest_charger(const Scenario& s, double x, double y) {
    const Region* best = nullptr;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const Region& r : s.regions) {
        if (r.kind != RegionKind::Charger) continue;
        double ext = std::max(0.0, -signed_distance(r.box, x, y));
        if (ext < best_dist || (ext == best_dist && best && r.label < best->label)) {
            best = &r;
            best_dist = ext;
        }
    }
    if (!best) throw std::invalid_argument("scenario '" + s.name + "' defines no chargers");
    return best->label;
}

namespace {

void validate(const Scenario& s, const std::string& origin) {
    auto bail = [&](const std::string& what) {
        throw std::runtime_error(origin + ": " + what);
    };
    if (s.name.empty()) bail("scenario name must be non-empty");
    if (!(s.v_max > 0.0)) bail("v_max must be positive");
    if (!(s.omega_max > 0.0)) bail("omega_max must be positive");
    for (const Region& r : s.regions) {
        if (!(r.box.x0 < r.box.x1 && r.box.y0 < r.box.y1))
            bail("region '" + r.label + "' has non-positive area");
        if (s.find(r.label) != &r) bail("duplicate region label '" + r.label + "'");
    }
    for (const Region& r : s.regions) {
        if ((r.kind == RegionKind::Obstacle || r.kind == RegionKind::Wall) &&
            r.box.contains(s.initial_state.x, s.initial_state.y))
            bail("initial state lies inside " + to_string(r.kind) + " '" + r.label + "'");
    }
    for (const auto& [door, key] : s.key_bindings) {
        const Region* d = s.find(door);
        const Region* k = s.find(key);
        if (!d || d->kind != RegionKind::Door) bail("key binding references unknown door '" + door + "'");
        if (!k || k->kind != RegionKind::KeyPickup)
            bail("key binding references unknown key '" + key + "'");
    }
    for (const Region& r : s.regions)
        if (r.kind == RegionKind::Door && !s.key_bindings.count(r.label))
            bail("door '" + r.label + "' has no bound key");
}

}  // namespace

Scenario scenario_from_json_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(origin + ": malformed scenario file: " + e.what());
    }
    Scenario s;
    try {
        s.name = j.at("name").get<std::string>();
        for (const json& jr : j.at("regions")) {
            Region r;
            r.label = jr.at("label").get<std::string>();
            r.kind = region_kind_from_string(jr.at("kind").get<std::string>());
            r.box = Box{jr.at("x0").get<double>(), jr.at("y0").get<double>(),
                        jr.at("x1").get<double>(), jr.at("y1").get<double>()};
            s.regions.push_back(std::move(r));
        }
        const json& init = j.at("initial_state");
        s.initial_state = Pose{init.at("x").get<double>(), init.at("y").get<double>(),
                               init.at("theta").get<double>()};
        s.v_max = j.at("v_max").get<double>();
        s.omega_max = j.at("omega_max").get<double>();
        if (j.contains("key_bindings"))
            for (const json& kb : j.at("key_bindings"))
                s.key_bindings[kb.at("door").get<std::string>()] = kb.at("key").get<std::string>();
    } catch (const json::exception& e) {
        throw std::runtime_error(origin + ": scenario schema violation: " + e.what());
    }
    validate(s, origin);
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json_text(buf.str(), path);
}

std::string scenario_to_json_text(const Scenario& s) {
    json j;
    j["name"] = s.name;
    j["regions"] = json::array();
    for (const Region& r : s.regions)
        j["regions"].push_back({{"label", r.label},
                                {"kind", to_string(r.kind)},
                                {"x0", r.box.x0},
                                {"y0", r.box.y0},
                                {"x1", r.box.x1},
                                {"y1", r.box.y1}});
    j["initial_state"] = {{"x", s.initial_state.x}, {"y", s.initial_state.y}, {"theta", s.initial_state.theta}};
    j["v_max"] = s.v_max;
    j["omega_max"] = s.omega_max;
    j["key_bindings"] = json::array();
    for (const auto& [door, key] : s.key_bindings)
        j["key_bindings"].push_back({{"door", door}, {"key", key}});
    return j.dump(2) + "\n";
}

void save_scenario(const Scenario& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write scenario file: " + path);
    out << scenario_to_json_text(s);
}

}  // namespace t3::world
