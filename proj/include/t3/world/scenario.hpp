#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace t3::world {

enum class RegionKind { Room, Obstacle, Wall, KeyPickup, Door, Goal, Charger };

std::string to_string(RegionKind k);
RegionKind region_kind_from_string(const std::string& s);

// Axis-aligned box, x0 < x1 and y0 < y1 (positive area).
struct Box {
    double x0, y0, x1, y1;

    double cx() const { return 0.5 * (x0 + x1); }
    double cy() const { return 0.5 * (y0 + y1); }
    bool contains(double x, double y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
};

struct Region {
    std::string label;
    RegionKind kind;
    Box box;
};

struct Pose {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;
};

// Immutable after load; safe to share across threads.
struct Scenario {
    std::string name;
    std::vector<Region> regions;  // load order preserved
    Pose initial_state;
    double v_max = 1.0;
    double omega_max = 1.0;
    std::map<std::string, std::string> key_bindings;  // door label -> key label

    const Region* find(const std::string& label) const;
    const Region& require(const std::string& label) const;  // throws on unknown label
    bool has_kind(RegionKind k) const;
};

// Signed distance to the region's box: positive inside (distance to the
// nearest edge), negative outside (minus the Euclidean distance to the box).
double signed_distance(const Box& box, double x, double y);
double signed_distance(const Scenario& s, const std::string& label, double x, double y);

// Charger with minimum exterior distance; ties broken by lexicographic label.
std::string nearest_charger(const Scenario& s, double x, double y);

Scenario load_scenario(const std::string& path);
Scenario scenario_from_json_text(const std::string& text, const std::string& origin);
void save_scenario(const Scenario& s, const std::string& path);
std::string scenario_to_json_text(const Scenario& s);

}  // namespace t3::world
