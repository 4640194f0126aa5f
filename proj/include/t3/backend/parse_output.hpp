#pragma once

#include <string>

#include "t3/backend/backend.hpp"
#include "t3/signal/trajectory.hpp"

namespace t3::backend {

// Strict line-oriented planner output grammars. Subgoals:
//   GOTO <label>        or  GOTO <x>,<y>
// Timed waypoints:
//   <label> @ <t>       or  <x>,<y> @ <t>
// Blank lines are ignored; anything else is a parse error. Waypoint
// timestamps must be strictly increasing and start at t >= 0.
PlanResult<signal::SubgoalSequence> parse_subgoals(const std::string& raw);
PlanResult<signal::TimedWaypoints> parse_waypoints(const std::string& raw);

std::string format_subgoals(const signal::SubgoalSequence& subgoals);
std::string format_waypoints(const signal::TimedWaypoints& waypoints);

}  // namespace t3::backend
