#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hunt/agent.hpp"

namespace hunt {

enum class Algo { kNaive, kAlternate, kBipartite, kMarker, kMilestone, kAuto };

const char* algo_name(Algo a);
std::optional<Algo> algo_from_name(const std::string& name);

// All hunts read only the agent view. `max_traversals` is a debugging guard
// sized well above the theorem bounds by the caller; 0 disables it.

HuntResult hunt_naive(AgentView& view, std::uint64_t max_traversals = 0);

HuntResult hunt_alternate(AgentView& view, std::uint64_t max_traversals = 0);

HuntResult hunt_bipartite(AgentView& view, std::uint64_t max_traversals = 0);

HuntResult hunt_marker(AgentView& view, std::uint64_t max_traversals = 0);

HuntResult hunt_milestone(AgentView& view, std::uint64_t max_traversals = 0);

// Probes the checker windows from the current (pebbled) node and classifies
// it. `hint_port` carries the single corroborated pebble find, when one
// identifies the next node of the path.
struct MilestoneVerdict {
  bool milestone = false;
  bool encoding_on_first_half = false;
  int hint_port = -1;
};
MilestoneVerdict checker_for_milestone(AgentView& view);

}  // namespace hunt
