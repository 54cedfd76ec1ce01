#pragma once

#include <set>
#include <string>
#include <vector>

#include "hunt/graph.hpp"

namespace hunt {

struct PebblePlacement {
  std::set<int> pebbled;  // node ids; at most one pebble per node
  int budget = 0;

  int used() const { return static_cast<int>(pebbled.size()); }
  bool has(int node) const { return pebbled.count(node) != 0; }
};

// ---- regime plans -------------------------------------------------------

struct TreePlan {
  std::vector<int> levels;  // path indices carrying a pebble
};

struct AlternatePlan {
  std::vector<int> levels;
};

struct BipartitePlan {
  std::vector<int> levels;
  int gap = 0;          // distance from s to the first pebble (odd)
  int dropped = 0;      // pebbles the cascade could not fit before t
};

struct MarkerAnchor {
  bool is_marker = false;
  int first_index = 0;  // path index of the anchor's first pebbled node
  int last_index = 0;   // == first_index for a lone pebble
};

struct MarkerPlan {
  int group_count = 0;  // number of complete marker+pebble groups
  int remainder = 0;    // k mod 3 selects the tail shape
  int gap = 0;          // exact hop distance between consecutive anchors
  std::vector<MarkerAnchor> anchors;
};

struct MilestoneInfo {
  int node = -1;
  int path_index = -1;
  int alpha = 0;
  bool encoding_on_first_half = false;
  std::vector<std::string> strings;      // raw advice strings, in order
  std::vector<int> values;               // integer value of each string
  std::vector<int> encoding_ports;       // ports at the milestone holding a pebbled neighbor
  std::vector<int> encoding_nodes;       // the pebbled encoding neighbors (set U)
  std::vector<int> consistency_ports;    // set R, deduplicated and sorted
  int skipped_index = -1;                // path index left without a pebble
};

struct MilestonePlan {
  int per_hop = 0;         // c, with k = c * D
  int fat_threshold = 0;   // minimum degree of a fat node for this c
  std::vector<MilestoneInfo> milestones;
  std::vector<int> path_pebble_indices;
  int demoted = 0;         // fat nodes rejected by the plan self-check
};

// ---- operations ---------------------------------------------------------

int fat_threshold_for(int per_hop);  // 10(c+1)+6

struct TreePlacement {
  PebblePlacement placement;
  TreePlan plan;
};
TreePlacement place_tree_levels(const InstanceSpec& inst, int k);

struct AlternatePlacement {
  PebblePlacement placement;
  AlternatePlan plan;
};
AlternatePlacement place_alternate_levels(const InstanceSpec& inst, int k);

struct MarkerPlacement {
  PebblePlacement placement;
  MarkerPlan plan;
};
MarkerPlacement place_marker_groups(const InstanceSpec& inst, int k);

struct BipartitePlacement {
  PebblePlacement placement;
  BipartitePlan plan;
};
BipartitePlacement place_bipartite_parity(const InstanceSpec& inst, int k);

struct MilestonePlacement {
  PebblePlacement placement;
  MilestonePlan plan;
};
MilestonePlacement place_milestone_encoding(const InstanceSpec& inst, int per_hop);

// Transformed binary strings: 1 -> "11", 0 -> "10"; the pair "00" never
// appears inside a string and terminates the port scan.
std::string transform_encode(const std::string& bits);
std::string transform_decode(const std::string& transformed);

enum class Regime { kNaive, kTree, kAlternate, kBipartite, kMarker, kMilestone };

const char* regime_name(Regime r);

struct Feasibility {
  bool feasible = false;
  std::string reason;
};
Feasibility placement_feasible(const InstanceSpec& inst, Regime regime, int k_or_c);

// Number of even path levels in [2, D-1]; the alternate placement needs at
// least this many pebbles.
int alternate_even_levels(int distance);

// Gap value the marker case formulas produce (floor), or -1 when k < 2.
int marker_gap(int distance, int k);

// Contiguous partition of `range_size` slots into 2^bits blocks of
// ceil(range_size / 2^bits); returns [begin, end) of block `value`.
std::pair<int, int> partition_block(int range_size, int bits, int value);

// Port-half convention shared by the oracle and the agent. The second half
// starts at floor(degree / 2), matching the checker's probe windows.
struct HalfSplit {
  int begin;
  int end;
};
HalfSplit half_ports(int degree, bool first);

// Ports of an encoding half eligible for bits: the half's lead port stays
// empty (it aligns the checker windows to the first transformed bit) and the
// arrival port is never used.
std::vector<int> encoding_kept_ports(int degree, bool first_half, int arrival);

int bits_value(const std::string& bits);  // big-endian {0,1} string

// Placement file round-trip (pebble lines followed by a plan JSON blob).
std::string write_placement(const PebblePlacement& placement, const std::string& plan_json);
struct PlacementDoc {
  PebblePlacement placement;
  std::string plan_json;
};
PlacementDoc parse_placement(const std::string& text);

std::string plan_to_json(const TreePlan& p);
std::string plan_to_json(const AlternatePlan& p);
std::string plan_to_json(const BipartitePlan& p);
std::string plan_to_json(const MarkerPlan& p);
std::string plan_to_json(const MilestonePlan& p);

}  // namespace hunt
