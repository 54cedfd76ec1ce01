#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "hunt/graph.hpp"
#include "hunt/oracle.hpp"

namespace hunt {

// What the agent may see at its current node. No node identity, no
// coordinates, no global quantities.
struct Observation {
  int degree = 0;
  bool pebble = false;
  bool treasure = false;
  int arrival_port = -1;  // port through which the agent entered; -1 at the start
};

struct TranscriptStep {
  std::uint16_t out_port = 0;
  std::uint16_t in_port = 0;
  std::uint16_t degree = 0;
  std::uint8_t flags = 0;  // bit0 = pebble, bit1 = treasure

  bool pebble() const { return flags & 1; }
  bool treasure() const { return flags & 2; }
};

enum class EventKind {
  kSearchNodeSet,
  kPossibility1,
  kPossibility2,
  kMarkerFound,
  kMilestoneVerdict,
  kLightVerdict,
  kBranchRejected,
};

const char* event_name(EventKind k);

struct HuntEvent {
  EventKind kind;
  std::uint64_t time;  // transcript length when the event fired
};

struct HuntResult {
  bool found = false;
  std::uint64_t time = 0;
  int pebbles_seen = 0;  // distinct pebbled nodes entered
  std::vector<TranscriptStep> transcript;
  std::vector<HuntEvent> events;
  std::string note;  // non-empty on failure
};

// The information barrier: algorithms move through ports and observe; node
// ids stay private to this class.
class AgentView {
 public:
  AgentView(const InstanceSpec& inst, const PebblePlacement& placement);

  const Observation& current() const { return obs_; }
  const Observation& traverse(int port);
  bool at_treasure() const { return obs_.treasure; }
  std::uint64_t time() const { return static_cast<std::uint64_t>(steps_.size()); }
  const std::vector<TranscriptStep>& transcript() const { return steps_; }
  int pebbles_seen() const { return pebbles_seen_; }

 private:
  const PortLabeledGraph* graph_;
  std::vector<bool> pebbled_;
  std::vector<bool> pebble_counted_;
  int treasure_;
  int position_;
  int root_marker_ = -1;  // node the current bounded search is rooted at
  Observation obs_;
  std::vector<TranscriptStep> steps_;
  int pebbles_seen_ = 0;

  Observation observe(int arrival) const;

  friend struct SearchEngine;
};

AgentView begin_hunt(const InstanceSpec& inst, const PebblePlacement& placement);

// Walks seq, reports the final observation, then walks back. Stops early
// (without returning) if the treasure is entered mid-walk.
Observation replay_ports(AgentView& view, const std::vector<int>& seq);

enum class HitDecision {
  kResume,             // reject this walk, keep enumerating
  kAccept,             // stop the search with the agent at the hit node
  kRecordAndComplete,  // remember the hit, finish enumerating up to its depth
};

struct SearchHit {
  std::vector<int> ports;  // walk from the search root
  Observation obs;
};

struct SearchRecord {
  std::vector<int> ports;
  int final_in_port;
};

struct SearchOutcome {
  enum class Kind { kTreasure, kAccepted, kCompleted, kExhausted } kind;
  SearchHit hit;                      // kAccepted
  std::vector<SearchRecord> records;  // kCompleted: first entry is the accepted hit
};

using StopFn = std::function<bool(const Observation&)>;
using HitFn = std::function<HitDecision(const SearchHit&)>;

// Enumerates port sequences of length <= radius in increasing lexicographic
// order, physically walking each prefix and backtracking. The walk never
// takes its arrival port (no immediate reversal); whenever it stands on the
// root node the excluded ports are skipped as well. Entering the treasure
// halts everything. A node where `stop` holds is reported and never walked
// through; `on_hit` decides whether to resume, accept, or switch to
// record-and-complete mode. Every forward and backward traversal counts.
SearchOutcome bounded_path_search(AgentView& view, int radius, const std::set<int>& excluded_root_ports,
                                  const StopFn& stop, const HitFn& on_hit = {});

std::string transcript_to_text(const std::vector<TranscriptStep>& steps);

}  // namespace hunt
