#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hunt/algorithms.hpp"
#include "hunt/graph.hpp"
#include "hunt/oracle.hpp"

namespace hunt {

struct ExperimentRecord {
  Family family = Family::kGeneral;
  int delta = 0;
  int distance = 0;
  std::uint64_t seed = 0;
  std::string regime;
  int k = 0;
  int c = 0;  // > 0 on milestone rows
  std::string status;  // ok | skip | fail
  bool found = false;
  std::uint64_t time = 0;
  double bound = 0.0;   // regime formula, without the headroom constant
  double ratio = 0.0;   // time / bound
  bool pass = false;    // time <= kBoundHeadroom * bound
  std::string note;
};

inline constexpr double kBoundHeadroom = 16.0;

struct LowerBoundRecord {
  int delta = 0;
  int distance = 0;
  int k = 0;
  unsigned long long leaf_count = 0;  // delta * (delta-1)^(D-1)
  unsigned long long x_min = 0;       // least x with x * C(x, k) >= leaf_count
  double formula = 0.0;               // (k/e)^(k/(k+1)) * (delta-1)^(D/(k+1))
  bool pass = false;                  // x_min >= formula
};

struct SweepConfig {
  std::vector<Family> families;
  std::vector<int> deltas;
  std::vector<int> distances;
  std::vector<int> ks;  // absolute pebble counts (0 = naive)
  std::vector<int> cs;  // milestone rows, k = c * D
  std::vector<std::uint64_t> seeds;
  Algo algo = Algo::kAuto;
};

SweepConfig parse_config(const std::string& text);

struct RegimeChoice {
  bool ok = false;
  Regime regime = Regime::kNaive;
  Algo algo = Algo::kNaive;
  int c = 0;
  std::string reason;
};
RegimeChoice choose_regime(const InstanceSpec& inst, int k);

struct PreparedPlacement {
  PebblePlacement placement;
  std::string plan_json;
};
PreparedPlacement place_for(const InstanceSpec& inst, Regime regime, int k_or_c);

// Evaluates the regime bound formula for a record's parameters. Milestone
// rows need to know whether the path carries a fat node.
double bound_value(const std::string& regime, int delta, int distance, int k, int c, bool fat_on_path);

bool path_has_fat_node(const InstanceSpec& inst, int per_hop);

using RunObserver = std::function<void(const ExperimentRecord&, const InstanceSpec&,
                                       const PebblePlacement&, const HuntResult&)>;

std::vector<ExperimentRecord> run_experiment(const SweepConfig& config, const RunObserver& observer = {});

// Runs one prepared cell; exposed for the CLI and the acceptance suite.
ExperimentRecord run_cell(const InstanceSpec& inst, int k, Algo requested, const RunObserver& observer = {});

LowerBoundRecord check_lower_bound_counting(int delta, int distance, int k);

struct SinglePebbleLevel {
  int level = 0;
  std::uint64_t worst_time = 0;
};
struct SinglePebbleTable {
  int delta = 0;
  int depth = 0;
  std::vector<SinglePebbleLevel> levels;  // one row per pebble level 1..D-1
  int best_level = 0;
  bool pass = false;  // best level is floor(D/2) or ceil(D/2)
};
SinglePebbleTable brute_force_optimal_single_pebble(int delta, int depth);

enum class ReportFormat { kCsv, kJson };
std::string emit_report(const std::vector<ExperimentRecord>& records, ReportFormat format);
std::string emit_lower_bound_report(const std::vector<LowerBoundRecord>& records, ReportFormat format);

// Replays a transcript on the hidden instance, verifying every observation.
struct ReplayCheck {
  bool ok = false;
  std::string issue;
  std::vector<int> positions;  // node ids; positions[i] = node after i steps
};
ReplayCheck replay_transcript(const InstanceSpec& inst, const PebblePlacement& placement,
                              const std::vector<TranscriptStep>& steps);

// Search-node progress: the BFS level of successive anchor events must
// strictly increase.
struct ProgressCheck {
  bool ok = false;
  std::string issue;
};
ProgressCheck check_search_progress(const InstanceSpec& inst, const PebblePlacement& placement,
                                    const HuntResult& result);

}  // namespace hunt
