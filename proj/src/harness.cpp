#include "hunt/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace hunt {

namespace {
using nlohmann::ordered_json;
}

SweepConfig parse_config(const std::string& text) {
  SweepConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto split_ints = [](const std::string& v) {
    std::vector<long long> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      out.push_back(std::stoll(item));
    }
    return out;
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
    };
    std::string t = trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw HuntError("config line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key == "families") {
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) {
        auto fam = family_from_name(item);
        if (!fam) throw HuntError("config line " + std::to_string(lineno) + ": unknown family '" + item + "'");
        cfg.families.push_back(*fam);
      }
    } else if (key == "deltas") {
      for (long long v : split_ints(value)) cfg.deltas.push_back(static_cast<int>(v));
    } else if (key == "distances") {
      for (long long v : split_ints(value)) cfg.distances.push_back(static_cast<int>(v));
    } else if (key == "ks") {
      for (long long v : split_ints(value)) cfg.ks.push_back(static_cast<int>(v));
    } else if (key == "cs") {
      for (long long v : split_ints(value)) cfg.cs.push_back(static_cast<int>(v));
    } else if (key == "seeds") {
      for (long long v : split_ints(value)) cfg.seeds.push_back(static_cast<std::uint64_t>(v));
    } else if (key == "algo") {
      auto a = algo_from_name(value);
      if (!a) throw HuntError("config line " + std::to_string(lineno) + ": unknown algo '" + value + "'");
      cfg.algo = *a;
    } else {
      throw HuntError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

RegimeChoice choose_regime(const InstanceSpec& inst, int k) {
  RegimeChoice out;
  const int D = inst.distance;
  if (k == 0) {
    out.ok = true;
    out.regime = Regime::kNaive;
    out.algo = Algo::kNaive;
    return out;
  }
  if (k >= D) {
    if (k % D != 0) {
      out.reason = "budgets between multiples of D are out of scope";
      return out;
    }
    out.ok = true;
    out.regime = Regime::kMilestone;
    out.algo = Algo::kMilestone;
    out.c = k / D;
    return out;
  }
  if (inst.family == Family::kTree || inst.family == Family::kCompleteTree) {
    out.ok = true;
    out.regime = Regime::kTree;
    out.algo = Algo::kAlternate;
    return out;
  }
  if (inst.family == Family::kBipartite) {
    out.ok = true;
    out.regime = Regime::kBipartite;
    out.algo = Algo::kBipartite;
    return out;
  }
  if (k >= (D + 1) / 2) {
    out.ok = true;
    out.regime = Regime::kAlternate;
    out.algo = Algo::kAlternate;
    return out;
  }
  if (k >= 2 && marker_gap(D, k) >= 3) {
    out.ok = true;
    out.regime = Regime::kMarker;
    out.algo = Algo::kMarker;
    return out;
  }
  // Anchor gap too small for markers; the alternate placement still works
  // whenever the even levels fit the budget.
  if (alternate_even_levels(D) <= k) {
    out.ok = true;
    out.regime = Regime::kAlternate;
    out.algo = Algo::kAlternate;
    return out;
  }
  out.reason = (k == 1) ? "single pebble impossibility: one pebble cannot be told apart from a cycle back"
                        : "marker gap below 3 and too few pebbles for alternate levels";
  return out;
}

PreparedPlacement place_for(const InstanceSpec& inst, Regime regime, int k_or_c) {
  PreparedPlacement out;
  switch (regime) {
    case Regime::kNaive:
      out.placement.budget = 0;
      out.plan_json = "{\"regime\":\"naive\"}";
      return out;
    case Regime::kTree: {
      TreePlacement p = place_tree_levels(inst, k_or_c);
      out.placement = std::move(p.placement);
      out.plan_json = plan_to_json(p.plan);
      return out;
    }
    case Regime::kAlternate: {
      AlternatePlacement p = place_alternate_levels(inst, k_or_c);
      out.placement = std::move(p.placement);
      out.plan_json = plan_to_json(p.plan);
      return out;
    }
    case Regime::kBipartite: {
      BipartitePlacement p = place_bipartite_parity(inst, k_or_c);
      out.placement = std::move(p.placement);
      out.plan_json = plan_to_json(p.plan);
      return out;
    }
    case Regime::kMarker: {
      MarkerPlacement p = place_marker_groups(inst, k_or_c);
      out.placement = std::move(p.placement);
      out.plan_json = plan_to_json(p.plan);
      return out;
    }
    case Regime::kMilestone: {
      MilestonePlacement p = place_milestone_encoding(inst, k_or_c);
      out.placement = std::move(p.placement);
      out.plan_json = plan_to_json(p.plan);
      return out;
    }
  }
  throw HuntError("place_for: unknown regime");
}

bool path_has_fat_node(const InstanceSpec& inst, int per_hop) {
  const int beta = fat_threshold_for(per_hop);
  PathP path = shortest_path(inst.graph, inst.start, inst.treasure);
  for (int i = 0; i < inst.distance; ++i)
    if (inst.graph.degree(path.nodes[static_cast<std::size_t>(i)]) >= beta) return true;
  return false;
}

double bound_value(const std::string& regime, int delta, int distance, int k, int c, bool fat_on_path) {
  const double d = static_cast<double>(delta);
  const double D = static_cast<double>(distance);
  if (regime == "naive") return std::pow(d, D);
  if (regime == "tree" || regime == "alternate") {
    const double e = std::ceil(D / (k + 1));
    return k * std::pow(d, e);
  }
  if (regime == "bipartite") {
    const double e = std::ceil(D / k);
    return k * std::pow(d, e);
  }
  if (regime == "marker") {
    const int groups = k / 3;
    const double e = std::ceil(D / (2.0 * groups + 1.0));
    return D * std::pow(d, e);
  }
  if (regime == "milestone") {
    if (!fat_on_path) return static_cast<double>(fat_threshold_for(c)) * D;
    const double shrink = d / std::pow(2.0, c / 2.0);
    return c * D * shrink * shrink + c * D;
  }
  return 0.0;
}

namespace {

std::uint64_t guard_from_bound(double bound) {
  if (!(bound > 0.0)) return 0;
  double g = 64.0 * bound;
  if (g > 9.0e15) return 0;  // effectively unbounded; rely on termination
  return static_cast<std::uint64_t>(g);
}

HuntResult dispatch_hunt(Algo algo, AgentView& view, std::uint64_t guard) {
  switch (algo) {
    case Algo::kNaive: return hunt_naive(view, guard);
    case Algo::kAlternate: return hunt_alternate(view, guard);
    case Algo::kBipartite: return hunt_bipartite(view, guard);
    case Algo::kMarker: return hunt_marker(view, guard);
    case Algo::kMilestone: return hunt_milestone(view, guard);
    case Algo::kAuto: break;
  }
  throw HuntError("dispatch_hunt: auto must be resolved before dispatch");
}

}  // namespace

ExperimentRecord run_cell(const InstanceSpec& inst, int k, Algo requested, const RunObserver& observer) {
  ExperimentRecord rec;
  rec.family = inst.family;
  rec.delta = inst.max_degree;
  rec.distance = inst.distance;
  rec.seed = inst.seed;
  rec.k = k;

  RegimeChoice choice = choose_regime(inst, k);
  if (!choice.ok) {
    rec.status = "skip";
    rec.regime = "none";
    rec.note = choice.reason;
    return rec;
  }
  rec.regime = regime_name(choice.regime);
  rec.c = choice.c;

  Algo algo = (requested == Algo::kAuto) ? choice.algo : requested;
  const int k_or_c = (choice.regime == Regime::kMilestone) ? choice.c : k;

  PreparedPlacement prepared;
  try {
    prepared = place_for(inst, choice.regime, k_or_c);
  } catch (const HuntError& e) {
    rec.status = "skip";
    rec.note = e.what();
    return rec;
  }

  const bool fat = (choice.regime == Regime::kMilestone) && path_has_fat_node(inst, choice.c);
  rec.bound = bound_value(rec.regime, inst.max_degree, inst.distance, k, choice.c, fat);

  AgentView view = begin_hunt(inst, prepared.placement);
  HuntResult result = dispatch_hunt(algo, view, guard_from_bound(rec.bound));

  rec.found = result.found;
  rec.time = result.time;
  rec.ratio = rec.bound > 0.0 ? static_cast<double>(rec.time) / rec.bound : 0.0;
  rec.pass = result.found && static_cast<double>(rec.time) <= kBoundHeadroom * rec.bound;
  rec.status = result.found ? "ok" : "fail";
  rec.note = result.note;
  if (observer) observer(rec, inst, prepared.placement, result);
  return rec;
}

std::vector<ExperimentRecord> run_experiment(const SweepConfig& config, const RunObserver& observer) {
  std::vector<ExperimentRecord> records;
  for (Family family : config.families) {
    for (int delta : config.deltas) {
      for (int distance : config.distances) {
        for (std::uint64_t seed : config.seeds) {
          InstanceSpec inst;
          bool generated = false;
          auto cell = [&](int k) {
            if (!generated) {
              inst = gen_instance(family, delta, distance, seed);
              generated = true;
            }
            records.push_back(run_cell(inst, k, config.algo, observer));
          };
          try {
            for (int k : config.ks) cell(k);
            for (int c : config.cs) cell(c * distance);
          } catch (const HuntError& e) {
            ExperimentRecord rec;
            rec.family = family;
            rec.delta = delta;
            rec.distance = distance;
            rec.seed = seed;
            rec.status = "skip";
            rec.regime = "none";
            rec.note = e.what();
            records.push_back(rec);
          }
        }
      }
    }
  }
  return records;
}

// ---- lower bound -------------------------------------------------------------

LowerBoundRecord check_lower_bound_counting(int delta, int distance, int k) {
  if (delta < 3 || distance < 1 || k < 1 || k >= distance)
    throw HuntError("check_lower_bound_counting: need delta >= 3, D >= 1, 1 <= k < D");
  using u128 = unsigned __int128;
  const u128 kCap = static_cast<u128>(1) << 100;

  u128 p = delta;
  for (int i = 1; i < distance; ++i) {
    p *= static_cast<u128>(delta - 1);
    if (p > kCap) throw HuntError("check_lower_bound_counting: leaf count out of integer range");
  }

  auto weighted_choose_at_least = [&](unsigned long long x) {
    // x * C(x, k) >= p, with early exit on overflow (then it surely is).
    u128 c = 1;
    for (int i = 1; i <= k; ++i) {
      c = c * static_cast<u128>(x - static_cast<unsigned long long>(i) + 1) / static_cast<u128>(i);
      if (c > kCap) return true;
    }
    return static_cast<u128>(x) * c >= p;
  };

  LowerBoundRecord rec;
  rec.delta = delta;
  rec.distance = distance;
  rec.k = k;
  rec.leaf_count = static_cast<unsigned long long>(p);
  unsigned long long x = static_cast<unsigned long long>(k);
  while (!weighted_choose_at_least(x)) ++x;
  rec.x_min = x;
  const long double e = 2.718281828459045235L;
  long double formula = std::pow(static_cast<long double>(k) / e,
                                 static_cast<long double>(k) / (k + 1)) *
                        std::pow(static_cast<long double>(delta - 1),
                                 static_cast<long double>(distance) / (k + 1));
  rec.formula = static_cast<double>(formula);
  rec.pass = static_cast<long double>(rec.x_min) >= formula;
  return rec;
}

// ---- single-pebble brute force -------------------------------------------------

SinglePebbleTable brute_force_optimal_single_pebble(int delta, int depth) {
  if (delta > 3 || depth > 4)
    throw HuntError("brute_force_optimal_single_pebble: exhaustive sweep capped at delta 3, depth 4");
  if (delta < 3 || depth < 1) throw HuntError("brute_force_optimal_single_pebble: need delta >= 3, depth >= 1");
  SinglePebbleTable table;
  table.delta = delta;
  table.depth = depth;
  if (depth == 1) {  // no interior level to place a pebble on
    table.best_level = 0;
    table.pass = true;
    return table;
  }
  CompleteTree ct = gen_complete_tree(delta, depth);
  for (int level = 1; level <= depth - 1; ++level) {
    std::uint64_t worst = 0;
    for (int leaf : ct.leaves) {
      InstanceSpec inst;
      inst.graph = ct.graph;
      inst.start = ct.root;
      inst.treasure = leaf;
      inst.distance = depth;
      inst.max_degree = delta;
      inst.family = Family::kCompleteTree;
      PathP path = shortest_path(inst.graph, inst.start, inst.treasure);
      PebblePlacement placement;
      placement.budget = 1;
      placement.pebbled.insert(path.nodes[static_cast<std::size_t>(level)]);

      AgentView view = begin_hunt(inst, placement);
      bool done = false;
      int arrival = -1;
      for (int radius = 1; !done; ++radius) {
        SearchOutcome out =
            bounded_path_search(view, radius, {}, [](const Observation& o) { return o.pebble; }, {});
        if (out.kind == SearchOutcome::Kind::kTreasure) done = true;
        if (out.kind == SearchOutcome::Kind::kAccepted) {
          arrival = out.hit.obs.arrival_port;
          break;
        }
      }
      // From the pebble, sweep its subtree only (the arrival port is banned).
      for (int radius = 1; !done; ++radius) {
        SearchOutcome out = bounded_path_search(view, radius, {arrival}, {}, {});
        if (out.kind == SearchOutcome::Kind::kTreasure) done = true;
      }
      worst = std::max(worst, view.time());
    }
    table.levels.push_back({level, worst});
  }
  table.best_level = table.levels.front().level;
  std::uint64_t best = table.levels.front().worst_time;
  for (const SinglePebbleLevel& row : table.levels)
    if (row.worst_time < best) {
      best = row.worst_time;
      table.best_level = row.level;
    }
  table.pass = table.best_level == depth / 2 || table.best_level == (depth + 1) / 2;
  return table;
}

// ---- reports -------------------------------------------------------------------

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string emit_report(const std::vector<ExperimentRecord>& records, ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    std::ostringstream out;
    out << "family,delta,D,seed,regime,k,c,status,found,time,bound,ratio,pass,note\n";
    for (const ExperimentRecord& r : records) {
      std::string note = r.note;
      std::replace(note.begin(), note.end(), ',', ';');
      std::replace(note.begin(), note.end(), '\n', ' ');
      out << family_name(r.family) << ',' << r.delta << ',' << r.distance << ',' << r.seed << ','
          << r.regime << ',' << r.k << ',' << r.c << ',' << r.status << ',' << (r.found ? 1 : 0) << ','
          << r.time << ',' << fmt_double(r.bound) << ',' << fmt_double(r.ratio) << ',' << (r.pass ? 1 : 0)
          << ',' << note << "\n";
    }
    return out.str();
  }
  ordered_json arr = ordered_json::array();
  for (const ExperimentRecord& r : records) {
    ordered_json row;
    row["family"] = family_name(r.family);
    row["delta"] = r.delta;
    row["D"] = r.distance;
    row["seed"] = r.seed;
    row["regime"] = r.regime;
    row["k"] = r.k;
    row["c"] = r.c;
    row["status"] = r.status;
    row["found"] = r.found;
    row["time"] = r.time;
    row["bound"] = r.bound;
    row["ratio"] = r.ratio;
    row["pass"] = r.pass;
    row["note"] = r.note;
    arr.push_back(row);
  }
  return arr.dump(2) + "\n";
}

std::string emit_lower_bound_report(const std::vector<LowerBoundRecord>& records, ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    std::ostringstream out;
    out << "delta,D,k,leaves,x_min,formula,pass\n";
    for (const LowerBoundRecord& r : records)
      out << r.delta << ',' << r.distance << ',' << r.k << ',' << r.leaf_count << ',' << r.x_min << ','
          << fmt_double(r.formula) << ',' << (r.pass ? 1 : 0) << "\n";
    return out.str();
  }
  ordered_json arr = ordered_json::array();
  for (const LowerBoundRecord& r : records) {
    ordered_json row;
    row["delta"] = r.delta;
    row["D"] = r.distance;
    row["k"] = r.k;
    row["leaves"] = r.leaf_count;
    row["x_min"] = r.x_min;
    row["formula"] = r.formula;
    row["pass"] = r.pass;
    arr.push_back(row);
  }
  return arr.dump(2) + "\n";
}

// ---- transcript replay + progress ------------------------------------------------

ReplayCheck replay_transcript(const InstanceSpec& inst, const PebblePlacement& placement,
                              const std::vector<TranscriptStep>& steps) {
  ReplayCheck out;
  const PortLabeledGraph& g = inst.graph;
  int pos = inst.start;
  out.positions.push_back(pos);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const TranscriptStep& s = steps[i];
    if (s.out_port >= g.degree(pos)) {
      out.issue = "step " + std::to_string(i + 1) + ": port out of range";
      return out;
    }
    const HalfEdge& e = g.at(pos, s.out_port);
    pos = e.to;
    if (e.rev != s.in_port) {
      out.issue = "step " + std::to_string(i + 1) + ": incoming port mismatch";
      return out;
    }
    if (g.degree(pos) != s.degree) {
      out.issue = "step " + std::to_string(i + 1) + ": degree mismatch";
      return out;
    }
    if (placement.has(pos) != s.pebble()) {
      out.issue = "step " + std::to_string(i + 1) + ": pebble flag mismatch";
      return out;
    }
    if ((pos == inst.treasure) != s.treasure()) {
      out.issue = "step " + std::to_string(i + 1) + ": treasure flag mismatch";
      return out;
    }
    out.positions.push_back(pos);
    if (pos == inst.treasure && i + 1 != steps.size()) {
      out.issue = "transcript continues past the treasure";
      return out;
    }
  }
  out.ok = true;
  return out;
}

ProgressCheck check_search_progress(const InstanceSpec& inst, const PebblePlacement& placement,
                                    const HuntResult& result) {
  ProgressCheck out;
  ReplayCheck replay = replay_transcript(inst, placement, result.transcript);
  if (!replay.ok) {
    out.issue = "replay failed: " + replay.issue;
    return out;
  }
  std::vector<int> level = bfs_distances(inst.graph, inst.start);
  int prev = -1;
  for (const HuntEvent& ev : result.events) {
    if (ev.kind != EventKind::kSearchNodeSet) continue;
    if (ev.time >= replay.positions.size()) {
      out.issue = "event beyond transcript";
      return out;
    }
    int node = replay.positions[static_cast<std::size_t>(ev.time)];
    int lv = level[static_cast<std::size_t>(node)];
    if (lv <= prev) {
      out.issue = "search node level did not increase (" + std::to_string(prev) + " -> " +
                  std::to_string(lv) + ")";
      return out;
    }
    prev = lv;
  }
  out.ok = true;
  return out;
}

}  // namespace hunt
