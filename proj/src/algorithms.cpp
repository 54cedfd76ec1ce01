#include "hunt/algorithms.hpp"

#include <algorithm>
#include <set>

#include "hunt/oracle.hpp"

namespace hunt {

const char* algo_name(Algo a) {
  switch (a) {
    case Algo::kNaive: return "naive";
    case Algo::kAlternate: return "alternate";
    case Algo::kBipartite: return "bipartite";
    case Algo::kMarker: return "marker";
    case Algo::kMilestone: return "milestone";
    case Algo::kAuto: return "auto";
  }
  return "?";
}

std::optional<Algo> algo_from_name(const std::string& name) {
  if (name == "naive") return Algo::kNaive;
  if (name == "alternate") return Algo::kAlternate;
  if (name == "bipartite") return Algo::kBipartite;
  if (name == "marker") return Algo::kMarker;
  if (name == "milestone") return Algo::kMilestone;
  if (name == "auto") return Algo::kAuto;
  return std::nullopt;
}

namespace {

bool stop_on_pebble(const Observation& o) { return o.pebble; }

struct Hunter {
  AgentView& view;
  std::uint64_t guard;
  std::vector<HuntEvent> events;

  Hunter(AgentView& v, std::uint64_t g) : view(v), guard(g) {
    events.push_back({EventKind::kSearchNodeSet, 0});
  }

  bool over_budget() const { return guard != 0 && view.time() > guard; }

  void event(EventKind k) { events.push_back({k, view.time()}); }

  HuntResult finish(bool found, std::string note = "") {
    HuntResult r;
    r.found = found;
    r.time = view.time();
    r.pebbles_seen = view.pebbles_seen();
    r.transcript = view.transcript();
    r.events = std::move(events);
    r.note = std::move(note);
    return r;
  }
  HuntResult treasure_result() { return finish(true); }
};

// Probe the given ports in order; move into the first pebbled neighbor and
// stay. Returns the out-port taken, or -1 when nothing was found (agent back
// in place). The caller checks for a mid-probe treasure.
int move_to_block_pebble(AgentView& view, const std::vector<int>& ports, int skip, int* in_port) {
  for (int p : ports) {
    if (p == skip || p < 0 || p >= view.current().degree) continue;
    Observation o = view.traverse(p);
    if (o.treasure) return -1;
    if (o.pebble) {
      if (in_port) *in_port = o.arrival_port;
      return p;
    }
    view.traverse(o.arrival_port);
  }
  return -1;
}

struct BlockProbeResult {
  std::vector<int> pebbled;    // out-ports with a pebbled neighbor
  std::vector<int> unpebbled;  // out-ports with an empty neighbor
};

BlockProbeResult probe_ports(AgentView& view, const std::vector<int>& ports, int skip) {
  BlockProbeResult res;
  for (int p : ports) {
    if (p == skip || p < 0 || p >= view.current().degree) continue;
    Observation o = view.traverse(p);
    if (o.treasure) return res;
    view.traverse(o.arrival_port);
    if (o.pebble)
      res.pebbled.push_back(p);
    else
      res.unpebbled.push_back(p);
  }
  return res;
}

std::vector<int> block_ports(int base, int range, int bits, int value) {
  auto [lo, hi] = partition_block(range, bits, value);
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(hi - lo));
  for (int i = lo; i < hi; ++i) out.push_back(base + i);
  return out;
}

}  // namespace

HuntResult hunt_naive(AgentView& view, std::uint64_t max_traversals) {
  Hunter h(view, max_traversals);
  if (view.at_treasure()) return h.treasure_result();
  for (int radius = 1;; ++radius) {
    if (h.over_budget()) return h.finish(false, "traversal budget exceeded");
    SearchOutcome out = bounded_path_search(view, radius, {}, {}, {});
    if (out.kind == SearchOutcome::Kind::kTreasure) return h.treasure_result();
  }
}

namespace {

struct ChainPhase {
  bool treasure = false;
  bool advanced = false;
  std::set<int> next_exclusions;
};

// One SearchNode phase of the pebble-chain hunts: search until a pebble,
// finish the frontier at the hit depth recording every further sighting's
// incoming port, then move to the hit.
ChainPhase chain_phase(Hunter& h, int radius, const std::set<int>& excluded) {
  ChainPhase res;
  SearchOutcome out = bounded_path_search(h.view, radius, excluded, stop_on_pebble,
                                          [](const SearchHit&) { return HitDecision::kRecordAndComplete; });
  if (out.kind == SearchOutcome::Kind::kTreasure) {
    res.treasure = true;
    return res;
  }
  if (out.kind != SearchOutcome::Kind::kCompleted) return res;
  const SearchRecord& first = out.records.front();
  for (const SearchRecord& rec : out.records) res.next_exclusions.insert(rec.final_in_port);
  for (int p : first.ports) {
    Observation o = h.view.traverse(p);
    if (o.treasure) {
      res.treasure = true;
      return res;
    }
  }
  res.advanced = true;
  return res;
}

HuntResult hunt_pebble_chain(AgentView& view, std::uint64_t max_traversals) {
  Hunter h(view, max_traversals);
  if (view.at_treasure()) return h.treasure_result();

  // Iterative deepening to the first pebble; its distance fixes the radius
  // of every later search.
  int learned = 0;
  std::set<int> excluded;
  for (int radius = 1; learned == 0; ++radius) {
    if (h.over_budget()) return h.finish(false, "traversal budget exceeded");
    ChainPhase ph = chain_phase(h, radius, {});
    if (ph.treasure) return h.treasure_result();
    if (ph.advanced) {
      learned = radius;
      excluded = std::move(ph.next_exclusions);
      h.event(EventKind::kSearchNodeSet);
    }
  }
  for (;;) {
    if (h.over_budget()) return h.finish(false, "traversal budget exceeded");
    ChainPhase ph = chain_phase(h, learned, excluded);
    if (ph.treasure) return h.treasure_result();
    if (!ph.advanced) return h.finish(false, "search exhausted with no pebble or treasure in reach");
    excluded = std::move(ph.next_exclusions);
    h.event(EventKind::kSearchNodeSet);
  }
}

}  // namespace

HuntResult hunt_alternate(AgentView& view, std::uint64_t max_traversals) {
  return hunt_pebble_chain(view, max_traversals);
}

HuntResult hunt_bipartite(AgentView& view, std::uint64_t max_traversals) {
  return hunt_pebble_chain(view, max_traversals);
}

HuntResult hunt_marker(AgentView& view, std::uint64_t max_traversals) {
  Hunter h(view, max_traversals);
  if (view.at_treasure()) return h.treasure_result();

  // Nearest pebble first: it is the first marker's first node.
  SearchHit first_hit;
  bool got = false;
  for (int radius = 1; !got; ++radius) {
    if (h.over_budget()) return h.finish(false, "traversal budget exceeded");
    SearchOutcome out = bounded_path_search(view, radius, {}, stop_on_pebble, {});
    if (out.kind == SearchOutcome::Kind::kTreasure) return h.treasure_result();
    if (out.kind == SearchOutcome::Kind::kAccepted) {
      first_hit = out.hit;
      got = true;
    }
  }
  const int radius = static_cast<int>(first_hit.ports.size()) + 1;

  // The adjacent pebble confirms a marker; its incoming port is the stored
  // test port.
  int marker_port = -1;
  {
    const Observation at = view.current();
    for (int p = 0; p < at.degree && marker_port < 0; ++p) {
      if (p == at.arrival_port) continue;
      Observation o = view.traverse(p);
      if (o.treasure) return h.treasure_result();
      if (o.pebble)
        marker_port = o.arrival_port;  // stay at the partner node
      else
        view.traverse(o.arrival_port);
    }
  }
  if (marker_port < 0) return h.finish(false, "first pebble has no marker partner");
  h.event(EventKind::kMarkerFound);
  h.event(EventKind::kSearchNodeSet);

  std::vector<int> test_seq{marker_port};
  std::set<int> excluded{marker_port};

  for (;;) {
    if (h.over_budget()) return h.finish(false, "traversal budget exceeded");
    std::set<std::vector<int>> classified;
    auto classify = [&](const SearchHit& hit) -> HitDecision {
      (void)hit;
      if (!classified.insert(hit.ports).second) return HitDecision::kResume;
      // Walk the stored sequence from the hit; two adjacent pebbled nodes on
      // the way mean the walk circled back into known territory.
      bool marker_seen = false;
      bool prev_pebbled = true;  // the hit node itself carries a pebble
      std::vector<int> back;
      for (int p : test_seq) {
        if (p < 0 || p >= view.current().degree) break;
        Observation o = view.traverse(p);
        back.push_back(o.arrival_port);
        if (o.treasure) return HitDecision::kResume;  // engine sees the halt
        if (o.pebble && prev_pebbled) {
          marker_seen = true;
          break;
        }
        prev_pebbled = o.pebble;
      }
      for (auto it = back.rbegin(); it != back.rend(); ++it) view.traverse(*it);
      if (marker_seen) {
        h.event(EventKind::kPossibility1);
        h.event(EventKind::kBranchRejected);
        return HitDecision::kResume;
      }
      h.event(EventKind::kPossibility2);
      return HitDecision::kRecordAndComplete;
    };
    SearchOutcome out = bounded_path_search(view, radius, excluded, stop_on_pebble, classify);
    if (out.kind == SearchOutcome::Kind::kTreasure) return h.treasure_result();
    if (out.kind != SearchOutcome::Kind::kCompleted)
      return h.finish(false, "search exhausted with no pebble or treasure in reach");

    const SearchRecord& first = out.records.front();
    std::set<int> saved;
    for (const SearchRecord& rec : out.records) saved.insert(rec.final_in_port);

    std::vector<int> back_in;
    for (int p : first.ports) {
      Observation o = view.traverse(p);
      if (o.treasure) return h.treasure_result();
      back_in.push_back(o.arrival_port);
    }
    std::vector<int> new_seq(back_in.rbegin(), back_in.rend());
    new_seq.insert(new_seq.end(), test_seq.begin(), test_seq.end());
    test_seq = std::move(new_seq);
    h.event(EventKind::kSearchNodeSet);

    // A pebbled neighbor here means a fresh marker: reset the stored state.
    int partner = -1;
    {
      const Observation at = view.current();
      for (int p = 0; p < at.degree && partner < 0; ++p) {
        if (p == at.arrival_port || saved.count(p)) continue;
        Observation o = view.traverse(p);
        if (o.treasure) return h.treasure_result();
        if (o.pebble)
          partner = o.arrival_port;  // stay
        else
          view.traverse(o.arrival_port);
      }
    }
    if (partner >= 0) {
      h.event(EventKind::kMarkerFound);
      h.event(EventKind::kSearchNodeSet);
      test_seq = {partner};
      excluded = {partner};
    } else {
      excluded = std::move(saved);
    }
  }
}

MilestoneVerdict checker_for_milestone(AgentView& view) {
  MilestoneVerdict v;
  const Observation at = view.current();
  const int d = at.degree;
  const int arrival = at.arrival_port;
  if (d < 11) return v;  // windows do not fit; treat as light
  const int half = d / 2;
  auto probe = [&](int p) -> bool {
    if (p == arrival || p < 0 || p >= d) return false;
    Observation o = view.traverse(p);
    if (o.treasure) return o.pebble;
    view.traverse(o.arrival_port);
    return o.pebble;
  };
  int first_cnt = 0, first_single = -1;
  for (int p = 1; p <= 5; ++p) {
    if (probe(p)) {
      ++first_cnt;
      if (first_single < 0) first_single = p;
    }
    if (view.at_treasure()) return v;
  }
  if (first_cnt >= 2) {
    v.milestone = true;
    v.encoding_on_first_half = true;
    return v;
  }
  if (first_cnt == 1) {
    v.hint_port = first_single;  // the single find is the next node of the path
    bool corroborated = probe(half + 1);
    if (view.at_treasure()) return v;
    if (corroborated) {
      v.milestone = true;
      v.encoding_on_first_half = false;
    }
    return v;
  }
  int second_cnt = 0, second_single = -1;
  for (int p = half; p <= half + 4; ++p) {
    if (probe(p)) {
      ++second_cnt;
      if (second_single < 0) second_single = p;
    }
    if (view.at_treasure()) return v;
  }
  if (second_cnt >= 2) {
    v.milestone = true;
    v.encoding_on_first_half = false;
    return v;
  }
  if (second_cnt == 1) v.hint_port = second_single;
  return v;
}

HuntResult hunt_milestone(AgentView& view, std::uint64_t max_traversals) {
  Hunter h(view, max_traversals);
  if (view.at_treasure()) return h.treasure_result();

  // Full scan minus the arrival port; moves into the first pebbled neighbor.
  auto light_scan = [&]() -> int {  // 1 moved, 0 nothing, -1 treasure
    const Observation at = view.current();
    for (int p = 0; p < at.degree; ++p) {
      if (p == at.arrival_port) continue;
      Observation o = view.traverse(p);
      if (o.treasure) return -1;
      if (o.pebble) return 1;
      view.traverse(o.arrival_port);
    }
    return 0;
  };

  for (;;) {
    if (h.over_budget()) return h.finish(false, "traversal budget exceeded");
    const Observation at = view.current();

    if (!at.pebble) {
      int r = light_scan();
      if (r < 0) return h.treasure_result();
      if (r == 0) return h.finish(false, "no pebbled neighbor from an unpebbled node");
      h.event(EventKind::kSearchNodeSet);
      continue;
    }

    MilestoneVerdict verdict = checker_for_milestone(view);
    if (view.at_treasure()) return h.treasure_result();

    if (!verdict.milestone) {
      h.event(EventKind::kLightVerdict);
      if (verdict.hint_port >= 0) {
        Observation o = view.traverse(verdict.hint_port);
        if (o.treasure) return h.treasure_result();
        h.event(EventKind::kSearchNodeSet);
        continue;
      }
      int r = light_scan();
      if (r < 0) return h.treasure_result();
      if (r == 0) return h.finish(false, "light node has no pebbled neighbor");
      h.event(EventKind::kSearchNodeSet);
      continue;
    }

    h.event(EventKind::kMilestoneVerdict);
    const int deg = at.degree;
    const int arrival = at.arrival_port;

    // Read the advice strings off the encoding half, pair by pair.
    std::vector<int> kept = encoding_kept_ports(deg, verdict.encoding_on_first_half, arrival);
    std::vector<signed char> bit_cache(kept.size(), -1);
    std::set<int> r_ports;
    if (arrival >= 0) r_ports.insert(arrival);
    bool halted = false;
    auto bit_at = [&](std::size_t idx) -> bool {
      if (halted || idx >= kept.size()) return false;
      if (bit_cache[idx] < 0) {
        Observation o = view.traverse(kept[idx]);
        if (o.treasure) {
          halted = true;
          return o.pebble;
        }
        view.traverse(o.arrival_port);
        bit_cache[idx] = o.pebble ? 1 : 0;
        if (o.pebble) r_ports.insert(o.arrival_port);
      }
      return bit_cache[idx] == 1;
    };
    std::vector<std::string> strings;
    {
      std::string cur;
      std::size_t pos = 0;
      while (pos + 1 < kept.size() + 2) {
        bool b0 = bit_at(pos);
        bool b1 = bit_at(pos + 1);
        if (halted) return h.treasure_result();
        pos += 2;
        if (!b0) break;
        cur += '1';
        cur += b1 ? '1' : '0';
        if (!bit_at(pos)) {
          if (halted) return h.treasure_result();
          strings.push_back(transform_decode(cur));
          cur.clear();
          pos += 2;
          if (!bit_at(pos)) break;
        }
        if (halted) return h.treasure_result();
      }
    }
    const int alpha = static_cast<int>(strings.size());
    std::vector<int> values;
    for (const std::string& s : strings) values.push_back(bits_value(s));

    if (alpha == 0) {
      // Stray pebbles can trip the checker on a plain path node; the scan
      // fallback keeps the chain moving.
      h.event(EventKind::kLightVerdict);
      int r = light_scan();
      if (r < 0) return h.treasure_result();
      if (r == 0) return h.finish(false, "milestone read produced no advice and no pebbled neighbor");
      h.event(EventKind::kSearchNodeSet);
      continue;
    }

    // Hop 1: onto the next path node, advice string 1.
    int cur_in = -1;
    if (verdict.hint_port >= 0) {
      Observation o = view.traverse(verdict.hint_port);
      if (o.treasure) return h.treasure_result();
      cur_in = o.arrival_port;
      r_ports.insert(verdict.hint_port);
    } else {
      HalfSplit other = half_ports(deg, !verdict.encoding_on_first_half);
      std::vector<int> block =
          block_ports(other.begin, other.end - other.begin, static_cast<int>(strings[0].size()), values[0]);
      int taken = move_to_block_pebble(view, block, arrival, &cur_in);
      if (view.at_treasure()) return h.treasure_result();
      if (taken < 0) {
        int r = light_scan();
        if (r < 0) return h.treasure_result();
        if (r == 0) return h.finish(false, "advice block holds no pebble and the scan found none");
        h.event(EventKind::kSearchNodeSet);
        continue;
      }
      r_ports.insert(taken);
    }
    h.event(EventKind::kSearchNodeSet);

    if (alpha < 5) continue;  // not enough advice for the recovery; rejoin the chain

    std::vector<int> consistency(r_ports.begin(), r_ports.end());
    auto probe_consistency = [&](int skip) -> std::pair<int, int> {  // (count, last port)
      int cnt = 0, single = -1;
      for (int p : consistency) {
        if (p == skip || p < 0 || p >= view.current().degree) continue;
        Observation o = view.traverse(p);
        if (o.treasure) return {-1, -1};
        view.traverse(o.arrival_port);
        if (o.pebble) {
          ++cnt;
          single = p;
        }
      }
      return {cnt, single};
    };

    // Hops 2..5: the next path node carries no pebble, so every empty
    // neighbor in the advice-2 block is a candidate; the advice-3 hits
    // behind each candidate are screened with the consistency set.
    std::vector<int> g2block = block_ports(0, view.current().degree, static_cast<int>(strings[1].size()), values[1]);
    BlockProbeResult g2 = probe_ports(view, g2block, cur_in);
    if (view.at_treasure()) return h.treasure_result();

    bool landed = false;
    int landing_in = -1;
    for (std::size_t ci = 0; ci < g2.unpebbled.size() && !landed; ++ci) {
      Observation ow = view.traverse(g2.unpebbled[ci]);
      if (ow.treasure) return h.treasure_result();
      const int w_in = ow.arrival_port;
      std::vector<int> g3block = block_ports(0, ow.degree, static_cast<int>(strings[2].size()), values[2]);
      BlockProbeResult g3 = probe_ports(view, g3block, w_in);
      if (view.at_treasure()) return h.treasure_result();
      for (std::size_t yi = 0; yi < g3.pebbled.size() && !landed; ++yi) {
        Observation oy = view.traverse(g3.pebbled[yi]);
        if (oy.treasure) return h.treasure_result();
        const int y_in = oy.arrival_port;
        auto [rc, rp] = probe_consistency(y_in);
        if (rc < 0) return h.treasure_result();
        if (rc > 1) {
          h.event(EventKind::kBranchRejected);
          view.traverse(y_in);
          continue;
        }
        if (rc == 1) {
          Observation oz = view.traverse(rp);
          if (oz.treasure) return h.treasure_result();
          const int z_in = oz.arrival_port;
          auto [rc2, rp2] = probe_consistency(z_in);
          if (rc2 < 0) return h.treasure_result();
          if (rc2 == 1) {
            Observation o5 = view.traverse(rp2);
            if (o5.treasure) return h.treasure_result();
            landing_in = o5.arrival_port;
            landed = true;
          } else if (rc2 == 0) {
            std::vector<int> g5block =
                block_ports(0, oz.degree, static_cast<int>(strings[4].size()), values[4]);
            int taken = move_to_block_pebble(view, g5block, z_in, &landing_in);
            if (view.at_treasure()) return h.treasure_result();
            if (taken >= 0) {
              landed = true;
            } else {
              h.event(EventKind::kBranchRejected);
              view.traverse(z_in);
              view.traverse(y_in);
            }
          } else {
            h.event(EventKind::kBranchRejected);
            view.traverse(z_in);
            view.traverse(y_in);
          }
        } else {
          std::vector<int> g4block = block_ports(0, oy.degree, static_cast<int>(strings[3].size()), values[3]);
          int v4_in = -1;
          int taken4 = move_to_block_pebble(view, g4block, y_in, &v4_in);
          if (view.at_treasure()) return h.treasure_result();
          if (taken4 < 0) {
            h.event(EventKind::kBranchRejected);
            view.traverse(y_in);
            continue;
          }
          auto [rc2, rp2] = probe_consistency(v4_in);
          if (rc2 < 0) return h.treasure_result();
          if (rc2 == 1) {
            Observation o5 = view.traverse(rp2);
            if (o5.treasure) return h.treasure_result();
            landing_in = o5.arrival_port;
            landed = true;
          } else if (rc2 == 0) {
            std::vector<int> g5block =
                block_ports(0, view.current().degree, static_cast<int>(strings[4].size()), values[4]);
            int taken = move_to_block_pebble(view, g5block, v4_in, &landing_in);
            if (view.at_treasure()) return h.treasure_result();
            if (taken >= 0) {
              landed = true;
            } else {
              h.event(EventKind::kBranchRejected);
              view.traverse(v4_in);
              view.traverse(y_in);
            }
          } else {
            h.event(EventKind::kBranchRejected);
            view.traverse(v4_in);
            view.traverse(y_in);
          }
        }
      }
      if (!landed) view.traverse(w_in);
    }
    if (!landed)
      return h.finish(false, "milestone recovery exhausted before reaching the fifth guided node");
    h.event(EventKind::kSearchNodeSet);

    // Hops 6..alpha: one advice string per hop.
    cur_in = landing_in;
    for (int j = 6; j <= alpha; ++j) {
      std::vector<int> blk = block_ports(0, view.current().degree,
                                         static_cast<int>(strings[static_cast<std::size_t>(j - 1)].size()),
                                         values[static_cast<std::size_t>(j - 1)]);
      int taken = move_to_block_pebble(view, blk, cur_in, &cur_in);
      if (view.at_treasure()) return h.treasure_result();
      if (taken < 0) break;  // advice ran dry; the chain handling resumes here
      h.event(EventKind::kSearchNodeSet);
    }
  }
}

}  // namespace hunt
