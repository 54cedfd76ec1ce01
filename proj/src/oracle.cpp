#include "hunt/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "json.hpp"

namespace hunt {

namespace {
using nlohmann::json;
}

int fat_threshold_for(int per_hop) { return 10 * (per_hop + 1) + 6; }

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::kNaive: return "naive";
    case Regime::kTree: return "tree";
    case Regime::kAlternate: return "alternate";
    case Regime::kBipartite: return "bipartite";
    case Regime::kMarker: return "marker";
    case Regime::kMilestone: return "milestone";
  }
  return "?";
}

std::string transform_encode(const std::string& bits) {
  std::string out;
  out.reserve(bits.size() * 2);
  for (char b : bits) {
    if (b == '1')
      out += "11";
    else if (b == '0')
      out += "10";
    else
      throw HuntError("transform_encode: input must be over {0,1}");
  }
  return out;
}

std::string transform_decode(const std::string& transformed) {
  if (transformed.size() % 2 != 0) throw HuntError("transform_decode: odd length");
  std::string out;
  out.reserve(transformed.size() / 2);
  for (std::size_t i = 0; i < transformed.size(); i += 2) {
    if (transformed[i] != '1') throw HuntError("transform_decode: zero in an odd position");
    char second = transformed[i + 1];
    if (second != '0' && second != '1') throw HuntError("transform_decode: input must be over {0,1}");
    out += (second == '1') ? '1' : '0';
  }
  return out;
}

std::pair<int, int> partition_block(int range_size, int bits, int value) {
  const int blocks = 1 << bits;
  const int size = (range_size + blocks - 1) / blocks;
  int lo = value * size;
  int hi = std::min(range_size, lo + size);
  if (lo > hi) lo = hi;
  return {lo, hi};
}

int alternate_even_levels(int distance) {
  int count = 0;
  for (int j = 2; j <= distance - 1; j += 2) ++count;
  return count;
}

int marker_gap(int distance, int k) {
  if (k < 2) return -1;
  const int groups = k / 3;
  const int rem = k % 3;
  int num, den;
  if (rem == 0) {
    num = distance - groups;
    den = 2 * groups + 1;
  } else if (rem == 1) {
    num = distance - groups;
    den = 2 * groups + 2;
  } else {
    num = distance - groups - 1;
    den = 2 * groups + 2;
  }
  if (num <= 0) return 0;
  return num / den;
}

// ---- tree ----------------------------------------------------------------

TreePlacement place_tree_levels(const InstanceSpec& inst, int k) {
  if (inst.family != Family::kTree && inst.family != Family::kCompleteTree)
    throw HuntError("place_tree_levels: instance is not a tree");
  const int D = inst.distance;
  if (k < 1) throw HuntError("place_tree_levels: k must be >= 1");
  if (k >= D) throw HuntError("place_tree_levels: k >= D is the milestone regime");
  PathP path = shortest_path(inst.graph, inst.start, inst.treasure);
  TreePlacement out;
  out.placement.budget = k;
  for (int j = 1; j <= k; ++j) {
    // ceil(j * D / (k + 1))
    int level = (j * D + k) / (k + 1);
    out.plan.levels.push_back(level);
    out.placement.pebbled.insert(path.nodes[static_cast<std::size_t>(level)]);
  }
  return out;
}

// ---- alternate levels ----------------------------------------------------

AlternatePlacement place_alternate_levels(const InstanceSpec& inst, int k) {
  const int D = inst.distance;
  if (k < 1 || k >= D) throw HuntError("place_alternate_levels: need 1 <= k < D");
  if (alternate_even_levels(D) > k)
    throw HuntError("place_alternate_levels: k below the even-level count; marker regime applies");
  PathP path = shortest_path(inst.graph, inst.start, inst.treasure);
  AlternatePlacement out;
  out.placement.budget = k;
  for (int j = 2; j <= D - 1; j += 2) out.plan.levels.push_back(j);
  // Surplus pebbles fill odd levels nearest the treasure; they can only help.
  for (int j = D - 1; j >= 1 && static_cast<int>(out.plan.levels.size()) < k; --j)
    if (j % 2 == 1) out.plan.levels.push_back(j);
  std::sort(out.plan.levels.begin(), out.plan.levels.end());
  for (int level : out.plan.levels)
    out.placement.pebbled.insert(path.nodes[static_cast<std::size_t>(level)]);
  return out;
}

// ---- markers --------------------------------------------------------------

MarkerPlacement place_marker_groups(const InstanceSpec& inst, int k) {
  const int D = inst.distance;
  if (k < 2)
    throw HuntError("place_marker_groups: a single pebble cannot be disambiguated on a general graph");
  if (k >= (D + 1) / 2) throw HuntError("place_marker_groups: k >= D/2 is the alternate regime");
  const int gap = marker_gap(D, k);
  if (gap < 3)
    throw HuntError("place_marker_groups: computed gap " + std::to_string(gap) +
                    " < 3; alternate-level regime applies");

  MarkerPlacement out;
  out.placement.budget = k;
  MarkerPlan& plan = out.plan;
  plan.group_count = k / 3;
  plan.remainder = k % 3;
  plan.gap = gap;

  std::vector<bool> is_marker;
  for (int g = 0; g < plan.group_count; ++g) {
    is_marker.push_back(true);
    is_marker.push_back(false);
  }
  if (plan.remainder == 1) is_marker.push_back(false);
  if (plan.remainder == 2) is_marker.push_back(true);

  // Lay the chain out from the treasure: the last anchor ends exactly `gap`
  // hops before t, consecutive anchors sit exactly `gap` apart, and the
  // leftover distance widens the s-to-first-marker stretch. The agent's
  // search radius is learned from that first stretch, so it covers every
  // later hop.
  int pos = D - gap;
  plan.anchors.assign(is_marker.size(), {});
  for (int a = static_cast<int>(is_marker.size()) - 1; a >= 0; --a) {
    MarkerAnchor& anc = plan.anchors[static_cast<std::size_t>(a)];
    anc.is_marker = is_marker[static_cast<std::size_t>(a)];
    anc.last_index = pos;
    anc.first_index = anc.is_marker ? pos - 1 : pos;
    pos = anc.first_index - gap;
  }
  if (plan.anchors.front().first_index < gap)
    throw HuntError("place_marker_groups: anchors do not fit before the treasure");

  PathP path = shortest_path(inst.graph, inst.start, inst.treasure);
  for (const MarkerAnchor& anc : plan.anchors)
    for (int i = anc.first_index; i <= anc.last_index; ++i)
      out.placement.pebbled.insert(path.nodes[static_cast<std::size_t>(i)]);
  if (out.placement.used() != k)
    throw HuntError("place_marker_groups: internal pebble count mismatch");
  return out;
}

// ---- bipartite parity ------------------------------------------------------

BipartitePlacement place_bipartite_parity(const InstanceSpec& inst, int k) {
  const int D = inst.distance;
  if (k < 1 || k >= D) throw HuntError("place_bipartite_parity: need 1 <= k < D");
  if (!is_bipartite(inst.graph)) throw HuntError("place_bipartite_parity: graph has an odd cycle");

  const int base = (D + k) / (k + 1);  // ceil(D / (k+1))
  const int shift = (base % 2 == 0) ? 1 : 0;
  const int gap = base + shift;

  BipartitePlacement out;
  out.placement.budget = k;
  out.plan.gap = gap;
  std::vector<int>& levels = out.plan.levels;

  int prev = 0;
  for (int j = 1; j <= k; ++j) {
    int target = (j * D + k) / (k + 1) + shift;
    int g = target - prev;
    if (g < 1) g = 1;
    if (g % 2 == 0) ++g;  // every inter-pebble distance must stay odd
    if (prev + g > D - 1) break;
    levels.push_back(prev + g);
    prev += g;
  }
  // If pebbles were dropped, spend them closing the stretch before t.
  while (D - prev > gap && static_cast<int>(levels.size()) < k) {
    int g = std::min(gap, D - 1 - prev);
    if (g % 2 == 0) --g;
    if (g < 1) break;
    levels.push_back(prev + g);
    prev += g;
  }
  out.plan.dropped = k - static_cast<int>(levels.size());

  int at = 0;
  for (int level : levels) {
    int g = level - at;
    if (g % 2 == 0 || g > gap) throw HuntError("place_bipartite_parity: internal gap invariant violated");
    at = level;
  }
  if (D - at > gap) throw HuntError("place_bipartite_parity: treasure farther than the learned gap");

  PathP path = shortest_path(inst.graph, inst.start, inst.treasure);
  for (int level : levels) out.placement.pebbled.insert(path.nodes[static_cast<std::size_t>(level)]);
  return out;
}

// ---- milestones -------------------------------------------------------------

HalfSplit half_ports(int degree, bool first) {
  const int half = degree / 2;
  return first ? HalfSplit{0, half} : HalfSplit{half, degree};
}

std::vector<int> encoding_kept_ports(int degree, bool first_half, int arrival) {
  HalfSplit h = half_ports(degree, first_half);
  std::vector<int> out;
  for (int p = h.begin + 1; p < h.end; ++p)
    if (p != arrival) out.push_back(p);
  return out;
}

int bits_value(const std::string& s) {
  int v = 0;
  for (char c : s) v = (v << 1) | (c == '1' ? 1 : 0);
  return v;
}

namespace {

std::string to_bits(int value, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int b = 0; b < width; ++b)
    if (value & (1 << (width - 1 - b))) s[static_cast<std::size_t>(b)] = '1';
  return s;
}

struct CheckerSim {
  bool milestone = false;
  bool first_half = false;
  int hint = -1;
};

// Mirrors the agent's probe order; `pebbled` is indexed by node id.
CheckerSim simulate_checker(const PortLabeledGraph& g, int node, int arrival,
                            const std::set<int>& pebbled) {
  CheckerSim out;
  const int d = g.degree(node);
  if (d < 11) {
    return out;  // degenerate windows, treated as light
  }
  const int half = d / 2;
  auto probe = [&](int p) { return p < d && p != arrival && pebbled.count(g.at(node, p).to) != 0; };
  int first_cnt = 0, first_single = -1;
  for (int p = 1; p <= 5; ++p)
    if (probe(p)) {
      ++first_cnt;
      if (first_single < 0) first_single = p;
    }
  if (first_cnt >= 2) {
    out.milestone = true;
    out.first_half = true;
    return out;
  }
  if (first_cnt == 1) {
    out.hint = first_single;  // the single find is the next node of the path
    if (probe(half + 1)) {
      out.milestone = true;
      out.first_half = false;
    }
    return out;
  }
  int second_cnt = 0, second_single = -1;
  for (int p = half; p <= half + 4; ++p)
    if (probe(p)) {
      ++second_cnt;
      if (second_single < 0) second_single = p;
    }
  if (second_cnt >= 2) {
    out.milestone = true;
    out.first_half = false;
    return out;
  }
  if (second_cnt == 1) out.hint = second_single;
  return out;
}

// Pairwise read of the encoding half; must recover the planned transformed
// strings exactly (two zeros end a string, a zero-led pair ends the scan).
std::vector<std::string> simulate_read(const PortLabeledGraph& g, int node, const std::vector<int>& ports,
                                       const std::set<int>& pebbled) {
  std::vector<std::string> strings;
  std::string cur;
  std::size_t pos = 0;
  auto bit = [&](std::size_t idx) {
    return idx < ports.size() && pebbled.count(g.at(node, ports[idx]).to) != 0;
  };
  while (pos + 1 < ports.size() + 2) {
    bool b0 = bit(pos), b1 = bit(pos + 1);
    pos += 2;
    if (!b0) break;  // terminator after the previous string, or empty scan
    cur += '1';
    cur += b1 ? '1' : '0';
    // peek: a zero-led pair closes this string
    if (!bit(pos)) {
      strings.push_back(cur);
      cur.clear();
      pos += 2;
      if (!bit(pos)) break;  // no further string starts
    }
  }
  return strings;
}

struct MilestoneBuildCtx {
  const PortLabeledGraph& g;
  const PathP& path;
  int treasure;
  int per_hop;
};

// Emulates the guided advance the agent performs from a milestone and checks
// it lands on the true path nodes. Probing a port that leads to the treasure
// ends the hunt, so the emulation treats it as success. Any divergence from
// the true path demotes the milestone.
struct GuidanceSim {
  const MilestoneBuildCtx& ctx;
  const MilestoneInfo& mi;
  const std::set<int>& pebbled;
  bool reached_treasure = false;

  bool pebbled_at(int node) const { return pebbled.count(node) != 0; }

  std::pair<int, int> gamma_range(int node, int gamma_idx) const {
    const std::string& s = mi.strings[static_cast<std::size_t>(gamma_idx)];
    return partition_block(ctx.g.degree(node), static_cast<int>(s.size()),
                           mi.values[static_cast<std::size_t>(gamma_idx)]);
  }

  // Probe every port of the gamma block, as the agent's collecting scans do;
  // a probe entering the treasure ends the hunt.
  struct Collected {
    std::vector<std::pair<int, int>> pebbled;    // (port, node)
    std::vector<std::pair<int, int>> unpebbled;  // (port, node)
  };
  Collected collect_scan(int node, int gamma_idx, int skip_port) {
    Collected out;
    auto [lo, hi] = gamma_range(node, gamma_idx);
    for (int p = lo; p < hi; ++p) {
      if (p == skip_port) continue;
      const HalfEdge& e = ctx.g.at(node, p);
      if (e.to == ctx.treasure) {
        reached_treasure = true;
        return out;
      }
      if (pebbled_at(e.to))
        out.pebbled.push_back({p, e.to});
      else
        out.unpebbled.push_back({p, e.to});
    }
    return out;
  }

  // Probe the gamma block until the first pebbled neighbor; the agent moves
  // there and stops probing.
  std::vector<std::pair<int, int>> block_scan(int node, int gamma_idx, int skip_port, bool want_pebbled) {
    std::vector<std::pair<int, int>> found;
    if (!want_pebbled) {
      Collected c = collect_scan(node, gamma_idx, skip_port);
      return c.unpebbled;
    }
    auto [lo, hi] = gamma_range(node, gamma_idx);
    for (int p = lo; p < hi; ++p) {
      if (p == skip_port) continue;
      const HalfEdge& e = ctx.g.at(node, p);
      if (e.to == ctx.treasure) {
        reached_treasure = true;
        return found;
      }
      if (pebbled_at(e.to)) {
        found.push_back({p, e.to});
        return found;
      }
    }
    return found;
  }

  int r_count(int node, int skip_port, int* single_port) {
    const PortLabeledGraph& g = ctx.g;
    int cnt = 0;
    for (int p : mi.consistency_ports) {
      if (p >= g.degree(node) || p == skip_port) continue;
      const HalfEdge& e = g.at(node, p);
      if (e.to == ctx.treasure) {
        reached_treasure = true;
        return cnt;
      }
      if (pebbled_at(e.to)) {
        ++cnt;
        if (single_port) *single_port = p;
      }
    }
    return cnt;
  }

  bool run() {
    const PortLabeledGraph& g = ctx.g;
    const PathP& path = ctx.path;
    const int i = mi.path_index;
    const int m = mi.node;
    const int arrival = (i > 0) ? path.in_ports[static_cast<std::size_t>(i - 1)] : -1;

    CheckerSim chk = simulate_checker(g, m, arrival, pebbled);
    if (!chk.milestone || chk.first_half != mi.encoding_on_first_half) return false;

    std::vector<int> kept = encoding_kept_ports(g.degree(m), mi.encoding_on_first_half, arrival);
    std::vector<std::string> read = simulate_read(g, m, kept, pebbled);
    if (static_cast<int>(read.size()) != mi.alpha) return false;
    for (int j = 0; j < mi.alpha; ++j)
      if (transform_decode(read[static_cast<std::size_t>(j)]) != mi.strings[static_cast<std::size_t>(j)])
        return false;

    auto node_at = [&](int idx) { return path.nodes[static_cast<std::size_t>(idx)]; };

    // hop 1: milestone -> v_{i+1}
    int v1 = -1, v1_in = -1;
    if (chk.hint >= 0) {
      const HalfEdge& e = g.at(m, chk.hint);
      v1 = e.to;
      v1_in = e.rev;
    } else {
      HalfSplit other = half_ports(g.degree(m), !mi.encoding_on_first_half);
      auto [lo, hi] = partition_block(other.end - other.begin,
                                      static_cast<int>(mi.strings[0].size()), mi.values[0]);
      for (int idx = lo; idx < hi && v1 < 0; ++idx) {
        int p = other.begin + idx;
        if (p == arrival) continue;
        const HalfEdge& e = g.at(m, p);
        if (pebbled_at(e.to)) {
          v1 = e.to;
          v1_in = e.rev;
        }
      }
    }
    if (v1 != node_at(i + 1)) return false;

    // hops 2..5: the stacked recovery across the skipped node
    int v5 = -1;
    auto cands = block_scan(v1, 1, v1_in, false);
    if (reached_treasure) return true;
    for (auto [p2, w] : cands) {
      if (v5 >= 0) break;
      int w_in = g.at(v1, p2).rev;
      auto hits = collect_scan(w, 2, w_in).pebbled;
      if (reached_treasure) return true;
      for (auto [p3, y] : hits) {
        int y_in = g.at(w, p3).rev;
        int rp = -1;
        int rc = r_count(y, y_in, &rp);
        if (reached_treasure) return true;
        if (rc > 1) continue;
        if (rc == 1) {
          const HalfEdge& ez = g.at(y, rp);
          int z = ez.to, z_in = ez.rev;
          int rc2 = r_count(z, z_in, &rp);
          if (reached_treasure) return true;
          if (rc2 > 1) continue;
          if (rc2 == 1) {
            v5 = g.at(z, rp).to;
          } else {
            auto nxt = block_scan(z, 4, z_in, true);
            if (reached_treasure) return true;
            if (!nxt.empty()) v5 = nxt.front().second;
          }
        } else {
          auto four = block_scan(y, 3, y_in, true);
          if (reached_treasure) return true;
          if (four.empty()) continue;
          int v4 = four.front().second;
          int v4_in = g.at(y, four.front().first).rev;
          int rc2 = r_count(v4, v4_in, &rp);
          if (reached_treasure) return true;
          if (rc2 > 1) continue;
          if (rc2 == 1) {
            v5 = g.at(v4, rp).to;
          } else {
            auto nxt = block_scan(v4, 4, v4_in, true);
            if (reached_treasure) return true;
            if (!nxt.empty()) v5 = nxt.front().second;
          }
        }
        if (v5 >= 0) break;
      }
    }
    if (v5 != node_at(i + 5)) return false;

    // hops 6..alpha follow one advice string each
    int cur = v5;
    int cur_in = path.in_ports[static_cast<std::size_t>(i + 4)];
    for (int j = 6; j <= mi.alpha; ++j) {
      auto nxt = block_scan(cur, j - 1, cur_in, true);
      if (reached_treasure) return true;
      if (nxt.empty() || nxt.front().second != node_at(i + j)) return false;
      cur = nxt.front().second;
      cur_in = g.at(path.nodes[static_cast<std::size_t>(i + j - 1)],
                    path.out_ports[static_cast<std::size_t>(i + j - 1)])
                   .rev;
    }
    return true;
  }
};

bool simulate_guidance(const MilestoneBuildCtx& ctx, const MilestoneInfo& mi,
                       const std::set<int>& pebbled) {
  GuidanceSim sim{ctx, mi, pebbled};
  return sim.run();
}

}  // namespace

MilestonePlacement place_milestone_encoding(const InstanceSpec& inst, int per_hop) {
  if (per_hop < 1) throw HuntError("place_milestone_encoding: c must be >= 1");
  const int D = inst.distance;
  const PortLabeledGraph& g = inst.graph;
  PathP path = shortest_path(g, inst.start, inst.treasure);
  const int beta = fat_threshold_for(per_hop);
  const int bits_per_string = (per_hop - 1) / 2;

  MilestoneBuildCtx ctx{g, path, inst.treasure, per_hop};
  std::set<int> blacklist;  // path indices rejected by the self-check

  auto build = [&]() -> MilestonePlacement {
    MilestonePlacement out;
    out.placement.budget = per_hop * D;
    MilestonePlan& plan = out.plan;
    plan.per_hop = per_hop;
    plan.fat_threshold = beta;
    plan.demoted = static_cast<int>(blacklist.size());

    // Advice strings shorter than one bit place no pebbles, which would make
    // milestones undetectable and the skipped node unreachable; c <= 2 keeps
    // the plain chain of path pebbles.
    if (bits_per_string >= 1) {
      int prev = -5;
      for (int i = 0; i <= D - 5; ++i) {
        int node = path.nodes[static_cast<std::size_t>(i)];
        if (g.degree(node) < beta) continue;
        if (i - prev < 5) continue;
        if (blacklist.count(i)) continue;
        MilestoneInfo mi;
        mi.node = node;
        mi.path_index = i;
        plan.milestones.push_back(mi);
        prev = i;
      }
    }

    std::set<int> skipped;
    for (std::size_t idx = 0; idx < plan.milestones.size(); ++idx) {
      MilestoneInfo& mi = plan.milestones[idx];
      const int i = mi.path_index;
      const int d = g.degree(mi.node);
      const int arrival = (i > 0) ? path.in_ports[static_cast<std::size_t>(i - 1)] : -1;
      const int next_port = path.out_ports[static_cast<std::size_t>(i)];
      mi.encoding_on_first_half = next_port >= d / 2;
      std::vector<int> kept = encoding_kept_ports(d, mi.encoding_on_first_half, arrival);

      const int per_string = 2 * bits_per_string + 2;
      const int capacity = (static_cast<int>(kept.size()) - 1) / per_string;
      const int next_stop = (idx + 1 < plan.milestones.size())
                                ? plan.milestones[idx + 1].path_index
                                : D;
      mi.alpha = std::min(capacity, next_stop - i);
      if (mi.alpha < 5)
        throw HuntError("place_milestone_encoding: fat node at path index " + std::to_string(i) +
                        " cannot carry five advice strings");
      mi.skipped_index = i + 2;
      skipped.insert(i + 2);

      for (int j = 1; j <= mi.alpha; ++j) {
        const int guided = path.nodes[static_cast<std::size_t>(i + j - 1)];
        const int correct = path.out_ports[static_cast<std::size_t>(i + j - 1)];
        int range, slot;
        if (j == 1) {
          HalfSplit other = half_ports(d, !mi.encoding_on_first_half);
          range = other.end - other.begin;
          slot = correct - other.begin;
        } else {
          range = g.degree(guided);
          slot = correct;
        }
        const int blocks = 1 << bits_per_string;
        const int bs = (range + blocks - 1) / blocks;
        const int value = slot / bs;
        mi.strings.push_back(to_bits(value, bits_per_string));
        mi.values.push_back(value);
      }

      // Lay transformed bits on the kept ports, a two-zero terminator after
      // each string and one further empty slot after the last.
      std::string bits;
      for (const std::string& s : mi.strings) bits += transform_encode(s) + "00";
      bits += "0";
      if (bits.size() > kept.size())
        throw HuntError("place_milestone_encoding: encoding layout exceeds the half");
      for (std::size_t b = 0; b < bits.size(); ++b) {
        if (bits[b] != '1') continue;
        int port = kept[b];
        mi.encoding_ports.push_back(port);
        mi.encoding_nodes.push_back(g.at(mi.node, port).to);
      }

      std::set<int> consistency;
      consistency.insert(next_port);
      if (arrival >= 0) consistency.insert(arrival);
      for (int p : mi.encoding_ports) consistency.insert(g.at(mi.node, p).rev);
      mi.consistency_ports.assign(consistency.begin(), consistency.end());
    }

    for (int i = 0; i <= D - 1; ++i)
      if (!skipped.count(i)) plan.path_pebble_indices.push_back(i);
    for (int i : plan.path_pebble_indices)
      out.placement.pebbled.insert(path.nodes[static_cast<std::size_t>(i)]);
    for (const MilestoneInfo& mi : plan.milestones)
      for (int node : mi.encoding_nodes) out.placement.pebbled.insert(node);
    return out;
  };

  for (;;) {
    MilestonePlacement out = build();
    bool all_ok = true;
    for (const MilestoneInfo& mi : out.plan.milestones) {
      if (!simulate_guidance(ctx, mi, out.placement.pebbled)) {
        blacklist.insert(mi.path_index);
        all_ok = false;
      }
    }
    if (!all_ok) continue;
    if (out.placement.used() > out.placement.budget) {
      std::ostringstream audit;
      audit << "place_milestone_encoding: budget exceeded (" << out.placement.used() << " > "
            << out.placement.budget << ");";
      for (const MilestoneInfo& mi : out.plan.milestones)
        audit << " milestone@" << mi.path_index << " uses " << mi.encoding_nodes.size()
              << " encoding pebbles;";
      throw HuntError(audit.str());
    }
    return out;
  }
}

// ---- feasibility ------------------------------------------------------------

Feasibility placement_feasible(const InstanceSpec& inst, Regime regime, int k_or_c) {
  const int D = inst.distance;
  switch (regime) {
    case Regime::kNaive:
      if (k_or_c != 0) return {false, "naive regime uses no pebbles"};
      return {true, ""};
    case Regime::kTree:
      if (inst.family != Family::kTree && inst.family != Family::kCompleteTree)
        return {false, "tree placement needs a tree instance"};
      if (k_or_c < 1 || k_or_c >= D) return {false, "tree placement needs 1 <= k < D"};
      return {true, ""};
    case Regime::kAlternate:
      if (k_or_c < 1 || k_or_c >= D) return {false, "alternate placement needs 1 <= k < D"};
      if (alternate_even_levels(D) > k_or_c)
        return {false, "not enough pebbles to cover the even levels"};
      return {true, ""};
    case Regime::kBipartite:
      if (!is_bipartite(inst.graph)) return {false, "graph has an odd cycle"};
      if (k_or_c < 1 || k_or_c >= D) return {false, "bipartite placement needs 1 <= k < D"};
      return {true, ""};
    case Regime::kMarker: {
      if (k_or_c < 2)
        return {false, "single pebble impossibility: one pebble cannot be told apart from a cycle back"};
      if (k_or_c >= (D + 1) / 2) return {false, "k >= D/2 belongs to the alternate regime"};
      int gap = marker_gap(D, k_or_c);
      if (gap < 3) return {false, "computed gap below 3; alternate-level regime applies"};
      return {true, ""};
    }
    case Regime::kMilestone:
      if (k_or_c < 1) return {false, "milestone regime needs c >= 1"};
      return {true, ""};
  }
  return {false, "unknown regime"};
}

// ---- placement file ----------------------------------------------------------

std::string write_placement(const PebblePlacement& placement, const std::string& plan_json) {
  std::ostringstream out;
  for (int node : placement.pebbled) out << "pebble " << node << "\n";
  out << "plan " << plan_json << "\n";
  return out.str();
}

PlacementDoc parse_placement(const std::string& text) {
  PlacementDoc doc;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "pebble") {
      int node;
      if (!(ls >> node)) throw HuntError("placement syntax error at line " + std::to_string(lineno));
      doc.placement.pebbled.insert(node);
    } else if (head == "plan") {
      std::string rest;
      std::getline(ls, rest);
      auto first = rest.find_first_not_of(" \t");
      doc.plan_json = (first == std::string::npos) ? "" : rest.substr(first);
    } else {
      throw HuntError("placement syntax error at line " + std::to_string(lineno) + ": unknown directive '" +
                      head + "'");
    }
  }
  doc.placement.budget = doc.placement.used();
  return doc;
}

std::string plan_to_json(const TreePlan& p) {
  json j;
  j["regime"] = "tree";
  j["levels"] = p.levels;
  return j.dump();
}

std::string plan_to_json(const AlternatePlan& p) {
  json j;
  j["regime"] = "alternate";
  j["levels"] = p.levels;
  return j.dump();
}

std::string plan_to_json(const BipartitePlan& p) {
  json j;
  j["regime"] = "bipartite";
  j["levels"] = p.levels;
  j["gap"] = p.gap;
  j["dropped"] = p.dropped;
  return j.dump();
}

std::string plan_to_json(const MarkerPlan& p) {
  json j;
  j["regime"] = "marker";
  j["groups"] = p.group_count;
  j["remainder"] = p.remainder;
  j["gap"] = p.gap;
  json anchors = json::array();
  for (const MarkerAnchor& a : p.anchors)
    anchors.push_back({{"marker", a.is_marker}, {"first", a.first_index}, {"last", a.last_index}});
  j["anchors"] = anchors;
  return j.dump();
}

std::string plan_to_json(const MilestonePlan& p) {
  json j;
  j["regime"] = "milestone";
  j["c"] = p.per_hop;
  j["fat_threshold"] = p.fat_threshold;
  j["path_pebbles"] = p.path_pebble_indices;
  j["demoted"] = p.demoted;
  json ms = json::array();
  for (const MilestoneInfo& m : p.milestones) {
    ms.push_back({{"node", m.node},
                  {"path_index", m.path_index},
                  {"alpha", m.alpha},
                  {"first_half", m.encoding_on_first_half},
                  {"strings", m.strings},
                  {"values", m.values},
                  {"encoding_ports", m.encoding_ports},
                  {"encoding_nodes", m.encoding_nodes},
                  {"consistency_ports", m.consistency_ports},
                  {"skipped_index", m.skipped_index}});
  }
  j["milestones"] = ms;
  return j.dump();
}

}  // namespace hunt
