#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "hunt/algorithms.hpp"
#include "hunt/graph.hpp"
#include "hunt/harness.hpp"
#include "hunt/oracle.hpp"

using namespace hunt;

namespace {

struct GraphBuilder {
  PortLabeledGraph g;

  int add_node() {
    g.adj.emplace_back();
    return g.node_count() - 1;
  }
  void ensure(int n) {
    while (g.node_count() < n) add_node();
  }
  void link(int u, int v) {
    int pu = g.degree(u);
    int pv = g.degree(v);
    g.adj[static_cast<std::size_t>(u)].push_back({v, pv});
    g.adj[static_cast<std::size_t>(v)].push_back({u, pu});
  }
  InstanceSpec instance(int start, int treasure, Family family = Family::kGeneral) {
    InstanceSpec inst;
    inst.graph = g;
    inst.start = start;
    inst.treasure = treasure;
    inst.distance = bfs_distances(g, start)[static_cast<std::size_t>(treasure)];
    int md = 0;
    for (int u = 0; u < inst.graph.node_count(); ++u) md = std::max(md, inst.graph.degree(u));
    inst.max_degree = md;
    inst.family = family;
    REQUIRE(validate_graph(inst.graph).ok);
    return inst;
  }
};

int count_events(const HuntResult& r, EventKind kind) {
  int n = 0;
  for (const HuntEvent& ev : r.events)
    if (ev.kind == kind) ++n;
  return n;
}

void check_progress(const InstanceSpec& inst, const PebblePlacement& placement, const HuntResult& r) {
  ProgressCheck pc = check_search_progress(inst, placement, r);
  CAPTURE(pc.issue);
  CHECK(pc.ok);
}

InstanceSpec fat_path_instance(int distance, int heavy_index, int extra) {
  GraphBuilder b;
  b.ensure(distance + 1);
  for (int i = 0; i < distance; ++i) b.link(i, i + 1);
  for (int i = 0; i < extra; ++i) b.link(heavy_index, b.add_node());
  return b.instance(0, distance);
}

}  // namespace

// ---- naive ------------------------------------------------------------------

TEST_CASE("naive hunt at distance one") {
  GraphBuilder b;
  b.ensure(2);
  b.link(0, 1);
  InstanceSpec inst = b.instance(0, 1);
  AgentView view = begin_hunt(inst, {});
  HuntResult r = hunt_naive(view);
  CHECK(r.found);
  CHECK(r.time == 1);
}

TEST_CASE("naive hunt on a path of length three") {
  GraphBuilder b;
  b.ensure(4);
  for (int i = 0; i < 3; ++i) b.link(i, i + 1);
  InstanceSpec inst = b.instance(0, 3);
  AgentView view = begin_hunt(inst, {});
  HuntResult r = hunt_naive(view);
  CHECK(r.found);
  // sweeps: radius 1 costs 2, radius 2 costs 4, radius 3 finds t at step 3
  CHECK(r.time == 9);
}

TEST_CASE("naive hunt pays the full enumeration for the last leaf") {
  CompleteTree ct = gen_complete_tree(3, 2);
  InstanceSpec inst;
  inst.graph = ct.graph;
  inst.start = ct.root;
  inst.treasure = ct.leaves.back();
  inst.distance = 2;
  inst.max_degree = 3;
  inst.family = Family::kCompleteTree;
  AgentView view = begin_hunt(inst, {});
  HuntResult r = hunt_naive(view);
  CHECK(r.found);
  // radius-1 sweep: 6 traversals; radius-2 sweep reaches the last leaf (walk
  // [2,2]) after 16 more
  CHECK(r.time == 22);
}

// ---- alternate --------------------------------------------------------------

TEST_CASE("alternate hunt on a tree instance") {
  InstanceSpec inst = gen_instance(Family::kTree, 3, 4, 3);
  AlternatePlacement ap = place_alternate_levels(inst, 2);
  AgentView view = begin_hunt(inst, ap.placement);
  HuntResult r = hunt_alternate(view);
  CHECK(r.found);
  check_progress(inst, ap.placement, r);
}

TEST_CASE("alternate hunt at distance two with one pebble") {
  InstanceSpec inst = gen_instance(Family::kGeneral, 3, 2, 8);
  AlternatePlacement ap = place_alternate_levels(inst, 1);
  AgentView view = begin_hunt(inst, ap.placement);
  HuntResult r = hunt_alternate(view);
  CHECK(r.found);
  CHECK(r.pebbles_seen >= 1);
}

TEST_CASE("alternate hunt on a six-cycle never revisits a search node") {
  GraphBuilder b;
  b.ensure(6);
  for (int i = 0; i < 5; ++i) b.link(i, i + 1);
  b.link(5, 0);
  InstanceSpec inst = b.instance(0, 3);
  REQUIRE(inst.distance == 3);
  AlternatePlacement ap = place_alternate_levels(inst, 2);
  AgentView view = begin_hunt(inst, ap.placement);
  HuntResult r = hunt_alternate(view);
  CHECK(r.found);
  check_progress(inst, ap.placement, r);
}

TEST_CASE("alternate hunt across the generated sweep") {
  for (int d = 2; d <= 9; ++d) {
    for (int k = (d + 1) / 2; k < d; ++k) {
      for (std::uint64_t seed : {1ull, 5ull}) {
        CAPTURE(d);
        CAPTURE(k);
        CAPTURE(seed);
        InstanceSpec inst = gen_instance(Family::kGeneral, 4, d, seed);
        AlternatePlacement ap = place_alternate_levels(inst, k);
        AgentView view = begin_hunt(inst, ap.placement);
        HuntResult r = hunt_alternate(view);
        CHECK(r.found);
        check_progress(inst, ap.placement, r);
      }
    }
  }
}

// ---- bipartite ----------------------------------------------------------------

TEST_CASE("bipartite hunt on an even cycle") {
  GraphBuilder b;
  b.ensure(10);
  for (int i = 0; i < 9; ++i) b.link(i, i + 1);
  b.link(9, 0);
  InstanceSpec inst = b.instance(0, 5, Family::kBipartite);
  REQUIRE(inst.distance == 5);
  BipartitePlacement bp = place_bipartite_parity(inst, 1);
  AgentView view = begin_hunt(inst, bp.placement);
  HuntResult r = hunt_bipartite(view);
  CHECK(r.found);
  check_progress(inst, bp.placement, r);
}

TEST_CASE("bipartite hunt on a tree runs three phases") {
  InstanceSpec inst = gen_instance(Family::kTree, 3, 9, 4);
  inst.family = Family::kBipartite;  // trees are trivially two-colorable
  BipartitePlacement bp = place_bipartite_parity(inst, 2);
  REQUIRE(bp.plan.levels == std::vector<int>{3, 6});
  AgentView view = begin_hunt(inst, bp.placement);
  HuntResult r = hunt_bipartite(view);
  CHECK(r.found);
  CHECK(count_events(r, EventKind::kSearchNodeSet) == 3);  // s plus two pebbles
  check_progress(inst, bp.placement, r);
}

TEST_CASE("bipartite hunt finds an adjacent treasure with no pebbles") {
  GraphBuilder b;
  b.ensure(2);
  b.link(0, 1);
  InstanceSpec inst = b.instance(0, 1, Family::kBipartite);
  AgentView view = begin_hunt(inst, {});
  HuntResult r = hunt_bipartite(view);
  CHECK(r.found);
  CHECK(r.time == 1);
}

TEST_CASE("bipartite hunt across the generated sweep") {
  for (int d = 2; d <= 9; ++d) {
    for (int k = 1; k < d; ++k) {
      for (std::uint64_t seed : {2ull, 7ull}) {
        CAPTURE(d);
        CAPTURE(k);
        CAPTURE(seed);
        InstanceSpec inst = gen_instance(Family::kBipartite, 4, d, seed);
        BipartitePlacement bp = place_bipartite_parity(inst, k);
        AgentView view = begin_hunt(inst, bp.placement);
        HuntResult r = hunt_bipartite(view);
        CHECK(r.found);
        check_progress(inst, bp.placement, r);
      }
    }
  }
}

// ---- marker --------------------------------------------------------------------

TEST_CASE("marker hunt rejects the misleading cycle") {
  // True path 0..10 with the marker on (3,4) and the lone pebble on 7. A
  // triangle at the marker's far node makes a radius-4 walk circle back to
  // it; the stored-port test must classify that hit as a self-return.
  GraphBuilder b;
  b.ensure(11);
  b.link(0, 1);
  b.link(1, 2);
  b.link(2, 3);
  b.link(3, 4);
  int u5 = b.add_node();
  int u6 = b.add_node();
  b.link(4, u5);  // port order at node 4: 0 -> 3, 1 -> u5, then 2 -> 5
  b.link(4, u6);
  b.link(u5, u6);
  for (int i = 4; i < 10; ++i) b.link(i, i + 1);
  InstanceSpec inst = b.instance(0, 10);
  REQUIRE(inst.distance == 10);

  MarkerPlacement mp = place_marker_groups(inst, 3);
  REQUIRE(mp.plan.gap == 3);
  AgentView view = begin_hunt(inst, mp.placement);
  HuntResult r = hunt_marker(view);
  CHECK(r.found);
  CHECK(count_events(r, EventKind::kPossibility1) >= 1);
  CHECK(count_events(r, EventKind::kPossibility2) >= 1);
  check_progress(inst, mp.placement, r);

  // classification soundness: every rejected hit is the search node itself,
  // every accepted hit is a planned anchor
  ReplayCheck replay = replay_transcript(inst, mp.placement, r.transcript);
  REQUIRE(replay.ok);
  PathP path = shortest_path(inst.graph, inst.start, inst.treasure);
  std::set<int> anchor_nodes;
  for (const MarkerAnchor& a : mp.plan.anchors)
    for (int i = a.first_index; i <= a.last_index; ++i)
      anchor_nodes.insert(path.nodes[static_cast<std::size_t>(i)]);
  int last_search_node = -1;
  for (const HuntEvent& ev : r.events) {
    int node = replay.positions[static_cast<std::size_t>(ev.time)];
    if (ev.kind == EventKind::kSearchNodeSet) last_search_node = node;
    if (ev.kind == EventKind::kPossibility1) CHECK(node == last_search_node);
    if (ev.kind == EventKind::kPossibility2) CHECK(anchor_nodes.count(node) == 1);
  }
}

TEST_CASE("marker hunt sees no self-returns on a tree") {
  InstanceSpec inst = gen_instance(Family::kTree, 3, 10, 6);
  inst.family = Family::kGeneral;  // run the marker machinery anyway
  MarkerPlacement mp = place_marker_groups(inst, 3);
  AgentView view = begin_hunt(inst, mp.placement);
  HuntResult r = hunt_marker(view);
  CHECK(r.found);
  CHECK(count_events(r, EventKind::kPossibility1) == 0);
  check_progress(inst, mp.placement, r);
}

TEST_CASE("marker hunt with the minimal budget of two") {
  InstanceSpec inst = gen_instance(Family::kGeneral, 4, 7, 5);
  MarkerPlacement mp = place_marker_groups(inst, 2);
  AgentView view = begin_hunt(inst, mp.placement);
  HuntResult r = hunt_marker(view);
  CHECK(r.found);
  CHECK(count_events(r, EventKind::kMarkerFound) == 1);
  check_progress(inst, mp.placement, r);
}

TEST_CASE("marker hunt across the generated sweep") {
  for (auto [d, k] : std::vector<std::pair<int, int>>{{7, 2}, {8, 2}, {9, 2}, {10, 2}, {10, 3}, {12, 3},
                                                      {13, 4}, {14, 5}, {17, 6}}) {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
      CAPTURE(d);
      CAPTURE(k);
      CAPTURE(seed);
      InstanceSpec inst = gen_instance(Family::kGeneral, 5, d, seed);
      MarkerPlacement mp = place_marker_groups(inst, k);
      AgentView view = begin_hunt(inst, mp.placement);
      HuntResult r = hunt_marker(view);
      CHECK(r.found);
      check_progress(inst, mp.placement, r);
    }
  }
}

// ---- checker ----------------------------------------------------------------------

TEST_CASE("checker classifies a true milestone") {
  InstanceSpec inst = fat_path_instance(7, 1, 50);
  MilestonePlacement mp = place_milestone_encoding(inst, 3);
  REQUIRE(mp.plan.milestones.size() == 1);
  const MilestoneInfo& mi = mp.plan.milestones.front();

  AgentView view = begin_hunt(inst, mp.placement);
  PathP path = shortest_path(inst.graph, inst.start, inst.treasure);
  view.traverse(path.out_ports[0]);  // stand on the milestone, arrived from s
  MilestoneVerdict v = checker_for_milestone(view);
  CHECK(v.milestone);
  CHECK(v.encoding_on_first_half == mi.encoding_on_first_half);
}

TEST_CASE("checker hints at a lone window pebble on a light node") {
  // degree-12 node, single pebbled neighbor behind port 3, nothing in the
  // second window
  GraphBuilder b;
  int v = b.add_node();
  std::vector<int> nbr;
  for (int i = 0; i < 12; ++i) {
    int x = b.add_node();
    b.link(v, x);
    nbr.push_back(x);
  }
  int t = b.add_node();
  b.link(nbr[3], t);
  InstanceSpec inst = b.instance(v, t);
  PebblePlacement placement;
  placement.budget = 2;
  placement.pebbled.insert(v);
  placement.pebbled.insert(nbr[3]);
  AgentView view = begin_hunt(inst, placement);
  MilestoneVerdict verdict = checker_for_milestone(view);
  CHECK_FALSE(verdict.milestone);
  CHECK(verdict.hint_port == 3);
}

TEST_CASE("checker treats empty windows and small degrees as light") {
  InstanceSpec inst = fat_path_instance(4, 2, 20);
  PebblePlacement only_self;
  only_self.budget = 1;
  only_self.pebbled.insert(2);
  AgentView view = begin_hunt(inst, only_self);
  PathP path = shortest_path(inst.graph, inst.start, inst.treasure);
  view.traverse(path.out_ports[0]);
  view.traverse(path.out_ports[1]);  // on the fat node, no pebbled neighbors
  MilestoneVerdict fat = checker_for_milestone(view);
  CHECK_FALSE(fat.milestone);
  CHECK(fat.hint_port == -1);

  GraphBuilder small;
  small.ensure(3);
  small.link(0, 1);
  small.link(1, 2);
  InstanceSpec tiny = small.instance(0, 2);
  PebblePlacement tp;
  tp.pebbled.insert(0);
  AgentView tv = begin_hunt(tiny, tp);
  CHECK_FALSE(checker_for_milestone(tv).milestone);  // degree below the windows
}

// ---- milestone hunts ------------------------------------------------------------

TEST_CASE("milestone hunt follows a plain pebble chain") {
  InstanceSpec inst = gen_instance(Family::kGeneral, 6, 6, 21);
  MilestonePlacement mp = place_milestone_encoding(inst, 1);
  REQUIRE(mp.plan.milestones.empty());
  AgentView view = begin_hunt(inst, mp.placement);
  HuntResult r = hunt_milestone(view);
  CHECK(r.found);
  CHECK(r.time <= 16ull * static_cast<std::uint64_t>(fat_threshold_for(1)) * 6);
  check_progress(inst, mp.placement, r);
}

TEST_CASE("milestone hunt crosses a fat node under the degraded budgets") {
  for (int c : {1, 2}) {
    InstanceSpec inst = fat_path_instance(7, 1, 40);
    MilestonePlacement mp = place_milestone_encoding(inst, c);
    REQUIRE(mp.plan.milestones.empty());
    AgentView view = begin_hunt(inst, mp.placement);
    HuntResult r = hunt_milestone(view);
    CAPTURE(c);
    CHECK(r.found);
    check_progress(inst, mp.placement, r);
  }
}

TEST_CASE("milestone hunt decodes advice and skips the empty node") {
  InstanceSpec inst = fat_path_instance(7, 1, 50);
  MilestonePlacement mp = place_milestone_encoding(inst, 3);
  REQUIRE(mp.plan.milestones.size() == 1);
  AgentView view = begin_hunt(inst, mp.placement);
  HuntResult r = hunt_milestone(view);
  CHECK(r.found);
  CHECK(count_events(r, EventKind::kMilestoneVerdict) == 1);
  check_progress(inst, mp.placement, r);
}

TEST_CASE("milestone hunt on two milestones in sequence") {
  InstanceSpec inst = fat_path_instance(12, 1, 50);
  GraphBuilder b;  // reuse the link discipline to extend the instance
  b.g = inst.graph;
  for (int i = 0; i < 50; ++i) b.link(6, b.add_node());
  inst = [&] {
    InstanceSpec out = inst;
    out.graph = b.g;
    out.max_degree = 52;
    return out;
  }();
  MilestonePlacement mp = place_milestone_encoding(inst, 3);
  REQUIRE(mp.plan.milestones.size() == 2);
  AgentView view = begin_hunt(inst, mp.placement);
  HuntResult r = hunt_milestone(view);
  CHECK(r.found);
  CHECK(count_events(r, EventKind::kMilestoneVerdict) == 2);
  check_progress(inst, mp.placement, r);
}

TEST_CASE("scaled-down milestone: one advice string localizes the next hop") {
  // Degree-12 node with the next path node behind port 4 of the first half:
  // one advice bit selects the block {3,4,5}; the agent reads "1", probes
  // that block and moves on. Too little advice for the recovery machinery,
  // so the next node keeps its pebble.
  GraphBuilder b;
  b.ensure(1);
  int vi = 0;
  std::vector<int> nbr;
  for (int i = 0; i < 4; ++i) nbr.push_back(b.add_node()), b.link(vi, nbr.back());
  int v1 = b.add_node();
  b.link(vi, v1);  // port 4
  for (int i = 0; i < 7; ++i) nbr.push_back(b.add_node()), b.link(vi, nbr.back());
  int v2 = b.add_node();
  b.link(v1, v2);
  int t = b.add_node();
  b.link(v2, t);
  REQUIRE(b.g.degree(vi) == 12);

  PebblePlacement placement;
  placement.budget = 6;
  placement.pebbled.insert(vi);
  placement.pebbled.insert(v1);
  placement.pebbled.insert(v2);
  // advice "1" transformed to "11" on the second half's kept ports 7, 8
  placement.pebbled.insert(b.g.at(vi, 7).to);
  placement.pebbled.insert(b.g.at(vi, 8).to);

  // the oracle's own arithmetic for this shape: value 1 selects ports 3..5
  CHECK(partition_block(6, 1, 1) == std::pair<int, int>{3, 6});

  InstanceSpec inst = b.instance(vi, t);
  REQUIRE(inst.distance == 3);
  AgentView view = begin_hunt(inst, placement);
  HuntResult r = hunt_milestone(view);
  CHECK(r.found);
  CHECK(count_events(r, EventKind::kMilestoneVerdict) == 1);
  check_progress(inst, placement, r);
}

TEST_CASE("milestone recovery rejects decoy branches through the consistency set") {
  // A fat start node carrying six advice strings; w hangs off the first path
  // node inside the advice-2 block and leads to the encoding nodes u/u2. The
  // consistency probe at u finds two pebbled neighbors and kills the branch;
  // the true skipped-node branch lands on the fifth path node.
  GraphBuilder b;
  b.ensure(8);  // path nodes 0..7
  for (int i = 0; i < 13; ++i) b.link(0, b.add_node());  // s ports 0..12
  b.link(0, 1);                                          // s port 13 <-> v1 port 0
  int x = b.add_node();
  b.link(1, x);  // v1 port 1
  int w = b.add_node();
  b.link(1, w);  // v1 port 2, w port 0
  b.link(1, 2);  // v1 port 3, v2 port 0
  for (int i = 2; i < 7; ++i) b.link(i, i + 1);
  for (int i = 14; i <= 25; ++i) b.link(0, b.add_node());  // rest of the first half
  b.link(0, b.add_node());                                 // port 26, the half's lead
  for (int i = 27; i <= 30; ++i) b.link(0, b.add_node());  // advice-1 bits and separator
  int u = b.add_node();
  b.link(0, u);  // s port 31 = first bit of advice 2; u port 0 -> s
  int u2 = b.add_node();
  b.link(u, u2);  // u port 1, u2 port 0
  b.link(0, u2);  // s port 32 = second bit of advice 2; u2 port 1 -> s
  b.link(u, w);   // u port 2, w port 1
  for (int i = 33; i <= 51; ++i) b.link(0, b.add_node());
  REQUIRE(b.g.degree(0) == 52);

  InstanceSpec inst = b.instance(0, 7);
  REQUIRE(inst.distance == 7);
  MilestonePlacement mp = place_milestone_encoding(inst, 3);
  REQUIRE(mp.plan.milestones.size() == 1);
  const MilestoneInfo& mi = mp.plan.milestones.front();
  REQUIRE(mi.path_index == 0);
  REQUIRE(mi.strings.front() == "1");
  // u and u2 sit on the advice-2 bit positions, so both carry pebbles
  CHECK(mp.placement.has(u));
  CHECK(mp.placement.has(u2));

  AgentView view = begin_hunt(inst, mp.placement);
  HuntResult r = hunt_milestone(view);
  CHECK(r.found);
  CHECK(count_events(r, EventKind::kBranchRejected) >= 1);
  check_progress(inst, mp.placement, r);
}

TEST_CASE("all hunts are deterministic") {
  InstanceSpec inst = gen_instance(Family::kGeneral, 4, 10, 14);
  MarkerPlacement mp = place_marker_groups(inst, 3);
  auto run = [&]() {
    AgentView view = begin_hunt(inst, mp.placement);
    return hunt_marker(view);
  };
  HuntResult a = run();
  HuntResult b = run();
  CHECK(a.found == b.found);
  CHECK(a.time == b.time);
  CHECK(transcript_to_text(a.transcript) == transcript_to_text(b.transcript));
}

TEST_CASE("algo names round-trip") {
  for (Algo a : {Algo::kNaive, Algo::kAlternate, Algo::kBipartite, Algo::kMarker, Algo::kMilestone,
                 Algo::kAuto}) {
    auto parsed = algo_from_name(algo_name(a));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == a);
  }
  CHECK_FALSE(algo_from_name("bogus").has_value());
}
