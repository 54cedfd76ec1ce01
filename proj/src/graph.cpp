#include "hunt/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "hunt/rng.hpp"

namespace hunt {

const char* family_name(Family f) {
  switch (f) {
    case Family::kTree: return "tree";
    case Family::kBipartite: return "bipartite";
    case Family::kGeneral: return "general";
    case Family::kCompleteTree: return "complete-tree";
  }
  return "?";
}

std::optional<Family> family_from_name(const std::string& name) {
  if (name == "tree") return Family::kTree;
  if (name == "bipartite") return Family::kBipartite;
  if (name == "general") return Family::kGeneral;
  if (name == "complete-tree") return Family::kCompleteTree;
  return std::nullopt;
}

ValidationReport validate_graph(const PortLabeledGraph& g) {
  ValidationReport rep;
  auto flag = [&rep](std::string msg) {
    rep.ok = false;
    rep.issues.push_back(std::move(msg));
  };
  const int n = g.node_count();
  if (n == 0) {
    flag("graph has no nodes");
    return rep;
  }
  for (int u = 0; u < n; ++u) {
    std::set<int> seen;
    for (int p = 0; p < g.degree(u); ++p) {
      const HalfEdge& e = g.at(u, p);
      if (e.to < 0 || e.to >= n) {
        flag("node " + std::to_string(u) + " port " + std::to_string(p) + ": neighbor id out of range");
        continue;
      }
      if (e.to == u) flag("self-loop at node " + std::to_string(u) + " port " + std::to_string(p));
      if (!seen.insert(e.to).second)
        flag("multi-edge: node " + std::to_string(u) + " has repeated neighbor " + std::to_string(e.to));
      if (e.rev < 0 || e.rev >= g.degree(e.to)) {
        flag("node " + std::to_string(u) + " port " + std::to_string(p) + ": reverse port out of range");
        continue;
      }
      const HalfEdge& back = g.at(e.to, e.rev);
      if (back.to != u || back.rev != p)
        flag("symmetry violation at (" + std::to_string(u) + "," + std::to_string(p) + ")");
    }
  }
  if (rep.ok) {
    std::vector<int> dist = bfs_distances(g, 0);
    for (int u = 0; u < n; ++u)
      if (dist[static_cast<std::size_t>(u)] < 0) {
        flag("graph is not connected (node " + std::to_string(u) + " unreachable)");
        break;
      }
  }
  return rep;
}

std::vector<int> bfs_distances(const PortLabeledGraph& g, int src) {
  std::vector<int> dist(static_cast<std::size_t>(g.node_count()), -1);
  std::deque<int> q;
  dist[static_cast<std::size_t>(src)] = 0;
  q.push_back(src);
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int p = 0; p < g.degree(u); ++p) {
      int v = g.at(u, p).to;
      if (dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        q.push_back(v);
      }
    }
  }
  return dist;
}

PathP shortest_path(const PortLabeledGraph& g, int s, int t) {
  if (s < 0 || s >= g.node_count() || t < 0 || t >= g.node_count())
    throw HuntError("shortest_path: node id out of range");
  std::vector<int> to_t = bfs_distances(g, t);
  if (to_t[static_cast<std::size_t>(s)] < 0) throw HuntError("shortest_path: target unreachable");
  PathP path;
  path.nodes.push_back(s);
  int cur = s;
  while (cur != t) {
    const int remaining = to_t[static_cast<std::size_t>(cur)];
    int chosen = -1;
    for (int p = 0; p < g.degree(cur); ++p) {
      if (to_t[static_cast<std::size_t>(g.at(cur, p).to)] == remaining - 1) {
        chosen = p;
        break;
      }
    }
    const HalfEdge& e = g.at(cur, chosen);
    path.out_ports.push_back(chosen);
    path.in_ports.push_back(e.rev);
    path.nodes.push_back(e.to);
    cur = e.to;
  }
  return path;
}

CompleteTree gen_complete_tree(int delta, int depth) {
  if (delta < 3) throw HuntError("gen_complete_tree: delta must be >= 3");
  if (depth < 1) throw HuntError("gen_complete_tree: depth must be >= 1");
  CompleteTree out;
  PortLabeledGraph& g = out.graph;
  g.adj.emplace_back();  // root = 0
  struct Pending {
    int node;
    int level;
  };
  std::deque<Pending> q;
  q.push_back({0, 0});
  while (!q.empty()) {
    auto [u, level] = q.front();
    q.pop_front();
    if (level == depth) {
      out.leaves.push_back(u);
      continue;
    }
    const int child_count = (level == 0) ? delta : delta - 1;
    for (int i = 0; i < child_count; ++i) {
      int child = g.node_count();
      g.adj.emplace_back();
      int up = static_cast<int>(g.adj[static_cast<std::size_t>(u)].size());
      g.adj[static_cast<std::size_t>(u)].push_back({child, 0});
      g.adj[static_cast<std::size_t>(child)].push_back({u, up});
      q.push_back({child, level + 1});
    }
  }
  return out;
}

namespace {

// Edge-list builder; ports are assigned (shuffled) once the topology is done.
struct Builder {
  struct Node {
    int anchor;        // backbone node this pocket hangs from (= self for backbone)
    int layer;         // lower bound certificate for dist(s, .)
    int pocket_depth;  // 0 for backbone nodes
    std::vector<int> nbrs;
  };
  std::vector<Node> nodes;
  int cap;

  explicit Builder(int max_degree) : cap(max_degree) {}

  int add_node(int anchor, int layer, int pocket_depth) {
    nodes.push_back({anchor, layer, pocket_depth, {}});
    return static_cast<int>(nodes.size()) - 1;
  }
  int deg(int u) const { return static_cast<int>(nodes[static_cast<std::size_t>(u)].nbrs.size()); }
  bool adjacent(int u, int v) const {
    const auto& ns = nodes[static_cast<std::size_t>(u)].nbrs;
    return std::find(ns.begin(), ns.end(), v) != ns.end();
  }
  bool can_link(int u, int v) const {
    return u != v && deg(u) < cap && deg(v) < cap && !adjacent(u, v);
  }
  void link(int u, int v) {
    nodes[static_cast<std::size_t>(u)].nbrs.push_back(v);
    nodes[static_cast<std::size_t>(v)].nbrs.push_back(u);
  }

  PortLabeledGraph finish(Rng& rng) const {
    PortLabeledGraph g;
    g.adj.resize(nodes.size());
    std::vector<std::vector<int>> order(nodes.size());
    for (std::size_t u = 0; u < nodes.size(); ++u) {
      order[u] = nodes[u].nbrs;
      rng.shuffle(order[u]);
      g.adj[u].resize(order[u].size());
    }
    // Pair up the two endpoints of every edge.
    std::map<std::pair<int, int>, int> port_of;
    for (std::size_t u = 0; u < nodes.size(); ++u)
      for (std::size_t p = 0; p < order[u].size(); ++p)
        port_of[{static_cast<int>(u), order[u][p]}] = static_cast<int>(p);
    for (std::size_t u = 0; u < nodes.size(); ++u)
      for (std::size_t p = 0; p < order[u].size(); ++p) {
        int v = order[u][p];
        g.adj[u][p] = {v, port_of.at({v, static_cast<int>(u)})};
      }
    return g;
  }
};

}  // namespace

InstanceSpec gen_instance(Family family, int max_degree, int distance, std::uint64_t seed) {
  if (max_degree < 2) throw HuntError("gen_instance: max degree must be >= 2");
  if (distance < 1) throw HuntError("gen_instance: distance must be >= 1");

  Rng rng(mix_seed(static_cast<std::uint64_t>(family) + 1, static_cast<std::uint64_t>(max_degree),
                   static_cast<std::uint64_t>(distance), seed));

  if (family == Family::kCompleteTree) {
    if (max_degree < 3) throw HuntError("gen_instance: complete-tree needs max degree >= 3");
    CompleteTree ct = gen_complete_tree(max_degree, distance);
    InstanceSpec inst;
    inst.graph = std::move(ct.graph);
    inst.start = ct.root;
    inst.treasure = ct.leaves[static_cast<std::size_t>(rng.below(ct.leaves.size()))];
    inst.distance = distance;
    inst.max_degree = max_degree;
    inst.family = family;
    inst.seed = seed;
    return inst;
  }

  Builder b(max_degree);
  for (int i = 0; i <= distance; ++i) b.add_node(i, i, 0);
  for (int i = 0; i < distance; ++i) b.link(i, i + 1);

  // Pocket decorations: every extra node hangs (transitively) off exactly one
  // backbone node, so leaving the path and re-entering it elsewhere is
  // impossible. Cycles live inside pockets; the family rules below control
  // their parity and depth.
  const int extra_target = distance + 1 + rng.below_int(2 * (distance + 1) + 1);
  std::vector<int> pocket_nodes;
  for (int i = 0; i < extra_target; ++i) {
    // Bias attachment toward existing pocket nodes to grow real pockets.
    int parent = -1;
    for (int attempt = 0; attempt < 8 && parent < 0; ++attempt) {
      int candidate;
      if (!pocket_nodes.empty() && rng.below(100) < 55)
        candidate = pocket_nodes[static_cast<std::size_t>(rng.below(pocket_nodes.size()))];
      else
        candidate = rng.below_int(distance + 1);
      if (b.deg(candidate) < max_degree) parent = candidate;
    }
    if (parent < 0) continue;
    const auto& pn = b.nodes[static_cast<std::size_t>(parent)];
    int node = b.add_node(pn.anchor, pn.layer + 1, pn.pocket_depth + 1);
    b.link(parent, node);
    pocket_nodes.push_back(node);
  }

  // Extra edges between pocket nodes of the same anchor.
  //   bipartite: only layer-adjacent pairs at pocket depth >= 3, so every
  //              cycle is even and every closed walk through a backbone node
  //              is longer than any search radius the placements induce.
  //   general:   layer distance <= 1 at any depth; odd cycles allowed.
  if (family != Family::kTree && pocket_nodes.size() >= 2) {
    int attempts = 2 * (distance + 1);
    while (attempts-- > 0) {
      int u = pocket_nodes[static_cast<std::size_t>(rng.below(pocket_nodes.size()))];
      int v = pocket_nodes[static_cast<std::size_t>(rng.below(pocket_nodes.size()))];
      const auto& nu = b.nodes[static_cast<std::size_t>(u)];
      const auto& nv = b.nodes[static_cast<std::size_t>(v)];
      if (nu.anchor != nv.anchor) continue;
      int layer_gap = nu.layer > nv.layer ? nu.layer - nv.layer : nv.layer - nu.layer;
      if (family == Family::kBipartite) {
        if (layer_gap != 1) continue;
        if (nu.pocket_depth < 3 || nv.pocket_depth < 3) continue;
      } else {
        if (layer_gap > 1) continue;
      }
      if (!b.can_link(u, v)) continue;
      b.link(u, v);
    }
  }

  // Make the requested maximum degree real: top up one path node (the start
  // of the second half, away from both endpoints when possible) with leaves.
  {
    int heavy = distance / 2;
    int guard = 4 * max_degree;
    while (guard-- > 0) {
      int cur_max = 0;
      for (int u = 0; u < static_cast<int>(b.nodes.size()); ++u) cur_max = std::max(cur_max, b.deg(u));
      if (cur_max >= max_degree) break;
      if (b.deg(heavy) >= max_degree) heavy = rng.below_int(distance + 1);
      const auto& hn = b.nodes[static_cast<std::size_t>(heavy)];
      int node = b.add_node(hn.anchor, hn.layer + 1, hn.pocket_depth + 1);
      b.link(heavy, node);
    }
  }

  InstanceSpec inst;
  inst.graph = b.finish(rng);
  inst.start = 0;
  inst.treasure = distance;
  inst.distance = distance;
  inst.family = family;
  inst.seed = seed;
  int md = 0;
  for (int u = 0; u < inst.graph.node_count(); ++u) md = std::max(md, inst.graph.degree(u));
  inst.max_degree = md;

  ValidationReport rep = validate_graph(inst.graph);
  if (!rep.ok) throw HuntError("gen_instance: produced invalid graph: " + rep.issues.front());
  std::vector<int> d = bfs_distances(inst.graph, inst.start);
  if (d[static_cast<std::size_t>(inst.treasure)] != distance)
    throw HuntError("gen_instance: start-to-treasure distance drifted");
  if (family == Family::kBipartite && !is_bipartite(inst.graph))
    throw HuntError("gen_instance: bipartite family produced an odd cycle");
  return inst;
}

bool is_bipartite(const PortLabeledGraph& g) {
  std::vector<int> color(static_cast<std::size_t>(g.node_count()), -1);
  std::deque<int> q;
  for (int s = 0; s < g.node_count(); ++s) {
    if (color[static_cast<std::size_t>(s)] >= 0) continue;
    color[static_cast<std::size_t>(s)] = 0;
    q.push_back(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int p = 0; p < g.degree(u); ++p) {
        int v = g.at(u, p).to;
        if (color[static_cast<std::size_t>(v)] < 0) {
          color[static_cast<std::size_t>(v)] = 1 - color[static_cast<std::size_t>(u)];
          q.push_back(v);
        } else if (color[static_cast<std::size_t>(v)] == color[static_cast<std::size_t>(u)]) {
          return false;
        }
      }
    }
  }
  return true;
}

namespace {

struct Tokenizer {
  std::istringstream in;
  int line = 0;

  explicit Tokenizer(const std::string& text) : in(text) {}

  // Next non-comment, non-empty line split into tokens.
  std::optional<std::vector<std::string>> next_line() {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line;
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      std::istringstream ls(raw);
      std::vector<std::string> toks;
      std::string t;
      while (ls >> t) toks.push_back(t);
      if (!toks.empty()) return toks;
    }
    return std::nullopt;
  }
};

int parse_int(const std::string& tok, int line, const char* what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw HuntError("syntax error at line " + std::to_string(line) + ": expected " + std::string(what) +
                    ", got '" + tok + "'");
  }
}

}  // namespace

GraphDoc parse_graph(const std::string& text) {
  Tokenizer tz(text);
  auto header = tz.next_line();
  if (!header || header->size() != 2 || (*header)[0] != "graph")
    throw HuntError("syntax error at line " + std::to_string(tz.line) + ": expected 'graph <n>'");
  int n = parse_int((*header)[1], tz.line, "node count");
  if (n <= 0) throw HuntError("semantic error: node count must be positive");

  GraphDoc doc;
  doc.graph.adj.resize(static_cast<std::size_t>(n));
  std::vector<bool> declared(static_cast<std::size_t>(n), false);

  while (auto toks = tz.next_line()) {
    const auto& t = *toks;
    if (t[0] == "node") {
      if (t.size() != 3)
        throw HuntError("syntax error at line " + std::to_string(tz.line) + ": expected 'node <u> <deg>'");
      int u = parse_int(t[1], tz.line, "node id");
      int deg = parse_int(t[2], tz.line, "degree");
      if (u < 0 || u >= n) throw HuntError("semantic error: node id " + std::to_string(u) + " out of range");
      if (declared[static_cast<std::size_t>(u)])
        throw HuntError("semantic error: node " + std::to_string(u) + " declared twice");
      declared[static_cast<std::size_t>(u)] = true;
      if (deg < 0) throw HuntError("semantic error: negative degree");
      doc.graph.adj[static_cast<std::size_t>(u)].assign(static_cast<std::size_t>(deg), HalfEdge{});
      for (int p = 0; p < deg; ++p) {
        auto port_line = tz.next_line();
        if (!port_line || port_line->size() != 5 || (*port_line)[0] != "port" || (*port_line)[2] != "->")
          throw HuntError("syntax error at line " + std::to_string(tz.line) +
                          ": expected 'port <p> -> <v> <q>'");
        int pp = parse_int((*port_line)[1], tz.line, "port");
        int v = parse_int((*port_line)[3], tz.line, "neighbor id");
        int q = parse_int((*port_line)[4], tz.line, "reverse port");
        if (pp != p)
          throw HuntError("semantic error: node " + std::to_string(u) + " ports out of order (expected " +
                          std::to_string(p) + ")");
        if (v < 0 || v >= n)
          throw HuntError("semantic error: dangling neighbor id " + std::to_string(v) + " at node " +
                          std::to_string(u));
        doc.graph.adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(p)] = {v, q};
      }
    } else if (t[0] == "start") {
      if (t.size() != 2) throw HuntError("syntax error at line " + std::to_string(tz.line) + ": expected 'start <s>'");
      doc.start = parse_int(t[1], tz.line, "start id");
    } else if (t[0] == "treasure") {
      if (t.size() != 2)
        throw HuntError("syntax error at line " + std::to_string(tz.line) + ": expected 'treasure <t>'");
      doc.treasure = parse_int(t[1], tz.line, "treasure id");
    } else {
      throw HuntError("syntax error at line " + std::to_string(tz.line) + ": unknown directive '" + t[0] + "'");
    }
  }
  for (int u = 0; u < n; ++u)
    if (!declared[static_cast<std::size_t>(u)])
      throw HuntError("semantic error: node " + std::to_string(u) + " missing");
  ValidationReport rep = validate_graph(doc.graph);
  if (!rep.ok) throw HuntError("semantic error: " + rep.issues.front());
  if (doc.start && (*doc.start < 0 || *doc.start >= n)) throw HuntError("semantic error: start id out of range");
  if (doc.treasure && (*doc.treasure < 0 || *doc.treasure >= n))
    throw HuntError("semantic error: treasure id out of range");
  return doc;
}

std::string write_graph(const PortLabeledGraph& g, std::optional<int> start, std::optional<int> treasure) {
  std::ostringstream out;
  out << "graph " << g.node_count() << "\n";
  for (int u = 0; u < g.node_count(); ++u) {
    out << "node " << u << " " << g.degree(u) << "\n";
    for (int p = 0; p < g.degree(u); ++p) {
      const HalfEdge& e = g.at(u, p);
      out << "port " << p << " -> " << e.to << " " << e.rev << "\n";
    }
  }
  if (start) out << "start " << *start << "\n";
  if (treasure) out << "treasure " << *treasure << "\n";
  return out.str();
}

}  // namespace hunt
