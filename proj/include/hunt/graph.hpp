#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hunt {

// Raised on malformed parameters, unparsable documents and infeasible
// generation requests. Validation verdicts are data, not exceptions.
struct HuntError : std::runtime_error {
  explicit HuntError(const std::string& what) : std::runtime_error(what) {}
};

struct HalfEdge {
  int to = -1;   // neighbor node id
  int rev = -1;  // port at the neighbor leading back here

  bool operator==(const HalfEdge& o) const { return to == o.to && rev == o.rev; }
};

// Symmetric port-labeled adjacency. Node ids exist for the oracle and the
// harness; the agent-facing interface never exposes them.
struct PortLabeledGraph {
  std::vector<std::vector<HalfEdge>> adj;

  int node_count() const { return static_cast<int>(adj.size()); }
  int degree(int u) const { return static_cast<int>(adj[static_cast<std::size_t>(u)].size()); }
  const HalfEdge& at(int u, int port) const { return adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(port)]; }

  bool operator==(const PortLabeledGraph& o) const { return adj == o.adj; }
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> issues;
};

enum class Family { kTree, kBipartite, kGeneral, kCompleteTree };

const char* family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

struct InstanceSpec {
  PortLabeledGraph graph;
  int start = 0;
  int treasure = 0;
  int distance = 0;    // hop distance from start to treasure
  int max_degree = 0;  // true maximum degree of the graph
  Family family = Family::kGeneral;
  std::uint64_t seed = 0;
};

// Shortest start->treasure path with per-hop port labels.
struct PathP {
  std::vector<int> nodes;      // v_0 .. v_D
  std::vector<int> out_ports;  // port taken at nodes[i] toward nodes[i+1]
  std::vector<int> in_ports;   // port at nodes[i+1] on that edge

  int length() const { return static_cast<int>(out_ports.size()); }
};

ValidationReport validate_graph(const PortLabeledGraph& g);

// BFS distances from src; unreachable nodes get -1.
std::vector<int> bfs_distances(const PortLabeledGraph& g, int src);

// Deterministic shortest path: at each layer the smallest outgoing port that
// still decreases the remaining distance wins.
PathP shortest_path(const PortLabeledGraph& g, int s, int t);

// Complete tree of height `depth`: the root and every internal node have
// degree `delta`; port 0 of a non-root node leads to its parent.
struct CompleteTree {
  PortLabeledGraph graph;
  int root = 0;
  std::vector<int> leaves;  // in child-order (lexicographic by path)
};
CompleteTree gen_complete_tree(int delta, int depth);

InstanceSpec gen_instance(Family family, int max_degree, int distance, std::uint64_t seed);

// Graph file document: adjacency plus optional start/treasure markers.
struct GraphDoc {
  PortLabeledGraph graph;
  std::optional<int> start;
  std::optional<int> treasure;
};

GraphDoc parse_graph(const std::string& text);
std::string write_graph(const PortLabeledGraph& g,
                        std::optional<int> start = std::nullopt,
                        std::optional<int> treasure = std::nullopt);

// 2-coloring check; returns false if an odd cycle exists.
bool is_bipartite(const PortLabeledGraph& g);

}  // namespace hunt
