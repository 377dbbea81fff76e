#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace relmux {

using NodeId = int;

struct NodeSpec {
  NodeId id = 0;
  int antennas = 1;
  bool operator==(const NodeSpec&) const = default;
};

// Directed relay network. Edges are stored (tx, rx). Nodes and edges are kept
// sorted; construction goes through validate_network (or the parser, which
// calls it), after which the structure is treated as immutable.
struct Network {
  std::vector<NodeSpec> nodes;                    // sorted by id, unique
  std::vector<std::pair<NodeId, NodeId>> edges;   // sorted, unique, no self-loops
  NodeId source = 0;
  NodeId destination = 0;
  std::vector<NodeId> senders;                    // optional, multi-access
  std::vector<NodeId> destinations;               // optional, multicast

  bool has_node(NodeId v) const;
  int antenna_count(NodeId v) const;              // throws on unknown id
  bool has_edge(NodeId tx, NodeId rx) const;
  bool is_relay(NodeId v) const { return v != source && v != destination; }
  std::vector<NodeId> out_neighbors(NodeId v) const;
  std::vector<NodeId> in_neighbors(NodeId v) const;
  int total_antennas() const;

  bool operator==(const Network&) const = default;
};

// Sorts, deduplicate-checks and validates; throws ValidationError with the
// offending key named.
void validate_network(Network& net);

Network parse_network(const std::string& text);
Network parse_network_file(const std::string& path);
std::string serialize_network(const Network& net);

// Stable 64-bit content hash (over the canonical serialization).
std::uint64_t network_hash(const Network& net);

// True when `to` is reachable from `from` along directed edges.
bool reaches(const Network& net, NodeId from, NodeId to);

// Sum over edges crossing from S to its complement of N_tx * N_rx. S must
// contain the source and exclude the destination.
long long edge_cut_weight(const Network& net, const std::set<NodeId>& s_side);

// True when every source->destination path meets C. Sets containing the
// source or the destination are always vertex cuts.
bool is_vertex_cut(const Network& net, const std::set<NodeId>& members);

long long vertex_cut_capacity(const Network& net, const std::set<NodeId>& members);

// True when every source->destination route has the same length, i.e. nodes
// on such routes admit a depth labeling that every edge advances by exactly
// one. Guarantees the destination hears the source at a single fixed delay.
bool is_layered(const Network& net);

// Length (edge count) of the longest simple source->destination path. The
// search is exhaustive, so networks above node_cap nodes are rejected.
int longest_path(const Network& net, int node_cap = 20);

}  // namespace relmux
