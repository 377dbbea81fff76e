#pragma once

#include <set>
#include <vector>

#include "relmux/network.hpp"

namespace relmux {

// Antenna-expanded graph used for the cut/flow characterization. Every node v
// of the network splits into receive nodes rx(v, i) and transmit nodes
// tx(v, i), one per antenna, joined by unit-capacity inner arcs. A network
// edge (u, w) becomes a complete bipartite block of unlimited-capacity arcs
// tx(u, *) -> rx(w, *). Source antennas hang off a super source s with unit
// arcs s -> tx(source, j); destination antennas drain through unit arcs
// rx(dest, j) -> t. Unit arcs are exactly the antenna budget, so the max flow
// equals the smallest total antenna count over blocking node sets.
class SplitGraph {
 public:
  enum class NodeKind { terminal, rx, tx };
  enum class ArcKind { inner, outer, source_terminal, dest_terminal };

  struct NodeInfo {
    NodeKind kind;
    NodeId gnode;   // owning network node (terminals: source/dest id)
    int antenna;    // 1-based, 0 for terminals
  };
  struct ArcInfo {
    ArcKind kind;
    NodeId gnode;   // inner: owning node; outer: transmitting node
    int from, to;   // split-node indices
  };

  int s = 0, t = 0;
  std::vector<NodeInfo> nodes;
  std::vector<ArcInfo> arcs;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int arc_count() const { return static_cast<int>(arcs.size()); }
  int count_arcs(ArcKind k) const;
};

// Unicast split graph of the network.
SplitGraph split_graph(const Network& net);

// General form: members of `sources` feed from the super source and act as
// pure transmitters; `excluded` nodes are removed entirely.
SplitGraph split_graph_multi(const Network& net, const std::set<NodeId>& sources,
                             NodeId dest, const std::set<NodeId>& excluded);

struct MaxFlowResult {
  int value = 0;
  std::vector<int> arc_flow;         // parallel to SplitGraph::arcs
  std::vector<char> source_side;     // residual reachability per split node
};

MaxFlowResult max_flow(const SplitGraph& sg);

struct VertexCut {
  std::set<NodeId> members;
  long long capacity = 0;
};

// Minimum-capacity vertex cut (source-side-minimal tie break, recovered from
// the max-flow residual). members is {source} or {destination} only when the
// bottleneck is the terminal antenna budget itself.
VertexCut min_vertex_cut(const Network& net);

struct DisjointPathFamily {
  int nu = 0;
  std::vector<std::vector<int>> paths;  // split-node index sequences, s..t
  std::vector<int> source_antennas;     // 1-based, pairwise distinct
  std::vector<int> dest_antennas;       // 1-based, pairwise distinct
  std::vector<int> lengths;             // arc counts, each odd and >= 3
};

// A maximum family of internally vertex-disjoint s->t paths in the split
// graph (one per flow unit).
DisjointPathFamily vertex_disjoint_paths(const Network& net);

// Point-to-point multiplexing gain: the max-flow value of the split graph.
int multiplexing_gain(const Network& net);

// Gain from `source` to each destination separately; the multicast gain is
// the minimum.
int multicast_gain(const Network& net, const std::vector<NodeId>& destinations);

struct RateConstraint {
  std::vector<int> subset;  // indices into MuxRegion::senders, ascending
  int bound = 0;
};

struct MuxRegion {
  std::vector<NodeId> senders;
  std::vector<RateConstraint> constraints;  // one per nonempty subset
};

// Multi-access rate region: for each nonempty subset S of senders, the bound
// is the max flow when S feeds the super source and the remaining senders are
// removed. Sender count is capped (the region has 2^M - 1 constraints).
MuxRegion multiaccess_region(const Network& net, const std::vector<NodeId>& senders,
                             NodeId dest, int max_senders = 12);

// True when `rates` (one entry per sender, same order) violates no constraint.
bool region_contains(const MuxRegion& region, const std::vector<double>& rates);

}  // namespace relmux
