#include "relmux/splitgraph.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>

#include "relmux/errors.hpp"

namespace relmux {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

// Plain Dinic over an arc list with paired reverse arcs.
struct FlowNet {
  struct Arc {
    int to;
    int cap;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> adj;

  explicit FlowNet(int n) : adj(n) {}

  int add_arc(int u, int v, int cap) {
    const int id = static_cast<int>(arcs.size());
    arcs.push_back({v, cap});
    arcs.push_back({u, 0});
    adj[u].push_back(id);
    adj[v].push_back(id + 1);
    return id;
  }

  std::vector<int> level;
  std::vector<size_t> iter;

  bool bfs(int s, int t) {
    level.assign(adj.size(), -1);
    std::queue<int> q;
    level[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int id : adj[v]) {
        const Arc& a = arcs[id];
        if (a.cap > 0 && level[a.to] < 0) {
          level[a.to] = level[v] + 1;
          q.push(a.to);
        }
      }
    }
    return level[t] >= 0;
  }

  int dfs(int v, int t, int f) {
    if (v == t) return f;
    for (size_t& i = iter[v]; i < adj[v].size(); ++i) {
      const int id = adj[v][i];
      Arc& a = arcs[id];
      if (a.cap > 0 && level[a.to] == level[v] + 1) {
        const int d = dfs(a.to, t, std::min(f, a.cap));
        if (d > 0) {
          a.cap -= d;
          arcs[id ^ 1].cap += d;
          return d;
        }
      }
    }
    return 0;
  }

  int max_flow(int s, int t) {
    int flow = 0;
    while (bfs(s, t)) {
      iter.assign(adj.size(), 0);
      while (int f = dfs(s, t, kInf)) flow += f;
    }
    return flow;
  }

  std::vector<char> residual_side(int s) const {
    std::vector<char> side(adj.size(), 0);
    std::vector<int> stack{s};
    side[s] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int id : adj[v]) {
        const Arc& a = arcs[id];
        if (a.cap > 0 && !side[a.to]) {
          side[a.to] = 1;
          stack.push_back(a.to);
        }
      }
    }
    return side;
  }
};

struct NodeSplit {
  int rx0 = -1;  // first receive index, -1 when absent
  int tx0 = -1;
};

}  // namespace

int SplitGraph::count_arcs(ArcKind k) const {
  int n = 0;
  for (const auto& a : arcs)
    if (a.kind == k) ++n;
  return n;
}

SplitGraph split_graph_multi(const Network& net, const std::set<NodeId>& sources,
                             NodeId dest, const std::set<NodeId>& excluded) {
  if (sources.empty()) throw ValidationError("split graph: empty source set");
  if (sources.count(dest)) throw ValidationError("split graph: destination cannot send");
  if (excluded.count(dest)) throw ValidationError("split graph: destination excluded");
  for (NodeId v : sources) {
    if (!net.has_node(v)) throw ValidationError("split graph: unknown node-id " + std::to_string(v));
    if (excluded.count(v)) throw ValidationError("split graph: source node excluded");
  }
  if (!net.has_node(dest)) throw ValidationError("split graph: unknown node-id " + std::to_string(dest));

  SplitGraph sg;
  sg.s = 0;
  sg.t = 1;
  sg.nodes.push_back({SplitGraph::NodeKind::terminal, -1, 0});
  sg.nodes.push_back({SplitGraph::NodeKind::terminal, dest, 0});

  std::map<NodeId, NodeSplit> splits;
  for (const auto& n : net.nodes) {
    if (excluded.count(n.id)) continue;
    // sources only transmit, the destination only receives, relays do both
    NodeSplit sp;
    const bool wants_rx = !sources.count(n.id);
    const bool wants_tx = n.id != dest;
    if (wants_rx) {
      sp.rx0 = sg.node_count();
      for (int i = 1; i <= n.antennas; ++i)
        sg.nodes.push_back({SplitGraph::NodeKind::rx, n.id, i});
    }
    if (wants_tx) {
      sp.tx0 = sg.node_count();
      for (int i = 1; i <= n.antennas; ++i)
        sg.nodes.push_back({SplitGraph::NodeKind::tx, n.id, i});
    }
    splits[n.id] = sp;
  }

  auto add = [&](SplitGraph::ArcKind kind, NodeId g, int from, int to) {
    sg.arcs.push_back({kind, g, from, to});
  };

  // inner arcs rx(v,i) -> tx(v,i) for relaying nodes
  for (const auto& n : net.nodes) {
    auto it = splits.find(n.id);
    if (it == splits.end()) continue;
    const NodeSplit& sp = it->second;
    if (sp.rx0 >= 0 && sp.tx0 >= 0)
      for (int i = 0; i < n.antennas; ++i)
        add(SplitGraph::ArcKind::inner, n.id, sp.rx0 + i, sp.tx0 + i);
  }

  // outer arcs per network edge (dropped when the receiver cannot receive or
  // the transmitter cannot transmit in this instance)
  for (const auto& [u, w] : net.edges) {
    auto iu = splits.find(u), iw = splits.find(w);
    if (iu == splits.end() || iw == splits.end()) continue;
    if (iu->second.tx0 < 0 || iw->second.rx0 < 0) continue;
    const int nu_ant = net.antenna_count(u);
    const int nw_ant = net.antenna_count(w);
    for (int a = 0; a < nu_ant; ++a)
      for (int b = 0; b < nw_ant; ++b)
        add(SplitGraph::ArcKind::outer, u, iu->second.tx0 + a, iw->second.rx0 + b);
  }

  // terminals
  for (NodeId v : sources) {
    const NodeSplit& sp = splits.at(v);
    for (int i = 0; i < net.antenna_count(v); ++i)
      add(SplitGraph::ArcKind::source_terminal, v, sg.s, sp.tx0 + i);
  }
  {
    const NodeSplit& sp = splits.at(dest);
    for (int i = 0; i < net.antenna_count(dest); ++i)
      add(SplitGraph::ArcKind::dest_terminal, dest, sp.rx0 + i, sg.t);
  }

  return sg;
}

SplitGraph split_graph(const Network& net) {
  return split_graph_multi(net, {net.source}, net.destination, {});
}

MaxFlowResult max_flow(const SplitGraph& sg) {
  FlowNet fn(sg.node_count());
  std::vector<int> ids(sg.arcs.size());
  for (size_t i = 0; i < sg.arcs.size(); ++i) {
    const auto& a = sg.arcs[i];
    const int cap = (a.kind == SplitGraph::ArcKind::outer) ? kInf : 1;
    ids[i] = fn.add_arc(a.from, a.to, cap);
  }
  MaxFlowResult res;
  res.value = fn.max_flow(sg.s, sg.t);
  res.arc_flow.resize(sg.arcs.size());
  for (size_t i = 0; i < sg.arcs.size(); ++i)
    res.arc_flow[i] = fn.arcs[ids[i] ^ 1].cap;  // flow pushed = reverse residual
  res.source_side = fn.residual_side(sg.s);
  return res;
}

int multiplexing_gain(const Network& net) { return max_flow(split_graph(net)).value; }

VertexCut min_vertex_cut(const Network& net) {
  const SplitGraph sg = split_graph(net);
  const MaxFlowResult mf = max_flow(sg);

  // Outer arcs never cross the residual cut (unlimited capacity), so every
  // crossing arc is a unit arc owned by one node: inner arcs place that node
  // in the cut; a crossing terminal arc means the source (or destination)
  // antenna budget itself is the bottleneck.
  VertexCut cut;
  for (const auto& a : sg.arcs) {
    if (!mf.source_side[a.from] || mf.source_side[a.to]) continue;
    switch (a.kind) {
      case SplitGraph::ArcKind::inner:
        cut.members.insert(a.gnode);
        break;
      case SplitGraph::ArcKind::source_terminal:
        cut.members.insert(net.source);
        break;
      case SplitGraph::ArcKind::dest_terminal:
        cut.members.insert(net.destination);
        break;
      case SplitGraph::ArcKind::outer:
        throw std::logic_error("min cut crossed an unlimited arc");
    }
  }
  // A node contributes either all its unit arcs or none (its split nodes
  // share unlimited neighborhoods), so capacities add up exactly.
  cut.capacity = vertex_cut_capacity(net, cut.members);
  if (cut.capacity != mf.value)
    throw std::logic_error("vertex cut capacity does not match max flow");
  if (!is_vertex_cut(net, cut.members))
    throw std::logic_error("extracted members do not form a vertex cut");
  return cut;
}

DisjointPathFamily vertex_disjoint_paths(const Network& net) {
  const SplitGraph sg = split_graph(net);
  const MaxFlowResult mf = max_flow(sg);

  // Unit arcs bound every split node's throughput by one, so each arc carries
  // at most one unit and the flow decomposes into vertex-disjoint paths.
  std::vector<std::vector<std::pair<int, int>>> out(sg.node_count());  // (to, arc index)
  std::vector<char> used(sg.arcs.size(), 0);
  for (size_t i = 0; i < sg.arcs.size(); ++i)
    if (mf.arc_flow[i] > 0) out[sg.arcs[i].from].push_back({sg.arcs[i].to, static_cast<int>(i)});

  DisjointPathFamily fam;
  fam.nu = mf.value;
  for (int p = 0; p < mf.value; ++p) {
    std::vector<int> path{sg.s};
    int v = sg.s;
    while (v != sg.t) {
      bool advanced = false;
      for (auto& [w, idx] : out[v]) {
        if (used[idx]) continue;
        used[idx] = 1;
        path.push_back(w);
        v = w;
        advanced = true;
        break;
      }
      if (!advanced) throw std::logic_error("flow decomposition stalled");
    }
    fam.paths.push_back(path);
    fam.source_antennas.push_back(sg.nodes[path[1]].antenna);
    fam.dest_antennas.push_back(sg.nodes[path[path.size() - 2]].antenna);
    fam.lengths.push_back(static_cast<int>(path.size()) - 1);
  }
  return fam;
}

int multicast_gain(const Network& net, const std::vector<NodeId>& destinations) {
  if (destinations.empty()) throw ValidationError("multicast: destination list is empty");
  int gain = std::numeric_limits<int>::max();
  for (NodeId d : destinations) {
    if (!net.has_node(d))
      throw ValidationError("multicast: unknown node-id " + std::to_string(d));
    if (d == net.source) throw ValidationError("multicast: source cannot be a destination");
    if (!reaches(net, net.source, d))
      throw ValidationError("multicast: destination " + std::to_string(d) +
                            " unreachable from source");
    gain = std::min(gain, max_flow(split_graph_multi(net, {net.source}, d, {})).value);
  }
  return gain;
}

MuxRegion multiaccess_region(const Network& net, const std::vector<NodeId>& senders,
                             NodeId dest, int max_senders) {
  const int m = static_cast<int>(senders.size());
  if (m < 1) throw ValidationError("multi-access: sender list is empty");
  if (m > max_senders)
    throw ValidationError("multi-access: sender count " + std::to_string(m) +
                          " exceeds cap " + std::to_string(max_senders));
  std::set<NodeId> unique_senders(senders.begin(), senders.end());
  if (static_cast<int>(unique_senders.size()) != m)
    throw ValidationError("multi-access: duplicate sender");
  if (unique_senders.count(dest)) throw ValidationError("multi-access: destination cannot send");
  for (NodeId s : senders)
    if (!reaches(net, s, dest))
      throw ValidationError("multi-access: destination unreachable from sender " +
                            std::to_string(s));

  MuxRegion region;
  region.senders = senders;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    RateConstraint rc;
    std::set<NodeId> active;
    std::set<NodeId> excluded;
    for (int i = 0; i < m; ++i) {
      if (mask & (1u << i)) {
        rc.subset.push_back(i);
        active.insert(senders[i]);
      } else {
        excluded.insert(senders[i]);
      }
    }
    rc.bound = max_flow(split_graph_multi(net, active, dest, excluded)).value;
    region.constraints.push_back(std::move(rc));
  }
  return region;
}

bool region_contains(const MuxRegion& region, const std::vector<double>& rates) {
  if (rates.size() != region.senders.size())
    throw ValidationError("region membership: rate vector length mismatch");
  for (double r : rates)
    if (r < 0.0) return false;
  for (const auto& rc : region.constraints) {
    double sum = 0.0;
    for (int i : rc.subset) sum += rates[i];
    if (sum > static_cast<double>(rc.bound) + 1e-12) return false;
  }
  return true;
}

}  // namespace relmux
