#include "relmux/network.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "relmux/errors.hpp"

namespace relmux {

namespace {

using json = nlohmann::json;

int node_index(const Network& net, NodeId v) {
  auto it = std::lower_bound(net.nodes.begin(), net.nodes.end(), v,
                             [](const NodeSpec& n, NodeId id) { return n.id < id; });
  if (it == net.nodes.end() || it->id != v) return -1;
  return static_cast<int>(it - net.nodes.begin());
}

}  // namespace

bool Network::has_node(NodeId v) const { return node_index(*this, v) >= 0; }

int Network::antenna_count(NodeId v) const {
  const int idx = node_index(*this, v);
  if (idx < 0) throw ValidationError("unknown node-id " + std::to_string(v));
  return nodes[idx].antennas;
}

bool Network::has_edge(NodeId tx, NodeId rx) const {
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(tx, rx));
}

std::vector<NodeId> Network::out_neighbors(NodeId v) const {
  std::vector<NodeId> out;
  for (const auto& [tx, rx] : edges)
    if (tx == v) out.push_back(rx);
  return out;
}

std::vector<NodeId> Network::in_neighbors(NodeId v) const {
  std::vector<NodeId> in;
  for (const auto& [tx, rx] : edges)
    if (rx == v) in.push_back(tx);
  std::sort(in.begin(), in.end());
  return in;
}

int Network::total_antennas() const {
  int total = 0;
  for (const auto& n : nodes) total += n.antennas;
  return total;
}

bool reaches(const Network& net, NodeId from, NodeId to) {
  std::set<NodeId> seen{from};
  std::vector<NodeId> stack{from};
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    if (v == to) return true;
    for (NodeId w : net.out_neighbors(v))
      if (seen.insert(w).second) stack.push_back(w);
  }
  return false;
}

void validate_network(Network& net) {
  if (net.nodes.empty()) throw ValidationError("nodes: list is empty");
  std::sort(net.nodes.begin(), net.nodes.end(),
            [](const NodeSpec& a, const NodeSpec& b) { return a.id < b.id; });
  for (size_t i = 0; i + 1 < net.nodes.size(); ++i)
    if (net.nodes[i].id == net.nodes[i + 1].id)
      throw ValidationError("nodes: duplicate node-id " + std::to_string(net.nodes[i].id));
  for (const auto& n : net.nodes)
    if (n.antennas < 1)
      throw ValidationError("nodes: antennas must be >= 1 (node " + std::to_string(n.id) + ")");

  for (const auto& [tx, rx] : net.edges) {
    if (!net.has_node(tx) || !net.has_node(rx))
      throw ValidationError("edges: unknown node-id " + std::to_string(net.has_node(tx) ? rx : tx));
    if (tx == rx) throw ValidationError("edges: self-loop at node " + std::to_string(tx));
  }
  std::sort(net.edges.begin(), net.edges.end());
  for (size_t i = 0; i + 1 < net.edges.size(); ++i)
    if (net.edges[i] == net.edges[i + 1])
      throw ValidationError("edges: duplicate edge (" + std::to_string(net.edges[i].first) + "," +
                            std::to_string(net.edges[i].second) + ")");

  if (!net.has_node(net.source)) throw ValidationError("source: unknown node-id");
  if (!net.has_node(net.destination)) throw ValidationError("destination: unknown node-id");
  if (net.source == net.destination)
    throw ValidationError("destination: must differ from source");
  if (!reaches(net, net.source, net.destination))
    throw ValidationError("edges: no path from source to destination");

  std::set<NodeId> seen_senders;
  for (NodeId s : net.senders) {
    if (!net.has_node(s)) throw ValidationError("senders: unknown node-id " + std::to_string(s));
    if (s == net.destination)
      throw ValidationError("senders: destination cannot be a sender");
    if (!seen_senders.insert(s).second)
      throw ValidationError("senders: duplicate node-id " + std::to_string(s));
  }
  std::set<NodeId> seen_dests;
  for (NodeId d : net.destinations) {
    if (!net.has_node(d))
      throw ValidationError("destinations: unknown node-id " + std::to_string(d));
    if (d == net.source) throw ValidationError("destinations: source cannot be a destination");
    if (!seen_dests.insert(d).second)
      throw ValidationError("destinations: duplicate node-id " + std::to_string(d));
  }
}

Network parse_network(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("document: expected a JSON object");

  for (const char* key : {"nodes", "edges", "source", "destination"})
    if (!doc.contains(key)) throw ValidationError(std::string("missing key: ") + key);

  Network net;
  try {
    for (const auto& n : doc.at("nodes")) {
      if (!n.contains("id")) throw ValidationError("nodes: entry missing key: id");
      if (!n.contains("antennas")) throw ValidationError("nodes: entry missing key: antennas");
      if (!n.at("id").is_number_integer() || !n.at("antennas").is_number_integer())
        throw ValidationError("nodes: id and antennas must be integers");
      net.nodes.push_back({n.at("id").get<NodeId>(), n.at("antennas").get<int>()});
    }
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
          !e[1].is_number_integer())
        throw ValidationError("edges: each entry must be an integer pair [tx, rx]");
      net.edges.emplace_back(e[0].get<NodeId>(), e[1].get<NodeId>());
    }
    if (!doc.at("source").is_number_integer() || !doc.at("destination").is_number_integer())
      throw ValidationError("source/destination: must be integers");
    net.source = doc.at("source").get<NodeId>();
    net.destination = doc.at("destination").get<NodeId>();
    if (doc.contains("senders"))
      for (const auto& s : doc.at("senders")) {
        if (!s.is_number_integer()) throw ValidationError("senders: must be integers");
        net.senders.push_back(s.get<NodeId>());
      }
    if (doc.contains("destinations"))
      for (const auto& d : doc.at("destinations")) {
        if (!d.is_number_integer()) throw ValidationError("destinations: must be integers");
        net.destinations.push_back(d.get<NodeId>());
      }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("document structure: ") + e.what());
  }

  validate_network(net);
  return net;
}

Network parse_network_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open network file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_network(ss.str());
}

std::string serialize_network(const Network& net) {
  json doc;
  doc["nodes"] = json::array();
  for (const auto& n : net.nodes) doc["nodes"].push_back({{"id", n.id}, {"antennas", n.antennas}});
  doc["edges"] = json::array();
  for (const auto& [tx, rx] : net.edges) doc["edges"].push_back({tx, rx});
  doc["source"] = net.source;
  doc["destination"] = net.destination;
  if (!net.senders.empty()) doc["senders"] = net.senders;
  if (!net.destinations.empty()) doc["destinations"] = net.destinations;
  return doc.dump(2);
}

std::uint64_t network_hash(const Network& net) {
  const std::string s = serialize_network(net);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

long long edge_cut_weight(const Network& net, const std::set<NodeId>& s_side) {
  if (!s_side.count(net.source))
    throw ValidationError("cut-set: source must lie on the sender side");
  if (s_side.count(net.destination))
    throw ValidationError("cut-set: destination must lie on the receiver side");
  for (NodeId v : s_side)
    if (!net.has_node(v)) throw ValidationError("cut-set: unknown node-id " + std::to_string(v));
  long long w = 0;
  for (const auto& [tx, rx] : net.edges)
    if (s_side.count(tx) && !s_side.count(rx))
      w += static_cast<long long>(net.antenna_count(tx)) * net.antenna_count(rx);
  return w;
}

bool is_vertex_cut(const Network& net, const std::set<NodeId>& members) {
  for (NodeId v : members)
    if (!net.has_node(v)) throw ValidationError("cut: unknown node-id " + std::to_string(v));
  if (members.count(net.source) || members.count(net.destination)) return true;
  std::set<NodeId> seen{net.source};
  std::vector<NodeId> stack{net.source};
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    if (v == net.destination) return false;
    for (NodeId w : net.out_neighbors(v))
      if (!members.count(w) && seen.insert(w).second) stack.push_back(w);
  }
  return true;
}

long long vertex_cut_capacity(const Network& net, const std::set<NodeId>& members) {
  long long cap = 0;
  for (NodeId v : members) cap += net.antenna_count(v);
  return cap;
}

namespace {

// Nodes lying on at least one source->destination path.
std::set<NodeId> on_path_nodes(const Network& net) {
  std::set<NodeId> from_src;
  for (const auto& n : net.nodes)
    if (reaches(net, net.source, n.id)) from_src.insert(n.id);
  std::set<NodeId> result;
  for (NodeId v : from_src)
    if (reaches(net, v, net.destination)) result.insert(v);
  return result;
}

}  // namespace

bool is_layered(const Network& net) {
  const std::set<NodeId> core = on_path_nodes(net);
  // Inside the core every edge lies on some source->destination path, so a
  // consistent depth assignment exists iff all such paths share a length.
  std::map<NodeId, int> depth;
  depth[net.source] = 0;
  std::vector<NodeId> stack{net.source};
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (NodeId w : net.out_neighbors(v)) {
      if (!core.count(w)) continue;
      auto it = depth.find(w);
      if (it == depth.end()) {
        depth[w] = depth[v] + 1;
        stack.push_back(w);
      } else if (it->second != depth[v] + 1) {
        return false;
      }
    }
  }
  return true;
}

int longest_path(const Network& net, int node_cap) {
  if (static_cast<int>(net.nodes.size()) > node_cap)
    throw ValidationError("longest-path search limited to " + std::to_string(node_cap) +
                          " nodes; network has " + std::to_string(net.nodes.size()));
  const std::set<NodeId> core = on_path_nodes(net);
  int best = 0;
  std::set<NodeId> visited;
  std::function<void(NodeId, int)> dfs = [&](NodeId v, int len) {
    if (v == net.destination) {
      best = std::max(best, len);
      return;
    }
    visited.insert(v);
    for (NodeId w : net.out_neighbors(v))
      if (core.count(w) && !visited.count(w)) dfs(w, len + 1);
    visited.erase(v);
  };
  dfs(net.source, 0);
  return best;
}

}  // namespace relmux
