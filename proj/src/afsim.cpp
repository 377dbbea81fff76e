#include "relmux/afsim.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "relmux/errors.hpp"
#include "relmux/rng.hpp"

namespace relmux {

AFConfig AFConfig::for_power(double power, int time_slots) {
  if (!(power > 1.0)) throw ValidationError("power must exceed 1 (0 dB)");
  if (time_slots < 1) throw ValidationError("time_slots must be >= 1");
  AFConfig cfg;
  cfg.power = power;
  const double l2p = std::log2(power);
  cfg.gain = 1.0 / std::sqrt(l2p);
  cfg.threshold = power * l2p;
  cfg.time_slots = time_slots;
  return cfg;
}

const CMatrix& ChannelRealization::at(NodeId tx, NodeId rx) const {
  auto it = mats.find({tx, rx});
  if (it == mats.end())
    throw ValidationError("no channel for edge (" + std::to_string(tx) + "," +
                          std::to_string(rx) + ")");
  return it->second;
}

ChannelRealization sample_channels(const Network& net, std::uint64_t seed) {
  Rng rng(seed);
  ChannelRealization real;
  for (const auto& [tx, rx] : net.edges) {
    CMatrix h(net.antenna_count(rx), net.antenna_count(tx));
    auto* p = h.data();
    const size_t n = static_cast<size_t>(h.rows()) * h.cols();
    for (size_t i = 0; i < n; ++i) p[i] = rng.next_cgauss();
    real.mats.emplace(std::make_pair(tx, rx), std::move(h));
  }
  return real;
}

bool relay_active(const ChannelRealization& real, const Network& net, NodeId v,
                  const AFConfig& cfg) {
  if (!net.is_relay(v)) throw ValidationError("relay_active: node is not a relay");
  double insq = 0.0;
  for (NodeId u : net.in_neighbors(v)) insq += frobenius_sq(real.at(u, v));
  return cfg.power * insq + net.antenna_count(v) <= cfg.threshold;
}

std::set<NodeId> active_relays(const ChannelRealization& real, const Network& net,
                               const AFConfig& cfg) {
  std::set<NodeId> act;
  for (const auto& n : net.nodes)
    if (net.is_relay(n.id) && relay_active(real, net, n.id, cfg)) act.insert(n.id);
  return act;
}

std::vector<CMatrix> unit_response(const ChannelRealization& real, const Network& net,
                                   const AFConfig& cfg, const std::set<NodeId>& active,
                                   NodeId origin, int max_delay) {
  const int n_dst = net.antenna_count(net.destination);
  const int n_org = net.antenna_count(origin);
  std::vector<CMatrix> out(static_cast<size_t>(max_delay) + 1, CMatrix(n_dst, n_org));

  // transmit blocks for the current slot, per node
  std::map<NodeId, CMatrix> state;
  state.emplace(origin, CMatrix::identity(n_org));

  for (int k = 0; k <= max_delay; ++k) {
    for (const auto& [u, x] : state)
      if (net.has_edge(u, net.destination)) matmul_acc(out[k], real.at(u, net.destination), x);
    if (k == max_delay) break;

    std::map<NodeId, CMatrix> next;
    for (const auto& [u, x] : state) {
      for (NodeId v : net.out_neighbors(u)) {
        if (!net.is_relay(v) || !active.count(v)) continue;
        auto it = next.find(v);
        if (it == next.end())
          it = next.emplace(v, CMatrix(net.antenna_count(v), n_org)).first;
        matmul_acc(it->second, real.at(u, v), x);
      }
    }
    for (auto& [v, x] : next) scale(x, cfg.gain);
    state = std::move(next);
  }
  return out;
}

std::vector<CMatrix> delay_transfer_matrices(const ChannelRealization& real,
                                             const Network& net, const AFConfig& cfg,
                                             const std::set<NodeId>& active) {
  return unit_response(real, net, cfg, active, net.source, cfg.time_slots - 1);
}

EquivalentChannel equivalent_channel(const ChannelRealization& real, const Network& net,
                                     const AFConfig& cfg, const std::set<NodeId>& active) {
  const int T = cfg.time_slots;
  const int n_src = net.antenna_count(net.source);
  const int n_dst = net.antenna_count(net.destination);

  EquivalentChannel eq;
  eq.delay = delay_transfer_matrices(real, net, cfg, active);
  eq.time_slots = T;
  eq.path_length = longest_path(net);
  eq.block = CMatrix(T * n_dst, T * n_src);
  for (int t2 = 0; t2 < T; ++t2)
    for (int t1 = 0; t1 <= t2; ++t1) {
      const CMatrix& h = eq.delay[t2 - t1];
      for (int j = 0; j < n_src; ++j)
        for (int i = 0; i < n_dst; ++i)
          eq.block(t2 * n_dst + i, t1 * n_src + j) = h(i, j);
    }
  return eq;
}

EquivalentChannel steady_state_channel(const ChannelRealization& real, const Network& net,
                                       const AFConfig& cfg, const std::set<NodeId>& active) {
  if (!is_layered(net))
    throw ValidationError("single-block channel requires a layered network");
  const int lg = longest_path(net);

  EquivalentChannel eq;
  AFConfig taps = cfg;
  taps.time_slots = lg;  // the only nonzero tap sits at delay lg - 1
  eq.delay = delay_transfer_matrices(real, net, taps, active);
  eq.time_slots = 1;
  eq.path_length = lg;
  eq.block = eq.delay.back();
  return eq;
}

bool steady_noise_supported(const Network& net) {
  // cycle check over relays that can reach the destination
  std::vector<NodeId> relays;
  for (const auto& n : net.nodes)
    if (net.is_relay(n.id) && reaches(net, n.id, net.destination)) relays.push_back(n.id);
  std::set<NodeId> in_scope(relays.begin(), relays.end());

  std::map<NodeId, int> mark;  // 0 unseen, 1 on stack, 2 done
  std::function<bool(NodeId)> has_cycle = [&](NodeId v) {
    mark[v] = 1;
    for (NodeId w : net.out_neighbors(v)) {
      if (!in_scope.count(w)) continue;
      if (mark[w] == 1) return true;
      if (mark[w] == 0 && has_cycle(w)) return true;
    }
    mark[v] = 2;
    return false;
  };
  for (NodeId v : relays)
    if (mark[v] == 0 && has_cycle(v)) return false;
  return true;
}

NoiseModel noise_covariance(const ChannelRealization& real, const Network& net,
                            const AFConfig& cfg, const std::set<NodeId>& active) {
  const int T = cfg.time_slots;
  const int n_dst = net.antenna_count(net.destination);

  NoiseModel nm;
  nm.white = false;
  nm.covariance = CMatrix::identity(T * n_dst);
  if (T < 2) return nm;  // forwarded noise needs at least one extra slot

  for (NodeId v : active) {
    if (!net.is_relay(v)) continue;
    const int n_v = net.antenna_count(v);
    const std::vector<CMatrix> d = unit_response(real, net, cfg, active, v, T - 2);

    // forwarded-noise map: noise entering v's receiver in slot tau reaches the
    // destination in slot t2 as gain * D_v(t2 - tau - 1)
    CMatrix c(T * n_dst, T * n_v);
    for (int tau = 0; tau + 1 < T; ++tau)
      for (int t2 = tau + 1; t2 < T; ++t2) {
        const CMatrix& blk = d[t2 - tau - 1];
        for (int j = 0; j < n_v; ++j)
          for (int i = 0; i < n_dst; ++i)
            c(t2 * n_dst + i, tau * n_v + j) = cfg.gain * blk(i, j);
      }
    const CMatrix ch = conj_transpose(c);
    const CMatrix gramm = gram(ch);  // c * c^H
    add_scaled(nm.covariance, gramm, 1.0);
  }
  return nm;
}

NoiseModel steady_noise_covariance(const ChannelRealization& real, const Network& net,
                                   const AFConfig& cfg, const std::set<NodeId>& active) {
  if (!steady_noise_supported(net))
    throw ValidationError(
        "single-block noise requires the relays reaching the destination to form a DAG");
  const int n_dst = net.antenna_count(net.destination);
  int relay_count = 0;
  for (const auto& n : net.nodes)
    if (net.is_relay(n.id)) ++relay_count;

  NoiseModel nm;
  nm.white = false;
  nm.covariance = CMatrix::identity(n_dst);
  for (NodeId v : active) {
    if (!net.is_relay(v)) continue;
    const std::vector<CMatrix> d = unit_response(real, net, cfg, active, v, relay_count);
    for (const CMatrix& blk : d) {
      const CMatrix bh = conj_transpose(blk);
      const CMatrix gramm = gram(bh);  // blk * blk^H
      add_scaled(nm.covariance, gramm, cfg.gain * cfg.gain);
    }
  }
  return nm;
}

std::complex<double> path_weight_oracle(const ChannelRealization& real, const Network& net,
                                        const AFConfig& cfg, int t1, int n1, int t2, int n2,
                                        long long work_cap) {
  if (t1 < 1 || t2 < 1 || t1 > cfg.time_slots || t2 > cfg.time_slots)
    throw ValidationError("path_weight_oracle: slot out of range");
  if (n1 < 1 || n1 > net.antenna_count(net.source) || n2 < 1 ||
      n2 > net.antenna_count(net.destination))
    throw ValidationError("path_weight_oracle: antenna out of range");
  const int d = t2 - t1;
  if (d < 0) return 0.0;

  // fewest relay hops from each node to the destination, for pruning
  std::map<NodeId, int> hops;
  {
    std::vector<NodeId> frontier{net.destination};
    hops[net.destination] = 0;
    while (!frontier.empty()) {
      std::vector<NodeId> next;
      for (NodeId v : frontier)
        for (NodeId u : net.in_neighbors(v))
          if (!hops.count(u)) {
            hops[u] = hops[v] + 1;
            next.push_back(u);
          }
      frontier = std::move(next);
    }
  }

  long long budget = work_cap;
  std::complex<double> acc = 0.0;
  // at transmit antenna `ant` of node u with `remaining` relay visits left
  std::function<void(NodeId, int, int, std::complex<double>)> walk =
      [&](NodeId u, int ant, int remaining, std::complex<double> w) {
        if (--budget < 0) throw ValidationError("path_weight_oracle: enumeration cap exceeded");
        if (remaining == 0) {
          if (net.has_edge(u, net.destination))
            acc += w * real.at(u, net.destination)(n2 - 1, ant - 1);
          return;
        }
        for (NodeId v : net.out_neighbors(u)) {
          if (!net.is_relay(v)) continue;
          // from v the walk still needs `remaining - 1` relays plus the final
          // hop, so v must reach the destination within `remaining` edges
          auto hit = hops.find(v);
          if (hit == hops.end() || hit->second > remaining) continue;
          const CMatrix& h = real.at(u, v);
          for (int j = 1; j <= net.antenna_count(v); ++j)
            walk(v, j, remaining - 1, w * h(j - 1, ant - 1));
        }
      };
  walk(net.source, n1, d, 1.0);
  return acc * std::pow(cfg.gain, d);
}

}  // namespace relmux
