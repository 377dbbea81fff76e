#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "relmux/linalg.hpp"
#include "relmux/network.hpp"

namespace relmux {

// Amplify-and-forward run parameters. Relays scale their last received block
// by `gain`; a relay participates only when its expected receive power clears
// `threshold` (see relay_active). The defaults tie both to the transmit
// power: gain = 1/sqrt(log2 P), threshold = P * log2 P.
struct AFConfig {
  double power = 0.0;
  double gain = 0.0;
  double threshold = 0.0;
  int time_slots = 1;

  static AFConfig for_power(double power, int time_slots);
};

// One fading draw: a matrix per directed edge, shaped N_rx x N_tx, entries
// i.i.d. complex Gaussian with unit second moment.
struct ChannelRealization {
  std::map<std::pair<NodeId, NodeId>, CMatrix> mats;

  const CMatrix& at(NodeId tx, NodeId rx) const;
  bool has(NodeId tx, NodeId rx) const { return mats.count({tx, rx}) != 0; }
};

// Deterministic per seed: same (network, seed) reproduces every entry.
ChannelRealization sample_channels(const Network& net, std::uint64_t seed);

// Power test at relay v: P * sum of squared Frobenius norms over incoming
// edges, plus one noise unit per receive antenna, measured against the
// activation threshold.
bool relay_active(const ChannelRealization& real, const Network& net, NodeId v,
                  const AFConfig& cfg);
std::set<NodeId> active_relays(const ChannelRealization& real, const Network& net,
                               const AFConfig& cfg);

// Destination response to a unit block transmitted at `origin` in slot 0:
// result[k] is the N_dst x N_origin map onto the destination's receive block
// k slots later. Relays outside `active` stay silent. Each relay hop scales
// by cfg.gain and delays by one slot.
std::vector<CMatrix> unit_response(const ChannelRealization& real, const Network& net,
                                   const AFConfig& cfg, const std::set<NodeId>& active,
                                   NodeId origin, int max_delay);

// Source-to-destination delay taps H_0 .. H_{time_slots-1}.
std::vector<CMatrix> delay_transfer_matrices(const ChannelRealization& real,
                                             const Network& net, const AFConfig& cfg,
                                             const std::set<NodeId>& active);

struct EquivalentChannel {
  CMatrix block;                // (time_slots*N_dst) x (time_slots*N_src)
  std::vector<CMatrix> delay;   // the taps the block is assembled from
  int time_slots = 1;
  int path_length = 0;          // longest simple source->destination path
};

// Block channel over a window of cfg.time_slots uses: block[(t2, t1)] =
// H_{t2-t1}, block lower-triangular Toeplitz.
EquivalentChannel equivalent_channel(const ChannelRealization& real, const Network& net,
                                     const AFConfig& cfg, const std::set<NodeId>& active);

// Layered networks deliver everything at one fixed delay; the single-block
// channel is that tap alone (time_slots = 1).
EquivalentChannel steady_state_channel(const ChannelRealization& real, const Network& net,
                                       const AFConfig& cfg, const std::set<NodeId>& active);

struct NoiseModel {
  bool white = true;
  CMatrix covariance;  // set when colored; per the same block layout as the channel

  static NoiseModel white_noise() { return {}; }
};

// Exact covariance of the destination's stacked noise over the block window:
// identity (own receiver noise) plus every active relay's forwarded noise.
NoiseModel noise_covariance(const ChannelRealization& real, const Network& net,
                            const AFConfig& cfg, const std::set<NodeId>& active);

// Per-slot stationary covariance for the single-block channel. Relay noise
// recirculates forever on relay cycles, so this requires the relays that can
// reach the destination to form a DAG.
NoiseModel steady_noise_covariance(const ChannelRealization& real, const Network& net,
                                   const AFConfig& cfg, const std::set<NodeId>& active);
bool steady_noise_supported(const Network& net);

// Independent check of one block-channel entry: sums, over every route that
// leaves source antenna n1 in slot t1 and lands on destination antenna n2 in
// slot t2, the product of channel coefficients along the route times
// gain^(relay count). Slots and antennas are 1-based. Routes may revisit
// nodes; `work_cap` bounds the enumeration. All relays are treated as active.
std::complex<double> path_weight_oracle(const ChannelRealization& real, const Network& net,
                                        const AFConfig& cfg, int t1, int n1, int t2, int n2,
                                        long long work_cap = 20'000'000);

}  // namespace relmux
