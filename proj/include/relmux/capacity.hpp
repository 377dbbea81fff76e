#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "relmux/afsim.hpp"
#include "relmux/network.hpp"

namespace relmux {

enum class NoiseMode { white, colored };

std::string to_string(NoiseMode mode);
NoiseMode noise_mode_from_string(const std::string& s);

// Per-use mutual information of the block channel in bits:
//   log2 det(I + (P/N_src) * H^H Sigma^-1 H) / time_slots
// with Sigma = I in white mode.
double mutual_information(const EquivalentChannel& eq, const NoiseModel& noise,
                          const AFConfig& cfg);

struct CapacityEstimate {
  double mean_bits = 0.0;
  double std_error = 0.0;
  long samples = 0;
  double power = 0.0;
  NoiseMode mode = NoiseMode::white;
  int time_slots = 1;
};

using ChannelSampler = std::function<ChannelRealization(std::uint64_t)>;

// Monte Carlo average of the per-use mutual information. Every draw keeps all
// relays in the model: inactive ones simply transmit zero. cfg.time_slots = 1
// selects the single-block channel and requires a layered network; larger
// windows use the block channel. The i-th draw uses a seed derived from
// (seed, i), so estimates are reproducible and extendable.
CapacityEstimate ergodic_capacity(const Network& net, const AFConfig& cfg, long samples,
                                  NoiseMode mode, std::uint64_t seed);
CapacityEstimate ergodic_capacity(const Network& net, const AFConfig& cfg, long samples,
                                  NoiseMode mode, std::uint64_t seed,
                                  const ChannelSampler& sampler);

// Window default: layered networks use the single-block channel; otherwise a
// block of 4x the longest path length.
int default_time_slots(const Network& net);

struct SlopeEstimate {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> powers;
  std::vector<CapacityEstimate> points;
};

// Least-squares slope of mean capacity against log2(P) over a grid of at
// least two increasing powers (all > 2). The protocol gain and activation
// threshold track each grid point.
SlopeEstimate mux_gain_estimate(const Network& net, const std::vector<double>& powers,
                                long samples, NoiseMode mode, std::uint64_t seed,
                                int time_slots);

// Fraction of draws in which every relay clears the activation threshold.
double activation_probability(const Network& net, double power, long samples,
                              std::uint64_t seed);

}  // namespace relmux
