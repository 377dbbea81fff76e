#include "relmux/capacity.hpp"

#include <cmath>

#include "relmux/errors.hpp"
#include "relmux/linalg.hpp"
#include "relmux/rng.hpp"

namespace relmux {

std::string to_string(NoiseMode mode) { return mode == NoiseMode::white ? "white" : "colored"; }

NoiseMode noise_mode_from_string(const std::string& s) {
  if (s == "white") return NoiseMode::white;
  if (s == "colored") return NoiseMode::colored;
  throw ValidationError("unknown noise mode: " + s);
}

double mutual_information(const EquivalentChannel& eq, const NoiseModel& noise,
                          const AFConfig& cfg) {
  const int n_src = eq.block.cols() / eq.time_slots;
  const CMatrix* h = &eq.block;
  CMatrix whitened;
  if (!noise.white) {
    if (noise.covariance.rows() != eq.block.rows())
      throw ValidationError("noise covariance does not match the channel block");
    const CMatrix l = cholesky_lower(noise.covariance);
    whitened = solve_lower(l, eq.block);
    h = &whitened;
  }
  CMatrix m = gram(*h);
  scale(m, cfg.power / n_src);
  add_identity(m, 1.0);
  return logdet2_hermitian_pd(m) / eq.time_slots;
}

int default_time_slots(const Network& net) {
  return is_layered(net) ? 1 : 4 * longest_path(net);
}

namespace {

struct KahanSum {
  double sum = 0.0, carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

CapacityEstimate ergodic_capacity(const Network& net, const AFConfig& cfg, long samples,
                                  NoiseMode mode, std::uint64_t seed) {
  return ergodic_capacity(net, cfg, samples, mode, seed,
                          [&net](std::uint64_t s) { return sample_channels(net, s); });
}

CapacityEstimate ergodic_capacity(const Network& net, const AFConfig& cfg, long samples,
                                  NoiseMode mode, std::uint64_t seed,
                                  const ChannelSampler& sampler) {
  if (samples < 1) throw ValidationError("samples must be >= 1");
  const bool single_block = cfg.time_slots == 1 && is_layered(net);

  KahanSum acc, acc2;
  for (long i = 0; i < samples; ++i) {
    const ChannelRealization real = sampler(derive_seed(seed, static_cast<std::uint64_t>(i)));
    const std::set<NodeId> active = active_relays(real, net, cfg);
    const EquivalentChannel eq = single_block ? steady_state_channel(real, net, cfg, active)
                                              : equivalent_channel(real, net, cfg, active);
    NoiseModel noise = NoiseModel::white_noise();
    if (mode == NoiseMode::colored)
      noise = single_block ? steady_noise_covariance(real, net, cfg, active)
                           : noise_covariance(real, net, cfg, active);
    const double bits = mutual_information(eq, noise, cfg);
    acc.add(bits);
    acc2.add(bits * bits);
  }

  CapacityEstimate est;
  est.samples = samples;
  est.power = cfg.power;
  est.mode = mode;
  est.time_slots = single_block ? 1 : cfg.time_slots;
  est.mean_bits = acc.sum / samples;
  if (samples > 1) {
    double var = (acc2.sum - samples * est.mean_bits * est.mean_bits) / (samples - 1);
    // The one-pass form leaves rounding residue of order eps * mean^2 even
    // when every draw is identical; treat anything below that as zero spread.
    if (var < 1e-14 * est.mean_bits * est.mean_bits) var = 0.0;
    est.std_error = std::sqrt(std::max(var, 0.0) / samples);
  }
  return est;
}

SlopeEstimate mux_gain_estimate(const Network& net, const std::vector<double>& powers,
                                long samples, NoiseMode mode, std::uint64_t seed,
                                int time_slots) {
  if (powers.size() < 2) throw ValidationError("power grid needs at least two points");
  for (size_t i = 0; i < powers.size(); ++i) {
    if (!(powers[i] > 2.0)) throw ValidationError("power grid values must exceed 2");
    if (i > 0 && !(powers[i] > powers[i - 1]))
      throw ValidationError("power grid must be strictly increasing");
  }

  SlopeEstimate se;
  se.powers = powers;
  for (size_t i = 0; i < powers.size(); ++i) {
    const AFConfig cfg = AFConfig::for_power(powers[i], time_slots);
    se.points.push_back(
        ergodic_capacity(net, cfg, samples, mode, derive_seed(seed, 0x9000 + i)));
  }

  const size_t n = powers.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    const double x = std::log2(powers[i]);
    const double y = se.points[i].mean_bits;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  se.slope = (n * sxy - sx * sy) / denom;
  se.intercept = (sy - se.slope * sx) / n;
  return se;
}

double activation_probability(const Network& net, double power, long samples,
                              std::uint64_t seed) {
  if (samples < 1) throw ValidationError("samples must be >= 1");
  const AFConfig cfg = AFConfig::for_power(power, 1);
  int relay_count = 0;
  for (const auto& n : net.nodes)
    if (net.is_relay(n.id)) ++relay_count;
  if (relay_count == 0) return 1.0;

  long hits = 0;
  for (long i = 0; i < samples; ++i) {
    const ChannelRealization real = sample_channels(net, derive_seed(seed, i));
    if (static_cast<int>(active_relays(real, net, cfg).size()) == relay_count) ++hits;
  }
  return static_cast<double>(hits) / samples;
}

}  // namespace relmux
