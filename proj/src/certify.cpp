#include "relmux/certify.hpp"

#include <cmath>
#include <stdexcept>

#include "relmux/errors.hpp"
#include "relmux/linalg.hpp"

namespace relmux {

namespace {
using i128 = __int128;
}

int exact_rank(const IntMatrix& m) {
  const int rows = m.rows, cols = m.cols;
  std::vector<i128> w(m.a.begin(), m.a.end());
  auto at = [&](int i, int j) -> i128& { return w[static_cast<size_t>(j) * rows + i]; };

  int rank = 0;
  i128 prev = 1;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int i = rank; i < rows; ++i)
      if (at(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int j = col; j < cols; ++j) std::swap(at(pivot, j), at(rank, j));

    const i128 p = at(rank, col);
    for (int i = rank + 1; i < rows; ++i) {
      const i128 f = at(i, col);
      for (int j = col + 1; j < cols; ++j) {
        i128 hi, lo;
        // fraction-free update: (a*p - f*b) / prev is exact
        if (__builtin_mul_overflow(at(i, j), p, &hi) ||
            __builtin_mul_overflow(f, at(rank, j), &lo))
          throw std::overflow_error("exact_rank: 128-bit overflow");
        i128 num;
        if (__builtin_sub_overflow(hi, lo, &num))
          throw std::overflow_error("exact_rank: 128-bit overflow");
        if (num % prev != 0) throw std::logic_error("exact_rank: inexact division");
        at(i, j) = num / prev;
      }
      at(i, col) = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

ChannelRealization certificate_realization(const Network& net, const DisjointPathFamily& fam) {
  const SplitGraph sg = split_graph(net);

  ChannelRealization real;
  for (const auto& [tx, rx] : net.edges) {
    real.mats.emplace(std::make_pair(tx, rx),
                      CMatrix(net.antenna_count(rx), net.antenna_count(tx)));
  }

  for (const auto& path : fam.paths) {
    if (path.size() < 3 || path.front() != sg.s || path.back() != sg.t)
      throw ValidationError("certificate: malformed path");
    for (size_t i = 1; i + 2 < path.size(); ++i) {
      const auto& from = sg.nodes[path[i]];
      const auto& to = sg.nodes[path[i + 1]];
      if (from.kind == SplitGraph::NodeKind::tx && to.kind == SplitGraph::NodeKind::rx) {
        auto it = real.mats.find({from.gnode, to.gnode});
        if (it == real.mats.end())
          throw ValidationError("certificate: path uses a missing edge");
        it->second(to.antenna - 1, from.antenna - 1) = 1.0;
      }
    }
  }
  return real;
}

namespace {

std::set<NodeId> all_relays(const Network& net) {
  std::set<NodeId> relays;
  for (const auto& n : net.nodes)
    if (net.is_relay(n.id)) relays.insert(n.id);
  return relays;
}

IntMatrix to_int_exact(const CMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i) {
      const std::complex<double> v = m(i, j);
      const double r = std::round(v.real());
      if (v.imag() != 0.0 || v.real() != r)
        throw std::logic_error("certificate channel produced a non-integer entry");
      out.at(i, j) = static_cast<long long>(r);
    }
  return out;
}

}  // namespace

RankCertificate verify_certificate(const Network& net, int time_slots) {
  const DisjointPathFamily fam = vertex_disjoint_paths(net);
  const ChannelRealization real = certificate_realization(net, fam);
  const std::set<NodeId> relays = all_relays(net);

  RankCertificate cert;
  cert.nu = fam.nu;
  cert.layered = is_layered(net);
  cert.path_length = longest_path(net);

  AFConfig cfg;
  cfg.power = 4.0;  // irrelevant to the rank; gain pinned to 1
  cfg.gain = 1.0;
  cfg.threshold = 0.0;

  if (cert.layered) {
    cert.time_slots = 1;
    cfg.time_slots = cert.path_length;
    const std::vector<CMatrix> taps = delay_transfer_matrices(real, net, cfg, relays);
    cert.rank = exact_rank(to_int_exact(taps.back()));
    cert.bound = cert.nu;
    cert.pass = cert.rank == cert.nu;
    return cert;
  }

  if (time_slots < cert.path_length)
    throw ValidationError("block window must cover the longest path (time_slots >= " +
                          std::to_string(cert.path_length) + ")");
  cert.time_slots = time_slots;
  cfg.time_slots = time_slots;
  const EquivalentChannel eq = equivalent_channel(real, net, cfg, relays);
  cert.rank = exact_rank(to_int_exact(eq.block));

  long long expected = 0;
  for (int len : fam.lengths) expected += time_slots - (len - 3) / 2;
  cert.bound = static_cast<long long>(cert.nu) * (time_slots - cert.path_length + 1);
  cert.pass = cert.rank == expected && cert.rank >= cert.bound;
  return cert;
}

double logdet_slope(const CMatrix& transfer, int n_src, const std::vector<double>& powers,
                    std::vector<double>* bits_out) {
  if (powers.size() < 2) throw ValidationError("power grid needs at least two points");
  std::vector<double> bits;
  for (double p : powers) {
    CMatrix m = gram(transfer);
    scale(m, p / n_src);
    add_identity(m, 1.0);
    bits.push_back(logdet2_hermitian_pd(m));
  }
  const size_t n = powers.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    const double x = std::log2(powers[i]);
    sx += x;
    sy += bits[i];
    sxx += x * x;
    sxy += x * bits[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  if (bits_out) *bits_out = std::move(bits);
  return slope;
}

RankGainReport rank_gain_link(const Network& net) {
  const DisjointPathFamily fam = vertex_disjoint_paths(net);
  const ChannelRealization real = certificate_realization(net, fam);
  const std::set<NodeId> relays = all_relays(net);

  AFConfig cfg;
  cfg.power = 4.0;
  cfg.gain = 1.0;
  cfg.threshold = 0.0;
  cfg.time_slots = longest_path(net);

  const std::vector<CMatrix> taps = delay_transfer_matrices(real, net, cfg, relays);
  CMatrix aggregate(net.antenna_count(net.destination), net.antenna_count(net.source));
  for (const CMatrix& t : taps) add_scaled(aggregate, t, 1.0);

  RankGainReport rep;
  rep.nu = fam.nu;
  rep.rank = exact_rank(to_int_exact(aggregate));
  rep.powers = {1e3, 1e6, 1e9};
  rep.slope = logdet_slope(aggregate, net.antenna_count(net.source), rep.powers, &rep.bits);
  return rep;
}

}  // namespace relmux
