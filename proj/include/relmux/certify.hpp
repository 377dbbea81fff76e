#pragma once

#include <vector>

#include "relmux/afsim.hpp"
#include "relmux/network.hpp"
#include "relmux/splitgraph.hpp"

namespace relmux {

// Small integer matrix, column-major, for exact rank work.
struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<long long> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  long long& at(int i, int j) { return a[static_cast<size_t>(j) * rows + i]; }
  long long at(int i, int j) const { return a[static_cast<size_t>(j) * rows + i]; }
};

// Rank over the integers (= rank over the rationals), computed with
// fraction-free elimination; exact divisions are asserted and 128-bit
// intermediate overflow throws.
int exact_rank(const IntMatrix& m);

// 0/1 channel realization supported exactly on the arcs of a vertex-disjoint
// path family: every edge matrix has at most one nonzero per row and column.
ChannelRealization certificate_realization(const Network& net, const DisjointPathFamily& fam);

struct RankCertificate {
  int nu = 0;
  long long rank = 0;
  long long bound = 0;   // layered: nu; block: nu * (T - path_length + 1)
  bool layered = false;
  int time_slots = 1;
  int path_length = 0;
  bool pass = false;
};

// Drives the deterministic 0/1 realization through the production channel
// recursion (gain 1, every relay on) and checks the achievable-rank claim:
// layered networks must hit rank nu exactly; block windows must hit
// sum_v (T - delay_v) and stay above nu * (T - path_length + 1).
RankCertificate verify_certificate(const Network& net, int time_slots);

struct RankGainReport {
  int nu = 0;
  long long rank = 0;
  double slope = 0.0;
  std::vector<double> powers;
  std::vector<double> bits;
};

// log-det slope of the aggregate certificate transfer (all taps superposed)
// over a fixed power grid; the aggregate has exactly nu unit singular values,
// so the slope reproduces the max-flow value.
RankGainReport rank_gain_link(const Network& net);

// Least-squares slope of `bits` against log2(powers); exposed for direct use
// on synthetic transfers.
double logdet_slope(const CMatrix& transfer, int n_src, const std::vector<double>& powers,
                    std::vector<double>* bits_out = nullptr);

}  // namespace relmux
