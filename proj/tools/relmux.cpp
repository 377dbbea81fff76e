#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "relmux/capacity.hpp"
#include "relmux/certify.hpp"
#include "relmux/errors.hpp"
#include "relmux/network.hpp"
#include "relmux/splitgraph.hpp"

using json = nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("RELMUX_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw relmux::ValidationError("RELMUX_SEED must be an unsigned integer");
    }
  }
  return 12345;
}

struct RunReport {
  std::string command;
  std::uint64_t network;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  ~RunReport() {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::fprintf(stderr, "relmux %s: network=%016llx%s wall=%.3fs\n", command.c_str(),
                 static_cast<unsigned long long>(network),
                 has_seed ? (" seed=" + std::to_string(seed)).c_str() : "", wall);
  }
};

int cmd_mux(const std::string& file) {
  const relmux::Network net = relmux::parse_network_file(file);
  RunReport report{"mux", relmux::network_hash(net)};
  const relmux::VertexCut cut = relmux::min_vertex_cut(net);
  json out;
  out["m"] = cut.capacity;
  out["cut"] = cut.members;
  out["nu"] = cut.capacity;
  out["layered"] = relmux::is_layered(net);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_simulate(const std::string& file, std::vector<double> snr_db, long samples,
                 const std::string& mode_str, int time_slots, std::uint64_t seed,
                 const std::string& format) {
  const relmux::Network net = relmux::parse_network_file(file);
  RunReport report{"simulate", relmux::network_hash(net), seed, true};
  const relmux::NoiseMode mode = relmux::noise_mode_from_string(mode_str);
  if (snr_db.empty()) throw relmux::ValidationError("--snr-db needs at least one value");
  if (format != "csv" && format != "json")
    throw relmux::ValidationError("--format must be csv or json");

  std::vector<double> powers;
  for (double db : snr_db) powers.push_back(std::pow(10.0, db / 10.0));
  const int slots = time_slots > 0 ? time_slots : relmux::default_time_slots(net);

  std::vector<relmux::CapacityEstimate> points;
  double slope = 0.0;
  bool have_slope = false;
  if (powers.size() >= 2) {
    const relmux::SlopeEstimate se =
        relmux::mux_gain_estimate(net, powers, samples, mode, seed, slots);
    points = se.points;
    slope = se.slope;
    have_slope = true;
  } else {
    const relmux::AFConfig cfg = relmux::AFConfig::for_power(powers[0], slots);
    points.push_back(relmux::ergodic_capacity(net, cfg, samples, mode, seed));
  }

  if (format == "csv") {
    std::cout << "p_db,mean_bits,stderr,samples,mode\n";
    for (size_t i = 0; i < points.size(); ++i)
      std::cout << fmt(snr_db[i]) << "," << fmt(points[i].mean_bits) << ","
                << fmt(points[i].std_error) << "," << points[i].samples << ","
                << relmux::to_string(mode) << "\n";
    std::cout << "# time_slots=" << points[0].time_slots;
    if (have_slope) std::cout << " slope=" << fmt(slope);
    std::cout << "\n";
  } else {
    json out;
    out["mode"] = relmux::to_string(mode);
    out["time_slots"] = points[0].time_slots;
    if (have_slope) out["slope"] = slope;
    out["points"] = json::array();
    for (size_t i = 0; i < points.size(); ++i)
      out["points"].push_back({{"p_db", snr_db[i]},
                               {"power", points[i].power},
                               {"mean_bits", points[i].mean_bits},
                               {"stderr", points[i].std_error},
                               {"samples", points[i].samples}});
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

int cmd_certify(const std::string& file, int time_slots) {
  const relmux::Network net = relmux::parse_network_file(file);
  RunReport report{"certify", relmux::network_hash(net)};
  const int slots = time_slots > 0 ? time_slots : 2 * relmux::longest_path(net);
  const relmux::RankCertificate cert = relmux::verify_certificate(net, slots);
  json out;
  out["nu"] = cert.nu;
  out["rank"] = cert.rank;
  out["bound"] = cert.bound;
  out["layered"] = cert.layered;
  out["T"] = cert.time_slots;
  out["l_G"] = cert.path_length;
  out["pass"] = cert.pass;
  std::cout << out.dump(2) << "\n";
  return cert.pass ? 0 : 3;
}

int cmd_region(const std::string& file) {
  const relmux::Network net = relmux::parse_network_file(file);
  RunReport report{"region", relmux::network_hash(net)};
  if (net.senders.empty())
    throw relmux::ValidationError("senders: network file declares no senders");
  const relmux::MuxRegion region =
      relmux::multiaccess_region(net, net.senders, net.destination);
  json out;
  out["senders"] = region.senders;
  out["constraints"] = json::array();
  for (const auto& rc : region.constraints) {
    json c;
    c["senders"] = json::array();
    for (int idx : rc.subset) c["senders"].push_back(region.senders[idx]);
    c["bound"] = rc.bound;
    out["constraints"].push_back(c);
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_multicast(const std::string& file) {
  const relmux::Network net = relmux::parse_network_file(file);
  RunReport report{"multicast", relmux::network_hash(net)};
  if (net.destinations.empty())
    throw relmux::ValidationError("destinations: network file declares no destinations");
  json out;
  out["gain"] = relmux::multicast_gain(net, net.destinations);
  out["per_destination"] = json::array();
  for (relmux::NodeId d : net.destinations) {
    const int g = relmux::multicast_gain(net, {d});
    out["per_destination"].push_back({{"destination", d}, {"gain", g}});
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relay network multiplexing analysis"};
  app.require_subcommand(1);

  std::string file;
  std::vector<double> snr_db;
  long samples = 1000;
  std::string mode = "white";
  int time_slots = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string format = "csv";

  auto* mux = app.add_subcommand("mux", "multiplexing gain and a minimum vertex cut");
  mux->add_option("network", file, "network JSON file")->required();

  auto* sim = app.add_subcommand("simulate", "Monte Carlo ergodic capacity over an SNR grid");
  sim->add_option("network", file, "network JSON file")->required();
  sim->add_option("--snr-db", snr_db, "SNR grid in dB")->required()->expected(-1);
  sim->add_option("--samples", samples, "Monte Carlo draws per grid point");
  sim->add_option("--mode", mode, "noise model: white or colored");
  sim->add_option("--time-slots", time_slots, "block window length (default: network-derived)");
  sim->add_option("--seed", seed, "RNG seed (default: RELMUX_SEED or 12345)");
  sim->add_option("--format", format, "csv or json");

  auto* cert = app.add_subcommand("certify", "deterministic achievable-rank check");
  cert->add_option("network", file, "network JSON file")->required();
  cert->add_option("--time-slots", time_slots,
                   "block window length (default: 2x longest path)");

  auto* region = app.add_subcommand("region", "multi-access rate region");
  region->add_option("network", file, "network JSON file with a senders list")->required();

  auto* mcast = app.add_subcommand("multicast", "multicast multiplexing gain");
  mcast->add_option("network", file, "network JSON file with a destinations list")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  seed_given = sim->count("--seed") > 0;

  try {
    if (mux->parsed()) return cmd_mux(file);
    if (sim->parsed())
      return cmd_simulate(file, snr_db, samples, mode, time_slots,
                          seed_given ? seed : default_seed(), format);
    if (cert->parsed()) return cmd_certify(file, time_slots);
    if (region->parsed()) return cmd_region(file);
    if (mcast->parsed()) return cmd_multicast(file);
  } catch (const relmux::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "assertion: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
