#pragma once

// Shared test utilities: fixture loading, programmatic network construction,
// and CLI invocation with captured output.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "relmux/network.hpp"

namespace testsupport {

inline std::string fixture_path(const std::string& name) {
    return std::string(RELMUX_FIXTURE_DIR) + "/" + name;
}

inline relmux::Network load_fixture(const std::string& name) {
    return relmux::parse_network_file(fixture_path(name));
}

inline relmux::Network make_net(std::vector<std::pair<int, int>> nodes,
                                std::vector<std::pair<int, int>> edges,
                                int source, int destination,
                                std::vector<int> senders = {},
                                std::vector<int> destinations = {}) {
    relmux::Network net;
    for (auto& [id, ant] : nodes) net.nodes.push_back({id, ant});
    for (auto& [tx, rx] : edges) net.edges.emplace_back(tx, rx);
    net.source = source;
    net.destination = destination;
    net.senders = std::move(senders);
    net.destinations = std::move(destinations);
    relmux::validate_network(net);
    return net;
}

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::string read_whole_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Runs the relmux binary with the given arguments, capturing stdout/stderr.
// `env_prefix` is prepended verbatim (e.g. "RELMUX_SEED=7 ").
inline CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    std::string tag = std::to_string(++counter);
    std::string out_path = "/tmp/relmux_test_out_" + tag;
    std::string err_path = "/tmp/relmux_test_err_" + tag;
    std::string cmd = env_prefix + std::string(RELMUX_CLI_BIN) + " " + args +
                      " >" + out_path + " 2>" + err_path;
    int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    r.out = read_whole_file(out_path);
    r.err = read_whole_file(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

inline std::string write_temp_json(const std::string& body, const std::string& stem) {
    std::string path = "/tmp/relmux_fixture_" + stem + ".json";
    std::ofstream out(path, std::ios::binary);
    out << body;
    return path;
}

}  // namespace testsupport
