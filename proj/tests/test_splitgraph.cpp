#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "relmux/errors.hpp"
#include "relmux/network.hpp"
#include "relmux/splitgraph.hpp"
#include "support/generators.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace relmux;
using namespace testsupport;

TEST_CASE("split_graph: node and arc counts") {
    SUBCASE("chain (4,2,4)") {
        SplitGraph sg = split_graph(load_fixture("chain424.json"));
        CHECK(sg.node_count() == 14);  // 2*2 relay + 4 src tx + 4 dst rx + s,t
        CHECK(sg.count_arcs(SplitGraph::ArcKind::inner) == 2);
        CHECK(sg.count_arcs(SplitGraph::ArcKind::source_terminal) == 4);
        CHECK(sg.count_arcs(SplitGraph::ArcKind::dest_terminal) == 4);
        CHECK(sg.count_arcs(SplitGraph::ArcKind::outer) == 8 + 8);
    }
    SUBCASE("direct link (2,3)") {
        SplitGraph sg = split_graph(load_fixture("direct23.json"));
        CHECK(sg.node_count() == 7);  // 2 src tx + 3 dst rx + s,t
        CHECK(sg.count_arcs(SplitGraph::ArcKind::inner) == 0);
        CHECK(sg.count_arcs(SplitGraph::ArcKind::outer) == 6);
        CHECK(sg.count_arcs(SplitGraph::ArcKind::source_terminal) == 2);
        CHECK(sg.count_arcs(SplitGraph::ArcKind::dest_terminal) == 3);
    }
    SUBCASE("five-node fixture") {
        SplitGraph sg = split_graph(load_fixture("fig1.json"));
        CHECK(sg.node_count() == 32);  // 2*(3+2+4) + 6 + 6 + 2
    }
}

TEST_CASE("split_graph: structural invariants hold on random networks") {
    for (uint64_t seed = 0; seed < 30; ++seed) {
        Network net = random_digraph(seed, 8, 4);
        SplitGraph sg = split_graph(net);

        long long relay_antennas = 0;
        for (auto& n : net.nodes)
            if (net.is_relay(n.id)) relay_antennas += n.antennas;
        CHECK(sg.node_count() == 2 * relay_antennas + net.antenna_count(net.source) +
                                     net.antenna_count(net.destination) + 2);

        // Inner arcs pair each relay rx(v,i) with its own tx(v,i), at most one
        // per split node on either side.
        std::set<int> inner_from, inner_to;
        for (auto& arc : sg.arcs) {
            if (arc.kind != SplitGraph::ArcKind::inner) continue;
            CHECK(sg.nodes[arc.from].kind == SplitGraph::NodeKind::rx);
            CHECK(sg.nodes[arc.to].kind == SplitGraph::NodeKind::tx);
            CHECK(sg.nodes[arc.from].gnode == sg.nodes[arc.to].gnode);
            CHECK(sg.nodes[arc.from].antenna == sg.nodes[arc.to].antenna);
            CHECK(inner_from.insert(arc.from).second);
            CHECK(inner_to.insert(arc.to).second);
        }

        // Outer arcs form complete bipartite antenna blocks per network edge.
        std::map<std::pair<NodeId, NodeId>, int> outer_count;
        for (auto& arc : sg.arcs) {
            if (arc.kind != SplitGraph::ArcKind::outer) continue;
            outer_count[{sg.nodes[arc.from].gnode, sg.nodes[arc.to].gnode}]++;
        }
        int covered = 0;
        for (auto& [tx, rx] : net.edges) {
            bool tx_side = tx != net.destination;
            bool rx_side = rx != net.source;
            if (!tx_side || !rx_side) continue;  // no such side on a terminal
            ++covered;
            CHECK(outer_count[{tx, rx}] == net.antenna_count(tx) * net.antenna_count(rx));
        }
        CHECK(static_cast<int>(outer_count.size()) == covered);
    }
}

TEST_CASE("max_flow: documented values") {
    CHECK(max_flow(split_graph(load_fixture("chain424.json"))).value == 2);
    CHECK(max_flow(split_graph(load_fixture("direct23.json"))).value == 2);
    CHECK(max_flow(split_graph(load_fixture("fig1.json"))).value == 5);
}

TEST_CASE("min_vertex_cut: documented values") {
    SUBCASE("five-node fixture -> relays {1,2}") {
        VertexCut cut = min_vertex_cut(load_fixture("fig1.json"));
        CHECK(cut.members == std::set<NodeId>{1, 2});
        CHECK(cut.capacity == 5);
    }
    SUBCASE("chain -> the single relay") {
        VertexCut cut = min_vertex_cut(load_fixture("chain424.json"));
        CHECK(cut.members == std::set<NodeId>{1});
        CHECK(cut.capacity == 2);
    }
    SUBCASE("direct link -> source side of the tie") {
        VertexCut cut = min_vertex_cut(load_fixture("direct23.json"));
        CHECK(cut.members == std::set<NodeId>{0});
        CHECK(cut.capacity == 2);
    }
    SUBCASE("diamond (2,1,1,2) -> capacity 2") {
        VertexCut cut = min_vertex_cut(load_fixture("diamond2112.json"));
        CHECK(cut.capacity == 2);
        bool known = cut.members == std::set<NodeId>{0} ||
                     cut.members == std::set<NodeId>{3} ||
                     cut.members == std::set<NodeId>{1, 2};
        CHECK(known);
    }
}

TEST_CASE("min_vertex_cut: returned set is a cut of the stated capacity") {
    for (uint64_t seed = 40; seed < 80; ++seed) {
        Network net = random_digraph(seed, 8, 4);
        VertexCut cut = min_vertex_cut(net);
        CHECK(is_vertex_cut(net, cut.members));
        CHECK(vertex_cut_capacity(net, cut.members) == cut.capacity);
        CHECK(cut.capacity == multiplexing_gain(net));
    }
}

TEST_CASE("multiplexing_gain: equals brute-force minimum vertex cut") {
    for (uint64_t seed = 500; seed < 600; ++seed) {
        Network net = random_digraph(seed, 8, 4);
        CHECK(multiplexing_gain(net) == brute_force_min_vertex_cut(net));
    }
}

TEST_CASE("multiplexing_gain: bounded by terminal antennas, monotone in edges/antennas") {
    for (uint64_t seed = 700; seed < 740; ++seed) {
        Network net = random_digraph(seed, 7, 4);
        int m = multiplexing_gain(net);
        CHECK(m >= 1);
        CHECK(m <= std::min(net.antenna_count(net.source), net.antenna_count(net.destination)));

        // Adding one antenna anywhere never decreases the gain.
        Network more = net;
        more.nodes[seed % more.nodes.size()].antennas += 1;
        validate_network(more);
        CHECK(multiplexing_gain(more) >= m);

        // Adding one missing edge never decreases the gain.
        Network extra = net;
        bool added = false;
        for (auto& a : net.nodes) {
            for (auto& b : net.nodes) {
                if (a.id == b.id || extra.has_edge(a.id, b.id)) continue;
                extra.edges.emplace_back(a.id, b.id);
                added = true;
                break;
            }
            if (added) break;
        }
        if (added) {
            validate_network(extra);
            CHECK(multiplexing_gain(extra) >= m);
        }
    }
}

TEST_CASE("vertex_disjoint_paths: documented families") {
    SUBCASE("chain (4,2,4): both relay antennas used") {
        DisjointPathFamily fam = vertex_disjoint_paths(load_fixture("chain424.json"));
        CHECK(fam.nu == 2);
        REQUIRE(fam.paths.size() == 2);
        CHECK(fam.lengths == std::vector<int>{5, 5});
        std::set<int> beta(fam.source_antennas.begin(), fam.source_antennas.end());
        std::set<int> gamma(fam.dest_antennas.begin(), fam.dest_antennas.end());
        CHECK(beta.size() == 2);
        CHECK(gamma.size() == 2);
    }
    SUBCASE("direct link: two length-3 paths") {
        DisjointPathFamily fam = vertex_disjoint_paths(load_fixture("direct23.json"));
        CHECK(fam.nu == 2);
        CHECK(fam.lengths == std::vector<int>{3, 3});
    }
    SUBCASE("five-node fixture: 3 paths via node 1, 2 via nodes 2-3") {
        Network net = load_fixture("fig1.json");
        DisjointPathFamily fam = vertex_disjoint_paths(net);
        SplitGraph sg = split_graph(net);
        CHECK(fam.nu == 5);
        int via1 = 0, via23 = 0;
        for (auto& path : fam.paths) {
            std::set<NodeId> gnodes;
            for (size_t i = 1; i + 1 < path.size(); ++i)
                gnodes.insert(sg.nodes[path[i]].gnode);
            if (gnodes.count(1)) ++via1;
            if (gnodes.count(2)) {
                CHECK(gnodes.count(3));  // node 2 only continues through node 3
                ++via23;
            }
        }
        CHECK(via1 == 3);
        CHECK(via23 == 2);
        // Delay = (length - 3) / 2 relay hops: 1 via node 1, 2 via nodes 2,3.
        std::multiset<int> lengths(fam.lengths.begin(), fam.lengths.end());
        CHECK(lengths == std::multiset<int>{5, 5, 5, 7, 7});
    }
}

TEST_CASE("vertex_disjoint_paths: family invariants on random networks") {
    for (uint64_t seed = 800; seed < 860; ++seed) {
        Network net = random_digraph(seed, 8, 4);
        SplitGraph sg = split_graph(net);
        DisjointPathFamily fam = vertex_disjoint_paths(net);

        CHECK(fam.nu == multiplexing_gain(net));
        CHECK(static_cast<int>(fam.paths.size()) == fam.nu);

        std::set<int> internal;  // split nodes used by any path, s/t excluded
        std::set<int> beta, gamma;
        std::map<NodeId, int> gnode_use;
        for (size_t p = 0; p < fam.paths.size(); ++p) {
            auto& path = fam.paths[p];
            REQUIRE(path.size() >= 4);
            CHECK(path.front() == sg.s);
            CHECK(path.back() == sg.t);
            CHECK(fam.lengths[p] == static_cast<int>(path.size()) - 1);
            CHECK(fam.lengths[p] % 2 == 1);
            for (size_t i = 1; i + 1 < path.size(); ++i) {
                CHECK(internal.insert(path[i]).second);  // pairwise disjoint
                gnode_use[sg.nodes[path[i]].gnode]++;
            }
            CHECK(beta.insert(fam.source_antennas[p]).second);
            CHECK(gamma.insert(fam.dest_antennas[p]).second);
            CHECK(sg.nodes[path[1]].gnode == net.source);
            CHECK(sg.nodes[path[1]].antenna == fam.source_antennas[p]);
            CHECK(sg.nodes[path[path.size() - 2]].gnode == net.destination);
            CHECK(sg.nodes[path[path.size() - 2]].antenna == fam.dest_antennas[p]);
        }
        // Each network node carries at most one path per antenna; relays are
        // visited on both split sides.
        for (auto& [gnode, uses] : gnode_use) {
            int per_visit = net.is_relay(gnode) ? 2 : 1;
            CHECK(uses <= per_visit * net.antenna_count(gnode));
        }
    }
}

TEST_CASE("multicast_gain: examples and order invariance") {
    Network twodest = load_fixture("twodest.json");
    CHECK(multicast_gain(twodest, {1, 2}) == 3);
    CHECK(multicast_gain(twodest, {2, 1}) == 3);
    CHECK(multicast_gain(twodest, {1}) == 5);
    CHECK(multicast_gain(twodest, {2}) == 3);

    Network fig1 = load_fixture("fig1.json");
    CHECK(multicast_gain(fig1, {4}) == multiplexing_gain(fig1));

    CHECK_THROWS_AS(multicast_gain(fig1, {0}), ValidationError);   // the source
    CHECK_THROWS_AS(multicast_gain(fig1, {9}), ValidationError);   // unknown
    Network chain = load_fixture("chain424.json");
    CHECK_THROWS_AS(multicast_gain(chain, {2, 0}), ValidationError);
}

TEST_CASE("multicast_gain: equals min of pairwise gains on random networks") {
    for (uint64_t seed = 900; seed < 930; ++seed) {
        Network net = random_digraph(seed, 7, 3);
        std::vector<NodeId> dests;
        for (auto& n : net.nodes)
            if (n.id != net.source && reaches(net, net.source, n.id)) dests.push_back(n.id);
        if (dests.size() < 2) continue;
        int expect = 1 << 20;
        for (NodeId d : dests) {
            Network uni = net;
            uni.destination = d;
            validate_network(uni);
            expect = std::min(expect, multiplexing_gain(uni));
        }
        CHECK(multicast_gain(net, dests) == expect);
    }
}

TEST_CASE("multiaccess_region: two-sender example") {
    Network net = load_fixture("twosender.json");
    MuxRegion region = multiaccess_region(net, net.senders, net.destination);
    REQUIRE(region.constraints.size() == 3);

    std::map<std::vector<int>, int> bounds;
    for (auto& c : region.constraints) bounds[c.subset] = c.bound;
    CHECK(bounds[{0}] == 2);
    CHECK(bounds[{1}] == 2);
    CHECK(bounds[{0, 1}] == 3);

    CHECK(region_contains(region, {0.0, 0.0}));
    CHECK(region_contains(region, {1.4, 1.4}));       // sum 2.8 <= 3, each <= 2
    CHECK(region_contains(region, {2.0, 1.0}));       // boundary, closed region
    CHECK_FALSE(region_contains(region, {2.5, 0.0}));
    CHECK_FALSE(region_contains(region, {1.6, 1.6})); // sum 3.2 > 3
    CHECK_FALSE(region_contains(region, {-0.1, 0.5}));
    CHECK_THROWS_AS(region_contains(region, {1.0}), ValidationError);
}

TEST_CASE("multiaccess_region: single sender reduces to the point-to-point gain") {
    Network fig1 = load_fixture("fig1.json");
    MuxRegion region = multiaccess_region(fig1, {0}, 4);
    REQUIRE(region.constraints.size() == 1);
    CHECK(region.constraints[0].bound == 5);
}

TEST_CASE("multiaccess_region: matches brute force and is monotone") {
    for (uint64_t seed = 1000; seed < 1020; ++seed) {
        Network net = random_digraph(seed, 6, 3);
        std::vector<NodeId> senders;
        for (auto& n : net.nodes) {
            if (n.id == net.destination) continue;
            if (reaches(net, n.id, net.destination)) senders.push_back(n.id);
            if (senders.size() == 3) break;
        }
        if (senders.empty()) continue;
        MuxRegion region = multiaccess_region(net, senders, net.destination);
        CHECK(region.constraints.size() == (size_t{1} << senders.size()) - 1);

        std::map<std::vector<int>, int> bounds;
        for (auto& c : region.constraints) {
            bounds[c.subset] = c.bound;
            std::vector<NodeId> active;
            for (int idx : c.subset) active.push_back(senders[idx]);
            CHECK(c.bound ==
                  brute_force_multiaccess_bound(net, senders, active, net.destination));
        }
        // Monotone in S, subadditive versus singletons.
        for (auto& [subset, bound] : bounds) {
            for (auto& [other, obound] : bounds) {
                if (std::includes(other.begin(), other.end(), subset.begin(), subset.end()))
                    CHECK(bound <= obound);
            }
            int singleton_sum = 0;
            for (int idx : subset) singleton_sum += bounds[{idx}];
            CHECK(bound <= singleton_sum);
        }
    }
}

TEST_CASE("multiaccess_region: validation") {
    Network net = load_fixture("twosender.json");
    CHECK_THROWS_AS(multiaccess_region(net, {}, net.destination), ValidationError);
    CHECK_THROWS_AS(multiaccess_region(net, {1, 1}, net.destination), ValidationError);
    CHECK_THROWS_AS(multiaccess_region(net, {3}, 3), ValidationError);
    CHECK_THROWS_AS(multiaccess_region(net, {9}, net.destination), ValidationError);

    Network big;
    for (int i = 0; i < 14; ++i) big.nodes.push_back({i, 1});
    for (int i = 0; i < 13; ++i) big.edges.emplace_back(i, 13);
    big.source = 0;
    big.destination = 13;
    validate_network(big);
    std::vector<NodeId> thirteen;
    for (int i = 0; i < 13; ++i) thirteen.push_back(i);
    CHECK_THROWS_AS(multiaccess_region(big, thirteen, 13), ValidationError);
    CHECK(multiaccess_region(big, thirteen, 13, 13).constraints.size() == (1u << 13) - 1);
}
