#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "leoisl/constellation.hpp"
#include "leoisl/routing.hpp"
#include "leoisl/topology.hpp"
#include "nlohmann/json.hpp"
#include "oracles.hpp"

using namespace leoisl;

namespace {
doctest::Approx approx(double v) { return doctest::Approx(v).epsilon(1e-12); }

IslGraph make_graph(int n, std::vector<IslEdge> edges) {
    IslGraph g;
    g.node_count = n;
    g.edges = std::move(edges);
    g.finalize();
    return g;
}

IslGraph random_graph(int n, std::uint64_t seed) {
    oracles::XorShift rng(seed);
    const double density = rng.uniform(0.03, 0.4);
    std::vector<IslEdge> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (rng.uniform() < density) {
                edges.push_back({i, j, rng.uniform(1.0, 1000.0)});
            }
        }
    }
    return make_graph(n, std::move(edges));
}

// One satellite directly above the given geodetic point.
Constellation single_satellite_above(double lat_deg, double lon_deg, double h_km) {
    Constellation c;
    c.kind = ConstellationKind::Random;
    c.n = 1;
    c.altitude_km = h_km;
    Satellite s;
    s.id = 0;
    s.altitude_km = h_km;
    s.position = geodetic_to_ecef(GeodeticCoord::from_degrees(lat_deg, lon_deg, h_km));
    c.satellites.push_back(s);
    c.rebuild_positions();
    return c;
}
}  // namespace

TEST_CASE("dijkstra basics") {
    const auto single = make_graph(1, {});
    const auto self = dijkstra(single, 0, 0);
    REQUIRE(self.has_value());
    CHECK(*self == std::vector<int>{0});

    const auto disconnected = make_graph(2, {});
    CHECK_FALSE(dijkstra(disconnected, 0, 1).has_value());

    const auto pair = make_graph(2, {{0, 1, 5.0}});
    const auto p = dijkstra(pair, 0, 1);
    REQUIRE(p.has_value());
    CHECK(*p == std::vector<int>{0, 1});
    CHECK(path_weight(pair, *p) == 5.0);

    CHECK_THROWS_AS(dijkstra(pair, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(dijkstra(pair, -1, 0), std::invalid_argument);
}

TEST_CASE("dijkstra picks the strictly shorter route") {
    const auto g = make_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 2.5}});
    const auto p = dijkstra(g, 0, 2);
    REQUIRE(p.has_value());
    CHECK(*p == std::vector<int>{0, 1, 2});
    CHECK(path_weight(g, *p) == 2.0);
}

TEST_CASE("dijkstra breaks exact ties toward the lexicographically smaller path") {
    // Direct edge 0-2 of weight 2 ties the relay 0-1-2; the relayed sequence
    // [0,1,2] sorts before [0,2].
    const auto tri = make_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 2.0}});
    const auto p = dijkstra(tri, 0, 2);
    REQUIRE(p.has_value());
    CHECK(*p == std::vector<int>{0, 1, 2});

    // Two equal-weight relays through 1 and 2: the lower relay id wins.
    const auto square =
        make_graph(4, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}});
    const auto q = dijkstra(square, 0, 3);
    REQUIRE(q.has_value());
    CHECK(*q == std::vector<int>{0, 1, 3});

    // Same graph, reversed direction: still the smallest sequence.
    const auto r = dijkstra(square, 3, 0);
    REQUIRE(r.has_value());
    CHECK(*r == std::vector<int>{3, 1, 0});

    // A longer tie where the first hop matches and the difference appears
    // later: 0-1 then {2 vs 3} to 4.
    const auto deep = make_graph(
        5, {{0, 1, 1.0}, {1, 2, 1.0}, {1, 3, 1.0}, {2, 4, 1.0}, {3, 4, 1.0}});
    const auto s = dijkstra(deep, 0, 4);
    REQUIRE(s.has_value());
    CHECK(*s == std::vector<int>{0, 1, 2, 4});
}

TEST_CASE("dijkstra distances match an independent relaxation oracle") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const int n = 2 + static_cast<int>(seed * 3 % 99);
        const auto g = random_graph(n, seed * 7919);
        const auto ref = oracles::bellman_ford(g, 0);
        for (int dst = 0; dst < n; ++dst) {
            const auto p = dijkstra(g, 0, dst);
            if (std::isinf(ref[static_cast<std::size_t>(dst)])) {
                CHECK_FALSE(p.has_value());
                continue;
            }
            REQUIRE(p.has_value());
            CHECK(p->front() == 0);
            CHECK(p->back() == dst);
            // Simple path over existing edges.
            std::set<int> seen(p->begin(), p->end());
            CHECK(seen.size() == p->size());
            CHECK(path_weight(g, *p) == ref[static_cast<std::size_t>(dst)]);
        }
    }
}

TEST_CASE("dijkstra optimum is invariant under node relabeling") {
    const int n = 60;
    const auto g = random_graph(n, 424242);

    // Reverse the labels.
    std::vector<IslEdge> relabeled;
    for (const auto& e : g.edges) {
        const int a = n - 1 - e.i;
        const int b = n - 1 - e.j;
        relabeled.push_back({std::min(a, b), std::max(a, b), e.weight_km});
    }
    const auto h = make_graph(n, std::move(relabeled));

    for (int dst = 1; dst < n; dst += 7) {
        const auto p = dijkstra(g, 0, dst);
        const auto q = dijkstra(h, n - 1, n - 1 - dst);
        REQUIRE(p.has_value() == q.has_value());
        if (p) CHECK(path_weight(g, *p) == path_weight(h, *q));
    }
}

TEST_CASE("fiber delay and free-space path loss reference values") {
    const DelayModel model;
    CHECK(fiber_delay(20015.086796020572, model) == approx(0.098008294179829578));
    CHECK(fiber_delay(0.0, model) == 0.0);
    CHECK_THROWS_AS(fiber_delay(-1.0, model), std::invalid_argument);

    CHECK(fspl(1000.0, 0.03) == approx(1.7545963379714413e17));
    // Quadratic growth in distance.
    CHECK(fspl(2000.0, 0.03) == approx(4.0 * 1.7545963379714413e17));
    CHECK_THROWS_AS(fspl(0.0, 0.03), std::invalid_argument);
    CHECK_THROWS_AS(fspl(1000.0, 0.0), std::invalid_argument);
}

TEST_CASE("delay model helpers") {
    const DelayModel model;
    CHECK(model.tau_process_s == 5.6e-6);
    CHECK(model.with_derived_processing().tau_process_s == approx(5.6285178236397745e-06));
    CHECK(model.without_processing().tau_process_s == 0.0);
    CHECK(model.fiber_refractive_index == 1.468);
    CHECK(model.c_km_s == speed_of_light_km_s);
}

TEST_CASE("path energy model") {
    RoutePath p;
    p.hop_distances_km = {3.0, 4.0, 5.0};
    p.hop_count = 3;
    CHECK(path_energy(p, 1.0, 0.0) == 50.0);
    CHECK(path_energy(p, 2.0, 0.0) == 100.0);
    CHECK(path_energy(p, 1.0, 7.0) == 71.0);

    RoutePath bent;
    bent.hop_count = 0;
    CHECK(path_energy(bent, 1.0, 7.0) == 0.0);
}

TEST_CASE("bent-pipe route under a single satellite") {
    const auto c = single_satellite_above(0.0, 0.0, 550.0);
    const auto g = build_cutoff(c, 1000.0);
    const DelayModel model;
    const GeodeticCoord ground = GeodeticCoord::from_degrees(0.0, 0.0);

    const auto p = route(c, g, ground, ground, model);
    REQUIRE(p.has_value());
    CHECK(p->sat_ids == std::vector<int>{0});
    CHECK(p->hop_count == 0);
    CHECK(p->sat_count == 1);
    CHECK(p->d_up_km == approx(550.0));
    CHECK(p->d_down_km == approx(550.0));
    CHECK(p->total_delay_s == approx(0.0036748050471796727));
    CHECK(p->total_energy == 0.0);
    CHECK(p->tx_elevation_rad == approx(pi / 2.0));
    CHECK_FALSE(p->tx_below_min_elevation);
    CHECK(p->total_delay_s == p->propagation_delay_s + p->processing_delay_s);
    CHECK(end_to_end_delay(*p, model) == p->total_delay_s);
}

TEST_CASE("route flags low-elevation attachments without rejecting them") {
    const auto c = single_satellite_above(0.0, 0.0, 550.0);
    const auto g = build_cutoff(c, 1000.0);
    const DelayModel model;

    const auto p = route(c, g, GeodeticCoord::from_degrees(0.0, 60.0),
                         GeodeticCoord::from_degrees(0.0, 0.0), model);
    REQUIRE(p.has_value());
    CHECK(p->tx_below_min_elevation);
    CHECK(p->tx_elevation_rad < 0.0);  // far over the horizon
    CHECK_FALSE(p->rx_below_min_elevation);
}

TEST_CASE("route breakdown over a walker constellation") {
    const auto c = generate_walker_delta(60, 6, 550.0, deg2rad(53.0), 1);
    const auto g = build_cutoff(c, compute_d_max(550.0, 18.0));
    const DelayModel model;
    const auto tx = GeodeticCoord::from_degrees(-31.9523, 115.8613);
    const auto rx = GeodeticCoord::from_degrees(48.3904, -4.4861);

    const auto p = route(c, g, tx, rx, model);
    REQUIRE(p.has_value());
    CHECK(p->sat_ids.front() == nearest_satellite(c, tx));
    CHECK(p->sat_ids.back() == nearest_satellite(c, rx));
    REQUIRE(p->hop_distances_km.size() == p->sat_ids.size() - 1);
    CHECK(p->hop_count == static_cast<int>(p->hop_distances_km.size()));
    CHECK(p->sat_count == p->hop_count + 1);

    // Hop distances are the graph's edge weights along the path.
    for (std::size_t k = 0; k + 1 < p->sat_ids.size(); ++k) {
        const Vec3 d = c.satellites[static_cast<std::size_t>(p->sat_ids[k])].position -
                       c.satellites[static_cast<std::size_t>(p->sat_ids[k + 1])].position;
        CHECK(p->hop_distances_km[k] == approx(norm(d)));
    }

    // Delay identities hold bitwise.
    CHECK(p->total_delay_s == p->propagation_delay_s + p->processing_delay_s);
    CHECK(end_to_end_delay(*p, model) == p->total_delay_s);
    CHECK(p->total_energy == path_energy(*p, model.energy_alpha, model.energy_per_hop));
    CHECK(p->processing_delay_s == static_cast<double>(p->sat_count) * model.tau_process_s);

    // Up/down legs reach the attach satellites.
    CHECK(p->d_up_km ==
          approx(norm(c.satellites[static_cast<std::size_t>(p->sat_ids.front())].position -
                      geodetic_to_ecef(tx))));
    CHECK(p->d_down_km ==
          approx(norm(c.satellites[static_cast<std::size_t>(p->sat_ids.back())].position -
                      geodetic_to_ecef(rx))));

    CHECK_THROWS_AS(route(c, build_cutoff(generate_random(10, 550.0, 1), 1000.0), tx, rx, model),
                    std::invalid_argument);
}

TEST_CASE("turning processing off splits the delay exactly") {
    const auto c = generate_walker_delta(60, 6, 550.0, deg2rad(53.0), 1);
    const auto g = build_cutoff(c, compute_d_max(550.0, 18.0));
    const DelayModel on;
    const DelayModel off = on.without_processing();
    const auto tx = GeodeticCoord::from_degrees(40.7128, -74.0060);
    const auto rx = GeodeticCoord::from_degrees(51.5074, -0.1278);

    const auto p_on = route(c, g, tx, rx, on);
    const auto p_off = route(c, g, tx, rx, off);
    REQUIRE(p_on.has_value());
    REQUIRE(p_off.has_value());
    CHECK(p_on->sat_ids == p_off->sat_ids);
    CHECK(p_off->processing_delay_s == 0.0);
    CHECK(p_off->total_delay_s == p_off->propagation_delay_s);
    CHECK(p_on->total_delay_s ==
          p_off->total_delay_s + static_cast<double>(p_on->sat_count) * on.tau_process_s);
    CHECK(p_on->total_delay_s > p_off->total_delay_s);
}

TEST_CASE("alternate paths: k=1 reproduces the single route") {
    const auto c = generate_walker_delta(60, 6, 550.0, deg2rad(53.0), 1);
    const auto g = build_cutoff(c, compute_d_max(550.0, 18.0));
    const DelayModel model;
    const auto tx = GeodeticCoord::from_degrees(-31.9523, 115.8613);
    const auto rx = GeodeticCoord::from_degrees(48.3904, -4.4861);

    const auto single = route(c, g, tx, rx, model);
    const auto alts = alternate_paths(c, g, tx, rx, model, 1);
    REQUIRE(single.has_value());
    REQUIRE(alts.paths.size() == 1);
    CHECK_FALSE(alts.truncated);
    CHECK(alts.paths[0].sat_ids == single->sat_ids);
    CHECK(alts.paths[0].total_delay_s == single->total_delay_s);

    CHECK_THROWS_AS(alternate_paths(c, g, tx, rx, model, 0), std::invalid_argument);
}

TEST_CASE("alternate paths are edge-disjoint with non-decreasing delay") {
    const auto c = generate_walker_delta(120, 12, 550.0, deg2rad(53.0), 1);
    const auto g = build_cutoff(c, compute_d_max(550.0, 18.0));
    const DelayModel model;
    const auto tx = GeodeticCoord::from_degrees(-31.9523, 115.8613);
    const auto rx = GeodeticCoord::from_degrees(48.3904, -4.4861);

    const auto alts = alternate_paths(c, g, tx, rx, model, 6);
    REQUIRE(alts.paths.size() >= 2);

    std::set<std::pair<int, int>> used;
    double prev = 0.0;
    for (std::size_t r = 0; r < alts.paths.size(); ++r) {
        const auto& p = alts.paths[r];
        CHECK(p.total_delay_s >= prev);
        prev = p.total_delay_s;
        for (std::size_t m = 0; m + 1 < p.sat_ids.size(); ++m) {
            const auto key = std::make_pair(std::min(p.sat_ids[m], p.sat_ids[m + 1]),
                                            std::max(p.sat_ids[m], p.sat_ids[m + 1]));
            CHECK(used.insert(key).second);  // never reused by a later rank
        }
    }
}

TEST_CASE("alternate paths truncate on a bent pipe and on disconnection") {
    const auto c = single_satellite_above(10.0, 20.0, 550.0);
    const auto g = build_cutoff(c, 1000.0);
    const DelayModel model;
    const auto ground = GeodeticCoord::from_degrees(10.0, 20.0);

    const auto alts = alternate_paths(c, g, ground, ground, model, 5);
    REQUIRE(alts.paths.size() == 1);
    CHECK(alts.truncated);
    CHECK(alts.paths[0].hop_count == 0);

    // Two satellites, one link: the second iteration disconnects.
    auto c2 = generate_random(2, 550.0, 17);
    const auto g2 = build_nearest_hop(c2, 1);
    REQUIRE(g2.edges.size() == 1);
    const GeodeticCoord under0 = ecef_to_geodetic(
        (earth_radius_km / norm(c2.satellites[0].position)) * c2.satellites[0].position);
    const GeodeticCoord under1 = ecef_to_geodetic(
        (earth_radius_km / norm(c2.satellites[1].position)) * c2.satellites[1].position);
    const auto alts2 = alternate_paths(c2, g2, under0, under1, model, 3);
    REQUIRE(alts2.paths.size() == 1);
    CHECK(alts2.truncated);
    CHECK(alts2.paths[0].hop_count == 1);
}

TEST_CASE("routes replayed from saved files are identical") {
    const std::string cpath = "routing_replay_constellation.json";
    const std::string gpath = "routing_replay_graph.csv";
    const auto c = generate_random(150, 550.0, 33);
    const auto g = build_nearest_hop(c, 16);
    save_constellation(c, cpath);
    save_graph(g, gpath);

    const auto c2 = load_constellation(cpath);
    const auto g2 = load_graph(gpath);
    const DelayModel model;
    oracles::XorShift rng(55);
    for (int t = 0; t < 10; ++t) {
        const GeodeticCoord tx(std::asin(rng.uniform(-1.0, 1.0)), rng.uniform(-pi, pi));
        const GeodeticCoord rx(std::asin(rng.uniform(-1.0, 1.0)), rng.uniform(-pi, pi));
        const auto a = route(c, g, tx, rx, model);
        const auto b = route(c2, g2, tx, rx, model);
        REQUIRE(a.has_value() == b.has_value());
        if (a) {
            CHECK(a->sat_ids == b->sat_ids);
            CHECK(a->total_delay_s == b->total_delay_s);
            CHECK(a->total_energy == b->total_energy);
        }
    }
    std::remove(cpath.c_str());
    std::remove(gpath.c_str());
}

TEST_CASE("cutoff routes never propagate slower than in-range relay routes") {
    // When every link of the relay-rule route also satisfies the cutoff
    // length, the cutoff graph contains that whole path, so its shortest path
    // cannot be longer.
    const DelayModel model;
    const double d_max = compute_d_max(550.0, 18.0);
    int compared = 0;
    for (std::uint64_t seed = 60; seed < 65; ++seed) {
        const auto c = generate_random(120, 550.0, seed);
        const auto cut = build_cutoff(c, d_max);
        const auto nh = build_nearest_hop(c, 16);
        oracles::XorShift rng(seed);
        for (int t = 0; t < 10; ++t) {
            const GeodeticCoord tx(std::asin(rng.uniform(-1.0, 1.0)), rng.uniform(-pi, pi));
            const GeodeticCoord rx(std::asin(rng.uniform(-1.0, 1.0)), rng.uniform(-pi, pi));
            const auto pc = route(c, cut, tx, rx, model);
            const auto pn = route(c, nh, tx, rx, model);
            if (!pc || !pn) continue;
            const bool all_in_range =
                std::all_of(pn->hop_distances_km.begin(), pn->hop_distances_km.end(),
                            [&](double w) { return w <= d_max; });
            if (!all_in_range) continue;
            ++compared;
            CHECK(pc->propagation_delay_s <= pn->propagation_delay_s);
        }
    }
    CHECK(compared > 10);
}

TEST_CASE("relay-rule routes spend less transmit energy on average") {
    const DelayModel model;
    const auto c = generate_random(200, 550.0, 71);
    const auto cut = build_cutoff(c, compute_d_max(550.0, 18.0));
    const auto nh = build_nearest_hop(c, 16);
    oracles::XorShift rng(72);
    double cut_sum = 0.0, nh_sum = 0.0;
    int count = 0;
    for (int t = 0; t < 40; ++t) {
        const GeodeticCoord tx(std::asin(rng.uniform(-1.0, 1.0)), rng.uniform(-pi, pi));
        const GeodeticCoord rx(std::asin(rng.uniform(-1.0, 1.0)), rng.uniform(-pi, pi));
        const auto pc = route(c, cut, tx, rx, model);
        const auto pn = route(c, nh, tx, rx, model);
        if (!pc || !pn || pc->hop_count == 0) continue;
        cut_sum += pc->total_energy;
        nh_sum += pn->total_energy;
        ++count;
    }
    REQUIRE(count > 20);
    MESSAGE("mean energy cutoff=", cut_sum / count, " relay=", nh_sum / count);
    CHECK(nh_sum < cut_sum);
}

TEST_CASE("route report serializes the full breakdown") {
    const auto c = generate_walker_delta(60, 6, 550.0, deg2rad(53.0), 1);
    const auto g = build_cutoff(c, compute_d_max(550.0, 18.0));
    const DelayModel model;
    const auto p = route(c, g, GeodeticCoord::from_degrees(40.7128, -74.0060),
                         GeodeticCoord::from_degrees(51.5074, -0.1278), model);
    REQUIRE(p.has_value());
    const auto j = nlohmann::json::parse(route_to_json(*p));
    CHECK(j["hop_count"].get<int>() == p->hop_count);
    CHECK(j["sat_ids"].get<std::vector<int>>() == p->sat_ids);
    CHECK(j["total_delay_s"].get<double>() == p->total_delay_s);
    CHECK(j["d_up_km"].get<double>() == p->d_up_km);
    CHECK(j["tx"]["lat_rad"].get<double>() == p->tx.lat_rad);
}
