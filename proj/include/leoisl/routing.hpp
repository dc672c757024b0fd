#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leoisl/constellation.hpp"
#include "leoisl/geometry.hpp"
#include "leoisl/topology.hpp"

// Shortest-path routing over an ISL graph, with the delay, path-loss and
// energy models and the successive-removal alternate-path procedure.

namespace leoisl {

struct DelayModel {
    double c_km_s = speed_of_light_km_s;
    double fiber_refractive_index = 1.468;
    double tau_process_s = 5.6e-6;  // per-satellite processing delay
    double clk_hz = 533e6;
    double instructions_per_hop = 3000.0;
    double energy_alpha = 1.0;     // transmit energy per km^2 of ISL length
    double energy_per_hop = 0.0;   // processing energy per ISL hop

    // Same model with tau computed from the instruction budget and clock
    // instead of the rounded default.
    DelayModel with_derived_processing() const {
        DelayModel m = *this;
        m.tau_process_s = m.instructions_per_hop / m.clk_hz;
        return m;
    }
    DelayModel without_processing() const {
        DelayModel m = *this;
        m.tau_process_s = 0.0;
        return m;
    }
};

struct RoutePath {
    GeodeticCoord tx;
    GeodeticCoord rx;
    std::vector<int> sat_ids;              // first = tx attach, last = rx attach
    std::vector<double> hop_distances_km;  // one per ISL segment
    double d_up_km = 0.0;
    double d_down_km = 0.0;
    int hop_count = 0;   // K = ISL segment count
    int sat_count = 0;   // satellites traversed = hop_count + 1
    double propagation_delay_s = 0.0;
    double processing_delay_s = 0.0;
    double total_delay_s = 0.0;
    double total_energy = 0.0;
    double tx_elevation_rad = 0.0;  // elevation of the attach satellites
    double rx_elevation_rad = 0.0;
    bool tx_below_min_elevation = false;
    bool rx_below_min_elevation = false;
};

// Minimum-total-weight path from src to dst, or nullopt when dst is
// unreachable. Among equal-weight optima the lexicographically smallest node
// sequence is returned, so results are reproducible across platforms.
std::optional<std::vector<int>> dijkstra(const IslGraph& g, int src, int dst);

// Weight (sum of edge weights, accumulated source-to-destination) of a path
// returned by dijkstra.
double path_weight(const IslGraph& g, const std::vector<int>& path);

// Delay over d_gc_km of optical fiber: d * n / c.
double fiber_delay(double d_gc_km, const DelayModel& model);

// (sum of ISL hops + uplink + downlink) / c + satellites * tau.
double end_to_end_delay(const RoutePath& p, const DelayModel& model);

// Free-space path loss (4*pi*d/lambda)^2, linear (not dB); d in km, lambda in
// meters.
double fspl(double d_km, double lambda_m);

// alpha * sum of squared ISL hop distances + e_processing * hop count. Uplink
// and downlink are ground legs and excluded.
double path_energy(const RoutePath& p, double alpha, double e_processing);

inline constexpr double default_theta_min_rad = 0.436332312998582394;  // 25 degrees

// Attaches tx and rx to their nearest satellites, finds the shortest ISL
// path, and fills in the delay/energy breakdown. Attachments below
// theta_min_rad elevation are flagged, not rejected. Returns nullopt when the
// attach satellites are disconnected.
std::optional<RoutePath> route(const Constellation& c, const IslGraph& g, const GeodeticCoord& tx,
                               const GeodeticCoord& rx, const DelayModel& model,
                               double theta_min_rad = default_theta_min_rad);

struct AlternatePathSet {
    std::vector<RoutePath> paths;  // best first; total delays non-decreasing
    bool truncated = false;        // fewer than k paths exist
};

// Successive-removal alternates: record the best path, delete its ISL edges
// from a working copy, repeat until k paths are found or the endpoints
// disconnect. The collected paths are returned sorted by total delay.
AlternatePathSet alternate_paths(const Constellation& c, const IslGraph& g,
                                 const GeodeticCoord& tx, const GeodeticCoord& rx,
                                 const DelayModel& model, int k = 10,
                                 double theta_min_rad = default_theta_min_rad);

// Route report as a JSON document (ids, per-hop distances, delay and energy
// breakdown).
std::string route_to_json(const RoutePath& p);

}  // namespace leoisl
