#include "leoisl/routing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>

#include "nlohmann/json.hpp"

namespace leoisl {

namespace {

std::vector<int> walk_predecessors(const std::vector<int>& pred, int node) {
    std::vector<int> path;
    for (int v = node; v != -1; v = pred[static_cast<std::size_t>(v)]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace

std::optional<std::vector<int>> dijkstra(const IslGraph& g, int src, int dst) {
    if (src < 0 || src >= g.node_count || dst < 0 || dst >= g.node_count) {
        throw std::invalid_argument("dijkstra: node id out of range");
    }
    if (src == dst) return std::vector<int>{src};
    const auto& adj = g.adjacency();
    const std::size_t n = static_cast<std::size_t>(g.node_count);
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, inf);
    std::vector<int> pred(n, -1);
    std::vector<char> settled(n, 0);

    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    dist[static_cast<std::size_t>(src)] = 0.0;
    heap.emplace(0.0, src);

    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        const std::size_t uu = static_cast<std::size_t>(u);
        if (settled[uu]) continue;
        settled[uu] = 1;
        if (u == dst) break;
        for (const auto& [v, w] : adj[uu]) {
            const std::size_t vv = static_cast<std::size_t>(v);
            if (settled[vv]) continue;
            const double nd = dist[uu] + w;
            if (nd < dist[vv]) {
                dist[vv] = nd;
                pred[vv] = u;
                heap.emplace(nd, v);
            } else if (nd == dist[vv] && pred[vv] != u) {
                // Equal-weight tie: keep the lexicographically smaller node
                // sequence. Tie sources always have strictly smaller dist
                // (weights are positive), so both chains are final here.
                std::vector<int> cand = walk_predecessors(pred, u);
                cand.push_back(v);
                std::vector<int> cur = walk_predecessors(pred, pred[vv]);
                cur.push_back(v);
                if (std::lexicographical_compare(cand.begin(), cand.end(), cur.begin(),
                                                 cur.end())) {
                    pred[vv] = u;
                }
            }
        }
    }

    if (dist[static_cast<std::size_t>(dst)] == inf) return std::nullopt;
    return walk_predecessors(pred, dst);
}

namespace {

double edge_weight(const IslGraph& g, int a, int b) {
    for (const auto& [v, w] : g.adjacency()[static_cast<std::size_t>(a)]) {
        if (v == b) return w;
    }
    throw std::invalid_argument("path uses an edge absent from the graph");
}

}  // namespace

double path_weight(const IslGraph& g, const std::vector<int>& path) {
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        sum += edge_weight(g, path[k], path[k + 1]);
    }
    return sum;
}

double fiber_delay(double d_gc_km, const DelayModel& model) {
    if (d_gc_km < 0.0) throw std::invalid_argument("fiber_delay: negative distance");
    return d_gc_km * model.fiber_refractive_index / model.c_km_s;
}

double end_to_end_delay(const RoutePath& p, const DelayModel& model) {
    double d = 0.0;
    for (const double h : p.hop_distances_km) d += h;
    d += p.d_up_km;
    d += p.d_down_km;
    return d / model.c_km_s + static_cast<double>(p.sat_count) * model.tau_process_s;
}

double fspl(double d_km, double lambda_m) {
    if (d_km <= 0.0 || lambda_m <= 0.0) throw std::invalid_argument("fspl: need d > 0, lambda > 0");
    const double x = 4.0 * pi * (d_km * 1000.0) / lambda_m;
    return x * x;
}

double path_energy(const RoutePath& p, double alpha, double e_processing) {
    double sum = 0.0;
    for (const double h : p.hop_distances_km) sum += h * h;
    return alpha * sum + e_processing * static_cast<double>(p.hop_count);
}

namespace {

RoutePath assemble_path(const Constellation& c, const IslGraph& g, const GeodeticCoord& tx,
                        const GeodeticCoord& rx, std::vector<int> sat_ids, const DelayModel& model,
                        double theta_min_rad) {
    RoutePath p;
    p.tx = tx;
    p.rx = rx;
    p.sat_ids = std::move(sat_ids);
    p.hop_distances_km.reserve(p.sat_ids.size() - 1);
    for (std::size_t k = 0; k + 1 < p.sat_ids.size(); ++k) {
        p.hop_distances_km.push_back(edge_weight(g, p.sat_ids[k], p.sat_ids[k + 1]));
    }
    const Vec3 tx_ecef = geodetic_to_ecef(tx);
    const Vec3 rx_ecef = geodetic_to_ecef(rx);
    const Vec3& first = c.satellites[static_cast<std::size_t>(p.sat_ids.front())].position;
    const Vec3& last = c.satellites[static_cast<std::size_t>(p.sat_ids.back())].position;
    p.d_up_km = norm(first - tx_ecef);
    p.d_down_km = norm(last - rx_ecef);
    p.hop_count = static_cast<int>(p.hop_distances_km.size());
    p.sat_count = static_cast<int>(p.sat_ids.size());
    double d = 0.0;
    for (const double h : p.hop_distances_km) d += h;
    d += p.d_up_km;
    d += p.d_down_km;
    p.propagation_delay_s = d / model.c_km_s;
    p.processing_delay_s = static_cast<double>(p.sat_count) * model.tau_process_s;
    p.total_delay_s = p.propagation_delay_s + p.processing_delay_s;
    p.total_energy = path_energy(p, model.energy_alpha, model.energy_per_hop);
    p.tx_elevation_rad = elevation_angle(tx, first);
    p.rx_elevation_rad = elevation_angle(rx, last);
    p.tx_below_min_elevation = p.tx_elevation_rad < theta_min_rad;
    p.rx_below_min_elevation = p.rx_elevation_rad < theta_min_rad;
    return p;
}

}  // namespace

std::optional<RoutePath> route(const Constellation& c, const IslGraph& g, const GeodeticCoord& tx,
                               const GeodeticCoord& rx, const DelayModel& model,
                               double theta_min_rad) {
    if (g.node_count != static_cast<int>(c.satellites.size())) {
        throw std::invalid_argument("route: graph was not built over this constellation");
    }
    const int a = nearest_satellite(c, tx);
    const int b = nearest_satellite(c, rx);
    auto ids = dijkstra(g, a, b);
    if (!ids) return std::nullopt;
    return assemble_path(c, g, tx, rx, std::move(*ids), model, theta_min_rad);
}

AlternatePathSet alternate_paths(const Constellation& c, const IslGraph& g,
                                 const GeodeticCoord& tx, const GeodeticCoord& rx,
                                 const DelayModel& model, int k, double theta_min_rad) {
    if (k < 1) throw std::invalid_argument("alternate_paths: need k >= 1");
    if (g.node_count != static_cast<int>(c.satellites.size())) {
        throw std::invalid_argument("alternate_paths: graph was not built over this constellation");
    }
    const int a = nearest_satellite(c, tx);
    const int b = nearest_satellite(c, rx);
    AlternatePathSet result;
    IslGraph work = g;
    while (static_cast<int>(result.paths.size()) < k) {
        auto ids = dijkstra(work, a, b);
        if (!ids) {
            result.truncated = true;
            break;
        }
        RoutePath p = assemble_path(c, work, tx, rx, std::move(*ids), model, theta_min_rad);
        result.paths.push_back(p);
        if (p.hop_count == 0) {
            // Bent pipe: no ISL edges to remove, so no further distinct path
            // can be formed by link removal.
            result.truncated = static_cast<int>(result.paths.size()) < k;
            break;
        }
        // Delete this path's ISL edges and re-route over what remains.
        std::vector<std::pair<int, int>> used;
        used.reserve(p.sat_ids.size());
        for (std::size_t m = 0; m + 1 < p.sat_ids.size(); ++m) {
            const int i = std::min(p.sat_ids[m], p.sat_ids[m + 1]);
            const int j = std::max(p.sat_ids[m], p.sat_ids[m + 1]);
            used.emplace_back(i, j);
        }
        std::erase_if(work.edges, [&used](const IslEdge& e) {
            return std::find(used.begin(), used.end(), std::make_pair(e.i, e.j)) != used.end();
        });
        work.finalize();
    }
    // Successive removal yields non-decreasing path weight, but the total
    // delay also counts satellites, so a later path with equal weight and
    // fewer hops could undercut an earlier one. Rank by what we report.
    std::stable_sort(result.paths.begin(), result.paths.end(),
                     [](const RoutePath& a, const RoutePath& b) {
                         return a.total_delay_s < b.total_delay_s;
                     });
    return result;
}

std::string route_to_json(const RoutePath& p) {
    nlohmann::json j;
    j["tx"] = {{"lat_rad", p.tx.lat_rad}, {"lon_rad", p.tx.lon_rad}};
    j["rx"] = {{"lat_rad", p.rx.lat_rad}, {"lon_rad", p.rx.lon_rad}};
    j["sat_ids"] = p.sat_ids;
    j["hop_distances_km"] = p.hop_distances_km;
    j["d_up_km"] = p.d_up_km;
    j["d_down_km"] = p.d_down_km;
    j["hop_count"] = p.hop_count;
    j["sat_count"] = p.sat_count;
    j["propagation_delay_s"] = p.propagation_delay_s;
    j["processing_delay_s"] = p.processing_delay_s;
    j["total_delay_s"] = p.total_delay_s;
    j["total_energy"] = p.total_energy;
    j["tx_elevation_rad"] = p.tx_elevation_rad;
    j["rx_elevation_rad"] = p.rx_elevation_rad;
    j["tx_below_min_elevation"] = p.tx_below_min_elevation;
    j["rx_below_min_elevation"] = p.rx_below_min_elevation;
    return j.dump(2) + "\n";
}

}  // namespace leoisl
