#include "leoisl/geojson.hpp"

#include "nlohmann/json.hpp"

namespace leoisl {

namespace {

nlohmann::json coord(const GeodeticCoord& g) {
    return {rad2deg(g.lon_rad), rad2deg(g.lat_rad), g.alt_km * 1000.0};
}

nlohmann::json coord(const Vec3& v) { return coord(ecef_to_geodetic(v)); }

}  // namespace

std::string route_to_geojson(const RoutePath& p, const Constellation& c) {
    nlohmann::json line = nlohmann::json::array();
    line.push_back(coord(p.tx));
    for (const int id : p.sat_ids) {
        line.push_back(coord(c.satellites[static_cast<std::size_t>(id)].position));
    }
    line.push_back(coord(p.rx));

    nlohmann::json feature = {
        {"type", "Feature"},
        {"properties",
         {{"kind", "route"},
          {"hop_count", p.hop_count},
          {"total_delay_s", p.total_delay_s},
          {"total_energy", p.total_energy}}},
        {"geometry", {{"type", "LineString"}, {"coordinates", line}}}};
    nlohmann::json doc = {{"type", "FeatureCollection"},
                          {"features", nlohmann::json::array({feature})}};
    return doc.dump(2) + "\n";
}

std::string footprint_to_geojson(const GeodeticCoord& subsat,
                                 const std::vector<GeodeticCoord>& boundary) {
    nlohmann::json ring = nlohmann::json::array();
    for (const GeodeticCoord& g : boundary) ring.push_back(coord(g));
    if (!boundary.empty()) ring.push_back(coord(boundary.front()));  // close the ring

    nlohmann::json polygon = {
        {"type", "Feature"},
        {"properties", {{"kind", "footprint"}}},
        {"geometry", {{"type", "Polygon"}, {"coordinates", nlohmann::json::array({ring})}}}};
    nlohmann::json center = {{"type", "Feature"},
                             {"properties", {{"kind", "sub-satellite-point"}}},
                             {"geometry", {{"type", "Point"}, {"coordinates", coord(subsat)}}}};
    nlohmann::json doc = {{"type", "FeatureCollection"},
                          {"features", nlohmann::json::array({polygon, center})}};
    return doc.dump(2) + "\n";
}

}  // namespace leoisl
