#pragma once

#include <string>
#include <vector>

#include "leoisl/constellation.hpp"
#include "leoisl/geometry.hpp"
#include "leoisl/routing.hpp"

// GeoJSON exports for map rendering: routes as LineStrings (ground ->
// satellites -> ground, with altitude as the third coordinate) and footprints
// as Polygons. Coordinates follow the GeoJSON convention: [lon_deg, lat_deg,
// alt_m].

namespace leoisl {

std::string route_to_geojson(const RoutePath& p, const Constellation& c);

std::string footprint_to_geojson(const GeodeticCoord& subsat,
                                 const std::vector<GeodeticCoord>& boundary);

}  // namespace leoisl
