#include "leoisl/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace leoisl {

double wrap_longitude(double lon_rad) {
    double x = std::fmod(lon_rad + pi, 2.0 * pi);
    if (x < 0.0) x += 2.0 * pi;
    return x - pi;
}

double wrap_two_pi(double angle_rad) {
    double x = std::fmod(angle_rad, 2.0 * pi);
    if (x < 0.0) x += 2.0 * pi;
    return x;
}

GeodeticCoord::GeodeticCoord(double lat, double lon, double alt) {
    if (!(std::abs(lat) <= pi / 2.0 + 1e-12))
        throw std::invalid_argument("latitude outside [-pi/2, pi/2]");
    if (!(alt >= -1e-12)) throw std::invalid_argument("negative altitude");
    lat_rad = std::clamp(lat, -pi / 2.0, pi / 2.0);
    lon_rad = wrap_longitude(lon);
    alt_km = std::max(alt, 0.0);
}

GeodeticCoord GeodeticCoord::from_degrees(double lat_deg, double lon_deg, double alt_km) {
    return GeodeticCoord(deg2rad(lat_deg), deg2rad(lon_deg), alt_km);
}

Vec3 geodetic_to_ecef(const GeodeticCoord& g) {
    const double r = earth_radius_km + g.alt_km;
    const double cl = std::cos(g.lat_rad);
    return {r * cl * std::cos(g.lon_rad), r * cl * std::sin(g.lon_rad), r * std::sin(g.lat_rad)};
}

GeodeticCoord ecef_to_geodetic(const Vec3& v) {
    const double r = norm(v);
    if (r <= 0.0) throw std::invalid_argument("zero-length position vector");
    const double lat = std::asin(std::clamp(v.z / r, -1.0, 1.0));
    const double lon = std::atan2(v.y, v.x);
    double alt = r - earth_radius_km;
    if (alt < 0.0 && alt > -1e-9) alt = 0.0;
    return GeodeticCoord(lat, lon, alt);
}

double great_circle_distance(const GeodeticCoord& g1, const GeodeticCoord& g2) {
    const double sdlat = std::sin((g2.lat_rad - g1.lat_rad) / 2.0);
    const double sdlon = std::sin((g2.lon_rad - g1.lon_rad) / 2.0);
    const double h = sdlat * sdlat + std::cos(g1.lat_rad) * std::cos(g2.lat_rad) * sdlon * sdlon;
    return 2.0 * earth_radius_km * std::asin(std::min(1.0, std::sqrt(h)));
}

double elevation_angle(const GeodeticCoord& ground, const Vec3& sat) {
    if (norm(sat) < earth_radius_km) throw std::invalid_argument("satellite below the surface");
    const Vec3 u = geodetic_to_ecef(ground);
    const Vec3 s = sat - u;
    const double slant = norm(s);
    if (slant == 0.0) throw std::invalid_argument("satellite coincides with ground point");
    return std::asin(std::clamp(dot(u, s) / (norm(u) * slant), -1.0, 1.0));
}

FootprintSpec footprint_spec(double h_km, double theta_min_rad) {
    if (!(h_km > 0.0)) throw std::invalid_argument("altitude must be positive");
    if (!(theta_min_rad >= 0.0 && theta_min_rad < pi / 2.0))
        throw std::invalid_argument("theta_min must lie in [0, pi/2)");

    const double r_ratio = (earth_radius_km + h_km) / earth_radius_km;
    const double ct = std::cos(theta_min_rad);
    const double st = std::sin(theta_min_rad);

    FootprintSpec fp;
    fp.h_km = h_km;
    fp.theta_min_rad = theta_min_rad;
    fp.a_km = earth_radius_km * (std::sqrt(r_ratio * r_ratio - ct * ct) - st);
    const double eta = std::asin(ct / r_ratio);  // half beamwidth, law of sines
    fp.psi_rad = 2.0 * eta;
    fp.phi_rad = pi / 2.0 - theta_min_rad - eta;
    fp.area_km2 = 2.0 * pi * earth_radius_km * earth_radius_km * (1.0 - std::cos(fp.phi_rad));
    return fp;
}

std::vector<GeodeticCoord> footprint_boundary(const GeodeticCoord& subsat, double phi_rad,
                                              int n_points) {
    if (!(phi_rad > 0.0 && phi_rad < pi / 2.0))
        throw std::invalid_argument("phi must lie in (0, pi/2)");
    if (n_points < 3) throw std::invalid_argument("need at least 3 boundary points");

    const double sin_lat = std::sin(subsat.lat_rad);
    const double cos_lat = std::cos(subsat.lat_rad);
    const double sin_phi = std::sin(phi_rad);
    const double cos_phi = std::cos(phi_rad);

    std::vector<GeodeticCoord> ring;
    ring.reserve(static_cast<std::size_t>(n_points));
    for (int k = 0; k < n_points; ++k) {
        const double bearing = 2.0 * pi * k / n_points;
        const double sin_latf = sin_lat * cos_phi + cos_lat * sin_phi * std::cos(bearing);
        const double latf = std::asin(std::clamp(sin_latf, -1.0, 1.0));
        const double lonf = subsat.lon_rad + std::atan2(std::sin(bearing) * sin_phi * cos_lat,
                                                        cos_phi - sin_lat * sin_latf);
        ring.emplace_back(latf, lonf, 0.0);
    }
    return ring;
}

}  // namespace leoisl
