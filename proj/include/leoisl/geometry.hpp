#pragma once

#include <cmath>
#include <vector>

// Spherical-Earth coordinate math: geodetic/ECEF conversion, great-circle
// distances, elevation angles, and the satellite footprint model. All angles
// are radians and all lengths kilometers unless a name says otherwise;
// degrees appear only at the CLI boundary.

namespace leoisl {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double earth_radius_km = 6371.0;       // mean radius, spherical model
inline constexpr double speed_of_light_km_s = 299792.458;
inline constexpr double mu_earth_km3_s2 = 398600.4418;  // standard gravitational parameter

inline double deg2rad(double d) { return d * (pi / 180.0); }
inline double rad2deg(double r) { return r * (180.0 / pi); }

// Wraps a longitude into [-pi, pi); +pi maps to -pi.
double wrap_longitude(double lon_rad);

// Wraps any angle into [0, 2*pi).
double wrap_two_pi(double angle_rad);

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
    friend bool operator==(const Vec3& a, const Vec3& b) = default;
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }

// Latitude/longitude/altitude on the spherical Earth. The constructor
// normalizes the longitude and rejects out-of-range latitude or negative
// altitude.
struct GeodeticCoord {
    double lat_rad = 0.0;  // [-pi/2, pi/2]
    double lon_rad = 0.0;  // [-pi, pi)
    double alt_km = 0.0;   // >= 0

    GeodeticCoord() = default;
    GeodeticCoord(double lat, double lon, double alt = 0.0);
    static GeodeticCoord from_degrees(double lat_deg, double lon_deg, double alt_km = 0.0);
};

// Earth-centered Cartesian position; |result| = earth_radius_km + alt_km.
Vec3 geodetic_to_ecef(const GeodeticCoord& g);

// Inverse of geodetic_to_ecef. Sub-millimeter negative altitudes from
// roundoff are clamped to zero.
GeodeticCoord ecef_to_geodetic(const Vec3& v);

// Shortest surface distance between two points, haversine form. Altitudes
// are ignored; the result lies in [0, pi * earth_radius_km].
double great_circle_distance(const GeodeticCoord& g1, const GeodeticCoord& g2);

// Angle between the local horizon plane at `ground` and the ground->satellite
// direction, in [-pi/2, pi/2]. Throws if the satellite is not above the
// surface or coincides with the ground point.
double elevation_angle(const GeodeticCoord& ground, const Vec3& sat);

// Geometry of the coverage cap of a satellite at altitude h_km seen under a
// minimum elevation angle:
//   a   = Re * (sqrt((R/Re)^2 - cos^2(theta)) - sin(theta))   max slant range
//   psi = 2 * asin((Re/R) * cos(theta))                       full beamwidth
//   phi = pi/2 - theta - psi/2                                Earth-centered zenith angle
//   area = 2 * pi * Re^2 * (1 - cos(phi))                     spherical-cap area
// with R = Re + h. phi always stays below the geometric horizon angle
// acos(Re/R).
struct FootprintSpec {
    double h_km = 0.0;
    double theta_min_rad = 0.0;
    double a_km = 0.0;
    double psi_rad = 0.0;
    double phi_rad = 0.0;
    double area_km2 = 0.0;
};

FootprintSpec footprint_spec(double h_km, double theta_min_rad);

// n_points surface coordinates at Earth-central angle phi_rad around the
// sub-satellite point, generated with the destination ("heading") formulae at
// evenly spaced bearings. The ring is open; a consumer that needs a closed
// polygon repeats the first point.
std::vector<GeodeticCoord> footprint_boundary(const GeodeticCoord& subsat, double phi_rad,
                                              int n_points = 360);

}  // namespace leoisl
