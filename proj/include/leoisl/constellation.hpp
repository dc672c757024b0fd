#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leoisl/geometry.hpp"

// Constellation generators (random-on-sphere, Walker-Star, Walker-Delta),
// deterministic circular-orbit propagation, and nearest-satellite lookup.

namespace leoisl {

enum class ConstellationKind { Random, WalkerStar, WalkerDelta };

const char* constellation_kind_name(ConstellationKind k);
ConstellationKind constellation_kind_from_name(const std::string& name);

// Circular orbit, so the anomaly is the argument of latitude measured from
// the ascending node.
struct Satellite {
    int id = 0;
    int plane_id = -1;  // -1 for the random constellation
    double raan_rad = 0.0;
    double inclination_rad = 0.0;
    double true_anomaly_rad = 0.0;
    double altitude_km = 0.0;
    Vec3 position;  // cached at the current epoch
};

// Position on the circular orbit (raan, inclination, anomaly) at the given
// orbital radius (km from Earth's center).
Vec3 position_from_elements(double raan_rad, double inclination_rad, double anomaly_rad,
                            double radius_km);

// Structure-of-arrays copy of satellite positions for the distance kernels.
struct PositionsSoa {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> z;

    std::size_t size() const { return x.size(); }
};

struct Constellation {
    std::vector<Satellite> satellites;
    ConstellationKind kind = ConstellationKind::Random;
    int n = 0;              // total satellite count
    int p = 0;              // plane count (0 for random)
    double altitude_km = 0.0;
    std::uint64_t seed = 0;         // random kind only
    double inclination_rad = 0.0;   // walker kinds
    int phasing_f = 0;              // walker-delta only

    const PositionsSoa& positions() const { return soa_; }
    void rebuild_positions();  // refreshes cached positions from elements

  private:
    PositionsSoa soa_;
};

// n satellites i.i.d. uniform on the sphere of radius Re + h (longitude
// uniform, sine of latitude uniform), each on a random circular orbit through
// its position (tangent direction uniform). Identical (n, h, seed) reproduces
// identical output bit-for-bit.
Constellation generate_random(int n, double h_km, std::uint64_t seed);

// Walker-Star: p planes at RAAN {0, pi/p, ..., (p-1)pi/p}, evenly spaced
// satellites per plane. Requires p | n unless allow_uneven, which distributes
// the remainder one satellite at a time to the lowest-index planes.
Constellation generate_walker_star(int n, int p, double h_km, double inclination_rad,
                                   bool allow_uneven = false);

// Walker-Delta: p planes at RAAN {0, 2pi/p, ...}; satellite j of plane k sits
// at anomaly 2pi*j/m + 2pi*k*phasing_f/n (m = per-plane count). Requires
// 0 <= phasing_f < p and p | n unless allow_uneven.
Constellation generate_walker_delta(int n, int p, double h_km, double inclination_rad,
                                    int phasing_f = 0, bool allow_uneven = false);

// Advances every anomaly by omega * t with omega = sqrt(mu / r^3) (circular
// two-body motion, no J2) and recomputes positions. propagate(c, 0) == c.
Constellation propagate(const Constellation& c, double t_seconds);

double orbital_angular_rate(double altitude_km);  // omega, rad/s
double orbital_period(double altitude_km);        // 2*pi / omega, s

// Id of the satellite closest (Euclidean) to the ground point; ties go to the
// lowest id. Throws on an empty constellation.
int nearest_satellite(const Constellation& c, const GeodeticCoord& g);

// JSON round-trip. Positions are not stored; the loader recomputes them from
// the orbital elements and rejects files whose metadata and satellite list
// disagree.
std::string constellation_to_json(const Constellation& c);
Constellation constellation_from_json(const std::string& text);
void save_constellation(const Constellation& c, const std::string& path);
Constellation load_constellation(const std::string& path);

}  // namespace leoisl
