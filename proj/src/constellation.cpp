#include "leoisl/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "leoisl/kernels.hpp"
#include "leoisl/rng.hpp"
#include "nlohmann/json.hpp"

namespace leoisl {

const char* constellation_kind_name(ConstellationKind k) {
    switch (k) {
        case ConstellationKind::Random:
            return "random";
        case ConstellationKind::WalkerStar:
            return "walker-star";
        case ConstellationKind::WalkerDelta:
            return "walker-delta";
    }
    return "unknown";
}

ConstellationKind constellation_kind_from_name(const std::string& name) {
    if (name == "random") return ConstellationKind::Random;
    if (name == "walker-star") return ConstellationKind::WalkerStar;
    if (name == "walker-delta") return ConstellationKind::WalkerDelta;
    throw std::invalid_argument("unknown constellation kind: " + name);
}

Vec3 position_from_elements(double raan_rad, double inclination_rad, double anomaly_rad,
                            double radius_km) {
    const double co = std::cos(raan_rad);
    const double so = std::sin(raan_rad);
    const double ci = std::cos(inclination_rad);
    const double si = std::sin(inclination_rad);
    const double cu = std::cos(anomaly_rad);
    const double su = std::sin(anomaly_rad);
    return {radius_km * (co * cu - so * su * ci), radius_km * (so * cu + co * su * ci),
            radius_km * (su * si)};
}

void Constellation::rebuild_positions() {
    for (auto& s : satellites) {
        s.position = position_from_elements(s.raan_rad, s.inclination_rad, s.true_anomaly_rad,
                                            earth_radius_km + s.altitude_km);
    }
    soa_.x.resize(satellites.size());
    soa_.y.resize(satellites.size());
    soa_.z.resize(satellites.size());
    for (std::size_t k = 0; k < satellites.size(); ++k) {
        soa_.x[k] = satellites[k].position.x;
        soa_.y[k] = satellites[k].position.y;
        soa_.z[k] = satellites[k].position.z;
    }
}

namespace {

// Orbital elements of the circular orbit through unit position rhat with unit
// velocity direction that (both unit, orthogonal). The anomaly comes back as
// the argument of latitude.
void elements_from_direction(const Vec3& rhat, const Vec3& that, double& raan, double& incl,
                             double& anomaly) {
    Vec3 h = cross(rhat, that);  // orbit normal, already unit
    const double hn = norm(h);
    h = (1.0 / hn) * h;
    incl = std::acos(std::clamp(h.z, -1.0, 1.0));
    // Node line: z_hat x h. Degenerates for equatorial orbits, where the RAAN
    // is conventionally zero and the node direction is +x.
    Vec3 node{-h.y, h.x, 0.0};
    const double nn = norm(node);
    if (nn < 1e-12) {
        node = {1.0, 0.0, 0.0};
        raan = 0.0;
    } else {
        node = (1.0 / nn) * node;
        raan = wrap_two_pi(std::atan2(node.y, node.x));
    }
    anomaly = wrap_two_pi(std::atan2(dot(cross(node, rhat), h), dot(node, rhat)));
}

void finalize(Constellation& c) {
    c.n = static_cast<int>(c.satellites.size());
    c.rebuild_positions();
}

std::vector<int> plane_sizes(int n, int p, bool allow_uneven, const char* kind) {
    if (p <= 0) throw std::invalid_argument(std::string(kind) + ": plane count must be positive");
    if (n <= 0) throw std::invalid_argument(std::string(kind) + ": satellite count must be positive");
    if (n % p != 0 && !allow_uneven) {
        std::ostringstream msg;
        msg << kind << ": plane count " << p << " does not divide satellite count " << n;
        throw std::invalid_argument(msg.str());
    }
    std::vector<int> sizes(static_cast<std::size_t>(p), n / p);
    for (int k = 0; k < n % p; ++k) sizes[static_cast<std::size_t>(k)] += 1;
    return sizes;
}

}  // namespace

Constellation generate_random(int n, double h_km, std::uint64_t seed) {
    if (n <= 0) throw std::invalid_argument("generate_random: satellite count must be positive");
    if (h_km <= 0.0) throw std::invalid_argument("generate_random: altitude must be positive");
    Constellation c;
    c.kind = ConstellationKind::Random;
    c.p = 0;
    c.altitude_km = h_km;
    c.seed = seed;
    c.satellites.reserve(static_cast<std::size_t>(n));
    SeededRng rng(seed);
    for (int id = 0; id < n; ++id) {
        // Three draws per satellite, in a fixed order the tests rely on:
        // longitude, sin(latitude), tangent angle.
        const double lon = rng.uniform(0.0, 2.0 * pi);
        const double sin_lat = rng.uniform(-1.0, 1.0);
        const double beta = rng.uniform(0.0, 2.0 * pi);

        const double cos_lat = std::sqrt(std::max(0.0, 1.0 - sin_lat * sin_lat));
        const Vec3 rhat{cos_lat * std::cos(lon), cos_lat * std::sin(lon), sin_lat};
        // Orthonormal tangent basis at rhat; the reference axis just needs to
        // be non-parallel to rhat.
        const Vec3 axis = std::abs(rhat.z) < 0.9 ? Vec3{0.0, 0.0, 1.0} : Vec3{1.0, 0.0, 0.0};
        Vec3 e1 = cross(axis, rhat);
        e1 = (1.0 / norm(e1)) * e1;
        const Vec3 e2 = cross(rhat, e1);
        const Vec3 that = std::cos(beta) * e1 + std::sin(beta) * e2;

        Satellite s;
        s.id = id;
        s.plane_id = -1;
        s.altitude_km = h_km;
        elements_from_direction(rhat, that, s.raan_rad, s.inclination_rad, s.true_anomaly_rad);
        c.satellites.push_back(s);
    }
    finalize(c);
    return c;
}

Constellation generate_walker_star(int n, int p, double h_km, double inclination_rad,
                                   bool allow_uneven) {
    const auto sizes = plane_sizes(n, p, allow_uneven, "generate_walker_star");
    if (h_km <= 0.0) {
        throw std::invalid_argument("generate_walker_star: altitude must be positive");
    }
    Constellation c;
    c.kind = ConstellationKind::WalkerStar;
    c.p = p;
    c.altitude_km = h_km;
    c.inclination_rad = inclination_rad;
    c.satellites.reserve(static_cast<std::size_t>(n));
    int id = 0;
    for (int k = 0; k < p; ++k) {
        const double raan = wrap_two_pi(static_cast<double>(k) * pi / static_cast<double>(p));
        const int m = sizes[static_cast<std::size_t>(k)];
        for (int j = 0; j < m; ++j) {
            Satellite s;
            s.id = id++;
            s.plane_id = k;
            s.raan_rad = raan;
            s.inclination_rad = inclination_rad;
            s.true_anomaly_rad =
                wrap_two_pi(2.0 * pi * static_cast<double>(j) / static_cast<double>(m));
            s.altitude_km = h_km;
            c.satellites.push_back(s);
        }
    }
    finalize(c);
    return c;
}

Constellation generate_walker_delta(int n, int p, double h_km, double inclination_rad,
                                    int phasing_f, bool allow_uneven) {
    const auto sizes = plane_sizes(n, p, allow_uneven, "generate_walker_delta");
    if (phasing_f < 0 || phasing_f >= p) {
        throw std::invalid_argument("generate_walker_delta: phasing factor must be in [0, p)");
    }
    if (h_km <= 0.0) {
        throw std::invalid_argument("generate_walker_delta: altitude must be positive");
    }
    Constellation c;
    c.kind = ConstellationKind::WalkerDelta;
    c.p = p;
    c.altitude_km = h_km;
    c.inclination_rad = inclination_rad;
    c.phasing_f = phasing_f;
    c.satellites.reserve(static_cast<std::size_t>(n));
    int id = 0;
    for (int k = 0; k < p; ++k) {
        const double raan = wrap_two_pi(2.0 * pi * static_cast<double>(k) / static_cast<double>(p));
        const double phase_offset = 2.0 * pi * static_cast<double>(k) *
                                    static_cast<double>(phasing_f) / static_cast<double>(n);
        const int m = sizes[static_cast<std::size_t>(k)];
        for (int j = 0; j < m; ++j) {
            Satellite s;
            s.id = id++;
            s.plane_id = k;
            s.raan_rad = raan;
            s.inclination_rad = inclination_rad;
            s.true_anomaly_rad = wrap_two_pi(
                2.0 * pi * static_cast<double>(j) / static_cast<double>(m) + phase_offset);
            s.altitude_km = h_km;
            c.satellites.push_back(s);
        }
    }
    finalize(c);
    return c;
}

double orbital_angular_rate(double altitude_km) {
    const double r = earth_radius_km + altitude_km;
    return std::sqrt(mu_earth_km3_s2 / (r * r * r));
}

double orbital_period(double altitude_km) { return 2.0 * pi / orbital_angular_rate(altitude_km); }

Constellation propagate(const Constellation& c, double t_seconds) {
    if (t_seconds < 0.0) throw std::invalid_argument("propagate: time must be non-negative");
    Constellation out = c;
    if (t_seconds == 0.0) return out;
    for (auto& s : out.satellites) {
        s.true_anomaly_rad = wrap_two_pi(s.true_anomaly_rad +
                                         orbital_angular_rate(s.altitude_km) * t_seconds);
    }
    out.rebuild_positions();
    return out;
}

int nearest_satellite(const Constellation& c, const GeodeticCoord& g) {
    if (c.satellites.empty()) throw std::invalid_argument("nearest_satellite: empty constellation");
    const Vec3 q = geodetic_to_ecef(g);
    const PositionsSoa& soa = c.positions();
    std::vector<double> d2(soa.size());
    kernels::squared_distances(soa.x.data(), soa.y.data(), soa.z.data(), soa.size(), q.x, q.y, q.z,
                               d2.data());
    return static_cast<int>(kernels::index_of_min(d2.data(), d2.size()));
}

namespace {
constexpr const char* json_format_tag = "leoisl-constellation-v1";
}

std::string constellation_to_json(const Constellation& c) {
    nlohmann::json j;
    j["format"] = json_format_tag;
    j["kind"] = constellation_kind_name(c.kind);
    j["n"] = c.n;
    j["p"] = c.p;
    j["altitude_km"] = c.altitude_km;
    j["seed"] = c.seed;
    j["inclination_rad"] = c.inclination_rad;
    j["phasing_f"] = c.phasing_f;
    nlohmann::json sats = nlohmann::json::array();
    for (const auto& s : c.satellites) {
        sats.push_back({{"id", s.id},
                        {"plane_id", s.plane_id},
                        {"raan_rad", s.raan_rad},
                        {"inclination_rad", s.inclination_rad},
                        {"true_anomaly_rad", s.true_anomaly_rad},
                        {"altitude_km", s.altitude_km}});
    }
    j["satellites"] = std::move(sats);
    return j.dump(2) + "\n";
}

Constellation constellation_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("constellation file is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || j.value("format", "") != json_format_tag) {
        throw std::runtime_error("constellation file missing format tag " +
                                 std::string(json_format_tag));
    }
    Constellation c;
    c.kind = constellation_kind_from_name(j.at("kind").get<std::string>());
    c.p = j.at("p").get<int>();
    c.altitude_km = j.at("altitude_km").get<double>();
    c.seed = j.value("seed", std::uint64_t{0});
    c.inclination_rad = j.value("inclination_rad", 0.0);
    c.phasing_f = j.value("phasing_f", 0);
    const auto& sats = j.at("satellites");
    if (!sats.is_array() || sats.empty()) {
        throw std::runtime_error("constellation file has no satellites");
    }
    c.satellites.reserve(sats.size());
    int expected_id = 0;
    for (const auto& sj : sats) {
        Satellite s;
        s.id = sj.at("id").get<int>();
        if (s.id != expected_id++) {
            throw std::runtime_error("constellation satellite ids must be 0..n-1 in order");
        }
        s.plane_id = sj.at("plane_id").get<int>();
        s.raan_rad = sj.at("raan_rad").get<double>();
        s.inclination_rad = sj.at("inclination_rad").get<double>();
        s.true_anomaly_rad = sj.at("true_anomaly_rad").get<double>();
        s.altitude_km = sj.at("altitude_km").get<double>();
        c.satellites.push_back(s);
    }
    const int n_field = j.at("n").get<int>();
    if (n_field != static_cast<int>(c.satellites.size())) {
        throw std::runtime_error("constellation satellite count disagrees with the n field");
    }
    finalize(c);
    for (const auto& s : c.satellites) {
        const double r = norm(s.position);
        if (std::abs(r - (earth_radius_km + s.altitude_km)) > 1e-6) {
            throw std::runtime_error("constellation satellite radius disagrees with its altitude");
        }
    }
    return c;
}

void save_constellation(const Constellation& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << constellation_to_json(c);
    if (!out) throw std::runtime_error("write failed: " + path);
}

Constellation load_constellation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return constellation_from_json(buf.str());
}

}  // namespace leoisl
