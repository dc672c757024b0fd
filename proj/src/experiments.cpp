#include "leoisl/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "leoisl/format.hpp"
#include "leoisl/rng.hpp"
#include "leoisl/version.hpp"
#include "nlohmann/json.hpp"

namespace leoisl {

std::string config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["constellation"] = cfg.constellation;
    j["n_list"] = cfg.n_list;
    j["p"] = cfg.p;
    j["altitude_km"] = cfg.altitude_km;
    j["inclination_star_deg"] = cfg.inclination_star_deg;
    j["inclination_delta_deg"] = cfg.inclination_delta_deg;
    j["phasing_f"] = cfg.phasing_f;
    j["allow_uneven"] = cfg.allow_uneven;
    j["topology"] = cfg.topology;
    j["n_candidates"] = cfg.n_candidates;
    j["d_max_km"] = cfg.d_max_km;
    j["troposphere_km"] = cfg.troposphere_km;
    j["max_degree"] = cfg.max_degree;
    j["constellation_arms"] = cfg.constellation_arms;
    j["topology_arms"] = cfg.topology_arms;
    j["model"] = {{"c_km_s", cfg.model.c_km_s},
                  {"fiber_refractive_index", cfg.model.fiber_refractive_index},
                  {"tau_process_s", cfg.model.tau_process_s},
                  {"clk_hz", cfg.model.clk_hz},
                  {"instructions_per_hop", cfg.model.instructions_per_hop},
                  {"energy_alpha", cfg.model.energy_alpha},
                  {"energy_per_hop", cfg.model.energy_per_hop}};
    j["processing"] = cfg.processing;
    j["trial_count"] = cfg.trial_count;
    j["master_seed"] = cfg.master_seed;
    j["bucket_km"] = cfg.bucket_km;
    j["epochs"] = cfg.epochs;
    j["epoch_spacing_s"] = cfg.epoch_spacing_s;
    j["randomize_epoch"] = cfg.randomize_epoch;
    j["alternates_k"] = cfg.alternates_k;
    j["theta_min_deg"] = cfg.theta_min_deg;
    return j.dump();
}

std::string config_hash(const ExperimentConfig& cfg) { return fnv1a64_hex(config_to_json(cfg)); }

double resolve_d_max(const ExperimentConfig& cfg) {
    if (cfg.d_max_km > 0.0) return cfg.d_max_km;
    return compute_d_max(cfg.altitude_km, cfg.troposphere_km);
}

Constellation make_constellation(const std::string& kind, int n, const ExperimentConfig& cfg) {
    Constellation c;
    if (kind == "random") {
        c = generate_random(n, cfg.altitude_km, cfg.master_seed);
    } else if (kind == "walker-star") {
        c = generate_walker_star(n, cfg.p, cfg.altitude_km, deg2rad(cfg.inclination_star_deg),
                                 cfg.allow_uneven);
    } else if (kind == "walker-delta") {
        c = generate_walker_delta(n, cfg.p, cfg.altitude_km, deg2rad(cfg.inclination_delta_deg),
                                  cfg.phasing_f, cfg.allow_uneven);
    } else {
        throw std::invalid_argument("unknown constellation kind: " + kind);
    }
    if (cfg.randomize_epoch) {
        // One seed-derived in-orbit phase per run, shared by all arms so they
        // stay paired.
        SeededRng rng(derive_seed(cfg.master_seed, 0x45504F43ULL));
        c = propagate(c, rng.uniform(0.0, orbital_period(cfg.altitude_km)));
    }
    return c;
}

IslGraph make_topology(const std::string& kind, const Constellation& c,
                       const ExperimentConfig& cfg) {
    if (kind == "cutoff") return build_cutoff(c, resolve_d_max(cfg));
    if (kind == "nearest-hop") return build_nearest_hop(c, cfg.n_candidates, cfg.max_degree);
    throw std::invalid_argument("unknown topology kind: " + kind);
}

namespace {

std::pair<GeodeticCoord, GeodeticCoord> sample_endpoint_pair(std::uint64_t master_seed,
                                                             int trial) {
    SeededRng rng(derive_seed(master_seed, static_cast<std::uint64_t>(trial)));
    const double lon1 = rng.uniform(0.0, 2.0 * pi);
    const double sl1 = rng.uniform(-1.0, 1.0);
    const double lon2 = rng.uniform(0.0, 2.0 * pi);
    const double sl2 = rng.uniform(-1.0, 1.0);
    return {GeodeticCoord(std::asin(sl1), lon1), GeodeticCoord(std::asin(sl2), lon2)};
}

std::vector<std::string> processing_arms(const ExperimentConfig& cfg) {
    if (cfg.processing == "on") return {"on"};
    if (cfg.processing == "off") return {"off"};
    if (cfg.processing == "both") return {"on", "off"};
    throw std::invalid_argument("processing must be on, off or both");
}

// One row per processing arm from a single routed (or failed) path.
void emit_rows(RecordSet& rs, const ExperimentConfig& cfg, const std::string& experiment,
               int trial, const std::string& pair_name, int path_rank, const RoutePath* path,
               bool truncated, double d_gc_km, const std::string& topo_kind,
               const std::string& cons_kind, int n) {
    const double fiber = fiber_delay(d_gc_km, cfg.model);
    for (const std::string& proc : processing_arms(cfg)) {
        Record r;
        r.experiment = experiment;
        r.trial = trial;
        r.pair = pair_name;
        r.path_rank = path_rank;
        r.truncated = truncated;
        r.d_gc_km = d_gc_km;
        r.fiber_delay_s = fiber;
        r.topology = topo_kind;
        r.constellation = cons_kind;
        r.n = n;
        r.processing = proc;
        if (path) {
            r.ok = true;
            r.sat_delay_s = proc == "on" ? path->total_delay_s : path->propagation_delay_s;
            r.improvement = fiber / r.sat_delay_s - 1.0;
            r.hop_count = path->hop_count;
            r.energy = path->total_energy;
        } else {
            r.ok = false;
            r.sat_delay_s = std::nan("");
            r.improvement = std::nan("");
            r.hop_count = -1;
            r.energy = std::nan("");
        }
        rs.rows.push_back(std::move(r));
    }
}

std::vector<Constellation> epoch_snapshots(const Constellation& c, const ExperimentConfig& cfg) {
    std::vector<Constellation> snaps;
    const int epochs = std::max(1, cfg.epochs);
    snaps.reserve(static_cast<std::size_t>(epochs));
    for (int e = 0; e < epochs; ++e) {
        snaps.push_back(propagate(c, static_cast<double>(e) * cfg.epoch_spacing_s));
    }
    return snaps;
}

}  // namespace

RecordSet sweep_improvement(const ExperimentConfig& cfg) {
    RecordSet rs;
    rs.experiment = "sweep";
    rs.config_hash = config_hash(cfg);
    rs.tool_version = version;
    const double theta_min = deg2rad(cfg.theta_min_deg);
    for (const int n : cfg.n_list) {
        const Constellation base = make_constellation(cfg.constellation, n, cfg);
        const std::vector<Constellation> snaps = epoch_snapshots(base, cfg);
        std::vector<IslGraph> graphs;
        graphs.reserve(snaps.size());
        for (const Constellation& s : snaps) graphs.push_back(make_topology(cfg.topology, s, cfg));
        for (int trial = 0; trial < cfg.trial_count; ++trial) {
            const std::size_t e = static_cast<std::size_t>(trial) % snaps.size();
            const auto [tx, rx] = sample_endpoint_pair(cfg.master_seed, trial);
            const auto path = route(snaps[e], graphs[e], tx, rx, cfg.model, theta_min);
            emit_rows(rs, cfg, "sweep", trial, "random", 0, path ? &*path : nullptr, false,
                      great_circle_distance(tx, rx), cfg.topology, cfg.constellation, n);
        }
    }
    return rs;
}

RecordSet compare_constellations(const ExperimentConfig& cfg) {
    RecordSet rs;
    rs.experiment = "compare";
    rs.config_hash = config_hash(cfg);
    rs.tool_version = version;
    const double theta_min = deg2rad(cfg.theta_min_deg);
    for (const int n : cfg.n_list) {
        // kind -> epoch snapshots, kind -> topology -> epoch graphs
        std::vector<std::vector<Constellation>> snaps;
        std::vector<std::vector<std::vector<IslGraph>>> graphs;
        for (const std::string& kind : cfg.constellation_arms) {
            snaps.push_back(epoch_snapshots(make_constellation(kind, n, cfg), cfg));
            auto& by_topo = graphs.emplace_back();
            for (const std::string& topo : cfg.topology_arms) {
                auto& by_epoch = by_topo.emplace_back();
                for (const Constellation& s : snaps.back()) {
                    by_epoch.push_back(make_topology(topo, s, cfg));
                }
            }
        }
        for (int trial = 0; trial < cfg.trial_count; ++trial) {
            const auto [tx, rx] = sample_endpoint_pair(cfg.master_seed, trial);
            const double d_gc = great_circle_distance(tx, rx);
            for (std::size_t ki = 0; ki < cfg.constellation_arms.size(); ++ki) {
                const std::size_t e = static_cast<std::size_t>(trial) % snaps[ki].size();
                for (std::size_t ti = 0; ti < cfg.topology_arms.size(); ++ti) {
                    const auto path = route(snaps[ki][e], graphs[ki][ti][e], tx, rx, cfg.model,
                                            theta_min);
                    emit_rows(rs, cfg, "compare", trial, "random", 0, path ? &*path : nullptr,
                              false, d_gc, cfg.topology_arms[ti], cfg.constellation_arms[ki], n);
                }
            }
        }
    }
    return rs;
}

std::vector<CityPair> builtin_city_pairs() {
    return {{"Perth-Brest", GeodeticCoord::from_degrees(-31.9523, 115.8613),
             GeodeticCoord::from_degrees(48.3904, -4.4861)},
            {"NewYork-London", GeodeticCoord::from_degrees(40.7128, -74.0060),
             GeodeticCoord::from_degrees(51.5074, -0.1278)}};
}

std::vector<CityPair> load_city_pairs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("# leoisl-city-pairs-v1", 0) != 0) {
        throw std::runtime_error("city-pair file missing leoisl-city-pairs-v1 header");
    }
    if (!std::getline(in, line) || line != "pair,lat1_deg,lon1_deg,lat2_deg,lon2_deg") {
        throw std::runtime_error("city-pair file missing column header");
    }
    std::vector<CityPair> pairs;
    std::size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream fs(line);
        std::string field;
        while (std::getline(fs, field, ',')) fields.push_back(field);
        if (fields.size() != 5) {
            throw std::runtime_error("city-pair line " + std::to_string(line_no) +
                                     " needs 5 comma-separated fields");
        }
        const std::string where = "city-pair line " + std::to_string(line_no);
        pairs.push_back({fields[0],
                         GeodeticCoord::from_degrees(parse_double(fields[1], where),
                                                     parse_double(fields[2], where)),
                         GeodeticCoord::from_degrees(parse_double(fields[3], where),
                                                     parse_double(fields[4], where))});
    }
    if (pairs.empty()) throw std::runtime_error("city-pair file has no pairs");
    return pairs;
}

RecordSet city_pair_study(const std::vector<CityPair>& pairs, const ExperimentConfig& cfg) {
    if (pairs.empty()) throw std::invalid_argument("city_pair_study: no pairs given");
    RecordSet rs;
    rs.experiment = "cities";
    rs.config_hash = config_hash(cfg);
    rs.tool_version = version;
    const double theta_min = deg2rad(cfg.theta_min_deg);
    for (const int n : cfg.n_list) {
        for (const std::string& kind : cfg.constellation_arms) {
            const Constellation c = make_constellation(kind, n, cfg);
            for (const std::string& topo : cfg.topology_arms) {
                const IslGraph g = make_topology(topo, c, cfg);
                for (const CityPair& pair : pairs) {
                    const double d_gc = great_circle_distance(pair.a, pair.b);
                    const AlternatePathSet aps = alternate_paths(c, g, pair.a, pair.b, cfg.model,
                                                                 cfg.alternates_k, theta_min);
                    if (aps.paths.empty()) {
                        emit_rows(rs, cfg, "cities", 0, pair.name, 0, nullptr, true, d_gc, topo,
                                  kind, n);
                        continue;
                    }
                    for (std::size_t r = 0; r < aps.paths.size(); ++r) {
                        emit_rows(rs, cfg, "cities", 0, pair.name, static_cast<int>(r) + 1,
                                  &aps.paths[r], aps.truncated, d_gc, topo, kind, n);
                    }
                }
            }
        }
    }
    return rs;
}

namespace {
constexpr const char* csv_header =
    "experiment,trial,pair,path_rank,ok,truncated,d_gc_km,sat_delay_s,fiber_delay_s,improvement,"
    "hop_count,energy,topology,constellation,n,processing";
}

std::string RecordSet::to_csv() const {
    std::ostringstream out;
    out << "# leoisl-records-v1 experiment=" << experiment << " config_hash=" << config_hash
        << " version=" << tool_version << "\n";
    out << csv_header << "\n";
    for (const Record& r : rows) {
        out << r.experiment << ',' << r.trial << ',' << r.pair << ',' << r.path_rank << ','
            << (r.ok ? 1 : 0) << ',' << (r.truncated ? 1 : 0) << ',' << format_double(r.d_gc_km)
            << ',' << format_double(r.sat_delay_s) << ',' << format_double(r.fiber_delay_s) << ','
            << format_double(r.improvement) << ',' << r.hop_count << ',' << format_double(r.energy)
            << ',' << r.topology << ',' << r.constellation << ',' << r.n << ',' << r.processing
            << "\n";
    }
    return out.str();
}

std::string RecordSet::to_json() const {
    nlohmann::json j;
    j["format"] = "leoisl-records-v1";
    j["experiment"] = experiment;
    j["config_hash"] = config_hash;
    j["version"] = tool_version;
    nlohmann::json rows_json = nlohmann::json::array();
    for (const Record& r : rows) {
        nlohmann::json rj = {{"experiment", r.experiment},
                             {"trial", r.trial},
                             {"pair", r.pair},
                             {"path_rank", r.path_rank},
                             {"ok", r.ok},
                             {"truncated", r.truncated},
                             {"d_gc_km", r.d_gc_km},
                             {"fiber_delay_s", r.fiber_delay_s},
                             {"hop_count", r.hop_count},
                             {"topology", r.topology},
                             {"constellation", r.constellation},
                             {"n", r.n},
                             {"processing", r.processing}};
        if (r.ok) {
            rj["sat_delay_s"] = r.sat_delay_s;
            rj["improvement"] = r.improvement;
            rj["energy"] = r.energy;
        } else {
            rj["sat_delay_s"] = nullptr;
            rj["improvement"] = nullptr;
            rj["energy"] = nullptr;
        }
        rows_json.push_back(std::move(rj));
    }
    j["rows"] = std::move(rows_json);
    return j.dump(2) + "\n";
}

void RecordSet::save_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << to_csv();
    if (!out) throw std::runtime_error("write failed: " + path);
}

void RecordSet::save_json(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << to_json();
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<BucketStat> bucket_improvement(const RecordSet& rs, double bucket_km) {
    if (bucket_km <= 0.0) throw std::invalid_argument("bucket_improvement: bucket must be > 0");
    std::vector<BucketStat> buckets;
    for (const Record& r : rs.rows) {
        if (!r.ok) continue;
        const std::size_t idx = static_cast<std::size_t>(r.d_gc_km / bucket_km);
        if (buckets.size() <= idx) buckets.resize(idx + 1);
        BucketStat& b = buckets[idx];
        b.count += 1;
        b.mean_improvement += r.improvement;
        b.mean_sat_delay_s += r.sat_delay_s;
        b.mean_fiber_delay_s += r.fiber_delay_s;
    }
    std::vector<BucketStat> filled;
    for (std::size_t i = 0; i < buckets.size(); ++i) {
        BucketStat b = buckets[i];
        if (b.count == 0) continue;
        b.lo_km = static_cast<double>(i) * bucket_km;
        b.hi_km = static_cast<double>(i + 1) * bucket_km;
        b.mean_improvement /= b.count;
        b.mean_sat_delay_s /= b.count;
        b.mean_fiber_delay_s /= b.count;
        filled.push_back(b);
    }
    return filled;
}

}  // namespace leoisl
