#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leoisl/constellation.hpp"
#include "leoisl/routing.hpp"
#include "leoisl/topology.hpp"

// Batch experiments: improvement-vs-distance sweeps against the great-circle
// fiber baseline, constellation/topology comparisons on paired endpoint
// samples, and city-pair alternate-path studies. Every run is fully
// determined by its config (hashed into the outputs).

namespace leoisl {

struct ExperimentConfig {
    // constellation
    std::string constellation = "random";  // random | walker-star | walker-delta
    std::vector<int> n_list = {250, 500, 1000};
    int p = 12;
    double altitude_km = 550.0;
    double inclination_star_deg = 90.0;
    double inclination_delta_deg = 53.0;
    int phasing_f = 0;
    // Walker planes may carry uneven satellite counts when p does not divide
    // n (the spare satellites go to the lowest-index planes); disable to
    // require exact divisibility.
    bool allow_uneven = true;

    // topology
    std::string topology = "cutoff";  // cutoff | nearest-hop
    int n_candidates = 16;
    double d_max_km = 0.0;  // 0 = derive from altitude and troposphere height
    double troposphere_km = default_troposphere_km;
    int max_degree = 0;

    // arms used by compare/cities (sweep uses the single fields above)
    std::vector<std::string> constellation_arms = {"random", "walker-star", "walker-delta"};
    std::vector<std::string> topology_arms = {"nearest-hop", "cutoff"};

    // delay + energy model
    DelayModel model{};
    std::string processing = "on";  // on | off | both

    // trials
    int trial_count = 500;
    std::uint64_t master_seed = 1;
    double bucket_km = 500.0;
    int epochs = 1;               // >1 spreads trials over propagated snapshots
    double epoch_spacing_s = 60.0;
    bool randomize_epoch = false;  // start from a seed-derived in-orbit phase
    int alternates_k = 10;
    double theta_min_deg = 25.0;
};

std::string config_to_json(const ExperimentConfig& cfg);
// FNV-1a 64-bit hash of the canonical config JSON, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

struct Record {
    std::string experiment;
    int trial = 0;
    std::string pair;   // "random" for sampled endpoints, city names otherwise
    int path_rank = 0;  // 0 = single best path; 1..k for alternate-path sets
    bool ok = true;
    bool truncated = false;
    double d_gc_km = 0.0;
    double sat_delay_s = 0.0;
    double fiber_delay_s = 0.0;
    double improvement = 0.0;  // fiber/sat - 1
    int hop_count = -1;
    double energy = 0.0;
    std::string topology;
    std::string constellation;
    int n = 0;
    std::string processing;  // on | off
};

struct RecordSet {
    std::string experiment;
    std::string config_hash;
    std::string tool_version;
    std::vector<Record> rows;

    std::string to_csv() const;  // deterministic; no timestamps
    std::string to_json() const;
    void save_csv(const std::string& path) const;
    void save_json(const std::string& path) const;
};

// Uniform endpoint pairs routed over the configured constellation/topology
// for every n in n_list; emits one row per (n, trial, processing arm).
RecordSet sweep_improvement(const ExperimentConfig& cfg);

// Same endpoint samples replayed across every constellation/topology arm so
// rows pair up by trial index.
RecordSet compare_constellations(const ExperimentConfig& cfg);

struct CityPair {
    std::string name;
    GeodeticCoord a;
    GeodeticCoord b;
};

// Perth-Brest and NewYork-London.
std::vector<CityPair> builtin_city_pairs();
std::vector<CityPair> load_city_pairs(const std::string& path);

// Alternate-path study: for each pair and each arm, the k best
// successive-removal paths (path_rank 1..k).
RecordSet city_pair_study(const std::vector<CityPair>& pairs, const ExperimentConfig& cfg);

struct BucketStat {
    double lo_km = 0.0;
    double hi_km = 0.0;
    int count = 0;
    double mean_improvement = 0.0;
    double mean_sat_delay_s = 0.0;
    double mean_fiber_delay_s = 0.0;
};

// Mean improvement of routed rows grouped into [k*bucket, (k+1)*bucket) bins
// of great-circle distance; empty buckets are omitted.
std::vector<BucketStat> bucket_improvement(const RecordSet& rs, double bucket_km);

// Constellation/graph construction as configured; shared by the experiment
// drivers and the CLI.
Constellation make_constellation(const std::string& kind, int n, const ExperimentConfig& cfg);
IslGraph make_topology(const std::string& kind, const Constellation& c,
                       const ExperimentConfig& cfg);
double resolve_d_max(const ExperimentConfig& cfg);

}  // namespace leoisl
