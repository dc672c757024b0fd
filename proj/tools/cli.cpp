#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "leoisl/experiments.hpp"
#include "leoisl/format.hpp"
#include "leoisl/geojson.hpp"
#include "leoisl/version.hpp"
#include "nlohmann/json.hpp"

namespace leoisl {

namespace {

GeodeticCoord parse_lat_lon(const std::string& text, const std::string& flag) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw std::invalid_argument(flag + ": expected \"lat,lon\" in degrees");
    }
    try {
        const double lat = parse_double(text.substr(0, comma), flag);
        const double lon = parse_double(text.substr(comma + 1), flag);
        return GeodeticCoord::from_degrees(lat, lon);
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception& e) {
        throw std::invalid_argument(flag + ": " + e.what());
    }
}

// Options shared by the experiment subcommand; wired straight into an
// ExperimentConfig so config-file keys mirror its fields.
void add_experiment_options(CLI::App& cmd, ExperimentConfig& cfg, bool& derived_tau) {
    cmd.add_option("--constellation", cfg.constellation,
                   "constellation kind: random | walker-star | walker-delta")
        ->check(CLI::IsMember({"random", "walker-star", "walker-delta"}));
    cmd.add_option("--n", cfg.n_list, "satellite counts to sweep")->capture_default_str();
    cmd.add_option("--p", cfg.p, "orbital plane count")->capture_default_str();
    cmd.add_option("--altitude", cfg.altitude_km, "satellite altitude [km]")
        ->capture_default_str();
    cmd.add_option("--inclination-star", cfg.inclination_star_deg,
                   "walker-star inclination [deg]")
        ->capture_default_str();
    cmd.add_option("--inclination-delta", cfg.inclination_delta_deg,
                   "walker-delta inclination [deg]")
        ->capture_default_str();
    cmd.add_option("--phasing-f", cfg.phasing_f, "walker-delta phasing factor")
        ->capture_default_str();
    cmd.add_flag("--allow-uneven,!--strict-planes", cfg.allow_uneven,
                 "allow plane counts that do not divide n");
    cmd.add_option("--topology", cfg.topology, "topology kind: cutoff | nearest-hop")
        ->check(CLI::IsMember({"cutoff", "nearest-hop"}));
    cmd.add_option("--n-candidates", cfg.n_candidates, "nearest-hop candidate count")
        ->capture_default_str();
    cmd.add_option("--d-max", cfg.d_max_km, "cutoff distance [km]; 0 derives it from geometry")
        ->capture_default_str();
    cmd.add_option("--troposphere", cfg.troposphere_km,
                   "atmosphere height used when deriving d-max [km]")
        ->capture_default_str();
    cmd.add_option("--max-degree", cfg.max_degree, "nearest-hop port limit; 0 = unlimited")
        ->capture_default_str();
    cmd.add_option("--constellation-arms", cfg.constellation_arms,
                   "constellation kinds for compare/cities");
    cmd.add_option("--topology-arms", cfg.topology_arms, "topology kinds for compare/cities");
    cmd.add_option("--processing", cfg.processing, "processing-delay arm: on | off | both")
        ->check(CLI::IsMember({"on", "off", "both"}));
    cmd.add_option("--tau-process", cfg.model.tau_process_s,
                   "per-satellite processing delay [s]")
        ->capture_default_str();
    cmd.add_flag("--derived-tau", derived_tau,
                 "derive the processing delay from the instruction budget and clock");
    cmd.add_option("--fiber-n", cfg.model.fiber_refractive_index, "fiber refractive index")
        ->capture_default_str();
    cmd.add_option("--energy-alpha", cfg.model.energy_alpha, "transmit energy per km^2")
        ->capture_default_str();
    cmd.add_option("--energy-per-hop", cfg.model.energy_per_hop, "processing energy per ISL hop")
        ->capture_default_str();
    cmd.add_option("--trials", cfg.trial_count, "endpoint samples per arm")
        ->capture_default_str();
    cmd.add_option("--master-seed", cfg.master_seed, "seed for all randomness")
        ->capture_default_str();
    cmd.add_option("--bucket", cfg.bucket_km, "distance bucket width for summaries [km]")
        ->capture_default_str();
    cmd.add_option("--epochs", cfg.epochs, "snapshots to spread trials over")
        ->capture_default_str();
    cmd.add_option("--epoch-spacing", cfg.epoch_spacing_s, "seconds between snapshots")
        ->capture_default_str();
    cmd.add_flag("--randomize-epoch", cfg.randomize_epoch,
                 "start from a seed-derived in-orbit phase");
    cmd.add_option("--alternates-k", cfg.alternates_k, "alternate paths per city pair")
        ->capture_default_str();
    cmd.add_option("--theta-min", cfg.theta_min_deg, "minimum elevation angle [deg]")
        ->capture_default_str();
}

// CLI11 reads config files only for the root command, so the experiment
// subcommand applies its own. Flat keys name long options; values given on
// the command line win; unknown keys reject the run.
void apply_config_file(CLI::App& cmd, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    const auto trim = [](const std::string& s) {
        const auto a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return std::string();
        const auto b = s.find_last_not_of(" \t\r");
        return s.substr(a, b - a + 1);
    };
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = trim(line);
        if (body.empty() || body[0] == '#' || body[0] == ';') continue;
        const std::string where = path + ":" + std::to_string(line_no);
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(where + ": expected key=value");
        }
        const std::string key = trim(body.substr(0, eq));
        std::string value = trim(body.substr(eq + 1));
        CLI::Option* opt = cmd.get_option_no_throw("--" + key);
        if (opt == nullptr || opt->get_positional()) {
            throw std::invalid_argument(where + ": unknown config key: " + key);
        }
        if (opt->count() > 0) continue;
        try {
            if (opt->get_expected_max() > 1) {
                // list-valued option: comma- or space-separated
                std::replace(value.begin(), value.end(), ',', ' ');
                std::istringstream items(value);
                std::string item;
                while (items >> item) opt->add_result(item);
            } else {
                opt->add_result(value);
            }
            opt->run_callback();
        } catch (const CLI::Error& e) {
            throw std::invalid_argument(where + ": " + std::string(e.what()));
        }
    }
}

int cmd_generate(const std::string& kind, int n, int p, double alt_km, double inclination_deg,
                 int phasing_f, std::uint64_t seed, bool allow_uneven, const std::string& out) {
    if (std::isnan(inclination_deg)) {
        inclination_deg = kind == "walker-delta" ? 53.0 : 90.0;
    }
    Constellation c;
    if (kind == "random") {
        c = generate_random(n, alt_km, seed);
    } else if (kind == "walker-star") {
        c = generate_walker_star(n, p, alt_km, deg2rad(inclination_deg), allow_uneven);
    } else {
        c = generate_walker_delta(n, p, alt_km, deg2rad(inclination_deg), phasing_f, allow_uneven);
    }
    save_constellation(c, out);
    nlohmann::json params = {{"command", "generate"}, {"kind", kind},
                             {"n", n},                {"p", p},
                             {"altitude_km", alt_km}, {"inclination_deg", inclination_deg},
                             {"phasing_f", phasing_f}, {"seed", seed},
                             {"allow_uneven", allow_uneven}};
    std::cout << "generated " << constellation_kind_name(c.kind) << " constellation: n=" << c.n
              << " p=" << c.p << " altitude_km=" << format_double(c.altitude_km)
              << " seed=" << c.seed << "\n";
    std::cout << "wrote " << out << "\n";
    std::cout << "config_hash=" << fnv1a64_hex(params.dump()) << "\n";
    return exit_ok;
}

int cmd_topology(const std::string& constellation_path, const std::string& kind,
                 const std::string& d_max_text, double troposphere_km, int n_candidates,
                 int max_degree, const std::string& out) {
    const Constellation c = load_constellation(constellation_path);
    IslGraph g;
    double d_max_km = 0.0;
    if (kind == "cutoff") {
        if (d_max_text == "auto") {
            d_max_km = compute_d_max(c.altitude_km, troposphere_km);
        } else {
            try {
                d_max_km = parse_double(d_max_text, "--d-max");
            } catch (const std::runtime_error& e) {
                throw std::invalid_argument(e.what());
            }
        }
        g = build_cutoff(c, d_max_km);
    } else {
        g = build_nearest_hop(c, n_candidates, max_degree);
    }
    save_graph(g, out);
    nlohmann::json params = {{"command", "topology"},
                             {"kind", kind},
                             {"d_max_km", d_max_km},
                             {"n_candidates", g.n_candidates},
                             {"max_degree", max_degree},
                             {"troposphere_km", troposphere_km}};
    std::cout << "built " << topology_kind_name(g.kind) << " graph: nodes=" << g.node_count
              << " edges=" << g.edges.size();
    if (g.kind == TopologyKind::Cutoff) std::cout << " d_max_km=" << format_double(g.d_max_km);
    std::cout << "\n";
    std::cout << "mean_edge_km=" << format_double(mean_edge_length_km(g))
              << " max_edge_km=" << format_double(max_edge_length_km(g)) << "\n";
    std::cout << "wrote " << out << "\n";
    std::cout << "config_hash=" << fnv1a64_hex(params.dump()) << "\n";
    return exit_ok;
}

int cmd_route(const std::string& constellation_path, const std::string& graph_path,
              const std::string& tx_text, const std::string& rx_text, int alternates,
              double theta_min_deg, const DelayModel& model, const std::string& geojson_out) {
    const Constellation c = load_constellation(constellation_path);
    const IslGraph g = load_graph(graph_path);
    const GeodeticCoord tx = parse_lat_lon(tx_text, "--tx");
    const GeodeticCoord rx = parse_lat_lon(rx_text, "--rx");
    const double theta_min = deg2rad(theta_min_deg);
    const double d_gc = great_circle_distance(tx, rx);
    const double fiber = fiber_delay(d_gc, model);

    nlohmann::json params = {{"command", "route"},
                             {"tx", {tx.lat_rad, tx.lon_rad}},
                             {"rx", {rx.lat_rad, rx.lon_rad}},
                             {"alternates", alternates},
                             {"theta_min_deg", theta_min_deg},
                             {"tau_process_s", model.tau_process_s},
                             {"fiber_refractive_index", model.fiber_refractive_index},
                             {"energy_alpha", model.energy_alpha},
                             {"energy_per_hop", model.energy_per_hop}};

    std::vector<RoutePath> paths;
    bool truncated = false;
    if (alternates > 1) {
        AlternatePathSet aps = alternate_paths(c, g, tx, rx, model, alternates, theta_min);
        paths = std::move(aps.paths);
        truncated = aps.truncated;
    } else {
        auto p = route(c, g, tx, rx, model, theta_min);
        if (p) paths.push_back(std::move(*p));
    }
    if (paths.empty()) {
        std::cerr << "no path between the attach satellites\n";
        return exit_no_path;
    }
    for (const RoutePath& p : paths) {
        if (p.tx_below_min_elevation || p.rx_below_min_elevation) {
            std::cerr << "warning: attach satellite below " << format_double(theta_min_deg)
                      << " deg elevation (tx " << format_double(rad2deg(p.tx_elevation_rad))
                      << " deg, rx " << format_double(rad2deg(p.rx_elevation_rad)) << " deg)\n";
            break;
        }
    }

    nlohmann::json report;
    report["config_hash"] = fnv1a64_hex(params.dump());
    report["d_gc_km"] = d_gc;
    report["fiber_delay_s"] = fiber;
    nlohmann::json path_array = nlohmann::json::array();
    for (const RoutePath& p : paths) {
        nlohmann::json pj = nlohmann::json::parse(route_to_json(p));
        pj["improvement"] = fiber / p.total_delay_s - 1.0;
        path_array.push_back(std::move(pj));
    }
    report["paths"] = std::move(path_array);
    report["truncated"] = truncated;
    std::cout << report.dump(2) << "\n";

    if (!geojson_out.empty()) {
        std::ofstream out(geojson_out);
        if (!out) throw std::runtime_error("cannot open for writing: " + geojson_out);
        out << route_to_geojson(paths.front(), c);
    }
    return exit_ok;
}

int cmd_experiment(const std::string& which, const ExperimentConfig& cfg,
                   const std::string& pairs_path, const std::string& out_csv,
                   const std::string& out_json) {
    RecordSet rs;
    if (which == "sweep") {
        rs = sweep_improvement(cfg);
    } else if (which == "compare") {
        rs = compare_constellations(cfg);
    } else {
        const auto pairs = pairs_path.empty() ? builtin_city_pairs() : load_city_pairs(pairs_path);
        rs = city_pair_study(pairs, cfg);
    }
    if (!out_csv.empty()) rs.save_csv(out_csv);
    if (!out_json.empty()) rs.save_json(out_json);

    std::size_t ok = 0;
    for (const Record& r : rs.rows) ok += r.ok ? 1 : 0;
    std::cout << "experiment=" << rs.experiment << " rows=" << rs.rows.size() << " ok=" << ok
              << "\n";
    std::cout << "config_hash=" << rs.config_hash << "\n";
    if (which == "sweep") {
        for (const BucketStat& b : bucket_improvement(rs, cfg.bucket_km)) {
            std::cout << "bucket_km=[" << format_double(b.lo_km) << "," << format_double(b.hi_km)
                      << ") count=" << b.count
                      << " mean_improvement=" << format_double(b.mean_improvement) << "\n";
        }
    }
    if (!out_csv.empty()) std::cout << "wrote " << out_csv << "\n";
    if (!out_json.empty()) std::cout << "wrote " << out_json << "\n";
    if (ok == 0 && !rs.rows.empty()) {
        std::cerr << "all trials failed to route\n";
        return exit_no_path;
    }
    return exit_ok;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"LEO inter-satellite-link constellation network simulator"};
    app.set_version_flag("--version", std::string(version));
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "generate a constellation file");
    std::string gen_kind;
    int gen_n = 0;
    int gen_p = 12;
    double gen_alt = 550.0;
    double gen_incl = std::nan("");
    int gen_f = 0;
    std::uint64_t gen_seed = 1;
    bool gen_uneven = true;
    std::string gen_out = "constellation.json";
    gen->add_option("--kind", gen_kind, "random | walker-star | walker-delta")
        ->required()
        ->check(CLI::IsMember({"random", "walker-star", "walker-delta"}));
    gen->add_option("--n", gen_n, "satellite count")->required();
    gen->add_option("--p", gen_p, "orbital plane count")->capture_default_str();
    gen->add_option("--alt", gen_alt, "altitude [km]")->capture_default_str();
    gen->add_option("--inclination", gen_incl,
                    "inclination [deg]; defaults to 90 (star) or 53 (delta)");
    gen->add_option("--phasing-f", gen_f, "walker-delta phasing factor")->capture_default_str();
    gen->add_option("--seed", gen_seed, "random-constellation seed")->capture_default_str();
    gen->add_flag("--allow-uneven,!--strict-planes", gen_uneven,
                  "allow plane counts that do not divide n (default on; the spare satellites go "
                  "to the lowest-index planes)");
    gen->add_option("--out", gen_out, "output constellation JSON")->capture_default_str();

    // topology
    auto* topo = app.add_subcommand("topology", "build an ISL graph from a constellation file");
    std::string topo_constellation = "constellation.json";
    std::string topo_kind;
    std::string topo_dmax = "auto";
    double topo_troposphere = default_troposphere_km;
    int topo_candidates = 16;
    int topo_max_degree = 0;
    std::string topo_out = "edges.csv";
    topo->add_option("--constellation", topo_constellation, "constellation JSON file")
        ->capture_default_str();
    topo->add_option("--kind", topo_kind, "cutoff | nearest-hop")
        ->required()
        ->check(CLI::IsMember({"cutoff", "nearest-hop"}));
    topo->add_option("--d-max", topo_dmax, "cutoff distance [km] or \"auto\"")
        ->capture_default_str();
    topo->add_option("--troposphere", topo_troposphere,
                     "atmosphere height for auto d-max [km]")
        ->capture_default_str();
    topo->add_option("--candidates", topo_candidates, "nearest-hop candidate count")
        ->capture_default_str();
    topo->add_option("--max-degree", topo_max_degree, "nearest-hop port limit; 0 = unlimited")
        ->capture_default_str();
    topo->add_option("--out", topo_out, "output edge-list CSV")->capture_default_str();

    // route
    auto* rt = app.add_subcommand("route", "route between two ground points");
    std::string rt_constellation = "constellation.json";
    std::string rt_graph = "edges.csv";
    std::string rt_tx;
    std::string rt_rx;
    int rt_alternates = 1;
    double rt_theta = 25.0;
    DelayModel rt_model;
    bool rt_derived_tau = false;
    std::string rt_geojson;
    rt->add_option("--constellation", rt_constellation, "constellation JSON file")
        ->capture_default_str();
    rt->add_option("--graph", rt_graph, "edge-list CSV file")->capture_default_str();
    rt->add_option("--tx", rt_tx, "transmitter \"lat,lon\" [deg]")->required();
    rt->add_option("--rx", rt_rx, "receiver \"lat,lon\" [deg]")->required();
    rt->add_option("--alternates", rt_alternates, "number of successive-removal paths")
        ->capture_default_str();
    rt->add_option("--theta-min", rt_theta, "minimum elevation angle [deg]")
        ->capture_default_str();
    rt->add_option("--tau-process", rt_model.tau_process_s, "per-satellite processing delay [s]")
        ->capture_default_str();
    rt->add_flag("--derived-tau", rt_derived_tau,
                 "derive the processing delay from the instruction budget and clock");
    rt->add_option("--fiber-n", rt_model.fiber_refractive_index, "fiber refractive index")
        ->capture_default_str();
    rt->add_option("--energy-alpha", rt_model.energy_alpha, "transmit energy per km^2")
        ->capture_default_str();
    rt->add_option("--energy-per-hop", rt_model.energy_per_hop, "processing energy per ISL hop")
        ->capture_default_str();
    rt->add_option("--geojson", rt_geojson, "also write the best path as GeoJSON");

    // experiment
    auto* exp = app.add_subcommand("experiment", "run a batch experiment");
    std::string exp_which;
    ExperimentConfig exp_cfg;
    bool exp_derived_tau = false;
    std::string exp_pairs;
    std::string exp_out_csv = "records.csv";
    std::string exp_out_json;
    exp->add_option("which", exp_which, "sweep | compare | cities")
        ->required()
        ->check(CLI::IsMember({"sweep", "compare", "cities"}));
    std::string exp_config;
    exp->add_option("--config", exp_config,
                    "declarative config file (flat key=value, keys = long option names)");
    add_experiment_options(*exp, exp_cfg, exp_derived_tau);
    exp->add_option("--pairs", exp_pairs, "city-pair CSV file (default: built-in pairs)");
    exp->add_option("--out-csv", exp_out_csv, "output CSV path")->capture_default_str();
    exp->add_option("--out-json", exp_out_json, "output JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (gen->parsed()) {
            return cmd_generate(gen_kind, gen_n, gen_p, gen_alt, gen_incl, gen_f, gen_seed,
                                gen_uneven, gen_out);
        }
        if (topo->parsed()) {
            return cmd_topology(topo_constellation, topo_kind, topo_dmax, topo_troposphere,
                                topo_candidates, topo_max_degree, topo_out);
        }
        if (rt->parsed()) {
            if (rt_derived_tau) rt_model = rt_model.with_derived_processing();
            return cmd_route(rt_constellation, rt_graph, rt_tx, rt_rx, rt_alternates, rt_theta,
                             rt_model, rt_geojson);
        }
        if (exp->parsed()) {
            if (!exp_config.empty()) apply_config_file(*exp, exp_config);
            if (exp_derived_tau) exp_cfg.model = exp_cfg.model.with_derived_processing();
            return cmd_experiment(exp_which, exp_cfg, exp_pairs, exp_out_csv, exp_out_json);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io;
    }
    return exit_usage;
}

}  // namespace leoisl
