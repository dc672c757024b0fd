#include "leoisl/topology.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "leoisl/format.hpp"
#include "leoisl/kernels.hpp"

namespace leoisl {

const char* topology_kind_name(TopologyKind k) {
    switch (k) {
        case TopologyKind::NearestHop:
            return "nearest-hop";
        case TopologyKind::Cutoff:
            return "cutoff";
    }
    return "unknown";
}

TopologyKind topology_kind_from_name(const std::string& name) {
    if (name == "nearest-hop") return TopologyKind::NearestHop;
    if (name == "cutoff") return TopologyKind::Cutoff;
    throw std::invalid_argument("unknown topology kind: " + name);
}

void IslGraph::finalize() {
    std::sort(edges.begin(), edges.end(), [](const IslEdge& a, const IslEdge& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const IslEdge& e = edges[k];
        if (e.i < 0 || e.j >= node_count || e.i >= e.j) {
            throw std::invalid_argument("edge list malformed: node ids out of order or range");
        }
        if (!(e.weight_km > 0.0)) {
            throw std::invalid_argument("edge list malformed: non-positive weight");
        }
        if (k > 0 && edges[k - 1].i == e.i && edges[k - 1].j == e.j) {
            throw std::invalid_argument("edge list malformed: duplicate edge");
        }
    }
    adj_.assign(static_cast<std::size_t>(node_count), {});
    for (const IslEdge& e : edges) {
        adj_[static_cast<std::size_t>(e.i)].emplace_back(e.j, e.weight_km);
        adj_[static_cast<std::size_t>(e.j)].emplace_back(e.i, e.weight_km);
    }
}

double compute_d_max(double h_s_km, double h_t_km) {
    if (h_t_km < 0.0 || h_t_km >= h_s_km) {
        throw std::invalid_argument("compute_d_max: requires h_s > h_t >= 0");
    }
    const double rs = earth_radius_km + h_s_km;
    const double rt = earth_radius_km + h_t_km;
    return 2.0 * std::sqrt(rs * rs - rt * rt);
}

IslGraph build_cutoff(const Constellation& c, double d_max_km) {
    if (d_max_km <= 0.0) throw std::invalid_argument("build_cutoff: d_max must be positive");
    const PositionsSoa& soa = c.positions();
    const std::size_t n = soa.size();
    IslGraph g;
    g.node_count = static_cast<int>(n);
    g.kind = TopologyKind::Cutoff;
    g.d_max_km = d_max_km;
    std::vector<double> d2(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        kernels::squared_distances(soa.x.data(), soa.y.data(), soa.z.data(), n, soa.x[i], soa.y[i],
                                   soa.z[i], d2.data());
        for (std::size_t j = i + 1; j < n; ++j) {
            const double w = std::sqrt(d2[j]);
            if (w <= d_max_km) {
                g.edges.push_back({static_cast<int>(i), static_cast<int>(j), w});
            }
        }
    }
    g.finalize();
    return g;
}

bool sphere_block_test(const Vec3& a, const Vec3& b, std::span<const Vec3> candidates) {
    if (a == b) throw std::invalid_argument("sphere_block_test: endpoints coincide");
    std::vector<double> xs, ys, zs;
    xs.reserve(candidates.size());
    ys.reserve(candidates.size());
    zs.reserve(candidates.size());
    for (const Vec3& v : candidates) {
        if (v == a || v == b) continue;
        xs.push_back(v.x);
        ys.push_back(v.y);
        zs.push_back(v.z);
    }
    if (xs.empty()) return false;
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double dz = b.z - a.z;
    const double dab2 = dx * dx + dy * dy + dz * dz;
    std::vector<double> sums(xs.size());
    kernels::two_leg_squared_sums(xs.data(), ys.data(), zs.data(), xs.size(), a.x, a.y, a.z, b.x,
                                  b.y, b.z, sums.data());
    for (const double s : sums) {
        if (s <= dab2) return true;
    }
    return false;
}

IslGraph build_nearest_hop(const Constellation& c, int n_candidates, int max_degree,
                           std::vector<NearestHopRejection>* rejections) {
    const PositionsSoa& soa = c.positions();
    const int n = static_cast<int>(soa.size());
    if (n < 2) throw std::invalid_argument("build_nearest_hop: need at least two satellites");
    if (n_candidates < 1) throw std::invalid_argument("build_nearest_hop: need n_candidates >= 1");
    const int n_cand = std::min(n_candidates, n - 1);

    std::vector<double> d2(static_cast<std::size_t>(n));
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    std::vector<double> cx(static_cast<std::size_t>(n_cand));
    std::vector<double> cy(static_cast<std::size_t>(n_cand));
    std::vector<double> cz(static_cast<std::size_t>(n_cand));
    std::vector<double> sums(static_cast<std::size_t>(n_cand));
    std::vector<std::pair<int, int>> admitted;

    for (int i = 0; i < n; ++i) {
        const std::size_t ui = static_cast<std::size_t>(i);
        kernels::squared_distances(soa.x.data(), soa.y.data(), soa.z.data(),
                                   static_cast<std::size_t>(n), soa.x[ui], soa.y[ui], soa.z[ui],
                                   d2.data());
        // n_cand nearest neighbors of i; ties broken by lower id so the
        // candidate list is deterministic.
        order.clear();
        for (int v = 0; v < n; ++v) {
            if (v != i) order.push_back(v);
        }
        const auto closer = [&d2](int a, int b) {
            const double da = d2[static_cast<std::size_t>(a)];
            const double db = d2[static_cast<std::size_t>(b)];
            return da != db ? da < db : a < b;
        };
        std::partial_sort(order.begin(), order.begin() + n_cand, order.end(), closer);
        for (int k = 0; k < n_cand; ++k) {
            const std::size_t uc = static_cast<std::size_t>(order[static_cast<std::size_t>(k)]);
            cx[static_cast<std::size_t>(k)] = soa.x[uc];
            cy[static_cast<std::size_t>(k)] = soa.y[uc];
            cz[static_cast<std::size_t>(k)] = soa.z[uc];
        }
        for (int k = 0; k < n_cand; ++k) {
            const int p = order[static_cast<std::size_t>(k)];
            const std::size_t up = static_cast<std::size_t>(p);
            const double dab2 = d2[up];
            kernels::two_leg_squared_sums(cx.data(), cy.data(), cz.data(),
                                          static_cast<std::size_t>(n_cand), soa.x[ui], soa.y[ui],
                                          soa.z[ui], soa.x[up], soa.y[up], soa.z[up], sums.data());
            int blocker = -1;
            for (int m = 0; m < n_cand; ++m) {
                if (m == k) continue;  // the target itself never blocks
                if (sums[static_cast<std::size_t>(m)] <= dab2) {
                    blocker = order[static_cast<std::size_t>(m)];
                    break;
                }
            }
            if (blocker >= 0) {
                if (rejections) rejections->push_back({i, p, blocker});
            } else {
                admitted.emplace_back(std::min(i, p), std::max(i, p));
            }
        }
    }

    std::sort(admitted.begin(), admitted.end());
    admitted.erase(std::unique(admitted.begin(), admitted.end()), admitted.end());

    IslGraph g;
    g.node_count = n;
    g.kind = TopologyKind::NearestHop;
    g.n_candidates = n_cand;
    g.max_degree = max_degree;
    g.edges.reserve(admitted.size());
    for (const auto& [i, j] : admitted) {
        const double dx = soa.x[static_cast<std::size_t>(j)] - soa.x[static_cast<std::size_t>(i)];
        const double dy = soa.y[static_cast<std::size_t>(j)] - soa.y[static_cast<std::size_t>(i)];
        const double dz = soa.z[static_cast<std::size_t>(j)] - soa.z[static_cast<std::size_t>(i)];
        g.edges.push_back({i, j, std::sqrt(dx * dx + dy * dy + dz * dz)});
    }

    if (max_degree > 0) {
        // Keep the shortest edges first, dropping any edge that would push
        // either endpoint past the port budget.
        std::sort(g.edges.begin(), g.edges.end(), [](const IslEdge& a, const IslEdge& b) {
            if (a.weight_km != b.weight_km) return a.weight_km < b.weight_km;
            return a.i != b.i ? a.i < b.i : a.j < b.j;
        });
        std::vector<int> degree(static_cast<std::size_t>(n), 0);
        std::vector<IslEdge> kept;
        kept.reserve(g.edges.size());
        for (const IslEdge& e : g.edges) {
            if (degree[static_cast<std::size_t>(e.i)] < max_degree &&
                degree[static_cast<std::size_t>(e.j)] < max_degree) {
                kept.push_back(e);
                degree[static_cast<std::size_t>(e.i)] += 1;
                degree[static_cast<std::size_t>(e.j)] += 1;
            }
        }
        g.edges = std::move(kept);
    }

    g.finalize();
    return g;
}

std::string graph_to_csv(const IslGraph& g) {
    std::ostringstream out;
    out << "# leoisl-edges-v1 nodes=" << g.node_count << " kind=" << topology_kind_name(g.kind);
    if (g.kind == TopologyKind::Cutoff) {
        out << " d_max_km=" << format_double(g.d_max_km);
    } else {
        out << " n_candidates=" << g.n_candidates << " max_degree=" << g.max_degree;
    }
    out << "\n";
    out << "i,j,weight_km\n";
    for (const IslEdge& e : g.edges) {
        out << e.i << ',' << e.j << ',' << format_double(e.weight_km) << "\n";
    }
    return out.str();
}

namespace {

// Parses "key=value" tokens from the header comment line.
std::string header_field(const std::string& header, const std::string& key) {
    const std::string needle = key + "=";
    const auto pos = header.find(needle);
    if (pos == std::string::npos) return "";
    const auto start = pos + needle.size();
    auto end = header.find(' ', start);
    if (end == std::string::npos) end = header.size();
    return header.substr(start, end - start);
}

}  // namespace

IslGraph graph_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("# leoisl-edges-v1", 0) != 0) {
        throw std::runtime_error("edge-list file missing leoisl-edges-v1 header");
    }
    IslGraph g;
    const std::string nodes = header_field(line, "nodes");
    if (nodes.empty()) throw std::runtime_error("edge-list header missing node count");
    g.node_count = std::stoi(nodes);
    const std::string kind = header_field(line, "kind");
    g.kind = topology_kind_from_name(kind);
    if (g.kind == TopologyKind::Cutoff) {
        g.d_max_km = parse_double(header_field(line, "d_max_km"), "edge-list header");
    } else {
        g.n_candidates = std::stoi(header_field(line, "n_candidates"));
        const std::string md = header_field(line, "max_degree");
        g.max_degree = md.empty() ? 0 : std::stoi(md);
    }
    if (!std::getline(in, line) || line != "i,j,weight_km") {
        throw std::runtime_error("edge-list file missing column header");
    }
    std::size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw std::runtime_error("edge-list line " + std::to_string(line_no) +
                                     " is not i,j,weight");
        }
        IslEdge e;
        e.i = std::stoi(line.substr(0, c1));
        e.j = std::stoi(line.substr(c1 + 1, c2 - c1 - 1));
        e.weight_km = parse_double(line.substr(c2 + 1),
                                   "edge-list line " + std::to_string(line_no));
        g.edges.push_back(e);
    }
    g.finalize();
    return g;
}

void save_graph(const IslGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << graph_to_csv(g);
    if (!out) throw std::runtime_error("write failed: " + path);
}

IslGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return graph_from_csv(buf.str());
}

double mean_edge_length_km(const IslGraph& g) {
    if (g.edges.empty()) return 0.0;
    double sum = 0.0;
    for (const IslEdge& e : g.edges) sum += e.weight_km;
    return sum / static_cast<double>(g.edges.size());
}

double max_edge_length_km(const IslGraph& g) {
    double m = 0.0;
    for (const IslEdge& e : g.edges) m = std::max(m, e.weight_km);
    return m;
}

}  // namespace leoisl
