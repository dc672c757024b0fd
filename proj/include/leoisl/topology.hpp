#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "leoisl/constellation.hpp"
#include "leoisl/geometry.hpp"

// ISL graph builders: the power-efficient nearest-hop rule (an edge survives
// only if no third satellite sits inside the ball whose diameter is the link)
// and the horizon-limited cutoff rule.

namespace leoisl {

enum class TopologyKind { NearestHop, Cutoff };

const char* topology_kind_name(TopologyKind k);
TopologyKind topology_kind_from_name(const std::string& name);

struct IslEdge {
    int i = 0;  // i < j always
    int j = 0;
    double weight_km = 0.0;
};

struct IslGraph {
    int node_count = 0;
    TopologyKind kind = TopologyKind::Cutoff;
    double d_max_km = 0.0;   // cutoff parameter
    int n_candidates = 0;    // nearest-hop parameter
    int max_degree = 0;      // nearest-hop post-filter; 0 = unlimited
    std::vector<IslEdge> edges;  // sorted by (i, j), no duplicates

    // neighbor -> weight lists, filled by finalize()
    const std::vector<std::vector<std::pair<int, double>>>& adjacency() const { return adj_; }
    void finalize();  // sorts edges, checks invariants, builds adjacency

  private:
    std::vector<std::vector<std::pair<int, double>>> adj_;
};

// Maximum ISL length for satellites at h_s_km such that the link clears an
// atmosphere shell of height h_t_km: 2*sqrt((Re+h_s)^2 - (Re+h_t)^2).
double compute_d_max(double h_s_km, double h_t_km);

inline constexpr double default_troposphere_km = 18.0;

// Edge (i,j) exists iff the Euclidean distance is <= d_max_km.
IslGraph build_cutoff(const Constellation& c, double d_max_km);

// True iff some point of `candidates` other than a and b lies in the closed
// ball with diameter segment ab, i.e. d(a,x)^2 + d(x,b)^2 <= d(a,b)^2.
bool sphere_block_test(const Vec3& a, const Vec3& b, std::span<const Vec3> candidates);

// One record per link rejected while building the nearest-hop graph; the
// blocker satisfies the two-hop inequality d(from,blocker)^2 +
// d(blocker,to)^2 <= d(from,to)^2.
struct NearestHopRejection {
    int from = 0;
    int to = 0;
    int blocker = 0;
};

// For every satellite, examine its n_candidates nearest neighbors and admit
// the link unless another candidate blocks it (closed-ball rule above); the
// result is the union over both directions. n_candidates >= N is clamped to
// N-1 (with n_candidates = N-1 this is exactly the Gabriel graph). max_degree
// > 0 keeps only each node's shortest edges as a post-filter. `rejections`,
// when given, receives one record per blocked directed examination.
IslGraph build_nearest_hop(const Constellation& c, int n_candidates, int max_degree = 0,
                           std::vector<NearestHopRejection>* rejections = nullptr);

// Edge-list CSV round-trip (header comment carries node count and build
// parameters; weights keep full precision).
std::string graph_to_csv(const IslGraph& g);
IslGraph graph_from_csv(const std::string& text);
void save_graph(const IslGraph& g, const std::string& path);
IslGraph load_graph(const std::string& path);

double mean_edge_length_km(const IslGraph& g);
double max_edge_length_km(const IslGraph& g);

}  // namespace leoisl
