#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nstab/boolean_function.hpp"

namespace nstab {

// Undirected tree whose edges are independent BSC channels; a uniform
// n-bit string broadcast from any vertex induces the same joint law on
// the vertex strings regardless of the source.
struct BroadcastTree {
    struct Edge {
        int u;
        int v;
        double eps;
    };

    int n_bits = 1;
    int vertex_count = 0;
    std::vector<Edge> edges;

    BroadcastTree(int n_bits, int vertex_count, std::vector<Edge> edges);
    static BroadcastTree uniform(int n_bits, int vertex_count,
                                 const std::vector<std::pair<int, int>>& edges, double eps);
};

// Player set S with one Boolean function per occupied vertex.
struct PlayerAssignment {
    std::vector<std::pair<int, BooleanFunction>> players;
};

// E prod_{v in S} f_v(Y^v), exact, by rooting the tree and passing
// T_eps-averaged messages towards the root; independent of the root.
double tree_correlation(const BroadcastTree& tree, const PlayerAssignment& assignment,
                        int root = 0);

// P(all players output 1) + P(all players output 0).
double tree_agreement(const BroadcastTree& tree, const PlayerAssignment& assignment);

// 2^-(l+1) prod_j (1 + (1-2 eps)^gap_j) for l+1 players on a path with the
// given consecutive gaps; attained exactly by identical dictators.
double path_dictator_bound(const std::vector<int>& gaps, double eps);

struct McEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
    std::uint64_t samples = 0;
};

// Simulates the broadcast; reproducible for a fixed seed and independent
// of the job count (fixed-size sample chunks with derived seeds).
McEstimate tree_mc_estimate(const BroadcastTree& tree, const PlayerAssignment& assignment,
                            std::uint64_t samples, std::uint64_t seed, int jobs = 1);

// JSON wire format: {"n": int, "edges": [[u, v, eps], ...],
// "players": [{"v": int, "table_hex": str}, ...]}.
std::pair<BroadcastTree, PlayerAssignment> tree_from_json(const std::string& text);
std::pair<BroadcastTree, PlayerAssignment> tree_from_json_file(const std::string& path);

}  // namespace nstab
