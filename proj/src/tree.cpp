#include "nstab/tree.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "nstab/noise.hpp"

namespace nstab {

BroadcastTree::BroadcastTree(int n_bits_, int vertex_count_, std::vector<Edge> edges_)
    : n_bits(n_bits_), vertex_count(vertex_count_), edges(std::move(edges_)) {
    domain_size(n_bits);
    if (vertex_count < 1) throw std::invalid_argument("tree needs at least one vertex");
    if (edges.size() != std::size_t(vertex_count - 1)) {
        throw std::invalid_argument("tree needs exactly |V|-1 edges");
    }
    // connectivity check; acyclicity follows from the edge count
    std::vector<int> parent(vertex_count);
    for (int i = 0; i < vertex_count; ++i) parent[i] = i;
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (const Edge& e : edges) {
        if (e.u < 0 || e.u >= vertex_count || e.v < 0 || e.v >= vertex_count) {
            throw std::invalid_argument("tree edge endpoint out of range");
        }
        if (!(e.eps >= 0.0 && e.eps <= 0.5)) {
            throw std::invalid_argument("tree edge eps must lie in [0, 1/2]");
        }
        const int a = find(e.u);
        const int b = find(e.v);
        if (a == b) throw std::invalid_argument("tree edge list contains a cycle");
        parent[a] = b;
    }
}

BroadcastTree BroadcastTree::uniform(int n_bits, int vertex_count,
                                     const std::vector<std::pair<int, int>>& edges, double eps) {
    std::vector<Edge> es;
    es.reserve(edges.size());
    for (auto [u, v] : edges) es.push_back({u, v, eps});
    return BroadcastTree(n_bits, vertex_count, std::move(es));
}

namespace {

struct Adjacency {
    std::vector<std::vector<std::pair<int, double>>> nbr;  // (vertex, eps)

    explicit Adjacency(const BroadcastTree& tree) : nbr(tree.vertex_count) {
        for (const auto& e : tree.edges) {
            nbr[e.u].push_back({e.v, e.eps});
            nbr[e.v].push_back({e.u, e.eps});
        }
    }
};

void check_assignment(const BroadcastTree& tree, const PlayerAssignment& assignment) {
    if (assignment.players.empty()) {
        throw std::invalid_argument("player set must be non-empty");
    }
    for (const auto& [v, f] : assignment.players) {
        if (v < 0 || v >= tree.vertex_count) {
            throw std::invalid_argument("player vertex out of range");
        }
        if (f.dimension() != tree.n_bits) {
            throw std::invalid_argument("player function dimension must match the tree");
        }
    }
}

double run_message_passing(const BroadcastTree& tree,
                           const std::vector<const BooleanFunction*>& at_vertex, int root) {
    const Adjacency adj(tree);
    const std::uint64_t size = domain_size(tree.n_bits);

    // iterative post-order
    std::vector<int> order, parent(tree.vertex_count, -1), stack{root};
    std::vector<double> parent_eps(tree.vertex_count, 0.0);
    std::vector<char> seen(tree.vertex_count, 0);
    seen[root] = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (auto [w, eps] : adj.nbr[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                parent[w] = v;
                parent_eps[w] = eps;
                stack.push_back(w);
            }
        }
    }

    std::vector<CubeFunction> message(tree.vertex_count);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int v = *it;
        CubeFunction m = at_vertex[v] ? at_vertex[v]->to_cube()
                                      : CubeFunction::constant(tree.n_bits, 1.0);
        for (auto [w, eps] : adj.nbr[v]) {
            if (w == v || parent[w] != v) continue;
            CubeFunction child = apply_noise_direct(message[w], eps);
            for (std::uint64_t x = 0; x < size; ++x) m.values[x] *= child.values[x];
        }
        message[v] = std::move(m);
    }
    return message[root].mean();
}

}  // namespace

double tree_correlation(const BroadcastTree& tree, const PlayerAssignment& assignment, int root) {
    check_assignment(tree, assignment);
    if (root < 0 || root >= tree.vertex_count) {
        throw std::invalid_argument("root vertex out of range");
    }
    std::vector<const BooleanFunction*> at_vertex(tree.vertex_count, nullptr);
    for (const auto& [v, f] : assignment.players) at_vertex[v] = &f;
    return run_message_passing(tree, at_vertex, root);
}

double tree_agreement(const BroadcastTree& tree, const PlayerAssignment& assignment) {
    check_assignment(tree, assignment);
    PlayerAssignment flipped;
    flipped.players.reserve(assignment.players.size());
    for (const auto& [v, f] : assignment.players) flipped.players.emplace_back(v, f.complement());
    return tree_correlation(tree, assignment) + tree_correlation(tree, flipped);
}

double path_dictator_bound(const std::vector<int>& gaps, double eps) {
    if (gaps.empty()) throw std::invalid_argument("path_dictator_bound needs at least one gap");
    double prod = 1.0;
    for (int g : gaps) {
        if (g < 1) throw std::invalid_argument("path gaps must be positive");
        prod *= 1.0 + std::pow(1.0 - 2.0 * eps, g);
    }
    return std::ldexp(prod, -int(gaps.size()) - 1);
}

namespace {

// canonical uniform double in [0, 1) from a raw 64-bit draw; keeps the
// simulation reproducible across standard libraries
double unit_double(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

struct ChunkStats {
    std::uint64_t hits = 0;
    std::uint64_t count = 0;
};

}  // namespace

McEstimate tree_mc_estimate(const BroadcastTree& tree, const PlayerAssignment& assignment,
                            std::uint64_t samples, std::uint64_t seed, int jobs) {
    check_assignment(tree, assignment);
    if (samples < 1) throw std::invalid_argument("tree_mc_estimate needs samples >= 1");

    const Adjacency adj(tree);
    std::vector<const BooleanFunction*> at_vertex(tree.vertex_count, nullptr);
    for (const auto& [v, f] : assignment.players) at_vertex[v] = &f;

    constexpr std::uint64_t kChunk = 1 << 16;
    const std::uint64_t num_chunks = (samples + kChunk - 1) / kChunk;
    std::vector<ChunkStats> stats(num_chunks);
    std::atomic<std::uint64_t> next{0};

    auto run_chunk = [&](std::uint64_t chunk_idx) {
        // seed_seq folds entries mod 2^32, so feed it explicit halves
        std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32),
                          std::uint32_t(chunk_idx), std::uint32_t(chunk_idx >> 32)};
        std::mt19937_64 rng(seq);
        const std::uint64_t first = chunk_idx * kChunk;
        const std::uint64_t count = std::min(samples - first, kChunk);
        const std::uint64_t mask = domain_size(tree.n_bits) - 1;
        std::vector<std::uint64_t> str(tree.vertex_count, 0);
        std::vector<int> stack;
        std::vector<char> seen(tree.vertex_count);
        ChunkStats cs;
        cs.count = count;
        for (std::uint64_t it = 0; it < count; ++it) {
            std::fill(seen.begin(), seen.end(), 0);
            str[0] = rng() & mask;
            seen[0] = 1;
            stack.assign(1, 0);
            while (!stack.empty()) {
                const int v = stack.back();
                stack.pop_back();
                for (auto [w, eps] : adj.nbr[v]) {
                    if (seen[w]) continue;
                    seen[w] = 1;
                    std::uint64_t flips = 0;
                    for (int b = 0; b < tree.n_bits; ++b) {
                        if (unit_double(rng) < eps) flips |= std::uint64_t(1) << b;
                    }
                    str[w] = str[v] ^ flips;
                    stack.push_back(w);
                }
            }
            bool all_one = true;
            for (const auto& [v, f] : assignment.players) {
                if (!f.value(str[v])) {
                    all_one = false;
                    break;
                }
            }
            if (all_one) ++cs.hits;
        }
        stats[chunk_idx] = cs;
    };

    if (jobs <= 1 || num_chunks == 1) {
        for (std::uint64_t c = 0; c < num_chunks; ++c) run_chunk(c);
    } else {
        auto worker = [&]() {
            for (;;) {
                const std::uint64_t c = next.fetch_add(1);
                if (c >= num_chunks) return;
                run_chunk(c);
            }
        };
        std::vector<std::thread> pool;
        for (int j = 0; j < std::max(1, jobs); ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::uint64_t hits = 0;
    for (const auto& cs : stats) hits += cs.hits;
    McEstimate est;
    est.samples = samples;
    est.estimate = double(hits) / double(samples);
    if (samples > 1) {
        // Bernoulli outcomes: sample variance = m(1-m) * N/(N-1)
        const double m = est.estimate;
        const double var = m * (1.0 - m) * double(samples) / double(samples - 1);
        est.standard_error = std::sqrt(var / double(samples));
    }
    return est;
}

std::pair<BroadcastTree, PlayerAssignment> tree_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("tree JSON parse error: ") + e.what());
    }
    const int n = j.at("n").get<int>();
    std::vector<BroadcastTree::Edge> edges;
    int max_vertex = 0;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 3) {
            throw std::invalid_argument("tree edge entries must be [u, v, eps]");
        }
        BroadcastTree::Edge edge{e[0].get<int>(), e[1].get<int>(), e[2].get<double>()};
        max_vertex = std::max({max_vertex, edge.u, edge.v});
        edges.push_back(edge);
    }
    PlayerAssignment assignment;
    for (const auto& pl : j.at("players")) {
        const int v = pl.at("v").get<int>();
        max_vertex = std::max(max_vertex, v);
        assignment.players.emplace_back(
            v, BooleanFunction::from_hex(n, pl.at("table_hex").get<std::string>()));
    }
    BroadcastTree tree(n, max_vertex + 1, std::move(edges));
    check_assignment(tree, assignment);
    return {std::move(tree), std::move(assignment)};
}

std::pair<BroadcastTree, PlayerAssignment> tree_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open tree file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return tree_from_json(buf.str());
}

}  // namespace nstab
