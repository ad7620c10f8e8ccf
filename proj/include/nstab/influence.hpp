#pragma once

#include <cstdint>
#include <vector>

#include "nstab/boolean_function.hpp"

namespace nstab {

enum class InfluenceMethod { flip, fourier, boundary };

struct InfluenceReport {
    std::vector<double> per_coordinate;  // I_i(f), index i-1
    double total = 0.0;
    InfluenceMethod method = InfluenceMethod::flip;
};

// The three equivalent influence notions. flip and boundary are exact
// integer counts divided by a power of two; fourier goes through the WHT.
InfluenceReport influence(const BooleanFunction& f, InfluenceMethod method);

// Exact total influence via flip counting.
double total_influence(const BooleanFunction& f);

struct EdgeBoundary {
    std::vector<std::uint64_t> per_direction;  // |d_i S|, each unordered pair once
    std::uint64_t total = 0;
};

// Cut edges of the support: pairs (x, sigma_i(x)) with x in S and
// sigma_i(x) outside. I_i(f) = |d_i S| / 2^(n-1) exactly.
EdgeBoundary edge_boundary(const BooleanFunction& f);

}  // namespace nstab
