#include "nstab/influence.hpp"

#include <bit>
#include <stdexcept>

namespace nstab {

namespace {

// Masks selecting, within one 64-bit word, the table positions whose
// coordinate bit b (b < 6) is zero.
constexpr std::uint64_t kLowHalf[6] = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0f0f0f0f0f0f0f0fULL,
    0x00ff00ff00ff00ffULL, 0x0000ffff0000ffffULL, 0x00000000ffffffffULL,
};

// Count over words of x in S with sigma_i(x) not in S (bit index b = i-1).
std::uint64_t boundary_count(const BooleanFunction& f, int b) {
    const auto& w = f.words();
    std::uint64_t cnt = 0;
    if (b < 6) {
        const std::uint64_t mask = kLowHalf[b];
        const int shift = 1 << b;
        for (std::uint64_t word : w) {
            const std::uint64_t lo = word & mask;
            const std::uint64_t hi = (word >> shift) & mask;
            cnt += std::uint64_t(std::popcount(lo ^ hi));  // lines with exactly one endpoint in S
        }
    } else {
        const std::size_t stride = std::size_t(1) << (b - 6);
        for (std::size_t j = 0; j < w.size(); j += 2 * stride) {
            for (std::size_t k = 0; k < stride; ++k) {
                cnt += std::uint64_t(std::popcount(w[j + k] ^ w[j + k + stride]));
            }
        }
    }
    return cnt;
}

}  // namespace

EdgeBoundary edge_boundary(const BooleanFunction& f) {
    EdgeBoundary eb;
    eb.per_direction.resize(f.dimension());
    for (int b = 0; b < f.dimension(); ++b) {
        eb.per_direction[b] = boundary_count(f, b);
        eb.total += eb.per_direction[b];
    }
    return eb;
}

InfluenceReport influence(const BooleanFunction& f, InfluenceMethod method) {
    InfluenceReport rep;
    rep.method = method;
    const int n = f.dimension();
    rep.per_coordinate.resize(n);
    switch (method) {
        case InfluenceMethod::flip: {
            // mu(x: f(x) != f(sigma_i(x))): each boundary edge contributes
            // both endpoints, so the count is 2 |d_i S|.
            const double denom = double(f.size());
            for (int b = 0; b < n; ++b) {
                rep.per_coordinate[b] = 2.0 * double(boundary_count(f, b)) / denom;
            }
            break;
        }
        case InfluenceMethod::boundary: {
            const double denom = double(f.size() / 2);  // 2^(n-1)
            EdgeBoundary eb = edge_boundary(f);
            for (int b = 0; b < n; ++b) {
                rep.per_coordinate[b] = double(eb.per_direction[b]) / denom;
            }
            break;
        }
        case InfluenceMethod::fourier: {
            // I_i(f) = 4 sum over A containing i of fhat(A)^2
            Spectrum s = wht(f.to_cube());
            for (std::uint64_t m = 0; m < s.coeffs.size(); ++m) {
                const double sq = 4.0 * s.coeffs[m] * s.coeffs[m];
                for (int b = 0; b < n; ++b) {
                    if ((m >> b) & 1) rep.per_coordinate[b] += sq;
                }
            }
            break;
        }
    }
    for (double v : rep.per_coordinate) rep.total += v;
    return rep;
}

double total_influence(const BooleanFunction& f) {
    double total = 0;
    const double denom = double(f.size() / 2);
    for (int b = 0; b < f.dimension(); ++b) total += double(boundary_count(f, b)) / denom;
    return total;
}

}  // namespace nstab
