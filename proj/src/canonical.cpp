#include "nstab/canonical.hpp"

#include <bit>
#include <stdexcept>

namespace nstab {

namespace {
// Reverse the low n bits of v: lexicographic rank (x_1 most significant)
// to table index (x_1 least significant).
std::uint64_t bit_reverse(std::uint64_t v, int n) {
    std::uint64_t r = 0;
    for (int i = 0; i < n; ++i) {
        r = (r << 1) | ((v >> i) & 1);
    }
    return r;
}
}  // namespace

BooleanFunction lexicographic(int n, std::uint64_t s, bool reflected) {
    const std::uint64_t size = domain_size(n);
    if (s > size) {
        throw std::invalid_argument("lexicographic support size exceeds 2^n");
    }
    BooleanFunction f(n);
    const std::uint64_t all = size - 1;
    for (std::uint64_t rank = 0; rank < s; ++rank) {
        const std::uint64_t idx = bit_reverse(rank, n);
        f.set_value(reflected ? (idx ^ all) : idx, true);
    }
    return f;
}

BooleanFunction majority(int n, int r) {
    domain_size(n);
    if (r < 1 || r > n || (r % 2) == 0) {
        throw std::invalid_argument("majority needs odd r with 1 <= r <= n");
    }
    BooleanFunction f(n);
    const std::uint64_t rmask = (std::uint64_t(1) << r) - 1;
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        if (2 * std::popcount(x & rmask) > r) f.set_value(x, true);
    }
    return f;
}

BooleanFunction dictator(int n) { return majority(n, 1); }

BooleanFunction hamming_ball_like(int n, std::uint64_t s) {
    const std::uint64_t size = domain_size(n);
    if (s < 1 || s > std::uint64_t(n) + 1) {
        throw std::invalid_argument("hamming_ball_like needs 1 <= s <= n+1");
    }
    BooleanFunction f(n);
    const std::uint64_t ones = size - 1;
    f.set_value(ones, true);
    for (std::uint64_t j = 0; j + 1 < s; ++j) {
        f.set_value(ones ^ (std::uint64_t(1) << j), true);
    }
    return f;
}

bool is_monotone(const BooleanFunction& f) {
    // violated iff some co-line has f=1 at the x_i=0 end only
    for (int b = 0; b < f.dimension(); ++b) {
        const std::uint64_t bit = std::uint64_t(1) << b;
        for (std::uint64_t x = 0; x < f.size(); ++x) {
            if (!(x & bit) && f.value(x) && !f.value(x | bit)) return false;
        }
    }
    return true;
}

}  // namespace nstab
