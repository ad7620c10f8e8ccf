#include "nstab/shift.hpp"

#include <bit>
#include <stdexcept>

namespace nstab {

namespace {

constexpr std::uint64_t kLowHalf[6] = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0f0f0f0f0f0f0f0fULL,
    0x00ff00ff00ff00ffULL, 0x0000ffff0000ffffULL, 0x00000000ffffffffULL,
};

void check_coordinate(const BooleanFunction& f, int coordinate) {
    if (coordinate < 1 || coordinate > f.dimension()) {
        throw std::invalid_argument("coordinate must be in [1, n]");
    }
}

// Applies the compression in place; returns the number of moved points.
std::uint64_t shift_up_in_place(BooleanFunction& f, int coordinate) {
    const int b = coordinate - 1;
    auto& w = f.words();
    std::uint64_t moved = 0;
    if (b < 6) {
        const std::uint64_t mask = kLowHalf[b];
        const int shift = 1 << b;
        for (std::uint64_t& word : w) {
            const std::uint64_t lo = word & mask;
            const std::uint64_t hi = (word >> shift) & mask;
            moved += std::uint64_t(std::popcount(lo & ~hi));
            const std::uint64_t new_hi = lo | hi;
            const std::uint64_t new_lo = lo & hi;
            word = new_lo | (new_hi << shift);
        }
    } else {
        const std::size_t stride = std::size_t(1) << (b - 6);
        for (std::size_t j = 0; j < w.size(); j += 2 * stride) {
            for (std::size_t k = 0; k < stride; ++k) {
                const std::uint64_t lo = w[j + k];
                const std::uint64_t hi = w[j + k + stride];
                moved += std::uint64_t(std::popcount(lo & ~hi));
                w[j + k] = lo & hi;
                w[j + k + stride] = lo | hi;
            }
        }
    }
    return moved;
}

}  // namespace

BooleanFunction shift_up(const BooleanFunction& f, int coordinate) {
    check_coordinate(f, coordinate);
    BooleanFunction g = f;
    shift_up_in_place(g, coordinate);
    return g;
}

std::uint64_t shift_up_moved(const BooleanFunction& f, int coordinate) {
    check_coordinate(f, coordinate);
    BooleanFunction g = f;
    return shift_up_in_place(g, coordinate);
}

std::uint64_t support_weight(const BooleanFunction& f) {
    std::uint64_t total = 0;
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        if (f.value(x)) total += std::uint64_t(std::popcount(x));
    }
    return total;
}

std::pair<BooleanFunction, ShiftTrace> monotonize(const BooleanFunction& f) {
    BooleanFunction g = f;
    ShiftTrace trace;
    const std::uint64_t pass_bound = std::uint64_t(f.dimension()) * f.size() + 1;
    bool moved_any = true;
    while (moved_any) {
        moved_any = false;
        ++trace.passes;
        for (int i = 1; i <= f.dimension(); ++i) {
            const std::uint64_t moved = shift_up_in_place(g, i);
            trace.steps.push_back({i, moved});
            if (moved) moved_any = true;
        }
        if (std::uint64_t(trace.passes) > pass_bound) {
            throw std::logic_error("monotonize exceeded its termination bound");
        }
    }
    trace.final_potential = support_weight(g);
    return {std::move(g), std::move(trace)};
}

}  // namespace nstab
