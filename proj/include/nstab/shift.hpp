#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nstab/boolean_function.hpp"

namespace nstab {

struct ShiftStep {
    int coordinate;        // 1-based
    std::uint64_t moved;   // points relocated from x_i=0 to x_i=1
};

struct ShiftTrace {
    std::vector<ShiftStep> steps;
    int passes = 0;
    std::uint64_t final_potential = 0;  // sum over x in S of #ones(x)
};

// Up-compression along coordinate i: on every co-line with exactly one
// endpoint in the support, the surviving point lands at x_i = 1. Support
// size is preserved; monotone inputs are fixpoints.
BooleanFunction shift_up(const BooleanFunction& f, int coordinate);

std::uint64_t shift_up_moved(const BooleanFunction& f, int coordinate);

// Sweeps shift_up over i = 1..n until a full pass moves nothing. The
// output is monotone, the mean is preserved exactly, and the potential
// sum over x in S of #ones(x) strictly increases with every moving step.
std::pair<BooleanFunction, ShiftTrace> monotonize(const BooleanFunction& f);

std::uint64_t support_weight(const BooleanFunction& f);

}  // namespace nstab
