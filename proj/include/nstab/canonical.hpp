#pragma once

#include <cstdint>

#include "nstab/boolean_function.hpp"

namespace nstab {

// Indicator of the first s strings of {0,1}^n in dictionary order on
// (x_1, ..., x_n) with x_1 most significant. For s = 2^(n-m) this is the
// subcube x_1 = ... = x_m = 0; pass reflected=true for the complementary
// orientation (support where the leading coordinates are 1), which is the
// same function up to a global input reflection.
BooleanFunction lexicographic(int n, std::uint64_t s, bool reflected = false);

// Majority of the first r coordinates (r odd): f(x) = 1 iff more than r/2
// of x_1..x_r are set. majority(n, 1) is the dictator on coordinate 1.
BooleanFunction majority(int n, int r);

BooleanFunction dictator(int n);

// Support = the all-ones point plus the first s-1 of its Hamming-distance-1
// neighbours, obtained by zeroing coordinates 1, 2, ... in order; s <= n+1.
BooleanFunction hamming_ball_like(int n, std::uint64_t s);

// f(x) <= f(y) whenever x <= y coordinatewise.
bool is_monotone(const BooleanFunction& f);

}  // namespace nstab
