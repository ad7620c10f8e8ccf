#pragma once

#include "nstab/boolean_function.hpp"

namespace nstab {

// -p log2 p - (1-p) log2(1-p), with 0 log 0 := 0; p in [0, 1].
double binary_entropy(double p);

// -H(f(Y)|X) = E[t log2 t + (1-t) log2(1-t)] with t = T_eps f; always <= 0.
double neg_cond_entropy(const BooleanFunction& f, double eps);

// I(X; f(Y)) = H(E f) - H(f(Y)|X) for the BSC(eps) cube channel, in bits.
double mutual_information(const BooleanFunction& f, double eps);

}  // namespace nstab
