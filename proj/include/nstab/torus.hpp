#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nstab {

// Points of (Z/pZ)^n are indexed by idx(x) = sum_i x_i * p^(i-1), the
// analogue of the cube convention (coordinate 1 least significant).
std::uint64_t torus_domain_size(int p, int n);

struct TorusFunction {
    int p = 2;
    int n = 1;
    std::vector<double> values;

    TorusFunction() = default;
    TorusFunction(int p, int n, std::vector<double> v);
    static TorusFunction constant(int p, int n, double c);
    static TorusFunction from_support(int p, int n, const std::vector<std::uint64_t>& support);

    // Digit-string table format: one character per point, value digit of
    // f(x) at offset idx(x) from the right end of the string (the most
    // significant coordinate comes last in the index). Boolean tables use
    // digits 0/1.
    static TorusFunction from_digits(int p, int n, std::string_view digits);
    std::string to_digits() const;

    std::uint64_t size() const { return values.size(); }
    double mean() const;
    bool is_boolean() const;
    std::uint64_t support_size() const;
};

struct TorusSpectrum {
    int p = 2;
    int n = 1;
    std::vector<std::complex<double>> coeffs;  // coeffs[idx(xi)] = fhat(xi)
};

// fhat(xi) = E f(x) conj(e_p(xi.x)); the inverse expansion is
// f(x) = sum_xi fhat(xi) e_p(xi.x) with e_p(t) = exp(i 2 pi t / p).
TorusSpectrum torus_dft(const TorusFunction& f);
TorusFunction torus_dft_inverse(const TorusSpectrum& s);

// uniform: the noise coordinate keeps its value with probability 1-eps and
// moves to each other residue with probability eps/(p-1); spectral
// multiplier (1 - p eps/(p-1))^|supp(xi)|, eps in [0, 1-1/p].
// nearest: stays with probability 1-eps, steps +-1 with probability eps/2
// each; multiplier prod_j (1 - eps (1 - cos(2 pi xi_j / p))), eps in [0, 1].
enum class TorusNoiseModel { uniform, nearest };

TorusFunction torus_apply_noise(const TorusFunction& f, double eps, TorusNoiseModel model);

// Coordinatewise kernel convolution; independent oracle for the spectral
// path.
TorusFunction torus_apply_noise_direct(const TorusFunction& f, double eps, TorusNoiseModel model);

double torus_alpha_stability(const TorusFunction& f, double alpha, double eps,
                             TorusNoiseModel model);

// random_flip: the tested coordinate is replaced by a uniformly random
// different residue. nearest: it is shifted by +-1 with equal probability.
enum class TorusInfluenceFlavor { random_flip, nearest };
enum class TorusInfluenceMethod { direct, fourier };

struct TorusInfluenceReport {
    std::vector<double> per_coordinate;
    double total = 0.0;
    TorusInfluenceFlavor flavor = TorusInfluenceFlavor::random_flip;
    TorusInfluenceMethod method = TorusInfluenceMethod::direct;
};

TorusInfluenceReport torus_influence(const TorusFunction& f, TorusInfluenceFlavor flavor,
                                     TorusInfluenceMethod method);

struct TorusEdgeBoundary {
    std::vector<std::uint64_t> per_direction;
    std::uint64_t total = 0;
};

// +-1 neighbour pairs with exactly one endpoint in the support, each
// unordered pair counted once (at p = 2 the two directions coincide).
// For p >= 3 the nearest influence satisfies I_j = |d_j S| / p^n.
TorusEdgeBoundary torus_edge_boundary(const TorusFunction& f);

struct TorusShiftStep {
    int coordinate;  // 1-based
    int from;        // pair (from, to), from < to
    int to;
    std::uint64_t moved;
};

struct TorusShiftTrace {
    std::vector<TorusShiftStep> steps;
    int passes = 0;
    std::uint64_t final_potential = 0;  // sum over x in S of sum_i x_i
};

// true iff f is non-decreasing along every coordinate in the natural
// order 0 < 1 < ... < p-1.
bool torus_is_monotone(const TorusFunction& f);

// One compression step: on every line along the coordinate, a point at
// position j whose companion at position k is empty moves to k (j < k).
TorusFunction torus_pair_shift(const TorusFunction& f, int coordinate, int j, int k);

// Pair compressions (j < k) per coordinate, swept to a fixpoint; the
// output is monotone and the mean is preserved exactly.
std::pair<TorusFunction, TorusShiftTrace> torus_monotonize(const TorusFunction& f);

}  // namespace nstab
