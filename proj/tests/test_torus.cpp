#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nstab/influence.hpp"
#include "nstab/noise.hpp"
#include "nstab/shift.hpp"
#include "nstab/torus.hpp"
#include "oracles.hpp"

using namespace nstab;

#define CHECK_NEAR(a, b, tol) CHECK(std::abs((a) - (b)) <= (tol))

namespace {
TorusFunction from_mask(int p, int n, std::uint64_t mask) {
    TorusFunction f = TorusFunction::constant(p, n, 0.0);
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        if ((mask >> x) & 1) f.values[x] = 1.0;
    }
    return f;
}

BooleanFunction cube_of(const TorusFunction& f) {
    BooleanFunction g(f.n);
    for (std::uint64_t x = 0; x < f.size(); ++x) g.set_value(x, f.values[x] == 1.0);
    return g;
}
}  // namespace

TEST_CASE("torus dft examples and properties") {
    auto one = TorusFunction::constant(3, 2, 1.0);
    auto s1 = torus_dft(one);
    CHECK_NEAR(std::abs(s1.coeffs[0] - 1.0), 0.0, 1e-12);
    for (std::uint64_t m = 1; m < 9; ++m) CHECK_NEAR(std::abs(s1.coeffs[m]), 0.0, 1e-12);

    auto delta = TorusFunction::from_support(3, 1, {0});
    auto sd = torus_dft(delta);
    for (int xi = 0; xi < 3; ++xi) {
        CHECK_NEAR(sd.coeffs[xi].real(), 1.0 / 3, 1e-14);
        CHECK_NEAR(sd.coeffs[xi].imag(), 0.0, 1e-14);
    }

    std::mt19937_64 rng(5);
    auto f = oracles::random_torus_function(5, 2, rng);
    auto back = torus_dft_inverse(torus_dft(f));
    for (std::uint64_t x = 0; x < f.size(); ++x) CHECK_NEAR(back.values[x], f.values[x], 1e-12);

    // naive definitional oracle
    auto naive = oracles::naive_torus_dft(f);
    auto s = torus_dft(f);
    for (std::uint64_t m = 0; m < f.size(); ++m) {
        CHECK_NEAR(std::abs(s.coeffs[m] - naive[m]), 0.0, 1e-12);
    }

    // Parseval and conjugate symmetry
    double lhs = 0, rhs = 0;
    for (auto c : s.coeffs) lhs += std::norm(c);
    for (double v : f.values) rhs += v * v;
    CHECK_NEAR(lhs, rhs / double(f.size()), 1e-12);
    for (std::uint64_t m = 0; m < f.size(); ++m) {
        // -xi componentwise
        std::uint64_t neg = 0, mult = 1, rest = m;
        for (int i = 0; i < f.n; ++i) {
            const int d = int(rest % 5);
            neg += std::uint64_t((5 - d) % 5) * mult;
            mult *= 5;
            rest /= 5;
        }
        CHECK_NEAR(std::abs(s.coeffs[neg] - std::conj(s.coeffs[m])), 0.0, 1e-12);
    }
}

TEST_CASE("torus noise kernels") {
    auto delta = TorusFunction::from_support(3, 1, {0});
    auto noised = torus_apply_noise(delta, 0.3, TorusNoiseModel::uniform);
    CHECK_NEAR(noised.values[0], 0.7, 1e-12);
    CHECK_NEAR(noised.values[1], 0.15, 1e-12);
    CHECK_NEAR(noised.values[2], 0.15, 1e-12);

    // at p = 3 the nearest kernel equals the uniform kernel
    auto near3 = torus_apply_noise(delta, 0.3, TorusNoiseModel::nearest);
    for (int x = 0; x < 3; ++x) CHECK_NEAR(near3.values[x], noised.values[x], 1e-12);

    std::mt19937_64 rng(6);
    auto f = oracles::random_torus_function(5, 2, rng);
    auto flat = torus_apply_noise(f, 1.0 - 1.0 / 5.0, TorusNoiseModel::uniform);
    for (double v : flat.values) CHECK_NEAR(v, f.mean(), 1e-12);

    CHECK_THROWS_AS(torus_apply_noise(f, 0.9, TorusNoiseModel::uniform), std::invalid_argument);
    CHECK_THROWS_AS(torus_apply_noise(f, 1.1, TorusNoiseModel::nearest), std::invalid_argument);
    CHECK_THROWS_AS(torus_apply_noise(f, -0.1, TorusNoiseModel::nearest), std::invalid_argument);
}

TEST_CASE("spectral noise equals direct convolution and the full-kernel oracle") {
    std::mt19937_64 rng(7);
    for (int p : {3, 5}) {
        for (int n = 1; n <= 3; ++n) {
            auto f = oracles::random_torus_function(p, n, rng);
            for (auto model : {TorusNoiseModel::uniform, TorusNoiseModel::nearest}) {
                const double top = model == TorusNoiseModel::uniform ? 1.0 - 1.0 / p : 1.0;
                for (double eps : {0.0, 0.1, 0.26, top}) {
                    auto a = torus_apply_noise(f, eps, model);
                    auto b = torus_apply_noise_direct(f, eps, model);
                    auto k = oracles::torus_kernel_noise(f, eps, model);
                    for (std::uint64_t x = 0; x < f.size(); ++x) {
                        CHECK_NEAR(a.values[x], b.values[x], 1e-12);
                        CHECK_NEAR(a.values[x], k[x], 1e-12);
                    }
                    CHECK_NEAR(a.mean(), f.mean(), 1e-12);
                }
            }
        }
    }
}

TEST_CASE("torus alpha stability") {
    auto delta = TorusFunction::from_support(3, 1, {0});
    CHECK_NEAR(torus_alpha_stability(delta, 2, 0.3, TorusNoiseModel::uniform),
               (0.49 + 2 * 0.0225) / 3.0, 1e-12);

    std::mt19937_64 rng(8);
    auto f = oracles::random_torus_boolean(5, 2, rng);
    CHECK_NEAR(torus_alpha_stability(f, 1, 0.3, TorusNoiseModel::nearest), f.mean(), 1e-12);
    CHECK_NEAR(torus_alpha_stability(f, 3, 1.0 - 1.0 / 5.0, TorusNoiseModel::uniform),
               std::pow(f.mean(), 3), 1e-12);
    CHECK_THROWS_AS(torus_alpha_stability(f, 0.5, 0.1, TorusNoiseModel::uniform),
                    std::invalid_argument);
}

TEST_CASE("torus influence examples") {
    auto delta3 = TorusFunction::from_support(3, 1, {0});
    auto r = torus_influence(delta3, TorusInfluenceFlavor::random_flip,
                             TorusInfluenceMethod::direct);
    CHECK_NEAR(r.total, 2.0 / 3.0, 1e-14);

    auto delta5 = TorusFunction::from_support(5, 1, {0});
    auto nf = torus_influence(delta5, TorusInfluenceFlavor::nearest, TorusInfluenceMethod::direct);
    CHECK_NEAR(nf.total, 2.0 / 5.0, 1e-14);
    CHECK(torus_edge_boundary(delta5).total == 2);

    auto constant = TorusFunction::constant(4, 2, 1.0);
    for (auto flavor : {TorusInfluenceFlavor::random_flip, TorusInfluenceFlavor::nearest}) {
        CHECK(torus_influence(constant, flavor, TorusInfluenceMethod::direct).total == 0.0);
    }
}

TEST_CASE("influence identities, exhaustive p=3 n=2") {
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << 9); ++mask) {
        auto f = from_mask(3, 2, mask);
        for (auto flavor : {TorusInfluenceFlavor::random_flip, TorusInfluenceFlavor::nearest}) {
            auto direct = torus_influence(f, flavor, TorusInfluenceMethod::direct);
            auto fourier = torus_influence(f, flavor, TorusInfluenceMethod::fourier);
            for (int i = 0; i < 2; ++i) {
                CHECK_NEAR(direct.per_coordinate[i], fourier.per_coordinate[i], 1e-12);
            }
            CHECK_NEAR(direct.total, fourier.total, 1e-12);
        }
        // geometric identity for the nearest flavor at p >= 3
        auto eb = torus_edge_boundary(f);
        auto near = torus_influence(f, TorusInfluenceFlavor::nearest, TorusInfluenceMethod::direct);
        for (int i = 0; i < 2; ++i) {
            CHECK_NEAR(near.per_coordinate[i], double(eb.per_direction[i]) / 9.0, 1e-14);
        }
    }
}

TEST_CASE("torus edge boundary of a point at p=3 n=2") {
    auto f = TorusFunction::from_support(3, 2, {4});
    auto eb = torus_edge_boundary(f);
    CHECK(eb.per_direction[0] == 2);
    CHECK(eb.per_direction[1] == 2);
    CHECK(eb.total == 4);
}

TEST_CASE("p=2 torus operations collapse to the cube ones") {
    std::mt19937_64 rng(9);
    for (int n : {1, 2, 4}) {
        auto tf = oracles::random_torus_boolean(2, n, rng);
        auto bf = cube_of(tf);
        for (double eps : {0.1, 0.4}) {
            auto cube_noised = apply_noise(bf.to_cube(), eps);
            for (auto model : {TorusNoiseModel::uniform, TorusNoiseModel::nearest}) {
                auto torus_noised = torus_apply_noise(tf, eps, model);
                for (std::uint64_t x = 0; x < tf.size(); ++x) {
                    CHECK_NEAR(torus_noised.values[x], cube_noised.values[x], 1e-12);
                }
            }
            CHECK_NEAR(torus_alpha_stability(tf, 2, eps, TorusNoiseModel::uniform),
                       alpha_stability(bf, 2, eps), 1e-12);
        }
        auto cube_inf = influence(bf, InfluenceMethod::flip);
        for (auto flavor : {TorusInfluenceFlavor::random_flip, TorusInfluenceFlavor::nearest}) {
            auto torus_inf = torus_influence(tf, flavor, TorusInfluenceMethod::direct);
            for (int i = 0; i < n; ++i) {
                CHECK_NEAR(torus_inf.per_coordinate[i], cube_inf.per_coordinate[i], 1e-14);
            }
        }
        auto cube_eb = edge_boundary(bf);
        auto torus_eb = torus_edge_boundary(tf);
        for (int i = 0; i < n; ++i) CHECK(cube_eb.per_direction[i] == torus_eb.per_direction[i]);

        auto [cube_mono, cube_trace] = monotonize(bf);
        auto [torus_mono, torus_trace] = torus_monotonize(tf);
        CHECK(cube_of(torus_mono) == cube_mono);
    }
}

TEST_CASE("torus monotonization") {
    auto already = TorusFunction::from_support(3, 1, {1, 2});
    CHECK(torus_is_monotone(already));
    auto [same, trace0] = torus_monotonize(already);
    for (std::uint64_t x = 0; x < 3; ++x) CHECK(same.values[x] == already.values[x]);

    auto delta = TorusFunction::from_support(3, 1, {0});
    auto [shifted, trace] = torus_monotonize(delta);
    CHECK(shifted.values[0] == 0.0);
    CHECK(shifted.values[1] == 0.0);
    CHECK(shifted.values[2] == 1.0);
    CHECK(trace.final_potential == 2);

    // exhaustive p=3 n=2: monotone output, preserved mean
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << 9); ++mask) {
        auto f = from_mask(3, 2, mask);
        auto [g, tr] = torus_monotonize(f);
        CHECK(torus_is_monotone(g));
        CHECK(g.support_size() == f.support_size());
    }
}

TEST_CASE("pair shifts never decrease convex noise functionals, p=3 n=2, |S| <= 4") {
    auto stability = [](const TorusFunction& f, double alpha, double eps) {
        return torus_alpha_stability(f, alpha, eps, TorusNoiseModel::nearest);
    };
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << 9); ++mask) {
        if (std::popcount(mask) > 4) continue;
        auto f = from_mask(3, 2, mask);
        // walk the same sweep monotonize uses, checking each step
        TorusFunction cur = f;
        for (int pass = 0; pass < 20; ++pass) {
            bool moved = false;
            for (int coord = 1; coord <= 2; ++coord) {
                for (int j = 0; j < 3; ++j) {
                    for (int k = j + 1; k < 3; ++k) {
                        auto next = torus_pair_shift(cur, coord, j, k);
                        for (double alpha : {2.0, 3.0}) {
                            for (double eps : {0.1, 0.3}) {
                                CHECK(stability(next, alpha, eps) >=
                                      stability(cur, alpha, eps) - 1e-12);
                            }
                        }
                        for (std::uint64_t x = 0; x < 9; ++x) {
                            if (next.values[x] != cur.values[x]) moved = true;
                        }
                        cur = next;
                    }
                }
            }
            if (!moved) break;
        }
        CHECK(torus_is_monotone(cur));
    }
}

TEST_CASE("weak noise prefers the least edge boundary, exhaustive p=3 n=2") {
    for (std::uint64_t s = 1; s <= 4; ++s) {
        // enumerate all supports of size s over 9 points
        std::uint64_t least_boundary = ~std::uint64_t(0);
        double best = -1;
        std::vector<std::uint64_t> argmax_masks;
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << 9); ++mask) {
            if (std::uint64_t(std::popcount(mask)) != s) continue;
            auto f = from_mask(3, 2, mask);
            least_boundary = std::min(least_boundary, torus_edge_boundary(f).total);
            const double v = torus_alpha_stability(f, 2, 0.005, TorusNoiseModel::nearest);
            if (v > best + 1e-12) {
                best = v;
                argmax_masks.assign(1, mask);
            } else if (v >= best - 1e-12) {
                argmax_masks.push_back(mask);
            }
        }
        for (std::uint64_t mask : argmax_masks) {
            CHECK(torus_edge_boundary(from_mask(3, 2, mask)).total == least_boundary);
        }
    }
}

TEST_CASE("digit-string serialization") {
    auto f = TorusFunction::from_support(3, 2, {0, 4, 8});
    const std::string digits = f.to_digits();
    CHECK(digits.size() == 9);
    CHECK(digits == "100010001");
    auto back = TorusFunction::from_digits(3, 2, digits);
    for (std::uint64_t x = 0; x < 9; ++x) CHECK(back.values[x] == f.values[x]);
    CHECK_THROWS_AS(TorusFunction::from_digits(3, 2, "12"), std::invalid_argument);
    CHECK_THROWS_AS(TorusFunction::from_digits(2, 2, "0021"), std::invalid_argument);
}
