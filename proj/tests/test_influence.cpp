#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nstab/canonical.hpp"
#include "nstab/influence.hpp"
#include "nstab/search.hpp"
#include "oracles.hpp"

using namespace nstab;

#define CHECK_NEAR(a, b, tol) CHECK(std::abs((a) - (b)) <= (tol))

namespace {
BooleanFunction parity_indicator(int n) {
    BooleanFunction f(n);
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        if (std::popcount(x) & 1) f.set_value(x, true);
    }
    return f;
}

void check_three_way(const BooleanFunction& f) {
    auto flip = influence(f, InfluenceMethod::flip);
    auto four = influence(f, InfluenceMethod::fourier);
    auto bdry = influence(f, InfluenceMethod::boundary);
    for (int i = 0; i < f.dimension(); ++i) {
        CHECK(flip.per_coordinate[i] == bdry.per_coordinate[i]);  // both exact
        CHECK_NEAR(flip.per_coordinate[i], four.per_coordinate[i], 1e-12);
    }
    CHECK(flip.total == bdry.total);
    CHECK_NEAR(flip.total, four.total, 1e-12);
}
}  // namespace

TEST_CASE("named influence values") {
    auto dict = dictator(4);
    auto rep = influence(dict, InfluenceMethod::flip);
    CHECK(rep.per_coordinate[0] == 1.0);
    for (int i = 1; i < 4; ++i) CHECK(rep.per_coordinate[i] == 0.0);
    CHECK(rep.total == 1.0);

    auto maj = majority(3, 3);
    auto mrep = influence(maj, InfluenceMethod::boundary);
    for (int i = 0; i < 3; ++i) CHECK(mrep.per_coordinate[i] == 0.5);
    CHECK(mrep.total == 1.5);

    for (int n : {2, 5}) {
        auto par = parity_indicator(n);
        auto prep = influence(par, InfluenceMethod::flip);
        for (int i = 0; i < n; ++i) CHECK(prep.per_coordinate[i] == 1.0);
        CHECK(prep.total == double(n));
    }
}

TEST_CASE("edge boundary counts") {
    auto none = edge_boundary(BooleanFunction(3, true));
    CHECK(none.total == 0);

    auto corner = edge_boundary(BooleanFunction::from_support(2, {0}));
    CHECK(corner.per_direction[0] == 1);
    CHECK(corner.per_direction[1] == 1);
    CHECK(corner.total == 2);
    CHECK(total_influence(BooleanFunction::from_support(2, {0})) == 1.0);

    auto dict = edge_boundary(dictator(3));
    CHECK(dict.total == 4);
    CHECK(total_influence(dictator(3)) == 1.0);
}

TEST_CASE("three-way equality, exhaustive small dimensions") {
    for (int n = 1; n <= 3; ++n) {
        const std::uint64_t size = std::uint64_t(1) << n;
        for (std::uint64_t t = 0; t < (std::uint64_t(1) << size); ++t) {
            BooleanFunction f(n);
            for (std::uint64_t x = 0; x < size; ++x) f.set_value(x, (t >> x) & 1);
            check_three_way(f);
        }
    }
}

TEST_CASE("three-way equality and the flip-count oracle on random functions") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        auto f = oracles::random_function(10, rng);
        check_three_way(f);
        auto naive = oracles::naive_influence(f);
        auto flip = influence(f, InfluenceMethod::flip);
        for (int i = 0; i < 10; ++i) CHECK(flip.per_coordinate[i] == naive[i]);
    }
}

TEST_CASE("boundary identity I_i = |d_i S| / 2^(n-1)") {
    std::mt19937_64 rng(4);
    for (int n : {1, 2, 6}) {
        auto f = oracles::random_function(n, rng);
        auto eb = edge_boundary(f);
        auto rep = influence(f, InfluenceMethod::flip);
        const double denom = std::ldexp(1.0, n - 1);
        for (int i = 0; i < n; ++i) {
            CHECK(rep.per_coordinate[i] == double(eb.per_direction[i]) / denom);
        }
    }
}

TEST_CASE("lexicographic support minimizes total influence at every size, n <= 4") {
    for (int n = 1; n <= 4; ++n) {
        const std::uint64_t size = std::uint64_t(1) << n;
        for (std::uint64_t s = 0; s <= size; ++s) {
            SearchSpec spec;
            spec.n = n;
            spec.support_size = s;
            spec.objective = Objective::total_influence_min();
            double best = 1e300;
            enumerate_functions(spec, [&](const BooleanFunction& f) {
                best = std::min(best, total_influence(f));
            });
            CHECK_NEAR(total_influence(lexicographic(n, s)), best, 0.0);
        }
    }
}
