#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "nstab/canonical.hpp"
#include "nstab/influence.hpp"
#include "nstab/noise.hpp"
#include "nstab/search.hpp"
#include "oracles.hpp"

using namespace nstab;

#define CHECK_NEAR(a, b, tol) CHECK(std::abs((a) - (b)) <= (tol))

namespace {
std::vector<std::string> sorted(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
}

SearchSpec balanced_stability(int n, double alpha, double eps) {
    SearchSpec spec;
    spec.n = n;
    spec.balanced = true;
    spec.objective = Objective::stability(alpha, eps);
    return spec;
}
}  // namespace

TEST_CASE("enumeration counts and order") {
    SearchSpec spec;
    spec.n = 2;
    spec.support_size = 1;
    CHECK(count_candidates(spec) == 4);

    std::vector<std::string> seen;
    enumerate_functions(spec, [&](const BooleanFunction& f) { seen.push_back(f.to_hex()); });
    CHECK(seen == std::vector<std::string>({"1", "2", "4", "8"}));

    spec.support_size = 2;
    seen.clear();
    enumerate_functions(spec, [&](const BooleanFunction& f) { seen.push_back(f.to_hex()); });
    // colex on support sets: {0,1},{0,2},{1,2},{0,3},{1,3},{2,3}
    CHECK(seen == std::vector<std::string>({"3", "5", "6", "9", "a", "c"}));

    SearchSpec bal;
    bal.n = 3;
    bal.balanced = true;
    CHECK(count_candidates(bal) == 70);

    std::uint64_t visited = 0;
    std::set<std::string> unique;
    enumerate_functions(bal, [&](const BooleanFunction& f) {
        ++visited;
        unique.insert(f.to_hex());
        CHECK(f.support_size() == 4);
    });
    CHECK(visited == 70);
    CHECK(unique.size() == 70);
}

TEST_CASE("monotone enumeration equals the brute-force filter") {
    for (int n = 1; n <= 4; ++n) {
        const std::uint64_t size = std::uint64_t(1) << n;
        for (std::uint64_t s = 0; s <= size; ++s) {
            SearchSpec spec;
            spec.n = n;
            spec.support_size = s;
            spec.monotone_only = true;
            std::set<std::string> enumerated;
            enumerate_functions(spec,
                                [&](const BooleanFunction& f) { enumerated.insert(f.to_hex()); });
            std::set<std::string> expected;
            for (std::uint64_t t = 0; t < (std::uint64_t(1) << size); ++t) {
                BooleanFunction f(n);
                for (std::uint64_t x = 0; x < size; ++x) f.set_value(x, (t >> x) & 1);
                if (f.support_size() == s && is_monotone(f)) expected.insert(f.to_hex());
            }
            CHECK(enumerated == expected);
            CHECK(count_candidates(spec) == expected.size());
        }
    }
    // the balanced monotone functions on two coordinates are the two dictators
    SearchSpec spec;
    spec.n = 2;
    spec.balanced = true;
    spec.monotone_only = true;
    std::vector<std::string> seen;
    enumerate_functions(spec, [&](const BooleanFunction& f) { seen.push_back(f.to_hex()); });
    CHECK(sorted(seen) == std::vector<std::string>({"a", "c"}));
}

TEST_CASE("budget refusal carries the count") {
    SearchSpec spec;
    spec.n = 4;
    spec.balanced = true;
    spec.budget = 100;
    CHECK_THROWS_AS(maximize(spec), BudgetExceeded);
    try {
        maximize(spec);
    } catch (const BudgetExceeded& e) {
        CHECK(e.required == 12870);
        CHECK(e.budget == 100);
    }
}

TEST_CASE("balanced second-moment argmax is the dictator family") {
    auto result = maximize(balanced_stability(3, 2, 0.26));
    CHECK(result.evaluated_count == 70);
    const double rho = 0.48 * 0.48;
    CHECK_NEAR(result.best_value, 0.25 + rho / 4.0, 1e-12);
    // every +-dictator attains the same second moment, so the argmax set
    // is the six dictators-or-complements
    CHECK(sorted(result.argmax_hex) ==
          std::vector<std::string>({"0f", "33", "55", "aa", "cc", "f0"}));
}

TEST_CASE("large integer moment singles out the majority translate orbit") {
    auto result = maximize(balanced_stability(3, 50, 0.1));
    // the stability is invariant under input translation x -> x + a, so
    // the eight translates of Maj3 tie exactly; nothing else does, and
    // Maj3 is the only monotone member
    std::set<std::string> orbit;
    for (std::uint64_t a = 0; a < 8; ++a) {
        BooleanFunction g(3);
        for (std::uint64_t x = 0; x < 8; ++x) g.set_value(x, majority(3, 3).value(x ^ a));
        orbit.insert(g.to_hex());
    }
    CHECK(std::set<std::string>(result.argmax_hex.begin(), result.argmax_hex.end()) == orbit);
    CHECK(majority(3, 3).to_hex() == "e8");
    int monotone_members = 0;
    for (const auto& hex : result.argmax_hex) {
        monotone_members += is_monotone(BooleanFunction::from_hex(3, hex));
    }
    CHECK(monotone_members == 1);
}

TEST_CASE("influence minimizers include the lexicographic function") {
    SearchSpec spec;
    spec.n = 4;
    spec.support_size = 4;
    spec.objective = Objective::total_influence_min();
    auto result = maximize(spec);
    CHECK(result.evaluated_count == 1820);
    CHECK_NEAR(result.best_value, total_influence(lexicographic(4, 4)), 0.0);
    const auto hex = lexicographic(4, 4).to_hex();
    CHECK(std::count(result.argmax_hex.begin(), result.argmax_hex.end(), hex) == 1);
}

TEST_CASE("weak noise favors lexicographic supports") {
    const int n = 3;
    for (std::uint64_t s = 0; s <= 8; ++s) {
        for (double alpha : {2.0, 3.0}) {
            SearchSpec spec;
            spec.n = n;
            spec.support_size = s;
            spec.objective = Objective::stability(alpha, 0.01);
            auto result = maximize(spec);
            const double lex_value = alpha_stability(lexicographic(n, s), alpha, 0.01);
            CHECK(lex_value >= result.best_value - 1e-12);
        }
    }
}

TEST_CASE("strong noise argmax matches the degree-1 weight argmax") {
    const int n = 3;
    for (std::uint64_t s = 0; s <= 8; ++s) {
        for (double alpha : {2.0, 3.0}) {
            SearchSpec stab;
            stab.n = n;
            stab.support_size = s;
            stab.objective = Objective::stability(alpha, 0.49);
            stab.stream_all = true;
            SearchSpec deg;
            deg.n = n;
            deg.support_size = s;
            deg.objective = Objective::degree1_weight();
            deg.stream_all = true;
            CHECK(sorted(maximize(stab).argmax_hex) == sorted(maximize(deg).argmax_hex));
        }
    }
}

TEST_CASE("restricting to monotone functions loses nothing for convex objectives") {
    for (int n = 3; n <= 4; ++n) {
        const std::uint64_t size = std::uint64_t(1) << n;
        // every support size under the second moment
        for (std::uint64_t s = 0; s <= size; ++s) {
            SearchSpec all;
            all.n = n;
            all.support_size = s;
            all.objective = Objective::stability(2, 0.26);
            SearchSpec mono = all;
            mono.monotone_only = true;
            CHECK_NEAR(maximize(all).best_value, maximize(mono).best_value, 1e-12);
        }
        // a spread of sizes under the other convex objectives
        for (std::uint64_t s : {std::uint64_t(2), size / 2, size - 3}) {
            for (const Objective& obj :
                 {Objective::stability(1.5, 0.1), Objective::agreement(3, 0.26),
                  Objective::mutual_info(0.26)}) {
                SearchSpec all;
                all.n = n;
                all.support_size = s;
                all.objective = obj;
                SearchSpec mono = all;
                mono.monotone_only = true;
                CHECK_NEAR(maximize(all).best_value, maximize(mono).best_value, 1e-12);
            }
        }
    }
}

TEST_CASE("agreement argmax sets at sizes s and 2^n - s correspond under complement") {
    const int n = 3;
    for (std::uint64_t s = 1; s <= 4; ++s) {
        SearchSpec a;
        a.n = n;
        a.support_size = s;
        a.objective = Objective::agreement(2, 0.26);
        a.stream_all = true;
        SearchSpec b = a;
        b.support_size = (std::uint64_t(1) << n) - s;
        auto ra = maximize(a);
        auto rb = maximize(b);
        CHECK_NEAR(ra.best_value, rb.best_value, 1e-12);
        std::vector<std::string> complemented;
        for (const auto& hex : ra.argmax_hex) {
            complemented.push_back(BooleanFunction::from_hex(n, hex).complement().to_hex());
        }
        CHECK(sorted(complemented) == sorted(rb.argmax_hex));
    }
}

TEST_CASE("parallel evaluation returns the sequential result") {
    auto spec = balanced_stability(4, 2, 0.26);
    spec.stream_all = true;
    auto seq = maximize(spec);
    spec.jobs = 3;
    auto par = maximize(spec);
    CHECK(seq.best_value == par.best_value);
    CHECK(seq.argmax_hex == par.argmax_hex);
    CHECK(seq.evaluated_count == par.evaluated_count);
    CHECK(seq.evaluated_count == 12870);
}

TEST_CASE("argmax cap truncates but flags") {
    SearchSpec spec;
    spec.n = 3;
    spec.support_size = 2;
    spec.objective = Objective::stability(1, 0.2);  // constant objective: everything ties
    spec.argmax_cap = 5;
    auto result = maximize(spec);
    CHECK(result.argmax_hex.size() == 5);
    CHECK(result.argmax_truncated);
    spec.stream_all = true;
    auto full = maximize(spec);
    CHECK(full.argmax_hex.size() == 28);
    CHECK(!full.argmax_truncated);
}

TEST_CASE("compare_named") {
    std::vector<std::pair<std::string, BooleanFunction>> maj_cands;
    maj_cands.emplace_back("maj:1", majority(5, 1));
    maj_cands.emplace_back("maj:3", majority(5, 3));
    maj_cands.emplace_back("maj:5", majority(5, 5));
    auto rows = compare_named(5, maj_cands, Objective::stability(10, 0.26));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].label == "maj:3");
    CHECK(rows[1].label == "maj:1");
    CHECK(rows[2].label == "maj:5");
    CHECK(rows[0].value >= 0.0248);
    CHECK(rows[1].value <= 0.0247);
    CHECK(rows[2].value <= 0.0244);

    std::vector<std::pair<std::string, BooleanFunction>> dict_cand;
    dict_cand.emplace_back("dict", dictator(1));
    CHECK_NEAR(compare_named(1, dict_cand, Objective::stability(2, 0.25))[0].value, 0.3125, 1e-15);

    std::mt19937_64 rng(3);
    auto f = oracles::random_function(4, rng);
    std::vector<std::pair<std::string, BooleanFunction>> pair_cand;
    pair_cand.emplace_back("f", f);
    pair_cand.emplace_back("not-f", f.complement());
    auto deg = compare_named(4, pair_cand, Objective::degree1_weight());
    CHECK_NEAR(deg[0].value, deg[1].value, 1e-12);

    CHECK_THROWS_AS(compare_named(3, pair_cand, Objective::degree1_weight()),
                    std::invalid_argument);
}

TEST_CASE("canonicalize is permutation-invariant reporting") {
    auto d1 = dictator(3);
    BooleanFunction d2(3);
    for (std::uint64_t x = 0; x < 8; ++x) {
        if ((x >> 1) & 1) d2.set_value(x, true);  // coordinate 2
    }
    CHECK(canonicalize(d1, false) == canonicalize(d2, false));
    CHECK(canonicalize(d1, true) == canonicalize(d1.complement(), true));
    CHECK_THROWS_AS(canonicalize(BooleanFunction(9), false), std::invalid_argument);
}
