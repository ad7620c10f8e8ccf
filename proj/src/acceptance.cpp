#include "nstab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <set>
#include <vector>

#include "nstab/boolean_function.hpp"
#include "nstab/canonical.hpp"
#include "nstab/influence.hpp"
#include "nstab/mutual_info.hpp"
#include "nstab/noise.hpp"
#include "nstab/search.hpp"
#include "nstab/shift.hpp"
#include "nstab/torus.hpp"
#include "nstab/tree.hpp"

namespace nstab::acceptance {

namespace {

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof(buf), pattern, args);
    va_end(args);
    return buf;
}

struct Check {
    bool pass = true;
    std::vector<std::string> problems;
    int performed = 0;

    void expect(bool ok, std::string what) {
        ++performed;
        if (!ok) {
            pass = false;
            if (problems.size() < 16) problems.push_back(std::move(what));
        }
    }

    std::string summary(const std::string& ok_text) const {
        if (pass) return ok_text;
        std::string out = fmt("%zu problem(s): ", problems.size());
        for (std::size_t i = 0; i < problems.size(); ++i) {
            if (i) out += "; ";
            out += problems[i];
        }
        return out;
    }
};

std::mt19937_64 seeded(std::uint64_t seed) { return std::mt19937_64(seed); }

BooleanFunction random_function(int n, std::mt19937_64& rng) {
    BooleanFunction f(n);
    for (std::uint64_t x = 0; x < f.size(); ++x) f.set_value(x, rng() & 1);
    return f;
}

CubeFunction random_cube(int n, std::mt19937_64& rng) {
    CubeFunction f = CubeFunction::constant(n, 0.0);
    for (auto& v : f.values) v = double(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    return f;
}

TorusFunction random_torus(int p, int n, std::mt19937_64& rng) {
    TorusFunction f = TorusFunction::constant(p, n, 0.0);
    for (auto& v : f.values) v = double(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    return f;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

void for_each_function(int n, const std::function<void(const BooleanFunction&)>& visit) {
    const std::uint64_t size = std::uint64_t(1) << n;
    for (std::uint64_t t = 0; t < (std::uint64_t(1) << size); ++t) {
        BooleanFunction f(n);
        for (std::uint64_t x = 0; x < size; ++x) f.set_value(x, (t >> x) & 1);
        visit(f);
    }
}

std::set<std::string> plus_minus_dictators(int n) {
    std::set<std::string> out;
    for (int i = 1; i <= n; ++i) {
        BooleanFunction f(n);
        for (std::uint64_t x = 0; x < f.size(); ++x) {
            if ((x >> (i - 1)) & 1) f.set_value(x, true);
        }
        out.insert(f.to_hex());
        out.insert(f.complement().to_hex());
    }
    return out;
}

std::set<std::string> argmax_set(SearchSpec spec) {
    spec.stream_all = true;
    auto r = maximize(spec);
    return {r.argmax_hex.begin(), r.argmax_hex.end()};
}

// ---- criterion 1 ---------------------------------------------------------

CriterionResult run_maj_comparison(int) {
    Check c;
    const double m1 = alpha_stability(majority(5, 1), 10, 0.26);
    const double m3 = alpha_stability(majority(5, 3), 10, 0.26);
    const double m5 = alpha_stability(majority(5, 5), 10, 0.26);
    c.expect(m1 <= 0.0247, fmt("maj1 moment %.6f > 0.0247", m1));
    c.expect(m5 <= 0.0244, fmt("maj5 moment %.6f > 0.0244", m5));
    c.expect(m3 >= 0.0248, fmt("maj3 moment %.6f < 0.0248", m3));
    c.expect(m3 > m1 && m1 > m5, "ordering maj3 > maj1 > maj5 violated");
    CriterionResult r;
    r.pass = c.pass;
    r.details = c.summary(fmt("maj1=%.6f maj3=%.6f maj5=%.6f", m1, m3, m5));
    return r;
}

// ---- criterion 2 ---------------------------------------------------------

CriterionResult run_noise_oracle(int) {
    Check c;
    auto rng = seeded(0x5eed0002);
    double worst = 0;
    for (int n = 1; n <= 12; ++n) {
        for (int rep = 0; rep < 100; ++rep) {
            auto f = random_cube(n, rng);
            for (double eps : {0.0, 0.1, 0.26, 0.5}) {
                const double d =
                    max_abs_diff(apply_noise(f, eps).values, apply_noise_direct(f, eps).values);
                worst = std::max(worst, d);
                if (d > 1e-12) {
                    c.expect(false, fmt("cube n=%d eps=%.2f diff=%.3g", n, eps, d));
                }
            }
        }
    }
    double tworst = 0;
    for (int p : {3, 5}) {
        for (int n = 1; n <= 3; ++n) {
            for (int rep = 0; rep < 20; ++rep) {
                auto f = random_torus(p, n, rng);
                for (auto model : {TorusNoiseModel::uniform, TorusNoiseModel::nearest}) {
                    const double top = model == TorusNoiseModel::uniform ? 1.0 - 1.0 / p : 1.0;
                    for (double eps : {0.0, 0.1, 0.26, top}) {
                        const double d = max_abs_diff(torus_apply_noise(f, eps, model).values,
                                                      torus_apply_noise_direct(f, eps, model).values);
                        tworst = std::max(tworst, d);
                        if (d > 1e-12) {
                            c.expect(false, fmt("torus p=%d n=%d eps=%.2f diff=%.3g", p, n, eps, d));
                        }
                    }
                }
            }
        }
    }
    CriterionResult r;
    r.pass = c.pass;
    r.details = c.summary(fmt("max |spectral-direct|: cube %.3g, torus %.3g", worst, tworst));
    return r;
}

// ---- criterion 3 ---------------------------------------------------------

CriterionResult run_influence_equality(int) {
    Check c;
    auto check_one = [&](const BooleanFunction& f, const char* tag) {
        auto flip = influence(f, InfluenceMethod::flip);
        auto four = influence(f, InfluenceMethod::fourier);
        auto bdry = influence(f, InfluenceMethod::boundary);
        for (int i = 0; i < f.dimension(); ++i) {
            c.expect(flip.per_coordinate[i] == bdry.per_coordinate[i],
                     fmt("%s: flip vs boundary coordinate %d", tag, i + 1));
            c.expect(std::abs(flip.per_coordinate[i] - four.per_coordinate[i]) <= 1e-12,
                     fmt("%s: flip vs fourier coordinate %d", tag, i + 1));
        }
    };
    for (int n = 1; n <= 3; ++n) {
        for_each_function(n, [&](const BooleanFunction& f) { check_one(f, "exhaustive"); });
    }
    for_each_function(4, [&](const BooleanFunction& f) { check_one(f, "n=4"); });
    auto rng = seeded(0x5eed0003);
    for (int rep = 0; rep < 100; ++rep) check_one(random_function(10, rng), "n=10");

    // torus: both Fourier identities, exhaustive p=3 n=2
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << 9); ++mask) {
        TorusFunction f = TorusFunction::constant(3, 2, 0.0);
        for (std::uint64_t x = 0; x < 9; ++x) f.values[x] = double((mask >> x) & 1);
        for (auto flavor : {TorusInfluenceFlavor::random_flip, TorusInfluenceFlavor::nearest}) {
            auto direct = torus_influence(f, flavor, TorusInfluenceMethod::direct);
            auto four = torus_influence(f, flavor, TorusInfluenceMethod::fourier);
            for (int i = 0; i < 2; ++i) {
                c.expect(std::abs(direct.per_coordinate[i] - four.per_coordinate[i]) <= 1e-12,
                         fmt("torus mask=%llu flavor=%d coordinate %d",
                             (unsigned long long)mask, int(flavor), i + 1));
            }
        }
        auto eb = torus_edge_boundary(f);
        auto near = torus_influence(f, TorusInfluenceFlavor::nearest, TorusInfluenceMethod::direct);
        for (int i = 0; i < 2; ++i) {
            c.expect(near.per_coordinate[i] == double(eb.per_direction[i]) / 9.0,
                     fmt("torus boundary identity mask=%llu", (unsigned long long)mask));
        }
    }
    CriterionResult r;
    r.pass = c.pass;
    r.details = c.summary(fmt("%d comparisons, all within 1e-12 (exact for counting paths)",
                              c.performed));
    return r;
}

// ---- criterion 4 ---------------------------------------------------------

CriterionResult run_derivative_identity(int) {
    Check c;
    auto rng = seeded(0x5eed0004);
    const double h = 1e-5;
    double worst_rel = 0;
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 1 + int(rng() % 8);
        BooleanFunction f = random_function(n, rng);
        if (f.support_size() == 0 || f.support_size() == f.size()) {
            --rep;
            continue;  // constants have zero slope; relative error is undefined
        }
        for (double alpha : {2.0, 3.0}) {
            const double fd =
                (alpha_stability(f, alpha, h) - alpha_stability(f, alpha, -h)) / (2 * h);
            const double exact = stability_slope_zero(f, alpha);
            const double rel = std::abs(fd - exact) / std::abs(exact);
            worst_rel = std::max(worst_rel, rel);
            c.expect(rel <= 1e-6, fmt("n=%d alpha=%g rel=%.3g", n, alpha, rel));
        }
    }
    CriterionResult r;
    r.pass = c.pass;
    r.details = c.summary(fmt("50 functions x alpha in {2,3}; worst relative error %.3g", worst_rel));
    return r;
}

// ---- criterion 5 ---------------------------------------------------------

CriterionResult run_extremal_suite(int jobs) {
    Check c;
    std::string notes;

    // (a) balanced second moment: argmax is exactly the +-dictators
    for (int n : {3, 4}) {
        for (double eps : {0.1, 0.2, 0.3, 0.4}) {
            SearchSpec spec;
            spec.n = n;
            spec.balanced = true;
            spec.objective = Objective::stability(2, eps);
            spec.jobs = jobs;
            c.expect(argmax_set(spec) == plus_minus_dictators(n),
                     fmt("(a) n=%d eps=%.1f argmax is not the dictator family", n, eps));
        }
    }

    // (b) weak noise: the lexicographic function attains the maximum
    for (int n : {3, 4}) {
        const std::uint64_t size = std::uint64_t(1) << n;
        for (std::uint64_t s = 0; s <= size; ++s) {
            for (double alpha : {2.0, 3.0}) {
                SearchSpec spec;
                spec.n = n;
                spec.support_size = s;
                spec.objective = Objective::stability(alpha, 0.01);
                spec.jobs = jobs;
                auto r = maximize(spec);
                const double lex = alpha_stability(lexicographic(n, s), alpha, 0.01);
                c.expect(lex >= r.best_value - 1e-12,
                         fmt("(b) n=%d s=%llu alpha=%g lex below max by %.3g", n,
                             (unsigned long long)s, alpha, r.best_value - lex));
            }
        }
    }

    // (c) strong noise: stability argmax set vs degree-1-weight argmax set
    int c_equal = 0, c_total = 0, c_containment_failures = 0;
    std::string c_failures;
    for (int n : {3, 4}) {
        const std::uint64_t size = std::uint64_t(1) << n;
        for (std::uint64_t s = 0; s <= size; ++s) {
            for (double alpha : {2.0, 3.0}) {
                SearchSpec stab;
                stab.n = n;
                stab.support_size = s;
                stab.objective = Objective::stability(alpha, 0.49);
                stab.jobs = jobs;
                SearchSpec deg = stab;
                deg.objective = Objective::degree1_weight();
                const auto sa = argmax_set(stab);
                const auto sd = argmax_set(deg);
                ++c_total;
                if (sa == sd) {
                    ++c_equal;
                } else {
                    c_failures += fmt(" [n=%d s=%llu alpha=%g: %zu vs %zu]", n,
                                      (unsigned long long)s, alpha, sa.size(), sd.size());
                    if (!std::includes(sd.begin(), sd.end(), sa.begin(), sa.end())) {
                        ++c_containment_failures;
                    }
                }
            }
        }
    }
    c.expect(c_equal == c_total,
             fmt("(c) argmax set equality fails in %d/%d cells:%s (containment failures: %d)",
                 c_total - c_equal, c_total, c_failures.c_str(), c_containment_failures));

    // (d) balanced alpha=50: the Maj3 translate orbit, Maj3 its sole monotone member
    {
        SearchSpec spec;
        spec.n = 3;
        spec.balanced = true;
        spec.objective = Objective::stability(50, 0.1);
        spec.jobs = jobs;
        const auto am = argmax_set(spec);
        std::set<std::string> orbit;
        for (std::uint64_t a = 0; a < 8; ++a) {
            BooleanFunction g(3);
            for (std::uint64_t x = 0; x < 8; ++x) g.set_value(x, majority(3, 3).value(x ^ a));
            orbit.insert(g.to_hex());
        }
        c.expect(am == orbit, "(d) argmax is not the Maj3 translate orbit");
        int monotone_members = 0;
        for (const auto& hex : am) monotone_members += is_monotone(BooleanFunction::from_hex(3, hex));
        c.expect(monotone_members == 1 && am.count(majority(3, 3).to_hex()) == 1,
                 "(d) Maj3 is not the unique monotone argmax");
    }

    // (e) lexicographic minimizes total influence
    for (int n = 1; n <= 4; ++n) {
        const std::uint64_t size = std::uint64_t(1) << n;
        for (std::uint64_t s = 0; s <= size; ++s) {
            SearchSpec spec;
            spec.n = n;
            spec.support_size = s;
            spec.objective = Objective::total_influence_min();
            spec.jobs = jobs;
            auto r = maximize(spec);
            c.expect(total_influence(lexicographic(n, s)) == r.best_value,
                     fmt("(e) n=%d s=%llu lex influence above the minimum", n,
                         (unsigned long long)s));
        }
    }

    CriterionResult r;
    r.pass = c.pass;
    r.details = c.summary("(a) dictator family, (b) lex max, (c) set equality, (d) Maj3 orbit, (e) lex min influence: all hold");
    return r;
}

// ---- criterion 6 ---------------------------------------------------------

struct PhiGrid {
    std::vector<PhiSpec> phis;
    std::vector<double> eps;

    PhiGrid()
        : phis{PhiSpec::power(2), PhiSpec::power(3), PhiSpec::power(1.5), PhiSpec::entropy_pair(),
               PhiSpec::hellinger()},
          eps{0.1, 0.26, 0.4} {}

    std::vector<double> evaluate(const BooleanFunction& f) const {
        std::vector<double> out;
        out.reserve(phis.size() * eps.size());
        for (double e : eps) {
            CubeFunction t = apply_noise(f.to_cube(), e);
            for (const auto& phi : phis) {
                double s = 0;
                for (double v : t.values) s += phi(v);
                out.push_back(s / double(t.values.size()));
            }
        }
        return out;
    }
};

bool check_monotonize_one(const BooleanFunction& f, const PhiGrid& grid, Check& c,
                          const char* tag) {
    BooleanFunction cur = f;
    std::vector<double> cur_vals = grid.evaluate(cur);
    bool ok = true;
    for (int pass = 1;; ++pass) {
        bool moved_any = false;
        for (int i = 1; i <= f.dimension(); ++i) {
            BooleanFunction next = shift_up(cur, i);
            const bool moved = !(next == cur);
            moved_any = moved_any || moved;
            std::vector<double> next_vals = grid.evaluate(next);
            for (std::size_t j = 0; j < next_vals.size(); ++j) {
                if (!(next_vals[j] >= cur_vals[j] - 1e-12)) {
                    c.expect(false, fmt("%s: Phi drop %.3g at step (pass %d, coord %d)", tag,
                                        cur_vals[j] - next_vals[j], pass, i));
                    ok = false;
                }
            }
            cur = std::move(next);
            cur_vals = std::move(next_vals);
        }
        if (!moved_any) break;
    }
    c.expect(is_monotone(cur), fmt("%s: fixpoint not monotone", tag));
    c.expect(cur.support_size() == f.support_size(), fmt("%s: mean not preserved", tag));
    return ok;
}

CriterionResult run_monotonization(int) {
    Check c;
    PhiGrid grid;
    for (int n = 1; n <= 4; ++n) {
        for_each_function(n, [&](const BooleanFunction& f) {
            check_monotonize_one(f, grid, c, "exhaustive");
        });
    }
    auto rng = seeded(0x5eed0006);
    for (int rep = 0; rep < 1000; ++rep) {
        check_monotonize_one(random_function(10, rng), grid, c, "random n=10");
    }

    // torus analog, exhaustive p=3 n=2, |S| <= 4, nearest model (== uniform at p=3)
    auto torus_stab = [](const TorusFunction& f, double alpha, double eps) {
        return torus_alpha_stability(f, alpha, eps, TorusNoiseModel::nearest);
    };
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << 9); ++mask) {
        if (std::popcount(mask) > 4) continue;
        TorusFunction f = TorusFunction::constant(3, 2, 0.0);
        for (std::uint64_t x = 0; x < 9; ++x) f.values[x] = double((mask >> x) & 1);
        TorusFunction cur = f;
        for (int pass = 0; pass < 20; ++pass) {
            bool moved = false;
            for (int coord = 1; coord <= 2; ++coord) {
                for (int j = 0; j < 3; ++j) {
                    for (int k = j + 1; k < 3; ++k) {
                        TorusFunction next = torus_pair_shift(cur, coord, j, k);
                        for (double alpha : {2.0, 3.0}) {
                            for (double eps : {0.1, 0.26, 0.4}) {
                                c.expect(torus_stab(next, alpha, eps) >=
                                             torus_stab(cur, alpha, eps) - 1e-12,
                                         fmt("torus mask=%llu Phi drop",
                                             (unsigned long long)mask));
                            }
                        }
                        for (std::uint64_t x = 0; x < 9; ++x) {
                            if (next.values[x] != cur.values[x]) moved = true;
                        }
                        cur = std::move(next);
                    }
                }
            }
            if (!moved) break;
        }
        c.expect(torus_is_monotone(cur), fmt("torus mask=%llu fixpoint not monotone",
                                             (unsigned long long)mask));
        c.expect(cur.support_size() == f.support_size(), "torus mean not preserved");
    }
    CriterionResult r;
    r.pass = c.pass;
    r.details = c.summary(fmt("%d step/fixpoint checks, none decreasing beyond -1e-12", c.performed));
    return r;
}

// ---- criterion 7 ---------------------------------------------------------

double joint_mi_oracle(const BooleanFunction& f, double eps) {
    const std::uint64_t size = f.size();
    const int n = f.dimension();
    std::vector<double> t1(size, 0.0);
    for (std::uint64_t x = 0; x < size; ++x) {
        for (std::uint64_t y = 0; y < size; ++y) {
            if (f.value(y)) {
                const int d = std::popcount(x ^ y);
                t1[x] += std::pow(eps, d) * std::pow(1 - eps, n - d);
            }
        }
    }
    double p1 = 0;
    for (double t : t1) p1 += t;
    p1 /= double(size);
    const double pb[2] = {1 - p1, p1};
    double info = 0;
    for (std::uint64_t x = 0; x < size; ++x) {
        const double tb[2] = {1 - t1[x], t1[x]};
        for (int b = 0; b < 2; ++b) {
            if (tb[b] > 0 && pb[b] > 0) info += tb[b] * std::log2(tb[b] / pb[b]) / double(size);
        }
    }
    return info;
}

CriterionResult run_mutual_information(int jobs) {
    Check c;
    for (double eps : {0.05, 0.1, 0.25, 0.4, 0.49}) {
        const double got = mutual_information(dictator(5), eps);
        const double want = 1.0 - binary_entropy(eps);
        c.expect(std::abs(got - want) <= 1e-12,
                 fmt("dictator MI at eps=%.2f off by %.3g", eps, got - want));
    }
    auto rng = seeded(0x5eed0007);
    double worst = 0;
    for (int n = 1; n <= 6; ++n) {
        for (int rep = 0; rep < 10; ++rep) {
            auto f = random_function(n, rng);
            for (double eps : {0.1, 0.26, 0.45}) {
                const double d = std::abs(mutual_information(f, eps) - joint_mi_oracle(f, eps));
                worst = std::max(worst, d);
                c.expect(d <= 1e-10, fmt("joint oracle n=%d eps=%.2f diff=%.3g", n, eps, d));
            }
        }
    }
    // alpha-derivative identity, relative 1e-5
    const double h = 1e-6;
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 1 + int(rng() % 5);
        auto f = random_function(n, rng);
        if (f.support_size() == 0 || f.support_size() == f.size()) {
            --rep;
            continue;
        }
        for (double eps : {0.1, 0.3}) {
            auto t = apply_noise(f.to_cube(), eps);
            auto moment = [&](double alpha) {
                double s = 0;
                for (double v : t.values) {
                    if (v > 0) s += std::pow(v, alpha);
                    if (1 - v > 0) s += std::pow(1 - v, alpha);
                }
                return s / double(t.values.size());
            };
            const double fd = (moment(1 + h) - moment(1 - h)) / (2 * h) / std::log(2.0);
            const double exact = neg_cond_entropy(f, eps);
            c.expect(std::abs(fd - exact) <= 1e-5 * std::abs(exact),
                     fmt("alpha derivative n=%d eps=%.2f", n, eps));
        }
    }
    // exhaustive n=3 balanced at eps=0.49: the dictator family maximizes MI
    {
        SearchSpec spec;
        spec.n = 3;
        spec.balanced = true;
        spec.objective = Objective::mutual_info(0.49);
        spec.jobs = jobs;
        c.expect(argmax_set(spec) == plus_minus_dictators(3),
                 "balanced n=3 MI argmax is not the dictator family");
    }
    // eps-grid monotonicity spot check
    for (int rep = 0; rep < 5; ++rep) {
        const int n = 1 + int(rng() % 5);
        auto f = random_function(n, rng);
        double prev = mutual_information(f, 0.0);
        for (int i = 1; i <= 10; ++i) {
            const double cur = mutual_information(f, 0.05 * i);
            c.expect(cur <= prev + 1e-12, fmt("MI increased along the eps grid (n=%d)", n));
            prev = cur;
        }
    }
    CriterionResult r;
    r.pass = c.pass;
    r.details = c.summary(fmt("dictator 1-h(eps) exact; joint-oracle worst diff %.3g", worst));
    return r;
}

// ---- criterion 8 ---------------------------------------------------------

CriterionResult run_tree(int) {
    Check c;
    // star = cube alpha-stability
    for (int k : {2, 3, 5}) {
        std::vector<std::pair<int, int>> edges;
        for (int i = 1; i <= k; ++i) edges.push_back({0, i});
        auto tree = BroadcastTree::uniform(3, k + 1, edges, 0.26);
        PlayerAssignment players;
        for (int i = 1; i <= k; ++i) players.players.emplace_back(i, majority(3, 3));
        const double d = std::abs(tree_correlation(tree, players) -
                                  alpha_stability(majority(3, 3), k, 0.26));
        c.expect(d <= 1e-12, fmt("star k=%d differs from the cube moment by %.3g", k, d));
    }
    // path bound attained exactly by identical dictators
    struct PathCase {
        std::vector<int> positions;
        std::vector<int> gaps;
    };
    const PathCase cases[] = {{{0, 1}, {1}}, {{0, 2}, {2}}, {{0, 1, 2}, {1, 1}}};
    for (const auto& pc : cases) {
        for (double eps : {0.1, 0.25}) {
            const int len = pc.positions.back() + 1;
            std::vector<std::pair<int, int>> edges;
            for (int i = 0; i + 1 < len; ++i) edges.push_back({i, i + 1});
            auto tree = BroadcastTree::uniform(2, len, edges, eps);
            PlayerAssignment players;
            for (int v : pc.positions) players.players.emplace_back(v, dictator(2));
            const double bound = path_dictator_bound(pc.gaps, eps);
            const double got = tree_correlation(tree, players);
            c.expect(std::abs(got - bound) <= 1e-12,
                     fmt("path gaps bound missed by %.3g at eps=%.2f", got - bound, eps));
        }
    }
    // exhaustive balanced triples never beat the bound
    {
        std::vector<BooleanFunction> balanced;
        for (std::uint64_t t = 0; t < 16; ++t) {
            BooleanFunction f(2);
            for (std::uint64_t x = 0; x < 4; ++x) f.set_value(x, (t >> x) & 1);
            if (f.is_balanced()) balanced.push_back(f);
        }
        for (double eps : {0.1, 0.25}) {
            auto tree = BroadcastTree::uniform(2, 3, {{0, 1}, {1, 2}}, eps);
            const double bound = path_dictator_bound({1, 1}, eps);
            int equality = 0;
            for (const auto& f0 : balanced) {
                for (const auto& f1 : balanced) {
                    for (const auto& f2 : balanced) {
                        PlayerAssignment trio;
                        trio.players.emplace_back(0, f0);
                        trio.players.emplace_back(1, f1);
                        trio.players.emplace_back(2, f2);
                        const double v = tree_correlation(tree, trio);
                        c.expect(v <= bound + 1e-12, fmt("triple beats the path bound by %.3g",
                                                         v - bound));
                        if (std::abs(v - bound) <= 1e-12) ++equality;
                    }
                }
            }
            // the identical +-dictator triples: 2 coordinates x {id, negated}
            c.expect(equality == 4, fmt("expected 4 equality cases, saw %d", equality));
        }
    }
    // seeded random trees: MC within 4 standard errors
    auto rng = seeded(0x5eed0008);
    for (int rep = 0; rep < 20; ++rep) {
        const int vertices = 3 + int(rng() % 6);
        const int bits = 1 + int(rng() % 3);
        std::vector<BroadcastTree::Edge> edges;
        for (int v = 1; v < vertices; ++v) {
            edges.push_back({int(rng() % std::uint64_t(v)), v,
                             0.05 + 0.4 * double(rng() >> 11) * 0x1.0p-53});
        }
        BroadcastTree tree(bits, vertices, std::move(edges));
        PlayerAssignment players;
        for (int v = 0; v < vertices; ++v) {
            if (rng() & 1) players.players.emplace_back(v, random_function(bits, rng));
        }
        if (players.players.empty()) players.players.emplace_back(0, random_function(bits, rng));
        const double exact = tree_correlation(tree, players);
        const auto mc = tree_mc_estimate(tree, players, 200000, 0xabc0 + rep);
        const double slack = 4 * mc.standard_error + 1e-12;
        c.expect(std::abs(mc.estimate - exact) <= slack,
                 fmt("tree %d: |mc-exact|=%.4g > 4se=%.4g", rep, std::abs(mc.estimate - exact),
                     slack));
    }
    CriterionResult r;
    r.pass = c.pass;
    r.details = c.summary("star reduction, path bounds, exhaustive triples, 20 seeded MC trees");
    return r;
}

// ---- criterion 9 ---------------------------------------------------------

CriterionResult run_same_strategy(int) {
    Check c;
    auto rng = seeded(0x5eed0009);
    double worst_margin = -1;
    for (int rep = 0; rep < 500; ++rep) {
        const int n = 1 + int(rng() % 8);
        auto f = random_function(n, rng);
        auto g = random_function(n, rng);
        const double eps = 0.01 + 0.48 * double(rng() >> 11) * 0x1.0p-53;
        const double mixed = correlation_star({f, g}, eps);
        const double best_same = std::max(correlation_star({f, f}, eps),
                                          correlation_star({g, g}, eps));
        worst_margin = std::max(worst_margin, mixed - best_same);
        c.expect(mixed <= best_same + 1e-12,
                 fmt("pair %d (n=%d eps=%.3f) violates by %.3g", rep, n, eps, mixed - best_same));
    }
    CriterionResult r;
    r.pass = c.pass;
    r.details = c.summary(fmt("500 pairs; worst margin %.3g (negative means slack)", worst_margin));
    return r;
}

// ---- criterion 10 --------------------------------------------------------

CriterionResult run_conjecture1(int jobs) {
    int cells = 0, dictator_optimal = 0;
    std::string violations;
    for (int n = 1; n <= 4; ++n) {
        for (double alpha : {1.1, 1.3, 1.5, 1.7, 1.9}) {
            for (int ei = 1; ei <= 9; ++ei) {
                const double eps = 0.05 * ei;
                SearchSpec spec;
                spec.n = n;
                spec.balanced = true;
                spec.objective = Objective::stability(alpha, eps);
                spec.jobs = jobs;
                auto r = maximize(spec);
                const double dict_value = alpha_stability(dictator(n), alpha, eps);
                ++cells;
                if (dict_value >= r.best_value - 1e-12) {
                    ++dictator_optimal;
                } else if (violations.size() < 300) {
                    violations += fmt(" [n=%d alpha=%.1f eps=%.2f best=%s val=%.12g dict=%.12g]",
                                      n, alpha, eps,
                                      r.argmax_hex.empty() ? "?" : r.argmax_hex.front().c_str(),
                                      r.best_value, dict_value);
                }
            }
        }
    }
    CriterionResult r;
    r.informational = true;
    r.pass = true;  // reporting harness: a counterexample is a finding, not a failure
    if (dictator_optimal == cells) {
        r.details = fmt("dictator attains the maximum in all %d cells (within 1e-12)", cells);
    } else {
        r.details = fmt("dictator NOT maximal in %d/%d cells; counterexamples:%s",
                        cells - dictator_optimal, cells, violations.c_str());
    }
    return r;
}

using Runner = CriterionResult (*)(int);

struct Entry {
    const char* name;
    Runner runner;
};

const Entry kEntries[] = {
    {"maj-comparison", run_maj_comparison},
    {"noise-oracle", run_noise_oracle},
    {"influence-equality", run_influence_equality},
    {"derivative-identity", run_derivative_identity},
    {"extremal-suite", run_extremal_suite},
    {"monotonization", run_monotonization},
    {"mutual-information", run_mutual_information},
    {"tree", run_tree},
    {"same-strategy", run_same_strategy},
    {"conjecture1", run_conjecture1},
};

}  // namespace

std::vector<std::string> criterion_names() {
    std::vector<std::string> names;
    for (const auto& e : kEntries) names.push_back(e.name);
    return names;
}

CriterionResult run_criterion(const std::string& name, int jobs) {
    for (const auto& e : kEntries) {
        if (name == e.name) {
            const auto t0 = std::chrono::steady_clock::now();
            CriterionResult r = e.runner(jobs);
            r.name = name;
            r.seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (name == "maj-comparison" && r.seconds >= 1.0) {
                r.pass = false;
                r.details += fmt(" [runtime %.2fs exceeds the 1s budget]", r.seconds);
            }
            if (name == "extremal-suite" && r.seconds >= 300.0) {
                r.pass = false;
                r.details += fmt(" [runtime %.1fs exceeds the 5min budget]", r.seconds);
            }
            return r;
        }
    }
    throw std::invalid_argument("unknown acceptance criterion: " + name);
}

std::vector<CriterionResult> run_all(int jobs) {
    std::vector<CriterionResult> out;
    for (const auto& e : kEntries) out.push_back(run_criterion(e.name, jobs));
    return out;
}

}  // namespace nstab::acceptance
