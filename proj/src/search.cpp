#include "nstab/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <numeric>
#include <thread>

#include "nstab/canonical.hpp"
#include "nstab/influence.hpp"
#include "nstab/mutual_info.hpp"
#include "nstab/noise.hpp"

namespace nstab {

Objective Objective::stability(double alpha, double eps) {
    Objective o;
    o.kind = Kind::alpha_stability;
    o.alpha = alpha;
    o.eps = eps;
    return o;
}

Objective Objective::agreement(int k, double eps) {
    Objective o;
    o.kind = Kind::agreement;
    o.k = k;
    o.eps = eps;
    return o;
}

Objective Objective::mutual_info(double eps) {
    Objective o;
    o.kind = Kind::mutual_info;
    o.eps = eps;
    return o;
}

Objective Objective::degree1_weight() {
    Objective o;
    o.kind = Kind::degree1_weight;
    return o;
}

Objective Objective::total_influence_min() {
    Objective o;
    o.kind = Kind::total_influence_min;
    return o;
}

std::string Objective::name() const {
    switch (kind) {
        case Kind::alpha_stability: return "alpha_stability";
        case Kind::agreement: return "agreement";
        case Kind::mutual_info: return "mutual_info";
        case Kind::degree1_weight: return "degree1_weight";
        case Kind::total_influence_min: return "total_influence_min";
    }
    return "";
}

double objective_value(const BooleanFunction& f, const Objective& obj) {
    switch (obj.kind) {
        case Objective::Kind::alpha_stability:
            return alpha_stability(f, obj.alpha, obj.eps);
        case Objective::Kind::agreement:
            return agreement_probability(f, obj.k, obj.eps);
        case Objective::Kind::mutual_info:
            return mutual_information(f, obj.eps);
        case Objective::Kind::degree1_weight:
            return degree_weight(wht(f.to_cube()), 1);
        case Objective::Kind::total_influence_min:
            return total_influence(f);
    }
    return 0;
}

std::uint64_t SearchSpec::target_support() const {
    const std::uint64_t size = domain_size(n);
    if (balanced) return size / 2;
    if (support_size > size) {
        throw std::invalid_argument("support size exceeds 2^n");
    }
    return support_size;
}

BudgetExceeded::BudgetExceeded(std::uint64_t required_, std::uint64_t budget_)
    : std::runtime_error("search space of " + std::to_string(required_) +
                         " functions exceeds the budget of " + std::to_string(budget_) +
                         " (raise --budget or restrict to monotone functions)"),
      required(required_),
      budget(budget_) {}

std::uint64_t binomial(std::uint64_t m, std::uint64_t k) {
    if (k > m) return 0;
    if (k > m - k) k = m - k;
    constexpr std::uint64_t kCap = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        const std::uint64_t factor = m - k + i;
        if (r > kCap / factor) return kCap;  // saturate
        r = r * factor / i;                  // exact: r holds C(m-k+i, i)
    }
    return r;
}

namespace {

// ---- monotone (up-set) enumeration -------------------------------------
//
// Indices are visited in increasing order; every coordinatewise
// predecessor of x has a smaller index, so f(x) is forced to 1 as soon as
// one immediate predecessor carries a 1.

struct MonotoneDfs {
    int n;
    std::uint64_t size;
    std::uint64_t target;
    const std::function<void(const BooleanFunction&)>* visit;  // null = count only
    std::uint64_t count = 0;
    BooleanFunction table;

    explicit MonotoneDfs(int n_) : n(n_), size(domain_size(n_)), target(0), table(n_) {}

    bool forced(std::uint64_t x) const {
        for (int b = 0; b < n; ++b) {
            const std::uint64_t bit = std::uint64_t(1) << b;
            if ((x & bit) && table.value(x ^ bit)) return true;
        }
        return false;
    }

    void run(std::uint64_t x, std::uint64_t ones) {
        if (ones > target || ones + (size - x) < target) return;  // capacity pruning
        if (x == size) {
            ++count;
            if (visit) (*visit)(table);
            return;
        }
        if (forced(x)) {
            table.set_value(x, true);
            run(x + 1, ones + 1);
            table.set_value(x, false);
            return;
        }
        run(x + 1, ones);  // 0-branch first: deterministic order
        table.set_value(x, true);
        run(x + 1, ones + 1);
        table.set_value(x, false);
    }
};

std::uint64_t monotone_count(int n, std::uint64_t target) {
    MonotoneDfs dfs(n);
    dfs.target = target;
    dfs.visit = nullptr;
    dfs.run(0, 0);
    return dfs.count;
}

// ---- colex combination enumeration --------------------------------------

// Combination of given colex rank (combinatorial number system); indices
// ascending. rank = sum_i C(c[i], i+1).
std::vector<std::uint64_t> colex_unrank(std::uint64_t rank, std::uint64_t s) {
    std::vector<std::uint64_t> c(s);
    for (std::uint64_t i = s; i-- > 0;) {
        const std::uint64_t k = i + 1;
        if (k == 1) {
            c[i] = rank;
            rank = 0;
            continue;
        }
        std::uint64_t v = k - 1;  // C(k-1, k) = 0 <= rank
        std::uint64_t binom = 0;  // C(v, k)
        std::uint64_t next = 1;   // C(v+1, k)
        while (next <= rank) {
            ++v;
            binom = next;
            next = next * (v + 1) / (v + 1 - k);
        }
        c[i] = v;
        rank -= binom;
    }
    return c;
}

void set_combination(BooleanFunction& f, const std::vector<std::uint64_t>& c, bool on) {
    for (std::uint64_t idx : c) f.set_value(idx, on);
}

// Colex successor, updating the truth table along the way. Only the moving
// prefix c[0..i] is touched, so the sweep is amortized O(1) bit flips.
void advance_combination(BooleanFunction& f, std::vector<std::uint64_t>& c) {
    std::size_t i = 0;
    while (i + 1 < c.size() && c[i] + 1 == c[i + 1]) ++i;
    for (std::size_t j = 0; j <= i; ++j) f.set_value(c[j], false);
    ++c[i];
    for (std::size_t j = 0; j < i; ++j) c[j] = j;
    for (std::size_t j = 0; j <= i; ++j) f.set_value(c[j], true);
}

// ---- argmax collection ---------------------------------------------------

struct TieSet {
    double best = -std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, std::string>> items;  // enumeration order
    bool truncated = false;
    double tol;
    std::size_t cap;
    bool keep_all;

    TieSet(double tol_, std::size_t cap_, bool keep_all_)
        : tol(tol_), cap(cap_), keep_all(keep_all_) {}

    void offer(double score, const BooleanFunction& f) {
        if (score > best) {
            best = score;
            std::erase_if(items, [&](const auto& p) { return p.first < best - tol; });
        }
        if (score >= best - tol) {
            if (keep_all || items.size() < cap) {
                items.emplace_back(score, f.to_hex());
            } else {
                truncated = true;
            }
        }
    }
};

struct ChunkOutcome {
    TieSet ties;
    std::uint64_t evaluated = 0;
};

}  // namespace

std::uint64_t count_candidates(const SearchSpec& spec) {
    const std::uint64_t s = spec.target_support();
    if (spec.monotone_only) return monotone_count(spec.n, s);
    return binomial(domain_size(spec.n), s);
}

void enumerate_functions(const SearchSpec& spec,
                         const std::function<void(const BooleanFunction&)>& visit) {
    const std::uint64_t s = spec.target_support();
    const std::uint64_t total = count_candidates(spec);
    if (total > spec.budget) throw BudgetExceeded(total, spec.budget);
    if (spec.monotone_only) {
        MonotoneDfs dfs(spec.n);
        dfs.target = s;
        dfs.visit = &visit;
        dfs.run(0, 0);
        return;
    }
    BooleanFunction f(spec.n);
    if (s == 0) {
        visit(f);
        return;
    }
    std::vector<std::uint64_t> c(s);
    std::iota(c.begin(), c.end(), 0);
    set_combination(f, c, true);
    for (std::uint64_t rank = 0;; ++rank) {
        visit(f);
        if (rank + 1 == total) break;
        advance_combination(f, c);
    }
}

namespace {

ChunkOutcome evaluate_range(const SearchSpec& spec, std::uint64_t first, std::uint64_t last) {
    ChunkOutcome out{TieSet(spec.tie_tolerance, spec.argmax_cap, spec.stream_all)};
    const std::uint64_t s = spec.target_support();
    const bool minimize = spec.objective.minimizes();
    BooleanFunction f(spec.n);
    if (s == 0) {
        const double v = objective_value(f, spec.objective);
        out.ties.offer(minimize ? -v : v, f);
        out.evaluated = 1;
        return out;
    }
    std::vector<std::uint64_t> c = colex_unrank(first, s);
    set_combination(f, c, true);
    for (std::uint64_t rank = first; rank < last; ++rank) {
        const double v = objective_value(f, spec.objective);
        out.ties.offer(minimize ? -v : v, f);
        ++out.evaluated;
        if (rank + 1 < last) advance_combination(f, c);
    }
    return out;
}

}  // namespace

SearchResult maximize(const SearchSpec& spec) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t total = count_candidates(spec);
    if (total > spec.budget) throw BudgetExceeded(total, spec.budget);

    SearchResult result;
    const bool minimize = spec.objective.minimizes();
    TieSet merged(spec.tie_tolerance, spec.argmax_cap, spec.stream_all);

    if (spec.monotone_only || spec.jobs <= 1 || total < 2048) {
        ChunkOutcome out{TieSet(spec.tie_tolerance, spec.argmax_cap, spec.stream_all)};
        if (spec.monotone_only) {
            enumerate_functions(spec, [&](const BooleanFunction& f) {
                const double v = objective_value(f, spec.objective);
                out.ties.offer(minimize ? -v : v, f);
                ++out.evaluated;
            });
        } else {
            out = evaluate_range(spec, 0, total);
        }
        merged = std::move(out.ties);
        result.evaluated_count = out.evaluated;
    } else {
        const int jobs = std::max(1, spec.jobs);
        const std::uint64_t chunk =
            std::max<std::uint64_t>(4096, total / (std::uint64_t(jobs) * 16) + 1);
        const std::uint64_t num_chunks = (total + chunk - 1) / chunk;
        std::vector<ChunkOutcome> outcomes;
        outcomes.reserve(num_chunks);
        for (std::uint64_t i = 0; i < num_chunks; ++i) {
            outcomes.emplace_back(
                ChunkOutcome{TieSet(spec.tie_tolerance, spec.argmax_cap, spec.stream_all)});
        }
        std::atomic<std::uint64_t> next{0};
        auto worker = [&]() {
            for (;;) {
                const std::uint64_t i = next.fetch_add(1);
                if (i >= num_chunks) return;
                const std::uint64_t first = i * chunk;
                const std::uint64_t last = std::min(total, first + chunk);
                outcomes[i] = evaluate_range(spec, first, last);
            }
        };
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        // merge in chunk order: deterministic regardless of scheduling
        for (auto& out : outcomes) {
            result.evaluated_count += out.evaluated;
            merged.truncated = merged.truncated || out.ties.truncated;
            for (auto& item : out.ties.items) {
                if (item.first > merged.best) {
                    merged.best = item.first;
                    std::erase_if(merged.items,
                                  [&](const auto& p) { return p.first < merged.best - merged.tol; });
                }
            }
        }
        for (auto& out : outcomes) {
            for (auto& item : out.ties.items) {
                if (item.first >= merged.best - merged.tol) {
                    if (merged.keep_all || merged.items.size() < merged.cap) {
                        merged.items.push_back(std::move(item));
                    } else {
                        merged.truncated = true;
                    }
                }
            }
        }
    }

    result.best_value = minimize ? -merged.best : merged.best;
    result.argmax_truncated = merged.truncated;
    result.argmax_hex.reserve(merged.items.size());
    for (auto& item : merged.items) result.argmax_hex.push_back(std::move(item.second));
    result.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

std::vector<ComparisonRow> compare_named(
    int n, const std::vector<std::pair<std::string, BooleanFunction>>& candidates,
    const Objective& obj) {
    std::vector<ComparisonRow> rows;
    rows.reserve(candidates.size());
    for (const auto& [label, f] : candidates) {
        if (f.dimension() != n) {
            throw std::invalid_argument("compare_named candidates must share the dimension");
        }
        rows.push_back({label, f.to_hex(), objective_value(f, obj)});
    }
    const bool minimize = obj.minimizes();
    std::stable_sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
        return minimize ? a.value < b.value : a.value > b.value;
    });
    return rows;
}

BooleanFunction canonicalize(const BooleanFunction& f, bool include_complement) {
    const int n = f.dimension();
    if (n > 8) {
        throw std::invalid_argument("canonicalize supports n <= 8");
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    BooleanFunction best = f;
    std::string best_hex = f.to_hex();
    auto consider = [&](const BooleanFunction& g) {
        std::string h = g.to_hex();
        if (h < best_hex) {
            best_hex = std::move(h);
            best = g;
        }
    };
    do {
        BooleanFunction g(n);
        for (std::uint64_t x = 0; x < f.size(); ++x) {
            if (!f.value(x)) continue;
            std::uint64_t y = 0;
            for (int b = 0; b < n; ++b) {
                if ((x >> b) & 1) y |= std::uint64_t(1) << perm[b];
            }
            g.set_value(y, true);
        }
        consider(g);
        if (include_complement) consider(g.complement());
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace nstab
