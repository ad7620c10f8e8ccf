#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nstab/boolean_function.hpp"

namespace nstab {

struct Objective {
    enum class Kind { alpha_stability, agreement, mutual_info, degree1_weight, total_influence_min };
    Kind kind = Kind::alpha_stability;
    double alpha = 2.0;  // alpha_stability
    int k = 2;           // agreement
    double eps = 0.0;    // noise level where applicable

    static Objective stability(double alpha, double eps);
    static Objective agreement(int k, double eps);
    static Objective mutual_info(double eps);
    static Objective degree1_weight();
    static Objective total_influence_min();

    // true when smaller objective values are better
    bool minimizes() const { return kind == Kind::total_influence_min; }
    std::string name() const;
};

// Raw objective value (the influence itself for total_influence_min).
double objective_value(const BooleanFunction& f, const Objective& obj);

struct SearchSpec {
    int n = 1;
    bool balanced = false;         // constraint: balanced or fixed support size
    std::uint64_t support_size = 0;
    bool monotone_only = false;
    Objective objective;
    double tie_tolerance = 1e-12;
    std::uint64_t budget = 100'000'000;
    std::size_t argmax_cap = 64;
    bool stream_all = false;  // keep every tied argmax, ignoring the cap
    int jobs = 1;

    std::uint64_t target_support() const;
};

struct SearchResult {
    double best_value = 0.0;  // raw objective value of the extremizers
    std::vector<std::string> argmax_hex;
    bool argmax_truncated = false;
    std::uint64_t evaluated_count = 0;
    double runtime_seconds = 0.0;
};

class BudgetExceeded : public std::runtime_error {
  public:
    BudgetExceeded(std::uint64_t required, std::uint64_t budget);
    std::uint64_t required;
    std::uint64_t budget;
};

// Number of candidate functions the spec enumerates: C(2^n, s), or the
// count of monotone functions of that support size.
std::uint64_t count_candidates(const SearchSpec& spec);

// Visits every candidate exactly once in deterministic order (colex on
// support index sets; DFS order for the monotone restriction). Throws
// BudgetExceeded before visiting anything if the count is over budget.
void enumerate_functions(const SearchSpec& spec,
                         const std::function<void(const BooleanFunction&)>& visit);

// Exact argmax (or argmin for total_influence_min) over the enumerated
// space; ties are collected within tie_tolerance in enumeration order,
// independent of the worker count.
SearchResult maximize(const SearchSpec& spec);

struct ComparisonRow {
    std::string label;
    std::string hex;
    double value;
};

// Objective value per named candidate, sorted best-first (stable).
std::vector<ComparisonRow> compare_named(
    int n, const std::vector<std::pair<std::string, BooleanFunction>>& candidates,
    const Objective& obj);

// Reporting-only representative: lexicographically smallest hex table over
// all coordinate permutations, optionally including function complements.
BooleanFunction canonicalize(const BooleanFunction& f, bool include_complement);

// Saturating binomial coefficient (exact until it would overflow).
std::uint64_t binomial(std::uint64_t m, std::uint64_t k);

}  // namespace nstab
