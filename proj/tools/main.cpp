// Command-line surface for the noise-stability toolkit. Every subcommand
// prints a single JSON record (or CSV rows with --format csv) so runs can
// be reproduced and post-processed.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nstab/acceptance.hpp"
#include "nstab/boolean_function.hpp"
#include "nstab/canonical.hpp"
#include "nstab/influence.hpp"
#include "nstab/mutual_info.hpp"
#include "nstab/noise.hpp"
#include "nstab/search.hpp"
#include "nstab/shift.hpp"
#include "nstab/torus.hpp"
#include "nstab/tree.hpp"

using nlohmann::json;
using namespace nstab;

namespace {

constexpr int kExitError = 2;
constexpr int kExitBudget = 3;

std::string num15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

struct Output {
    json record;
    std::string format = "json";
    std::vector<std::vector<std::string>> csv_rows;  // first row = header

    void emit(const std::string& command, std::chrono::steady_clock::time_point t0) {
        record["command"] = command;
        record["versions"] = {{"nstab", kVersion}};
        record["wall_time_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        if (format == "csv") {
            for (const auto& row : csv_rows) {
                for (std::size_t i = 0; i < row.size(); ++i) {
                    if (i) std::cout << ",";
                    std::cout << row[i];
                }
                std::cout << "\n";
            }
        } else {
            std::cout << record.dump(2) << "\n";
        }
    }
};

std::vector<double> parse_eps_values(const std::string& single, const std::string& grid) {
    std::vector<double> out;
    if (!grid.empty()) {
        double start = 0, stop = 0, step = 0;
        if (std::sscanf(grid.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 || step <= 0) {
            throw std::invalid_argument("--eps-grid expects start:stop:step with step > 0");
        }
        for (int i = 0;; ++i) {
            const double e = start + i * step;  // no accumulation drift
            if (e > stop + 1e-12) break;
            out.push_back(e);
        }
        if (out.empty()) throw std::invalid_argument("--eps-grid produced no points");
    } else {
        out.push_back(std::stod(single));
    }
    return out;
}

BooleanFunction parse_candidate(int n, const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string tail = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "dict") return dictator(n);
    if (head == "maj") return majority(n, std::stoi(tail));
    if (head == "lex") return lexicographic(n, std::stoull(tail));
    if (head == "rlex") return lexicographic(n, std::stoull(tail), true);
    if (head == "ball") return hamming_ball_like(n, std::stoull(tail));
    if (head == "hex") return BooleanFunction::from_hex(n, tail);
    throw std::invalid_argument("unknown candidate '" + spec +
                                "' (use maj:r, lex:s, rlex:s, ball:s, hex:table, dict)");
}

std::string load_table(const std::string& inline_hex, const std::string& path) {
    if (path.empty()) return inline_hex;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open table file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) {
        text.pop_back();
    }
    return text;
}

Objective build_objective(const std::string& name, double alpha, int k, double eps) {
    if (name == "stability") return Objective::stability(alpha, eps);
    if (name == "agreement") return Objective::agreement(k, eps);
    if (name == "mi") return Objective::mutual_info(eps);
    if (name == "degree1") return Objective::degree1_weight();
    if (name == "influence-min") return Objective::total_influence_min();
    throw std::invalid_argument("unknown objective '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"noise stability, influence, correlation and mutual information for Boolean functions"};
    app.require_subcommand(1);

    std::string table_hex, table_file, eps_str = "0", eps_grid, format = "json", method = "flip";
    std::string objective_name, torus_model = "uniform", torus_flavor = "random_flip";
    std::string torus_method = "direct", tree_file, torus_digits;
    int n = 1, k = 2, p = 3, jobs = 1;
    double alpha = 2.0, tie_tol = 1e-12;
    std::uint64_t support_size = 0, budget = 100'000'000, mc_samples = 0, seed = 0;
    std::size_t cap = 64;
    bool balanced = false, monotone_only = false, all_ties = false, do_canonicalize = false;
    bool verify_list = false, verify_all = false;
    std::vector<std::string> candidates, verify_names;

    auto add_common = [&](CLI::App* cmd, bool with_table = true) {
        cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
        if (with_table) {
            cmd->add_option("--n", n)->required();
            auto* t = cmd->add_option("--table", table_hex);
            cmd->add_option("--table-file", table_file, "read the hex table from a file")
                ->excludes(t);
        }
    };
    auto add_eps = [&](CLI::App* cmd) {
        cmd->add_option("--eps", eps_str);
        cmd->add_option("--eps-grid", eps_grid);
    };

    auto* stab = app.add_subcommand("stability", "E (T_eps f)^alpha");
    add_common(stab);
    add_eps(stab);
    stab->add_option("--alpha", alpha);

    auto* agree = app.add_subcommand("agreement", "P(all k noised readers of f agree)");
    add_common(agree);
    add_eps(agree);
    agree->add_option("--k", k);

    auto* infl = app.add_subcommand("influence", "per-coordinate and total influence");
    add_common(infl);
    infl->add_option("--method", method)->check(CLI::IsMember({"flip", "fourier", "boundary"}));

    auto* mono = app.add_subcommand("monotonize", "up-compress the support to a monotone fixpoint");
    add_common(mono);

    auto* mi = app.add_subcommand("mi", "mutual information I(X; f(Y)) across BSC(eps)");
    add_common(mi);
    add_eps(mi);

    auto* search = app.add_subcommand("search", "exhaustive argmax over a constraint class");
    search->add_option("--n", n)->required();
    search->add_flag("--balanced", balanced);
    search->add_option("--support-size", support_size);
    search->add_option("--objective", objective_name)->required();
    search->add_option("--alpha", alpha);
    search->add_option("--k", k);
    search->add_option("--eps", eps_str);
    search->add_flag("--monotone-only", monotone_only);
    search->add_option("--tie-tol", tie_tol);
    search->add_option("--budget", budget);
    search->add_option("--cap", cap);
    search->add_flag("--all-ties", all_ties);
    search->add_option("--jobs", jobs);
    search->add_flag("--canonicalize", do_canonicalize);
    search->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    auto* compare = app.add_subcommand("compare", "evaluate named candidates under one objective");
    compare->add_option("--n", n)->required();
    compare->add_option("--objective", objective_name)->required();
    compare->add_option("--alpha", alpha);
    compare->add_option("--k", k);
    compare->add_option("--eps", eps_str);
    compare->add_option("candidates", candidates)->required();
    compare->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    auto* torus = app.add_subcommand("torus", "operations on (Z/pZ)^n");
    torus->require_subcommand(1);
    auto add_torus_common = [&](CLI::App* cmd) {
        cmd->add_option("--p", p)->required();
        cmd->add_option("--n", n)->required();
        cmd->add_option("--table", torus_digits)->required();
        cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    };
    auto* tstab = torus->add_subcommand("stability", "E (T_eps f)^alpha on the torus");
    add_torus_common(tstab);
    add_eps(tstab);
    tstab->add_option("--alpha", alpha);
    tstab->add_option("--model", torus_model)->check(CLI::IsMember({"uniform", "nearest"}));
    auto* tinfl = torus->add_subcommand("influence", "torus influence and edge boundary");
    add_torus_common(tinfl);
    tinfl->add_option("--flavor", torus_flavor)
        ->check(CLI::IsMember({"random_flip", "nearest"}));
    tinfl->add_option("--method", torus_method)->check(CLI::IsMember({"direct", "fourier"}));
    auto* tmono = torus->add_subcommand("monotonize", "pair-compress to a monotone fixpoint");
    add_torus_common(tmono);

    auto* tree = app.add_subcommand("tree", "correlation and agreement on a BSC-edge tree");
    tree->add_option("--file", tree_file)->required();
    tree->add_option("--mc", mc_samples);
    auto* seed_opt = tree->add_option("--seed", seed);
    tree->add_option("--jobs", jobs);
    tree->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    auto* verify = app.add_subcommand("verify", "run named acceptance scenarios");
    verify->add_option("names", verify_names);
    verify->add_flag("--list", verify_list);
    verify->add_flag("--all", verify_all);
    verify->add_option("--jobs", jobs);

    CLI11_PARSE(app, argc, argv);

    const auto t0 = std::chrono::steady_clock::now();
    Output out;
    try {
        out.format = format;
        if (*stab || *agree || *infl || *mono || *mi) {
            const std::string hex = load_table(table_hex, table_file);
            if (hex.empty()) throw std::invalid_argument("provide --table or --table-file");
            auto f = BooleanFunction::from_hex(n, hex);
            out.record["parameters"] = {{"n", n},
                                        {"table", hex.size() <= 4096 ? hex : "(from file)"}};
            if (*stab || *agree || *mi) {
                const auto eps_values = parse_eps_values(eps_str, eps_grid);
                json results = json::array();
                out.csv_rows.push_back({"eps", "value"});
                for (double e : eps_values) {
                    double v = 0;
                    if (*stab) {
                        v = alpha_stability(f, alpha, e);
                    } else if (*agree) {
                        v = agreement_probability(f, k, e);
                    } else {
                        v = mutual_information(f, e);
                    }
                    results.push_back({{"eps", e}, {"value", v}});
                    out.csv_rows.push_back({num15(e), num15(v)});
                }
                if (*stab) out.record["parameters"]["alpha"] = alpha;
                if (*agree) out.record["parameters"]["k"] = k;
                out.record["results"] = results;
                out.emit(*stab ? "stability" : (*agree ? "agreement" : "mi"), t0);
            } else if (*infl) {
                const InfluenceMethod m = method == "flip"      ? InfluenceMethod::flip
                                          : method == "fourier" ? InfluenceMethod::fourier
                                                                : InfluenceMethod::boundary;
                auto rep = influence(f, m);
                auto eb = edge_boundary(f);
                out.record["parameters"]["method"] = method;
                out.record["results"] = {{"per_coordinate", rep.per_coordinate},
                                         {"total", rep.total},
                                         {"boundary_per_direction", eb.per_direction},
                                         {"boundary_total", eb.total}};
                out.csv_rows.push_back({"coordinate", "influence", "boundary_edges"});
                for (int i = 0; i < n; ++i) {
                    out.csv_rows.push_back({std::to_string(i + 1), num15(rep.per_coordinate[i]),
                                            std::to_string(eb.per_direction[i])});
                }
                out.csv_rows.push_back({"total", num15(rep.total), std::to_string(eb.total)});
                out.emit("influence", t0);
            } else {
                auto [g, trace] = monotonize(f);
                json steps = json::array();
                for (const auto& s : trace.steps) {
                    steps.push_back({{"coordinate", s.coordinate}, {"moved", s.moved}});
                }
                out.record["results"] = {{"table", g.to_hex()},
                                         {"is_monotone", is_monotone(g)},
                                         {"passes", trace.passes},
                                         {"final_potential", trace.final_potential},
                                         {"steps", steps}};
                out.csv_rows.push_back({"key", "value"});
                out.csv_rows.push_back({"table", g.to_hex()});
                out.csv_rows.push_back({"passes", std::to_string(trace.passes)});
                out.csv_rows.push_back({"final_potential", std::to_string(trace.final_potential)});
                out.emit("monotonize", t0);
            }
        } else if (*search) {
            SearchSpec spec;
            spec.n = n;
            spec.balanced = balanced;
            spec.support_size = support_size;
            if (!balanced && search->count("--support-size") == 0) {
                throw std::invalid_argument("search needs --balanced or --support-size");
            }
            spec.monotone_only = monotone_only;
            spec.objective = build_objective(objective_name, alpha, k, std::stod(eps_str));
            spec.tie_tolerance = tie_tol;
            spec.budget = budget;
            spec.argmax_cap = cap;
            spec.stream_all = all_ties;
            spec.jobs = jobs;
            auto result = maximize(spec);
            json argmax = json::array();
            out.csv_rows.push_back({"argmax_hex", "canonical_hex"});
            for (const auto& hex : result.argmax_hex) {
                json entry = {{"table", hex}};
                std::string canon;
                if (do_canonicalize) {
                    canon = canonicalize(BooleanFunction::from_hex(n, hex), true).to_hex();
                    entry["canonical"] = canon;
                }
                argmax.push_back(entry);
                out.csv_rows.push_back({hex, canon});
            }
            out.record["parameters"] = {{"n", n},
                                        {"balanced", balanced},
                                        {"support_size", spec.target_support()},
                                        {"monotone_only", monotone_only},
                                        {"objective", spec.objective.name()},
                                        {"alpha", alpha},
                                        {"k", k},
                                        {"eps", std::stod(eps_str)},
                                        {"tie_tolerance", tie_tol}};
            out.record["results"] = {{"best_value", result.best_value},
                                     {"argmax", argmax},
                                     {"argmax_truncated", result.argmax_truncated},
                                     {"evaluated_count", result.evaluated_count},
                                     {"runtime_seconds", result.runtime_seconds}};
            out.emit("search", t0);
        } else if (*compare) {
            const Objective obj = build_objective(objective_name, alpha, k, std::stod(eps_str));
            std::vector<std::pair<std::string, BooleanFunction>> named;
            for (const auto& c : candidates) named.emplace_back(c, parse_candidate(n, c));
            auto rows = compare_named(n, named, obj);
            json results = json::array();
            out.csv_rows.push_back({"label", "table", "value"});
            for (const auto& row : rows) {
                results.push_back({{"label", row.label}, {"table", row.hex}, {"value", row.value}});
                out.csv_rows.push_back({row.label, row.hex, num15(row.value)});
            }
            out.record["parameters"] = {{"n", n}, {"objective", obj.name()}, {"alpha", alpha},
                                        {"k", k}, {"eps", std::stod(eps_str)}};
            out.record["results"] = results;
            out.emit("compare", t0);
        } else if (*torus) {
            auto f = TorusFunction::from_digits(p, n, torus_digits);
            out.record["parameters"] = {{"p", p}, {"n", n}, {"table", torus_digits}};
            if (*tstab) {
                const auto model = torus_model == "uniform" ? TorusNoiseModel::uniform
                                                            : TorusNoiseModel::nearest;
                const auto eps_values = parse_eps_values(eps_str, eps_grid);
                json results = json::array();
                out.csv_rows.push_back({"eps", "value"});
                for (double e : eps_values) {
                    const double v = torus_alpha_stability(f, alpha, e, model);
                    results.push_back({{"eps", e}, {"value", v}});
                    out.csv_rows.push_back({num15(e), num15(v)});
                }
                out.record["parameters"]["alpha"] = alpha;
                out.record["parameters"]["model"] = torus_model;
                out.record["results"] = results;
                out.emit("torus stability", t0);
            } else if (*tinfl) {
                const auto flavor = torus_flavor == "nearest" ? TorusInfluenceFlavor::nearest
                                                              : TorusInfluenceFlavor::random_flip;
                const auto m = torus_method == "fourier" ? TorusInfluenceMethod::fourier
                                                         : TorusInfluenceMethod::direct;
                auto rep = torus_influence(f, flavor, m);
                auto eb = torus_edge_boundary(f);
                out.record["parameters"]["flavor"] = torus_flavor;
                out.record["parameters"]["method"] = torus_method;
                out.record["results"] = {{"per_coordinate", rep.per_coordinate},
                                         {"total", rep.total},
                                         {"boundary_per_direction", eb.per_direction},
                                         {"boundary_total", eb.total}};
                out.csv_rows.push_back({"coordinate", "influence", "boundary_edges"});
                for (int i = 0; i < n; ++i) {
                    out.csv_rows.push_back({std::to_string(i + 1), num15(rep.per_coordinate[i]),
                                            std::to_string(eb.per_direction[i])});
                }
                out.emit("torus influence", t0);
            } else {
                auto [g, trace] = torus_monotonize(f);
                out.record["results"] = {{"table", g.to_digits()},
                                         {"is_monotone", torus_is_monotone(g)},
                                         {"passes", trace.passes},
                                         {"final_potential", trace.final_potential}};
                out.csv_rows.push_back({"key", "value"});
                out.csv_rows.push_back({"table", g.to_digits()});
                out.csv_rows.push_back({"passes", std::to_string(trace.passes)});
                out.emit("torus monotonize", t0);
            }
        } else if (*tree) {
            auto [t, players] = tree_from_json_file(tree_file);
            const double corr = tree_correlation(t, players);
            const double agreement = tree_agreement(t, players);
            out.record["parameters"] = {{"file", tree_file},
                                        {"n", t.n_bits},
                                        {"vertices", t.vertex_count},
                                        {"players", players.players.size()}};
            out.record["results"] = {{"correlation", corr}, {"agreement", agreement}};
            out.csv_rows.push_back({"key", "value"});
            out.csv_rows.push_back({"correlation", num15(corr)});
            out.csv_rows.push_back({"agreement", num15(agreement)});
            if (mc_samples > 0) {
                if (seed_opt->count() == 0) {
                    throw std::invalid_argument("--mc requires an explicit --seed");
                }
                auto est = tree_mc_estimate(t, players, mc_samples, seed, jobs);
                out.record["parameters"]["mc_samples"] = mc_samples;
                out.record["parameters"]["seed"] = seed;
                out.record["results"]["mc_estimate"] = est.estimate;
                out.record["results"]["mc_standard_error"] = est.standard_error;
                out.csv_rows.push_back({"mc_estimate", num15(est.estimate)});
                out.csv_rows.push_back({"mc_standard_error", num15(est.standard_error)});
            }
            out.emit("tree", t0);
        } else if (*verify) {
            if (verify_list) {
                for (const auto& name : acceptance::criterion_names()) std::cout << name << "\n";
                return 0;
            }
            auto names = verify_names;
            if (verify_all || names.empty()) names = acceptance::criterion_names();
            int failed = 0;
            for (const auto& name : names) {
                const auto r = acceptance::run_criterion(name, jobs);
                const char* status = r.pass ? "PASS" : "FAIL";
                if (r.informational) status = "INFO";
                std::printf("%s %-20s (%6.2fs) %s\n", status, r.name.c_str(), r.seconds,
                            r.details.c_str());
                if (!r.pass && !r.informational) ++failed;
            }
            return failed ? 1 : 0;
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return 0;
}
