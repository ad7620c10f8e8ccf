#include "nstab/torus.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nstab/noise.hpp"  // stability_pow

namespace nstab {

std::uint64_t torus_domain_size(int p, int n) {
    if (p < 2) throw std::invalid_argument("torus modulus p must be >= 2");
    if (n < 1) throw std::invalid_argument("torus dimension n must be >= 1");
    std::uint64_t size = 1;
    for (int i = 0; i < n; ++i) {
        if (size > (std::uint64_t(1) << 24) / std::uint64_t(p)) {
            throw std::invalid_argument("torus table p^n exceeds the 2^24 cap");
        }
        size *= std::uint64_t(p);
    }
    return size;
}

TorusFunction::TorusFunction(int p_, int n_, std::vector<double> v)
    : p(p_), n(n_), values(std::move(v)) {
    if (values.size() != torus_domain_size(p, n)) {
        throw std::invalid_argument("TorusFunction needs exactly p^n values");
    }
}

TorusFunction TorusFunction::constant(int p, int n, double c) {
    return TorusFunction(p, n, std::vector<double>(torus_domain_size(p, n), c));
}

TorusFunction TorusFunction::from_support(int p, int n,
                                          const std::vector<std::uint64_t>& support) {
    TorusFunction f = constant(p, n, 0.0);
    for (std::uint64_t idx : support) {
        if (idx >= f.size()) throw std::invalid_argument("torus support index out of range");
        f.values[idx] = 1.0;
    }
    return f;
}

TorusFunction TorusFunction::from_digits(int p, int n, std::string_view digits) {
    const std::uint64_t size = torus_domain_size(p, n);
    if (digits.size() != size) {
        throw std::invalid_argument("torus digit table needs exactly p^n characters");
    }
    TorusFunction f = constant(p, n, 0.0);
    for (std::uint64_t i = 0; i < size; ++i) {
        const char c = digits[size - 1 - i];  // offset i from the right end
        if (c < '0' || c >= '0' + std::min(p, 10)) {
            throw std::invalid_argument("malformed torus digit table");
        }
        f.values[i] = double(c - '0');
    }
    return f;
}

std::string TorusFunction::to_digits() const {
    std::string out(size(), '0');
    for (std::uint64_t i = 0; i < size(); ++i) {
        const double v = values[i];
        const int d = int(v);
        if (v != double(d) || d < 0 || d >= std::min(p, 10)) {
            throw std::invalid_argument("to_digits needs integer values in [0, min(p,10))");
        }
        out[size() - 1 - i] = char('0' + d);
    }
    return out;
}

double TorusFunction::mean() const {
    double s = 0;
    for (double v : values) s += v;
    return s / double(values.size());
}

bool TorusFunction::is_boolean() const {
    for (double v : values) {
        if (v != 0.0 && v != 1.0) return false;
    }
    return true;
}

std::uint64_t TorusFunction::support_size() const {
    std::uint64_t c = 0;
    for (double v : values) c += (v != 0.0);
    return c;
}

namespace {

void require_boolean(const TorusFunction& f, const char* what) {
    if (!f.is_boolean()) {
        throw std::invalid_argument(std::string(what) + " needs a Boolean torus function");
    }
}

// One DFT pass along a coordinate with the given stride; sign = -1 for the
// forward transform, +1 for the inverse.
void axis_pass(std::vector<std::complex<double>>& a, int p, std::uint64_t stride, int sign) {
    const std::uint64_t block = stride * std::uint64_t(p);
    std::vector<std::complex<double>> roots(p);
    for (int t = 0; t < p; ++t) {
        const double ang = double(sign) * 2.0 * std::numbers::pi * double(t) / double(p);
        roots[t] = {std::cos(ang), std::sin(ang)};
    }
    std::vector<std::complex<double>> line(p), out(p);
    for (std::uint64_t base = 0; base < a.size(); base += block) {
        for (std::uint64_t off = 0; off < stride; ++off) {
            for (int t = 0; t < p; ++t) line[t] = a[base + off + stride * std::uint64_t(t)];
            for (int k = 0; k < p; ++k) {
                std::complex<double> acc = 0;
                for (int t = 0; t < p; ++t) acc += line[t] * roots[(k * t) % p];
                out[k] = acc;
            }
            for (int k = 0; k < p; ++k) a[base + off + stride * std::uint64_t(k)] = out[k];
        }
    }
}

}  // namespace

TorusSpectrum torus_dft(const TorusFunction& f) {
    TorusSpectrum s;
    s.p = f.p;
    s.n = f.n;
    s.coeffs.assign(f.values.begin(), f.values.end());
    std::uint64_t stride = 1;
    for (int axis = 0; axis < f.n; ++axis) {
        axis_pass(s.coeffs, f.p, stride, -1);
        stride *= std::uint64_t(f.p);
    }
    const double scale = 1.0 / double(f.values.size());
    for (auto& c : s.coeffs) c *= scale;
    return s;
}

TorusFunction torus_dft_inverse(const TorusSpectrum& s) {
    std::vector<std::complex<double>> a = s.coeffs;
    std::uint64_t stride = 1;
    for (int axis = 0; axis < s.n; ++axis) {
        axis_pass(a, s.p, stride, +1);
        stride *= std::uint64_t(s.p);
    }
    TorusFunction f = TorusFunction::constant(s.p, s.n, 0.0);
    for (std::uint64_t i = 0; i < a.size(); ++i) f.values[i] = a[i].real();
    return f;
}

namespace {

void check_model_eps(int p, double eps, TorusNoiseModel model) {
    if (model == TorusNoiseModel::uniform) {
        const double top = 1.0 - 1.0 / double(p);
        if (!(eps >= 0.0 && eps <= top + 1e-15)) {
            throw std::invalid_argument("uniform torus noise needs eps in [0, 1-1/p]");
        }
    } else {
        if (!(eps >= 0.0 && eps <= 1.0)) {
            throw std::invalid_argument("nearest torus noise needs eps in [0, 1]");
        }
    }
}

}  // namespace

TorusFunction torus_apply_noise(const TorusFunction& f, double eps, TorusNoiseModel model) {
    check_model_eps(f.p, eps, model);
    TorusSpectrum s = torus_dft(f);
    const int p = f.p;
    if (model == TorusNoiseModel::uniform) {
        const double base = 1.0 - double(p) * eps / double(p - 1);
        for (std::uint64_t m = 0; m < s.coeffs.size(); ++m) {
            std::uint64_t rest = m;
            double mult = 1.0;
            for (int axis = 0; axis < f.n; ++axis) {
                if (rest % std::uint64_t(p) != 0) mult *= base;
                rest /= std::uint64_t(p);
            }
            s.coeffs[m] *= mult;
        }
    } else {
        std::vector<double> factor(p);
        for (int d = 0; d < p; ++d) {
            factor[d] = 1.0 - eps * (1.0 - std::cos(2.0 * std::numbers::pi * double(d) / double(p)));
        }
        for (std::uint64_t m = 0; m < s.coeffs.size(); ++m) {
            std::uint64_t rest = m;
            double mult = 1.0;
            for (int axis = 0; axis < f.n; ++axis) {
                mult *= factor[rest % std::uint64_t(p)];
                rest /= std::uint64_t(p);
            }
            s.coeffs[m] *= mult;
        }
    }
    return torus_dft_inverse(s);
}

TorusFunction torus_apply_noise_direct(const TorusFunction& f, double eps, TorusNoiseModel model) {
    check_model_eps(f.p, eps, model);
    const int p = f.p;
    std::vector<double> kernel(p, 0.0);  // kernel[d] = P(Z = d)
    kernel[0] = 1.0 - eps;
    if (model == TorusNoiseModel::uniform) {
        for (int d = 1; d < p; ++d) kernel[d] = eps / double(p - 1);
    } else {
        kernel[1 % p] += eps / 2.0;
        kernel[(p - 1) % p] += eps / 2.0;
    }
    TorusFunction g = f;
    std::uint64_t stride = 1;
    std::vector<double> line(p), out(p);
    for (int axis = 0; axis < f.n; ++axis) {
        const std::uint64_t block = stride * std::uint64_t(p);
        for (std::uint64_t base = 0; base < g.values.size(); base += block) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                for (int t = 0; t < p; ++t) line[t] = g.values[base + off + stride * std::uint64_t(t)];
                for (int x = 0; x < p; ++x) {
                    double acc = 0;
                    for (int d = 0; d < p; ++d) acc += kernel[d] * line[(x + d) % p];
                    out[x] = acc;
                }
                for (int x = 0; x < p; ++x) g.values[base + off + stride * std::uint64_t(x)] = out[x];
            }
        }
        stride *= std::uint64_t(p);
    }
    return g;
}

double torus_alpha_stability(const TorusFunction& f, double alpha, double eps,
                             TorusNoiseModel model) {
    if (!(alpha >= 1.0)) {
        throw std::invalid_argument("torus_alpha_stability needs alpha >= 1");
    }
    TorusFunction t = torus_apply_noise(f, eps, model);
    double s = 0;
    for (double v : t.values) s += stability_pow(v, alpha);
    return s / double(t.values.size());
}

namespace {

// digit of idx along the given axis
int digit(std::uint64_t idx, int p, int axis) {
    for (int i = 0; i < axis; ++i) idx /= std::uint64_t(p);
    return int(idx % std::uint64_t(p));
}

std::uint64_t with_digit(std::uint64_t idx, int p, int axis, int value, std::uint64_t stride) {
    const int old = digit(idx, p, axis);
    return idx + (std::uint64_t(value) - std::uint64_t(old)) * stride;
}

}  // namespace

TorusEdgeBoundary torus_edge_boundary(const TorusFunction& f) {
    require_boolean(f, "torus_edge_boundary");
    TorusEdgeBoundary eb;
    eb.per_direction.assign(f.n, 0);
    const int p = f.p;
    std::uint64_t stride = 1;
    for (int axis = 0; axis < f.n; ++axis) {
        std::uint64_t cnt = 0;
        for (std::uint64_t x = 0; x < f.size(); ++x) {
            if (f.values[x] == 0.0) continue;
            const int d = digit(x, p, axis);
            // count each unordered pair once from its endpoint inside S;
            // when both endpoints are in S nothing is counted
            const std::uint64_t up = with_digit(x, p, axis, (d + 1) % p, stride);
            if (f.values[up] == 0.0) ++cnt;
            if (p > 2) {
                const std::uint64_t down = with_digit(x, p, axis, (d + p - 1) % p, stride);
                if (f.values[down] == 0.0) ++cnt;
            }
        }
        eb.per_direction[axis] = cnt;
        eb.total += cnt;
        stride *= std::uint64_t(p);
    }
    return eb;
}

TorusInfluenceReport torus_influence(const TorusFunction& f, TorusInfluenceFlavor flavor,
                                     TorusInfluenceMethod method) {
    require_boolean(f, "torus_influence");
    TorusInfluenceReport rep;
    rep.flavor = flavor;
    rep.method = method;
    rep.per_coordinate.assign(f.n, 0.0);
    const int p = f.p;

    if (method == TorusInfluenceMethod::direct) {
        std::uint64_t stride = 1;
        for (int axis = 0; axis < f.n; ++axis) {
            double acc = 0;
            for (std::uint64_t x = 0; x < f.size(); ++x) {
                const int d = digit(x, p, axis);
                const double fx = f.values[x];
                if (flavor == TorusInfluenceFlavor::random_flip) {
                    // uniform over the p-1 other residues
                    int changed = 0;
                    for (int t = 1; t < p; ++t) {
                        if (f.values[with_digit(x, p, axis, (d + t) % p, stride)] != fx) ++changed;
                    }
                    acc += double(changed) / double(p - 1);
                } else {
                    const double up = f.values[with_digit(x, p, axis, (d + 1) % p, stride)];
                    const double down = f.values[with_digit(x, p, axis, (d + p - 1) % p, stride)];
                    acc += 0.5 * ((up != fx) + (down != fx));
                }
            }
            rep.per_coordinate[axis] = acc / double(f.size());
            stride *= std::uint64_t(p);
        }
    } else {
        TorusSpectrum s = torus_dft(f);
        for (std::uint64_t m = 0; m < s.coeffs.size(); ++m) {
            const double sq = std::norm(s.coeffs[m]);
            std::uint64_t rest = m;
            for (int axis = 0; axis < f.n; ++axis) {
                const int xi = int(rest % std::uint64_t(p));
                rest /= std::uint64_t(p);
                if (flavor == TorusInfluenceFlavor::random_flip) {
                    if (xi != 0) {
                        rep.per_coordinate[axis] += 2.0 * double(p) / double(p - 1) * sq;
                    }
                } else {
                    rep.per_coordinate[axis] +=
                        2.0 * (1.0 - std::cos(2.0 * std::numbers::pi * double(xi) / double(p))) * sq;
                }
            }
        }
    }
    for (double v : rep.per_coordinate) rep.total += v;
    return rep;
}

bool torus_is_monotone(const TorusFunction& f) {
    require_boolean(f, "torus_is_monotone");
    const int p = f.p;
    std::uint64_t stride = 1;
    for (int axis = 0; axis < f.n; ++axis) {
        for (std::uint64_t x = 0; x < f.size(); ++x) {
            const int d = digit(x, p, axis);
            if (d + 1 < p && f.values[x] > f.values[x + stride]) return false;
        }
        stride *= std::uint64_t(p);
    }
    return true;
}

namespace {

// Pair compression (j -> k) along one coordinate; returns #points moved.
std::uint64_t pair_shift_in_place(TorusFunction& f, int axis, int j, int k,
                                  std::uint64_t stride) {
    std::uint64_t moved = 0;
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        if (digit(x, f.p, axis) != j) continue;
        const std::uint64_t xk = x + std::uint64_t(k - j) * stride;
        if (f.values[x] == 1.0 && f.values[xk] == 0.0) {
            f.values[x] = 0.0;
            f.values[xk] = 1.0;
            ++moved;
        }
    }
    return moved;
}

}  // namespace

TorusFunction torus_pair_shift(const TorusFunction& f, int coordinate, int j, int k) {
    require_boolean(f, "torus_pair_shift");
    if (coordinate < 1 || coordinate > f.n) {
        throw std::invalid_argument("coordinate must be in [1, n]");
    }
    if (j < 0 || k <= j || k >= f.p) {
        throw std::invalid_argument("pair shift needs 0 <= j < k < p");
    }
    TorusFunction g = f;
    std::uint64_t stride = 1;
    for (int axis = 0; axis + 1 < coordinate; ++axis) stride *= std::uint64_t(f.p);
    pair_shift_in_place(g, coordinate - 1, j, k, stride);
    return g;
}

std::pair<TorusFunction, TorusShiftTrace> torus_monotonize(const TorusFunction& f) {
    require_boolean(f, "torus_monotonize");
    TorusFunction g = f;
    TorusShiftTrace trace;
    const int p = f.p;
    const std::uint64_t pass_bound = std::uint64_t(f.n) * std::uint64_t(p) * f.size() + 1;
    bool moved_any = true;
    while (moved_any) {
        moved_any = false;
        ++trace.passes;
        std::uint64_t stride = 1;
        for (int axis = 0; axis < f.n; ++axis) {
            for (int j = 0; j < p; ++j) {
                for (int k = j + 1; k < p; ++k) {
                    const std::uint64_t moved = pair_shift_in_place(g, axis, j, k, stride);
                    trace.steps.push_back({axis + 1, j, k, moved});
                    if (moved) moved_any = true;
                }
            }
            stride *= std::uint64_t(p);
        }
        if (std::uint64_t(trace.passes) > pass_bound) {
            throw std::logic_error("torus_monotonize exceeded its termination bound");
        }
    }
    std::uint64_t potential = 0;
    for (std::uint64_t x = 0; x < g.size(); ++x) {
        if (g.values[x] == 1.0) {
            std::uint64_t rest = x;
            for (int axis = 0; axis < f.n; ++axis) {
                potential += rest % std::uint64_t(p);
                rest /= std::uint64_t(p);
            }
        }
    }
    trace.final_potential = potential;
    return {std::move(g), std::move(trace)};
}

}  // namespace nstab
