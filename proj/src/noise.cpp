#include "nstab/noise.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "nstab/influence.hpp"

namespace nstab {

NoiseParam::NoiseParam(double eps) : epsilon(eps), rho((1 - 2 * eps) * (1 - 2 * eps)) {
    if (!(eps >= 0.0 && eps <= 0.5)) {
        throw std::invalid_argument("cube channel needs eps in [0, 1/2]");
    }
}

CubeFunction apply_noise(const CubeFunction& f, double eps) {
    Spectrum s = wht(f);
    const double base = 1.0 - 2.0 * eps;
    std::vector<double> pow_cache(std::size_t(f.n) + 1);
    pow_cache[0] = 1.0;
    for (int d = 1; d <= f.n; ++d) pow_cache[d] = pow_cache[d - 1] * base;
    for (std::uint64_t m = 0; m < s.coeffs.size(); ++m) {
        s.coeffs[m] *= pow_cache[std::popcount(m)];
    }
    return wht_inverse(s);
}

CubeFunction apply_noise_direct(const CubeFunction& f, double eps) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw std::invalid_argument("apply_noise_direct needs eps in [0, 1]");
    }
    CubeFunction g = f;
    const double keep = 1.0 - eps;
    for (int b = 0; b < f.n; ++b) {
        const std::uint64_t bit = std::uint64_t(1) << b;
        for (std::uint64_t x = 0; x < g.values.size(); ++x) {
            if (x & bit) continue;
            const double a = g.values[x];
            const double c = g.values[x | bit];
            g.values[x] = keep * a + eps * c;
            g.values[x | bit] = eps * a + keep * c;
        }
    }
    return g;
}

double stability_pow(double t, double alpha) {
    if (alpha == std::floor(alpha) && alpha >= 0 && alpha <= 1024) {
        double r = 1.0;
        for (int k = 0; k < int(alpha); ++k) r *= t;
        return r;
    }
    if (t <= 0.0) return 0.0;  // 0^alpha := 0
    return std::pow(t, alpha);
}

namespace {
double mean_pow(const CubeFunction& noised, double alpha) {
    double s = 0;
    for (double t : noised.values) s += stability_pow(t, alpha);
    return s / double(noised.values.size());
}
}  // namespace

double alpha_stability(const BooleanFunction& f, double alpha, double eps) {
    if (!(alpha >= 1.0)) {
        throw std::invalid_argument("alpha_stability needs alpha >= 1");
    }
    return mean_pow(apply_noise(f.to_cube(), eps), alpha);
}

double correlation_star(const std::vector<BooleanFunction>& fs, double eps) {
    if (fs.empty()) {
        throw std::invalid_argument("correlation_star needs at least one function");
    }
    const int n = fs.front().dimension();
    for (const auto& f : fs) {
        if (f.dimension() != n) {
            throw std::invalid_argument("correlation_star functions must share the dimension");
        }
    }
    std::vector<double> prod(domain_size(n), 1.0);
    for (const auto& f : fs) {
        CubeFunction t = apply_noise(f.to_cube(), eps);
        for (std::uint64_t x = 0; x < prod.size(); ++x) prod[x] *= t.values[x];
    }
    double s = 0;
    for (double v : prod) s += v;
    return s / double(prod.size());
}

double agreement_probability(const BooleanFunction& f, int k, double eps) {
    if (k < 2) {
        throw std::invalid_argument("agreement_probability needs k >= 2");
    }
    CubeFunction t = apply_noise(f.to_cube(), eps);
    double s = 0;
    for (double v : t.values) {
        s += stability_pow(v, double(k)) + stability_pow(1.0 - v, double(k));
    }
    return s / double(t.values.size());
}

CubeFunction laplacian(const CubeFunction& f) {
    Spectrum s = wht(f);
    for (std::uint64_t m = 0; m < s.coeffs.size(); ++m) {
        s.coeffs[m] *= -double(std::popcount(m));
    }
    return wht_inverse(s);
}

double stability_slope_zero(const BooleanFunction& f, double alpha) {
    if (!(alpha >= 1.0)) {
        throw std::invalid_argument("stability_slope_zero needs alpha >= 1");
    }
    return -alpha * total_influence(f) / 2.0;
}

PhiSpec PhiSpec::power(double alpha) {
    if (!(alpha >= 1.0)) {
        throw std::invalid_argument("PhiSpec::power needs alpha >= 1");
    }
    return PhiSpec(Kind::power, alpha);
}

PhiSpec PhiSpec::entropy_pair() { return PhiSpec(Kind::entropy_pair, 0); }
PhiSpec PhiSpec::hellinger() { return PhiSpec(Kind::hellinger, 0); }

PhiSpec PhiSpec::custom(std::function<double(double)> fn) {
    PhiSpec p(Kind::custom, 0);
    p.fn_ = std::move(fn);
    return p;
}

namespace {
// clamp rounding excursions, reject genuine domain violations
double unit_interval(double x) {
    constexpr double slack = 1e-9;
    if (x < -slack || x > 1.0 + slack) {
        throw std::domain_error("Phi argument outside [0, 1]");
    }
    return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x);
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }
}  // namespace

double PhiSpec::operator()(double x) const {
    switch (kind_) {
        case Kind::power:
            return stability_pow(x, alpha_);
        case Kind::entropy_pair: {
            const double t = unit_interval(x);
            return 1.0 + xlog2x(t) + xlog2x(1.0 - t);
        }
        case Kind::hellinger: {
            const double t = unit_interval(x);
            return 1.0 - 2.0 * std::sqrt(t * (1.0 - t));
        }
        case Kind::custom:
            return fn_(x);
    }
    return 0;
}

std::string PhiSpec::name() const {
    switch (kind_) {
        case Kind::power: return "power(" + std::to_string(alpha_) + ")";
        case Kind::entropy_pair: return "entropy-pair";
        case Kind::hellinger: return "hellinger";
        case Kind::custom: return "custom";
    }
    return "";
}

double phi_stability(const BooleanFunction& f, const PhiSpec& phi, double eps) {
    CubeFunction t = apply_noise(f.to_cube(), eps);
    double s = 0;
    for (double v : t.values) s += phi(v);
    return s / double(t.values.size());
}

}  // namespace nstab
