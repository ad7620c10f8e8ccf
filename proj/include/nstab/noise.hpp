#pragma once

#include <functional>
#include <vector>

#include "nstab/boolean_function.hpp"

namespace nstab {

// BSC cross-over probability together with the pairwise correlation
// rho = (1-2*eps)^2 of two independently noised copies.
struct NoiseParam {
    double epsilon;
    double rho;
    explicit NoiseParam(double eps);
};

// T_eps f via the spectral multiplier (1-2*eps)^|A|. Any real eps is
// accepted (the formula extends analytically); the channel range is
// [0, 1/2].
CubeFunction apply_noise(const CubeFunction& f, double eps);

// T_eps f(x) = E f(x+Z) by exact coordinatewise convolution with the
// Bernoulli(eps) kernel; independent oracle for apply_noise. eps in [0,1].
CubeFunction apply_noise_direct(const CubeFunction& f, double eps);

// E (T_eps f)^alpha with 0^alpha := 0; alpha >= 1. Integer alpha is
// evaluated by repeated multiplication so the analytic extension to
// eps < 0 stays polynomial.
double alpha_stability(const BooleanFunction& f, double alpha, double eps);

// E prod_i T_eps f_i; equals E prod_i f_i(Y^i) for independently noised
// copies Y^i of a common uniform string.
double correlation_star(const std::vector<BooleanFunction>& fs, double eps);

// P(f(Y^1) = ... = f(Y^k)) = E (T_eps f)^k + E (1 - T_eps f)^k.
double agreement_probability(const BooleanFunction& f, int k, double eps);

// Lf = -sum_A |A| fhat(A) W_A; E(Lf) = 0.
CubeFunction laplacian(const CubeFunction& f);

// d/deps E(T_eps f)^alpha at eps = 0, which equals -alpha I(f)/2.
double stability_slope_zero(const BooleanFunction& f, double alpha);

// Convex test functions applied to T_eps f. The built-ins are convex on
// [0,1]; entropy_pair is 1 + x log2 x + (1-x) log2(1-x), hellinger is
// 1 - 2 sqrt(x (1-x)).
class PhiSpec {
  public:
    enum class Kind { power, entropy_pair, hellinger, custom };

    static PhiSpec power(double alpha);
    static PhiSpec entropy_pair();
    static PhiSpec hellinger();
    static PhiSpec custom(std::function<double(double)> fn);

    double operator()(double x) const;
    Kind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    std::string name() const;

  private:
    PhiSpec(Kind k, double a) : kind_(k), alpha_(a) {}
    Kind kind_;
    double alpha_ = 0;
    std::function<double(double)> fn_;
};

// E Phi(T_eps f)
double phi_stability(const BooleanFunction& f, const PhiSpec& phi, double eps);

// t^alpha with the 0^alpha := 0 convention shared by the stability and
// entropy paths.
double stability_pow(double t, double alpha);

}  // namespace nstab
