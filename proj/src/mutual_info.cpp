#include "nstab/mutual_info.hpp"

#include <cmath>
#include <stdexcept>

#include "nstab/noise.hpp"

namespace nstab {

namespace {
// guards kill -0.0 and rounding excursions at the endpoints
double xlog2x(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return x * std::log2(x);
}
}  // namespace

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("binary_entropy needs p in [0, 1]");
    }
    return -xlog2x(p) - xlog2x(1.0 - p);
}

double neg_cond_entropy(const BooleanFunction& f, double eps) {
    if (!(eps >= 0.0 && eps <= 0.5)) {
        throw std::invalid_argument("neg_cond_entropy needs eps in [0, 1/2]");
    }
    CubeFunction t = apply_noise(f.to_cube(), eps);
    double s = 0;
    for (double v : t.values) s += xlog2x(v) + xlog2x(1.0 - v);
    return s / double(t.values.size());
}

double mutual_information(const BooleanFunction& f, double eps) {
    return binary_entropy(f.mean()) + neg_cond_entropy(f, eps);
}

}  // namespace nstab
