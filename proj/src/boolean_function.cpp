#include "nstab/boolean_function.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace nstab {

std::uint64_t domain_size(int n) {
    if (n < 1 || n > kMaxDimension) {
        throw std::invalid_argument("dimension n must be in [1, " +
                                    std::to_string(kMaxDimension) + "], got " + std::to_string(n));
    }
    return std::uint64_t(1) << n;
}

namespace {
std::size_t word_count(std::uint64_t bits) { return std::size_t((bits + 63) >> 6); }

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}
}  // namespace

BooleanFunction::BooleanFunction(int n, bool fill) : n_(n) {
    const std::uint64_t size = domain_size(n);
    words_.assign(word_count(size), fill ? ~std::uint64_t(0) : 0);
    clear_padding();
}

void BooleanFunction::clear_padding() {
    const std::uint64_t bits = size();
    if (bits & 63) {
        words_.back() &= (std::uint64_t(1) << (bits & 63)) - 1;
    }
}

BooleanFunction BooleanFunction::from_support(int n, const std::vector<std::uint64_t>& support) {
    BooleanFunction f(n);
    for (std::uint64_t idx : support) {
        if (idx >= f.size()) {
            throw std::invalid_argument("support index " + std::to_string(idx) +
                                        " out of range for n=" + std::to_string(n));
        }
        f.set_value(idx, true);
    }
    return f;
}

BooleanFunction BooleanFunction::from_hex(int n, std::string_view hex) {
    const std::uint64_t size = domain_size(n);
    const std::size_t digits = std::size_t((size + 3) / 4);
    if (hex.size() != digits) {
        throw std::invalid_argument("hex table for n=" + std::to_string(n) + " needs exactly " +
                                    std::to_string(digits) + " digits, got " +
                                    std::to_string(hex.size()));
    }
    BooleanFunction f(n);
    for (std::size_t i = 0; i < digits; ++i) {
        const int d = hex_digit(hex[digits - 1 - i]);  // digit i covers bits 4i..4i+3
        if (d < 0) throw std::invalid_argument(std::string("malformed hex table: '") + std::string(hex) + "'");
        f.words_[(4 * i) >> 6] |= std::uint64_t(d) << ((4 * i) & 63);
    }
    const std::uint64_t padded = f.words_.back();
    f.clear_padding();
    if (f.words_.back() != padded) {
        throw std::invalid_argument("hex table sets bits beyond 2^n");
    }
    return f;
}

std::string BooleanFunction::to_hex() const {
    const std::size_t digits = std::size_t((size() + 3) / 4);
    std::string out(digits, '0');
    for (std::size_t i = 0; i < digits; ++i) {
        const int d = int((words_[(4 * i) >> 6] >> ((4 * i) & 63)) & 0xf);
        out[digits - 1 - i] = "0123456789abcdef"[d];
    }
    return out;
}

void BooleanFunction::set_value(std::uint64_t idx, bool v) {
    const std::uint64_t mask = std::uint64_t(1) << (idx & 63);
    if (v)
        words_[idx >> 6] |= mask;
    else
        words_[idx >> 6] &= ~mask;
}

std::uint64_t BooleanFunction::support_size() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : words_) c += std::uint64_t(std::popcount(w));
    return c;
}

std::vector<std::uint64_t> BooleanFunction::support() const {
    std::vector<std::uint64_t> out;
    out.reserve(support_size());
    for (std::uint64_t x = 0; x < size(); ++x)
        if (value(x)) out.push_back(x);
    return out;
}

double BooleanFunction::mean() const {
    return double(support_size()) / double(size());
}

bool BooleanFunction::is_balanced() const {
    return 2 * support_size() == size();
}

BooleanFunction BooleanFunction::complement() const {
    BooleanFunction g(*this);
    for (auto& w : g.words_) w = ~w;
    g.clear_padding();
    return g;
}

BooleanFunction BooleanFunction::reflect_inputs() const {
    BooleanFunction g(n_);
    const std::uint64_t all = size() - 1;
    for (std::uint64_t x = 0; x < size(); ++x)
        if (value(x)) g.set_value(x ^ all, true);
    return g;
}

CubeFunction BooleanFunction::to_cube() const {
    CubeFunction g;
    g.n = n_;
    g.values.resize(size());
    for (std::uint64_t x = 0; x < size(); ++x) g.values[x] = value(x) ? 1.0 : 0.0;
    return g;
}

CubeFunction::CubeFunction(int n_, std::vector<double> v) : n(n_), values(std::move(v)) {
    if (values.size() != domain_size(n)) {
        throw std::invalid_argument("CubeFunction needs exactly 2^n values");
    }
}

CubeFunction CubeFunction::constant(int n, double c) {
    return CubeFunction(n, std::vector<double>(domain_size(n), c));
}

double CubeFunction::mean() const {
    double s = 0;
    for (double v : values) s += v;
    return s / double(values.size());
}

double CubeFunction::min_value() const { return *std::min_element(values.begin(), values.end()); }
double CubeFunction::max_value() const { return *std::max_element(values.begin(), values.end()); }

namespace {
// In-place unnormalized Walsh-Hadamard butterfly.
void hadamard(std::vector<double>& a) {
    const std::size_t m = a.size();
    for (std::size_t len = 1; len < m; len <<= 1) {
        for (std::size_t i = 0; i < m; i += len << 1) {
            for (std::size_t j = i; j < i + len; ++j) {
                const double u = a[j];
                const double v = a[j + len];
                a[j] = u + v;
                a[j + len] = u - v;
            }
        }
    }
}
}  // namespace

Spectrum wht(const CubeFunction& f) {
    Spectrum s;
    s.n = f.n;
    s.coeffs = f.values;
    hadamard(s.coeffs);
    const double scale = 1.0 / double(f.values.size());
    for (double& c : s.coeffs) c *= scale;
    return s;
}

CubeFunction wht_inverse(const Spectrum& s) {
    CubeFunction f;
    f.n = s.n;
    f.values = s.coeffs;
    hadamard(f.values);
    return f;
}

double degree_weight(const Spectrum& s, int d) {
    if (d < 0 || d > s.n) {
        throw std::invalid_argument("degree must be in [0, n]");
    }
    double w = 0;
    for (std::uint64_t mask = 0; mask < s.coeffs.size(); ++mask) {
        if (std::popcount(mask) == d) w += s.coeffs[mask] * s.coeffs[mask];
    }
    return w;
}

double mean(const BooleanFunction& f) { return f.mean(); }
bool is_balanced(const BooleanFunction& f) { return f.is_balanced(); }

}  // namespace nstab
