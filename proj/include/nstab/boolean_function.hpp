#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nstab {

inline constexpr int kMaxDimension = 24;
inline constexpr const char* kVersion = "0.1.0";

// Index convention used by every module: a point x = (x_1, ..., x_n) of
// {0,1}^n is stored at idx(x) = sum_i x_i * 2^(i-1), i.e. coordinate 1 is
// the least-significant bit of the index.
std::uint64_t domain_size(int n);

struct CubeFunction;

// Boolean function f: {0,1}^n -> {0,1} as a packed 2^n-bit truth table.
class BooleanFunction {
  public:
    explicit BooleanFunction(int n, bool fill = false);

    // f(x) = 1 iff idx(x) is listed in `support`.
    static BooleanFunction from_support(int n, const std::vector<std::uint64_t>& support);

    // Truth-table text format: lowercase hex, ceil(2^n/4) digits,
    // most-significant nibble first, bit idx(x) counted from the
    // least-significant end. Example: n=2, bits 0 and 1 set -> "3".
    static BooleanFunction from_hex(int n, std::string_view hex);
    std::string to_hex() const;

    int dimension() const { return n_; }
    std::uint64_t size() const { return std::uint64_t(1) << n_; }

    bool value(std::uint64_t idx) const {
        return (words_[idx >> 6] >> (idx & 63)) & 1;
    }
    void set_value(std::uint64_t idx, bool v);

    std::uint64_t support_size() const;
    std::vector<std::uint64_t> support() const;
    double mean() const;
    bool is_balanced() const;

    // 1 - f
    BooleanFunction complement() const;
    // x -> f(x + 1...1), i.e. every input bit flipped
    BooleanFunction reflect_inputs() const;

    CubeFunction to_cube() const;

    const std::vector<std::uint64_t>& words() const { return words_; }
    std::vector<std::uint64_t>& words() { return words_; }

    bool operator==(const BooleanFunction&) const = default;

  private:
    int n_;
    std::vector<std::uint64_t> words_;  // unused high bits always zero
    void clear_padding();
};

// Real-valued function on {0,1}^n, same index convention.
struct CubeFunction {
    int n = 0;
    std::vector<double> values;

    CubeFunction() = default;
    CubeFunction(int n_, std::vector<double> v);
    static CubeFunction constant(int n, double c);

    double mean() const;
    double min_value() const;
    double max_value() const;
};

// Walsh-Fourier coefficients: coeffs[mask(A)] = fhat(A) where mask(A) has
// bit i-1 set iff i is in A; coeffs[0] is the mean of the function.
struct Spectrum {
    int n = 0;
    std::vector<double> coeffs;
};

// Forward transform carries the 2^-n scaling so that coeffs[0] = E f; the
// inverse is the plain butterfly. Both are O(n 2^n).
Spectrum wht(const CubeFunction& f);
CubeFunction wht_inverse(const Spectrum& s);

// sum over |A| = d of fhat(A)^2
double degree_weight(const Spectrum& s, int d);

double mean(const BooleanFunction& f);
bool is_balanced(const BooleanFunction& f);

}  // namespace nstab
