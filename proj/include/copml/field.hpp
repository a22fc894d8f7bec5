#pragma once

#include <cstdint>
#include <vector>

#include "copml/errors.hpp"

namespace copml {

/// Prime modulus of the working field. Kept below 2^31 so that a product of
/// two reduced values fits in 62 bits and inner products can accumulate in
/// 64-bit registers.
struct FieldPrime {
    std::uint32_t p = 0;

    FieldPrime() = default;
    explicit FieldPrime(std::uint32_t prime);

    std::uint32_t half() const { return (p - 1) / 2; }

    /// Largest inner-product length that can accumulate without reduction,
    /// floor((2^64-1) / (p-1)^2).
    std::uint64_t max_accumulation() const;

    /// Checks d * (p-1)^2 <= 2^64 - 1 for a given inner dimension.
    bool fits_inner_dim(std::uint64_t d) const { return d <= max_accumulation(); }

    bool operator==(const FieldPrime&) const = default;
};

bool is_prime_u32(std::uint32_t n);

/// Fixed-point quantization parameters: l_x fractional bits into F_p.
struct QuantParams {
    int l_x = 0;
    FieldPrime p;
};

inline std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    std::uint64_t s = std::uint64_t(a) + b;
    if (s >= p) s -= p;
    return std::uint32_t(s);
}

inline std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return a >= b ? a - b : std::uint32_t(std::uint64_t(a) + p - b);
}

inline std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return std::uint32_t(std::uint64_t(a) * b % p);
}

std::uint32_t pow_mod(std::uint32_t base, std::uint64_t exp, std::uint32_t p);

/// Multiplicative inverse via Fermat; requires a != 0 mod p.
std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);

/// Round-half-up: floor(x) if frac(x) < 0.5, else floor(x)+1.
std::int64_t round_half_up(double x);

/// Two's-complement embedding of a signed integer into [0, p).
std::uint32_t phi(std::int64_t x, const FieldPrime& p);

/// Inverse embedding: values above (p-1)/2 map to negatives.
std::int64_t phi_inv(std::uint32_t a, const FieldPrime& p);

/// Dense matrix over F_p with a fixed-point scale exponent: each entry
/// represents phi_inv(entry) / 2^scale. The scale is carried through all
/// arithmetic; mixing scales in addition throws.
class FieldMatrix {
public:
    FieldMatrix() = default;
    FieldMatrix(std::size_t rows, std::size_t cols, FieldPrime p, int scale = 0);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return entries_.size(); }
    const FieldPrime& prime() const { return p_; }
    int scale() const { return scale_; }
    void set_scale(int s) { scale_ = s; }

    std::uint32_t& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    std::uint32_t at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    std::uint32_t& operator[](std::size_t i) { return entries_[i]; }
    std::uint32_t operator[](std::size_t i) const { return entries_[i]; }

    std::vector<std::uint32_t>& data() { return entries_; }
    const std::vector<std::uint32_t>& data() const { return entries_; }

    bool same_shape(const FieldMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_;
    }

    FieldMatrix transposed() const;

    bool operator==(const FieldMatrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    FieldPrime p_;
    int scale_ = 0;
    std::vector<std::uint32_t> entries_;
};

/// Element-wise sum; requires equal shapes and scales.
FieldMatrix add(const FieldMatrix& a, const FieldMatrix& b);
/// Element-wise difference; requires equal shapes and scales.
FieldMatrix sub(const FieldMatrix& a, const FieldMatrix& b);
/// Multiply every entry by a public constant carrying its own scale.
FieldMatrix mul_scalar(const FieldMatrix& a, std::uint32_t c, int c_scale = 0);
/// Element-wise product; scales add.
FieldMatrix mul_elementwise(const FieldMatrix& a, const FieldMatrix& b);

/// Modular matrix product with 64-bit accumulation. Reduction happens once
/// per inner product when the inner dimension satisfies d*(p-1)^2 <= 2^64-1,
/// and in maximal safe chunks otherwise. Result scale = a.scale + b.scale.
FieldMatrix matmul(const FieldMatrix& a, const FieldMatrix& b);

/// Number of field multiplications a matmul of these shapes performs.
inline std::uint64_t matmul_cost(std::size_t rows, std::size_t inner, std::size_t cols) {
    return std::uint64_t(rows) * inner * cols;
}

/// Element-wise phi(round_half_up(2^l_x * x)). Throws OverflowError when a
/// quantized magnitude exceeds (p-1)/2.
FieldMatrix quantize(const std::vector<std::vector<double>>& x, const QuantParams& q);
FieldMatrix quantize_vector(const std::vector<double>& x, const QuantParams& q);

/// phi_inv(entry) / 2^scale element-wise.
std::vector<std::vector<double>> dequantize(const FieldMatrix& a);
std::vector<double> dequantize_vector(const FieldMatrix& a);

} // namespace copml
