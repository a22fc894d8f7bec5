#include "copml/field.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace copml {

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

FieldPrime::FieldPrime(std::uint32_t prime) : p(prime) {
    if (p < 2 || p >= (1u << 31))
        throw ConfigError("field prime must satisfy 2 <= p < 2^31, got " + std::to_string(p));
    if (!is_prime_u32(p))
        throw ConfigError("modulus " + std::to_string(p) + " is not prime");
}

std::uint64_t FieldPrime::max_accumulation() const {
    std::uint64_t pm1 = p - 1;
    return std::numeric_limits<std::uint64_t>::max() / (pm1 * pm1);
}

std::uint32_t pow_mod(std::uint32_t base, std::uint64_t exp, std::uint32_t p) {
    std::uint64_t result = 1, b = base % p;
    while (exp > 0) {
        if (exp & 1) result = result * b % p;
        b = b * b % p;
        exp >>= 1;
    }
    return std::uint32_t(result);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    if (a % p == 0) throw Error("inverse of zero mod " + std::to_string(p));
    return pow_mod(a, p - 2, p);
}

std::int64_t round_half_up(double x) {
    if (!std::isfinite(x)) throw Error("round_half_up: non-finite input");
    double f = std::floor(x);
    return std::int64_t(f) + ((x - f < 0.5) ? 0 : 1);
}

std::uint32_t phi(std::int64_t x, const FieldPrime& p) {
    std::int64_t half = p.half();
    if (x > half || x < -half)
        throw OverflowError("phi: |" + std::to_string(x) + "| exceeds (p-1)/2 = " +
                            std::to_string(half));
    return x >= 0 ? std::uint32_t(x) : std::uint32_t(std::int64_t(p.p) + x);
}

std::int64_t phi_inv(std::uint32_t a, const FieldPrime& p) {
    return a <= p.half() ? std::int64_t(a) : std::int64_t(a) - std::int64_t(p.p);
}

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, FieldPrime p, int scale)
    : rows_(rows), cols_(cols), p_(p), scale_(scale), entries_(rows * cols, 0) {}

FieldMatrix FieldMatrix::transposed() const {
    FieldMatrix t(cols_, rows_, p_, scale_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t.at(c, r) = at(r, c);
    return t;
}

namespace {

void check_same(const FieldMatrix& a, const FieldMatrix& b, const char* op) {
    if (!a.same_shape(b))
        throw DimensionError(std::string(op) + ": shape mismatch");
    if (a.prime() != b.prime())
        throw Error(std::string(op) + ": different moduli");
}

} // namespace

FieldMatrix add(const FieldMatrix& a, const FieldMatrix& b) {
    check_same(a, b, "add");
    if (a.scale() != b.scale())
        throw ScaleMismatchError("add: scales " + std::to_string(a.scale()) + " vs " +
                                 std::to_string(b.scale()));
    FieldMatrix r = a;
    const std::uint32_t p = a.prime().p;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = add_mod(r[i], b[i], p);
    return r;
}

FieldMatrix sub(const FieldMatrix& a, const FieldMatrix& b) {
    check_same(a, b, "sub");
    if (a.scale() != b.scale())
        throw ScaleMismatchError("sub: scales " + std::to_string(a.scale()) + " vs " +
                                 std::to_string(b.scale()));
    FieldMatrix r = a;
    const std::uint32_t p = a.prime().p;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = sub_mod(r[i], b[i], p);
    return r;
}

FieldMatrix mul_scalar(const FieldMatrix& a, std::uint32_t c, int c_scale) {
    FieldMatrix r = a;
    const std::uint32_t p = a.prime().p;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = mul_mod(r[i], c % p, p);
    r.set_scale(a.scale() + c_scale);
    return r;
}

FieldMatrix mul_elementwise(const FieldMatrix& a, const FieldMatrix& b) {
    check_same(a, b, "mul_elementwise");
    FieldMatrix r = a;
    const std::uint32_t p = a.prime().p;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = mul_mod(r[i], b[i], p);
    r.set_scale(a.scale() + b.scale());
    return r;
}

FieldMatrix matmul(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.cols() != b.rows())
        throw DimensionError("matmul: inner dimensions " + std::to_string(a.cols()) + " vs " +
                             std::to_string(b.rows()));
    if (a.prime() != b.prime()) throw Error("matmul: different moduli");
    const std::uint32_t p = a.prime().p;
    const std::size_t inner = a.cols();
    const std::uint64_t chunk = a.prime().max_accumulation();
    FieldMatrix r(a.rows(), b.cols(), a.prime(), a.scale() + b.scale());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            std::uint64_t acc = 0;
            std::uint64_t since_reduce = 0;
            for (std::size_t k = 0; k < inner; ++k) {
                acc += std::uint64_t(a.at(i, k)) * b.at(k, j);
                if (++since_reduce == chunk) {
                    acc %= p;
                    since_reduce = 0;
                }
            }
            r.at(i, j) = std::uint32_t(acc % p);
        }
    }
    return r;
}

FieldMatrix quantize(const std::vector<std::vector<double>>& x, const QuantParams& q) {
    const std::size_t rows = x.size();
    const std::size_t cols = rows ? x[0].size() : 0;
    FieldMatrix r(rows, cols, q.p, q.l_x);
    const double factor = std::ldexp(1.0, q.l_x);
    for (std::size_t i = 0; i < rows; ++i) {
        if (x[i].size() != cols) throw DimensionError("quantize: ragged input");
        for (std::size_t j = 0; j < cols; ++j) {
            std::int64_t v = round_half_up(factor * x[i][j]);
            r.at(i, j) = phi(v, q.p);
        }
    }
    return r;
}

FieldMatrix quantize_vector(const std::vector<double>& x, const QuantParams& q) {
    FieldMatrix r(x.size(), 1, q.p, q.l_x);
    const double factor = std::ldexp(1.0, q.l_x);
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = phi(round_half_up(factor * x[i]), q.p);
    return r;
}

std::vector<std::vector<double>> dequantize(const FieldMatrix& a) {
    std::vector<std::vector<double>> r(a.rows(), std::vector<double>(a.cols()));
    const double factor = std::ldexp(1.0, -a.scale());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r[i][j] = double(phi_inv(a.at(i, j), a.prime())) * factor;
    return r;
}

std::vector<double> dequantize_vector(const FieldMatrix& a) {
    std::vector<double> r(a.size());
    const double factor = std::ldexp(1.0, -a.scale());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = double(phi_inv(a[i], a.prime())) * factor;
    return r;
}

} // namespace copml
