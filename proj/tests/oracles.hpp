#pragma once

// Independent reference implementations used to cross-check the library.
// Everything here deliberately avoids the library's arithmetic helpers:
// plain 64-bit modular operations with a reduction after every step.

#include <cmath>
#include <cstdint>
#include <vector>

#include "copml/field.hpp"
#include "copml/sigmoid.hpp"

namespace oracle {

inline std::uint64_t addm(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return (a + b) % p;
}
inline std::uint64_t subm(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return (a + p - b % p) % p;
}
inline std::uint64_t mulm(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a * b % p;
}
inline std::uint64_t powm(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = mulm(r, b, p);
        b = mulm(b, b, p);
        e >>= 1;
    }
    return r;
}
inline std::uint64_t invm(std::uint64_t a, std::uint64_t p) { return powm(a, p - 2, p); }

/// Matrix product with a modular reduction after every multiplication and
/// every addition (the "naive per-element-reduced" reference).
inline std::vector<std::vector<std::uint32_t>> naive_matmul(
    const std::vector<std::vector<std::uint32_t>>& a,
    const std::vector<std::vector<std::uint32_t>>& b, std::uint64_t p) {
    const std::size_t rows = a.size(), inner = b.size(), cols = b[0].size();
    std::vector<std::vector<std::uint32_t>> r(rows, std::vector<std::uint32_t>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            std::uint64_t acc = 0;
            for (std::size_t k = 0; k < inner; ++k)
                acc = addm(acc, mulm(a[i][k], b[k][j], p), p);
            r[i][j] = std::uint32_t(acc);
        }
    return r;
}

inline std::vector<std::vector<std::uint32_t>> to_rows(const copml::FieldMatrix& m) {
    std::vector<std::vector<std::uint32_t>> r(m.rows(), std::vector<std::uint32_t>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = m.at(i, j);
    return r;
}

/// Scalar field evaluation of the quantized degree-r polynomial by direct
/// power summation (not Horner): sum_k c_k z^k 2^((r-k) zs), landing at
/// scale l_c + r*zs.
inline std::uint32_t poly_field(const std::vector<std::uint32_t>& field_coeffs,
                                std::uint32_t z, int zs, std::uint64_t p) {
    const std::size_t r = field_coeffs.size() - 1;
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k <= r; ++k) {
        std::uint64_t term = mulm(field_coeffs[k], powm(z, k, p), p);
        term = mulm(term, powm(2, std::uint64_t(r - k) * std::uint64_t(zs), p), p);
        acc = addm(acc, term, p);
    }
    return std::uint32_t(acc);
}

/// Plaintext finite-field gradient X^T(ghat(Xw) - y), computed the way the
/// protocol defines it: ghat on Xw at scale 2 l_x, then X^T ghat minus
/// X^T y shifted to the common scale l_c + (2r+1) l_x. Returns field values.
inline std::vector<std::uint32_t> field_gradient(const copml::FieldMatrix& x,
                                                 const copml::FieldMatrix& y,
                                                 const std::vector<std::uint32_t>& w,
                                                 const copml::PolyApprox& approx) {
    const std::uint64_t p = x.prime().p;
    const int l_x = x.scale();
    const int r = approx.degree;
    const std::size_t m = x.rows(), d = x.cols();

    std::vector<std::uint32_t> grad(d, 0);
    std::vector<std::uint32_t> gh(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::uint64_t z = 0;
        for (std::size_t j = 0; j < d; ++j) z = addm(z, mulm(x.at(i, j), w[j], p), p);
        gh[i] = poly_field(approx.field_coeffs, std::uint32_t(z), 2 * l_x, p);
    }
    const std::uint64_t y_shift = powm(2, std::uint64_t(approx.l_c + 2 * r * l_x - l_x), p);
    for (std::size_t j = 0; j < d; ++j) {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < m; ++i) {
            std::uint64_t e = subm(gh[i], mulm(y[i], y_shift, p), p);
            acc = addm(acc, mulm(x.at(i, j), e, p), p);
        }
        grad[j] = std::uint32_t(acc);
    }
    return grad;
}

/// One fixed-point model update with injected truncation randomness: given
/// the signed gradient integers at scale f, the quantized eta/m constant at
/// scale ls, and the per-coordinate r' values the dealer handed out, produce
/// the signed w entries at scale l_x after the randomized k1-truncation.
inline std::vector<std::int64_t> fixed_point_update(const std::vector<std::int64_t>& w,
                                                    const std::vector<std::int64_t>& grad,
                                                    std::int64_t c_eta, int k1,
                                                    const std::vector<std::uint32_t>& r_low) {
    std::vector<std::int64_t> out(w.size());
    const std::int64_t two_k1 = std::int64_t(1) << k1;
    for (std::size_t j = 0; j < w.size(); ++j) {
        const std::int64_t a = grad[j] * c_eta;
        std::int64_t lo = a % two_k1;
        if (lo < 0) lo += two_k1; // mathematical a mod 2^k1
        const std::int64_t fl = (a - lo) / two_k1;
        const std::int64_t s = lo + std::int64_t(r_low[j]) >= two_k1 ? 1 : 0;
        out[j] = w[j] - (fl + s);
    }
    return out;
}

/// Closed-form least-squares slope of the degree-1 sigmoid fit on the
/// symmetric uniform grid: sum z (g(z) - 1/2) / sum z^2.
inline double ls_slope(double half_interval, int grid) {
    double num = 0.0, den = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double z = -half_interval + 2.0 * half_interval * i / (grid - 1);
        num += z * (1.0 / (1.0 + std::exp(-z)) - 0.5);
        den += z * z;
    }
    return num / den;
}

/// Evaluate the polynomial with the given field coefficients (constant
/// first) at z.
inline std::uint32_t eval_coeffs(const std::vector<std::uint32_t>& coeffs, std::uint64_t z,
                                 std::uint64_t p) {
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        acc = addm(acc, mulm(coeffs[k], powm(z, k, p), p), p);
    return std::uint32_t(acc);
}

/// Lagrange interpolation of (points[i], values[i]) evaluated at z.
inline std::uint64_t interpolate_at(const std::vector<std::uint32_t>& points,
                                    const std::vector<std::uint32_t>& values, std::uint64_t z,
                                    std::uint64_t p) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::uint64_t num = 1, den = 1;
        for (std::size_t l = 0; l < points.size(); ++l) {
            if (l == i) continue;
            num = mulm(num, subm(z, points[l], p), p);
            den = mulm(den, subm(points[i], points[l], p), p);
        }
        acc = addm(acc, mulm(values[i], mulm(num, invm(den, p), p), p), p);
    }
    return acc;
}

} // namespace oracle
