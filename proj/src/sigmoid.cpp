#include "copml/sigmoid.hpp"

#include <cmath>
#include <string>

namespace copml {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double PolyApprox::eval_real(double z) const {
    double acc = 0.0;
    for (auto it = real_coeffs.rbegin(); it != real_coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

PolyApprox fit_sigmoid(int r, double half_interval, int grid) {
    if (r < 1) throw ConfigError("fit_sigmoid: degree must be >= 1");
    if (half_interval <= 0) throw ConfigError("fit_sigmoid: interval half-width must be > 0");
    if (grid < 10 * (r + 1))
        throw ConfigError("fit_sigmoid: need at least 10(r+1) grid points");

    // Normal equations for the Vandermonde least-squares system.
    const int n = r + 1;
    std::vector<double> moments(std::size_t(2 * r + 1), 0.0);
    std::vector<double> rhs(std::size_t(n), 0.0);
    for (int i = 0; i < grid; ++i) {
        const double z = -half_interval + 2.0 * half_interval * i / (grid - 1);
        const double g = sigmoid(z);
        double zp = 1.0;
        for (int k = 0; k <= 2 * r; ++k) {
            moments[std::size_t(k)] += zp;
            if (k < n) rhs[std::size_t(k)] += zp * g;
            zp *= z;
        }
    }
    std::vector<std::vector<double>> a(std::size_t(n), std::vector<double>(std::size_t(n), 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[std::size_t(i)][std::size_t(j)] = moments[std::size_t(i + j)];

    // Gaussian elimination with partial pivoting.
    std::vector<double> c = rhs;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row)
            if (std::fabs(a[std::size_t(row)][std::size_t(col)]) >
                std::fabs(a[std::size_t(pivot)][std::size_t(col)]))
                pivot = row;
        std::swap(a[std::size_t(col)], a[std::size_t(pivot)]);
        std::swap(c[std::size_t(col)], c[std::size_t(pivot)]);
        const double d = a[std::size_t(col)][std::size_t(col)];
        if (std::fabs(d) < 1e-9 * grid)
            throw Error("fit_sigmoid: ill-conditioned normal equations at degree " +
                        std::to_string(r));
        for (int row = col + 1; row < n; ++row) {
            const double f = a[std::size_t(row)][std::size_t(col)] / d;
            for (int k = col; k < n; ++k)
                a[std::size_t(row)][std::size_t(k)] -= f * a[std::size_t(col)][std::size_t(k)];
            c[std::size_t(row)] -= f * c[std::size_t(col)];
        }
    }
    for (int row = n - 1; row >= 0; --row) {
        for (int k = row + 1; k < n; ++k)
            c[std::size_t(row)] -= a[std::size_t(row)][std::size_t(k)] * c[std::size_t(k)];
        c[std::size_t(row)] /= a[std::size_t(row)][std::size_t(row)];
    }

    PolyApprox approx;
    approx.degree = r;
    approx.real_coeffs = c;
    approx.fit_interval = half_interval;
    approx.grid_points = grid;
    double ss = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double z = -half_interval + 2.0 * half_interval * i / (grid - 1);
        const double e = approx.eval_real(z) - sigmoid(z);
        ss += e * e;
    }
    approx.fit_residual = std::sqrt(ss / grid);
    return approx;
}

void quantize_coeffs(PolyApprox& approx, int l_c, const FieldPrime& p) {
    approx.l_c = l_c;
    approx.p = p;
    approx.field_coeffs.clear();
    const double factor = std::ldexp(1.0, l_c);
    for (double c : approx.real_coeffs)
        approx.field_coeffs.push_back(phi(round_half_up(c * factor), p));
}

FieldMatrix eval_poly_field(const PolyApprox& approx, const FieldMatrix& z) {
    if (!approx.quantized()) throw Error("eval_poly_field: coefficients not quantized");
    if (approx.p != z.prime()) throw Error("eval_poly_field: prime mismatch");
    const std::uint32_t p = approx.p.p;
    const int r = approx.degree;
    const int sz = z.scale();
    // shift_i = 2^((r-i) * z.scale) brings every term to scale l_c + r*z.scale.
    FieldMatrix out(z.rows(), z.cols(), approx.p, approx.l_c + r * sz);
    for (std::size_t i = 0; i < z.size(); ++i) {
        std::uint32_t acc = approx.field_coeffs[std::size_t(r)];
        for (int k = r - 1; k >= 0; --k) {
            const std::uint32_t shift = pow_mod(2, std::uint64_t(r - k) * std::uint64_t(sz), p);
            acc = add_mod(mul_mod(acc, z[i], p),
                          mul_mod(approx.field_coeffs[std::size_t(k)], shift, p), p);
        }
        out[i] = acc;
    }
    return out;
}

double max_abs_error(const PolyApprox& approx, double lo, double hi, int samples) {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double z = lo + (hi - lo) * i / (samples - 1);
        worst = std::max(worst, std::fabs(approx.eval_real(z) - sigmoid(z)));
    }
    return worst;
}

} // namespace copml
