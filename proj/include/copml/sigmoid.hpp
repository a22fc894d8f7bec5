#pragma once

#include <vector>

#include "copml/field.hpp"

namespace copml {

double sigmoid(double z);

/// Least-squares polynomial fit of the sigmoid over a uniform grid on
/// [-B, B], plus its quantized form for field evaluation.
struct PolyApprox {
    int degree = 1;
    std::vector<double> real_coeffs;        // c_0..c_r
    std::vector<std::uint32_t> field_coeffs; // phi(round(c_i * 2^l_c))
    int l_c = 0;
    FieldPrime p;
    double fit_interval = 10.0; // half-width B
    int grid_points = 1000;
    double fit_residual = 0.0; // RMS residual over the fit grid

    bool quantized() const { return !field_coeffs.empty(); }
    double eval_real(double z) const;
};

/// Fit ghat(z) = sum c_i z^i minimizing the squared error over the grid.
/// Throws on ill-conditioned normal equations.
PolyApprox fit_sigmoid(int r, double half_interval, int grid);

/// Quantize the coefficients at scale l_c for field evaluation.
void quantize_coeffs(PolyApprox& approx, int l_c, const FieldPrime& p);

/// Horner evaluation of the quantized polynomial on field values, with the
/// lower coefficients pre-shifted so every term lands at the common output
/// scale l_c + r * z.scale.
FieldMatrix eval_poly_field(const PolyApprox& approx, const FieldMatrix& z);

/// Largest |ghat - sigmoid| over a dense grid on [lo, hi].
double max_abs_error(const PolyApprox& approx, double lo, double hi, int samples = 100001);

} // namespace copml
