#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "copml/field.hpp"

namespace copml {

/// One party's Shamir share of a matrix: the evaluation of an element-wise
/// random polynomial at this party's point, tagged with the polynomial degree
/// and the inherited fixed-point scale.
struct ShareMatrix {
    std::uint32_t owner_point = 0; // lambda_i, nonzero
    std::uint32_t degree = 0;      // T or 2T
    FieldMatrix values;            // carries prime and scale

    int scale() const { return values.scale(); }
    const FieldPrime& prime() const { return values.prime(); }
};

/// Default evaluation points lambda_i = i for i in [1..N].
std::vector<std::uint32_t> default_points(std::size_t n);

/// Shamir sharing with explicit polynomial coefficients: share_i =
/// secret + sum_t points_i^t * coeffs[t-1]. Used by share() and by the
/// exhaustive privacy tests that enumerate the randomness.
std::vector<ShareMatrix> share_with_coeffs(const FieldMatrix& secret,
                                           const std::vector<FieldMatrix>& coeffs,
                                           const std::vector<std::uint32_t>& points);

/// Threshold-T Shamir sharing with i.i.d. uniform coefficient matrices drawn
/// from rng. Requires points.size() > T, all points distinct and nonzero.
std::vector<ShareMatrix> share(const FieldMatrix& secret, std::uint32_t threshold,
                               const std::vector<std::uint32_t>& points, std::mt19937_64& rng);

/// Lagrange interpolation at z=0 from at least degree+1 shares with distinct
/// points. Extra shares beyond degree+1 are ignored.
FieldMatrix reconstruct(const std::vector<ShareMatrix>& shares);

/// Interpolation-at-target coefficients for a set of evaluation points.
std::vector<std::uint32_t> interpolation_coeffs(const std::vector<std::uint32_t>& points,
                                                std::uint32_t target, const FieldPrime& p);

/// Local share addition; reconstructs to the sum. No communication.
ShareMatrix add_local(const ShareMatrix& a, const ShareMatrix& b);
ShareMatrix sub_local(const ShareMatrix& a, const ShareMatrix& b);

/// Local multiplication by a public constant; degree unchanged.
ShareMatrix mul_const_local(const ShareMatrix& a, std::uint32_t c, int c_scale = 0);

/// Local addition of a public constant (added to every share; the underlying
/// polynomial shifts by c, so the secret shifts by c).
ShareMatrix add_public_local(const ShareMatrix& a, const FieldMatrix& c);

/// Uniformly random field matrix.
FieldMatrix random_matrix(std::size_t rows, std::size_t cols, const FieldPrime& p,
                          std::mt19937_64& rng, int scale = 0);

} // namespace copml
