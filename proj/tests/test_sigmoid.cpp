#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "copml/sigmoid.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace copml;

TEST_CASE("sigmoid basics") {
    CHECK(sigmoid(0.0) == doctest::Approx(0.5));
    CHECK(sigmoid(100.0) == doctest::Approx(1.0));
    CHECK(sigmoid(-100.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sigmoid(2.0) + sigmoid(-2.0) == doctest::Approx(1.0)); // symmetry
}

TEST_CASE("degree-1 least-squares fit on [-10, 10]") {
    PolyApprox a = fit_sigmoid(1, 10.0, 1000);
    REQUIRE(a.real_coeffs.size() == 2);
    // symmetry of the grid and of sigmoid-1/2 forces the intercept to 1/2
    CHECK(a.real_coeffs[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(a.real_coeffs[1] > 0.0);
    // the slope has a closed form on the uniform grid
    CHECK(a.real_coeffs[1] == doctest::Approx(oracle::ls_slope(10.0, 1000)).epsilon(1e-12));
    CHECK(a.eval_real(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(a.fit_residual > 0.0);
    CHECK(a.fit_residual < 0.2);
}

TEST_CASE("fit quality: max absolute error on [-5, 5]") {
    PolyApprox a = fit_sigmoid(1, 10.0, 1000);
    const double err = max_abs_error(a, -5.0, 5.0);
    // the linear fit's worst error on this interval is a fixed number;
    // computed independently it is 0.2430220396
    CHECK(err == doctest::Approx(0.2430220396).epsilon(1e-6));
    CHECK(err <= 0.25);
    // higher degree fits strictly better
    PolyApprox c = fit_sigmoid(3, 10.0, 1000);
    CHECK(max_abs_error(c, -5.0, 5.0) < err);
}

TEST_CASE("fit input validation") {
    CHECK_THROWS_AS(fit_sigmoid(0, 10.0, 1000), ConfigError);
    CHECK_THROWS_AS(fit_sigmoid(1, 0.0, 1000), ConfigError);
    CHECK_THROWS_AS(fit_sigmoid(1, 10.0, 19), ConfigError); // < 10(r+1)
    CHECK_NOTHROW(fit_sigmoid(1, 10.0, 20));
}

TEST_CASE("coefficient quantization") {
    const FieldPrime p(67108859);
    PolyApprox a = fit_sigmoid(1, 10.0, 1000);
    quantize_coeffs(a, 6, p);
    REQUIRE(a.quantized());
    CHECK(a.field_coeffs[0] == 32); // round(0.5 * 64)
    CHECK(a.field_coeffs[1] == std::uint32_t(round_half_up(a.real_coeffs[1] * 64.0)));
    CHECK(a.l_c == 6);
}

TEST_CASE("field evaluation matches the direct power-sum oracle") {
    const FieldPrime p(67108859);
    PolyApprox a = fit_sigmoid(1, 10.0, 1000);
    quantize_coeffs(a, 6, p);
    const int zs = 8; // z at scale 8, e.g. Xw with l_x = 4
    FieldMatrix z(5, 1, p, zs);
    const std::int64_t zvals[5] = {0, 300, -300, 1280, -1}; // scaled by 2^8
    for (std::size_t i = 0; i < 5; ++i) z[i] = phi(zvals[i], p);
    FieldMatrix g = eval_poly_field(a, z);
    CHECK(g.scale() == 6 + zs);
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(g[i] == oracle::poly_field(a.field_coeffs, z[i], zs, p.p));
}

TEST_CASE("dequantized field evaluation tracks the real polynomial") {
    const FieldPrime p(67108859);
    PolyApprox a = fit_sigmoid(1, 10.0, 1000);
    quantize_coeffs(a, 6, p);
    const int zs = 8;
    // coefficient rounding loses at most 2^-l_c per coefficient; with |z| <= 5
    // the evaluation stays within (1 + 5) * 2^-l_c of the real polynomial
    const double tol = 6.0 * std::ldexp(1.0, -6);
    for (double zr : {0.0, 0.5, -0.5, 3.1, -4.9, 5.0}) {
        FieldMatrix z(1, 1, p, zs);
        z[0] = phi(round_half_up(zr * 256.0), p);
        FieldMatrix g = eval_poly_field(a, z);
        const double approx_val = double(phi_inv(g[0], p)) / std::ldexp(1.0, g.scale());
        CHECK(std::fabs(approx_val - a.eval_real(zr)) <= tol);
        if (zr == 0.0) CHECK(std::fabs(approx_val - 0.5) <= std::ldexp(1.0, -6));
    }
}

TEST_CASE("eval_poly_field validates its inputs") {
    const FieldPrime p(67108859);
    PolyApprox a = fit_sigmoid(1, 10.0, 1000);
    FieldMatrix z(1, 1, p, 4);
    CHECK_THROWS_AS(eval_poly_field(a, z), Error); // not quantized
    quantize_coeffs(a, 6, p);
    FieldMatrix wrong(1, 1, FieldPrime(101), 4);
    CHECK_THROWS_AS(eval_poly_field(a, wrong), Error);
}
