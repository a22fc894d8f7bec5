#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "copml/shamir.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace copml;

namespace {

FieldMatrix scalar(std::uint32_t v, const FieldPrime& p, int scale = 0) {
    FieldMatrix m(1, 1, p, scale);
    m[0] = v;
    return m;
}

} // namespace

TEST_CASE("sharing with a fixed coefficient evaluates h(z) = secret + R z") {
    const FieldPrime p(11);
    // h(z) = 5 + 2z: shares at lambda = 1, 2, 3 are 7, 9, 0.
    auto shares = share_with_coeffs(scalar(5, p), {scalar(2, p)}, {1, 2, 3});
    REQUIRE(shares.size() == 3);
    CHECK(shares[0].values[0] == 7);
    CHECK(shares[1].values[0] == 9);
    CHECK(shares[2].values[0] == 0);
    CHECK(shares[0].degree == 1);
    CHECK(shares[0].owner_point == 1);
}

TEST_CASE("zero secret with zero coefficients shares as all zeros") {
    const FieldPrime p(11);
    auto shares = share_with_coeffs(scalar(0, p), {scalar(0, p)}, {1, 2, 3});
    for (const auto& s : shares) CHECK(s.values[0] == 0);
}

TEST_CASE("any T+1 shares reconstruct the secret") {
    const FieldPrime p(101);
    std::mt19937_64 rng(3);
    for (std::uint32_t t : {1u, 2u, 3u}) {
        const std::size_t n = 2 * t + 2;
        FieldMatrix secret = random_matrix(2, 3, p, rng, 4);
        auto shares = share(secret, t, default_points(n), rng);
        // every (T+1)-subset
        std::vector<std::size_t> idx(t + 1);
        for (std::size_t start = 0; start + t + 1 <= n; ++start) {
            std::vector<ShareMatrix> subset;
            for (std::size_t i = 0; i <= t; ++i) subset.push_back(shares[start + i]);
            CHECK(reconstruct(subset) == secret);
        }
        // a scattered subset too
        std::vector<ShareMatrix> subset;
        for (std::size_t i = 0; i <= t; ++i) subset.push_back(shares[i * 2 % n]);
        CHECK(reconstruct(subset) == secret);
    }
}

TEST_CASE("reconstruct interpolates at zero") {
    const FieldPrime p(11);
    ShareMatrix a{1, 1, scalar(7, p)};
    ShareMatrix b{3, 1, scalar(0, p)};
    CHECK(reconstruct({a, b})[0] == 5); // h(z) = 5 + 2z through (1,7),(3,0)

    ShareMatrix single{4, 0, scalar(9, p)};
    CHECK(reconstruct({single})[0] == 9);
}

TEST_CASE("reconstruct validates its inputs") {
    const FieldPrime p(11);
    ShareMatrix a{1, 1, scalar(7, p)};
    ShareMatrix dup{1, 1, scalar(3, p)};
    ShareMatrix deg2{2, 2, scalar(3, p)};
    CHECK_THROWS_AS(reconstruct({a}), InsufficientSharesError);
    CHECK_THROWS_AS(reconstruct({a, dup}), Error);
    CHECK_THROWS_AS(reconstruct({a, deg2}), Error);
    CHECK_THROWS_AS(reconstruct({}), InsufficientSharesError);
}

TEST_CASE("share rejects bad parameters") {
    const FieldPrime p(11);
    std::mt19937_64 rng(1);
    FieldMatrix s = scalar(5, p);
    CHECK_THROWS_AS(share(s, 3, {1, 2, 3}, rng), Error);       // N <= T
    CHECK_THROWS_AS(share(s, 1, {1, 0, 3}, rng), Error);       // zero point
    CHECK_THROWS_AS(share(s, 1, {1, 2, 2}, rng), Error);       // duplicate point
}

TEST_CASE("local share arithmetic reconstructs to the expected secrets") {
    const FieldPrime p(11);
    std::mt19937_64 rng(5);
    auto pts = default_points(3);

    SUBCASE("a plus -a gives zero") {
        FieldMatrix a = random_matrix(2, 2, p, rng, 0);
        FieldMatrix neg(2, 2, p, 0);
        for (std::size_t i = 0; i < 4; ++i) neg[i] = (p.p - a[i]) % p.p;
        auto sa = share(a, 1, pts, rng), sn = share(neg, 1, pts, rng);
        auto sum = add_local(sa[0], sn[0]);
        auto sum1 = add_local(sa[1], sn[1]);
        CHECK(reconstruct({sum, sum1}) == FieldMatrix(2, 2, p, 0));
    }
    SUBCASE("3 + 4 = 7 mod 11") {
        auto sa = share(scalar(3, p), 1, pts, rng), sb = share(scalar(4, p), 1, pts, rng);
        CHECK(reconstruct({add_local(sa[0], sb[0]), add_local(sa[1], sb[1])})[0] == 7);
    }
    SUBCASE("adding a zero-sharing is the identity on the secret") {
        auto sa = share(scalar(9, p), 1, pts, rng);
        auto sz = share(scalar(0, p), 1, pts, rng);
        CHECK(reconstruct({add_local(sa[0], sz[0]), add_local(sa[1], sz[1])})[0] == 9);
    }
    SUBCASE("constant multiplication") {
        auto sa = share(scalar(5, p), 1, pts, rng);
        CHECK(reconstruct({mul_const_local(sa[0], 1), mul_const_local(sa[1], 1)})[0] == 5);
        CHECK(reconstruct({mul_const_local(sa[0], 0), mul_const_local(sa[1], 0)})[0] == 0);
        CHECK(reconstruct({mul_const_local(sa[0], 3), mul_const_local(sa[1], 3)})[0] == 4);
    }
    SUBCASE("adding a public constant shifts the secret") {
        auto sa = share(scalar(5, p), 1, pts, rng);
        FieldMatrix c = scalar(9, p);
        CHECK(reconstruct({add_public_local(sa[0], c), add_public_local(sa[1], c)})[0] == 3);
    }
    SUBCASE("mismatched degrees or scales throw") {
        auto sa = share(scalar(5, p), 1, pts, rng);
        auto sb = share(scalar(4, p), 2, pts, rng);
        CHECK_THROWS_AS(add_local(sa[0], sb[0]), Error);
        auto sc = share(scalar(4, p, /*scale=*/0), 1, pts, rng);
        sc[0].values.set_scale(3);
        CHECK_THROWS_AS(add_local(sa[0], sc[0]), ScaleMismatchError);
    }
}

TEST_CASE("linearity over 1000 random trials at p = 101") {
    const FieldPrime p(101);
    std::mt19937_64 rng(9);
    auto pts = default_points(4);
    std::uniform_int_distribution<std::uint32_t> dist(0, 100);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::uint32_t a = dist(rng), b = dist(rng);
        auto sa = share(scalar(a, p), 1, pts, rng);
        auto sb = share(scalar(b, p), 1, pts, rng);
        std::vector<ShareMatrix> sums{add_local(sa[1], sb[1]), add_local(sa[3], sb[3])};
        CHECK(reconstruct(sums)[0] == (a + b) % 101);
    }
}

TEST_CASE("interpolation coefficients recombine evaluations at the target") {
    const FieldPrime p(101);
    // Plant h(z) = 17 + 3z + 9z^2 and recombine three evaluations at z = 0.
    const std::vector<std::uint32_t> coeffs{17, 3, 9};
    std::vector<std::uint32_t> points{2, 5, 11};
    auto w = interpolation_coeffs(points, 0, p);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < points.size(); ++i)
        acc = oracle::addm(acc, oracle::mulm(w[i], oracle::eval_coeffs(coeffs, points[i], p.p), p.p),
                           p.p);
    CHECK(acc == 17);
}
