#include "copml/shamir.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace copml {

std::vector<std::uint32_t> default_points(std::size_t n) {
    std::vector<std::uint32_t> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = std::uint32_t(i + 1);
    return pts;
}

FieldMatrix random_matrix(std::size_t rows, std::size_t cols, const FieldPrime& p,
                          std::mt19937_64& rng, int scale) {
    FieldMatrix m(rows, cols, p, scale);
    std::uniform_int_distribution<std::uint32_t> dist(0, p.p - 1);
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = dist(rng);
    return m;
}

std::vector<ShareMatrix> share_with_coeffs(const FieldMatrix& secret,
                                           const std::vector<FieldMatrix>& coeffs,
                                           const std::vector<std::uint32_t>& points) {
    const std::uint32_t p = secret.prime().p;
    for (const auto& c : coeffs)
        if (!c.same_shape(secret)) throw DimensionError("share: coefficient shape mismatch");
    std::set<std::uint32_t> seen;
    for (auto pt : points) {
        if (pt == 0 || pt >= p) throw Error("share: evaluation point must be in [1, p)");
        if (!seen.insert(pt).second) throw Error("share: duplicate evaluation point");
    }
    std::vector<ShareMatrix> out;
    out.reserve(points.size());
    for (auto pt : points) {
        ShareMatrix s;
        s.owner_point = pt;
        s.degree = std::uint32_t(coeffs.size());
        s.values = secret;
        // Horner over the coefficient matrices, highest degree first.
        FieldMatrix acc(secret.rows(), secret.cols(), secret.prime(), secret.scale());
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
            for (std::size_t i = 0; i < acc.size(); ++i)
                acc[i] = add_mod(mul_mod(acc[i], pt, p), (*it)[i], p);
        }
        for (std::size_t i = 0; i < acc.size(); ++i)
            s.values[i] = add_mod(secret[i], mul_mod(acc[i], pt, p), p);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<ShareMatrix> share(const FieldMatrix& secret, std::uint32_t threshold,
                               const std::vector<std::uint32_t>& points, std::mt19937_64& rng) {
    if (points.size() <= threshold)
        throw ConfigError("share: need N > T, got N=" + std::to_string(points.size()) +
                          " T=" + std::to_string(threshold));
    std::vector<FieldMatrix> coeffs;
    coeffs.reserve(threshold);
    for (std::uint32_t t = 0; t < threshold; ++t)
        coeffs.push_back(random_matrix(secret.rows(), secret.cols(), secret.prime(), rng,
                                       secret.scale()));
    return share_with_coeffs(secret, coeffs, points);
}

std::vector<std::uint32_t> interpolation_coeffs(const std::vector<std::uint32_t>& points,
                                                std::uint32_t target, const FieldPrime& fp) {
    const std::uint32_t p = fp.p;
    std::vector<std::uint32_t> w(points.size());
    for (std::size_t j = 0; j < points.size(); ++j) {
        std::uint32_t num = 1, den = 1;
        for (std::size_t l = 0; l < points.size(); ++l) {
            if (l == j) continue;
            num = mul_mod(num, sub_mod(target % p, points[l], p), p);
            den = mul_mod(den, sub_mod(points[j], points[l], p), p);
        }
        w[j] = mul_mod(num, inv_mod(den, p), p);
    }
    return w;
}

FieldMatrix reconstruct(const std::vector<ShareMatrix>& shares) {
    if (shares.empty()) throw InsufficientSharesError("reconstruct: no shares");
    const std::uint32_t degree = shares[0].degree;
    const std::size_t need = degree + 1;
    if (shares.size() < need)
        throw InsufficientSharesError("reconstruct: have " + std::to_string(shares.size()) +
                                      " shares, need " + std::to_string(need));
    std::set<std::uint32_t> pts;
    std::vector<std::uint32_t> points;
    for (std::size_t i = 0; i < need; ++i) {
        const auto& s = shares[i];
        if (s.degree != degree) throw Error("reconstruct: mixed degrees");
        if (!s.values.same_shape(shares[0].values)) throw DimensionError("reconstruct: shapes");
        if (!pts.insert(s.owner_point).second)
            throw Error("reconstruct: duplicate evaluation point");
        points.push_back(s.owner_point);
    }
    const FieldPrime fp = shares[0].prime();
    auto w = interpolation_coeffs(points, 0, fp);
    FieldMatrix out(shares[0].values.rows(), shares[0].values.cols(), fp, shares[0].scale());
    for (std::size_t j = 0; j < need; ++j)
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = add_mod(out[i], mul_mod(shares[j].values[i], w[j], fp.p), fp.p);
    return out;
}

namespace {

void check_pair(const ShareMatrix& a, const ShareMatrix& b, const char* op) {
    if (a.owner_point != b.owner_point) throw Error(std::string(op) + ": different points");
    if (a.degree != b.degree) throw Error(std::string(op) + ": different degrees");
}

} // namespace

ShareMatrix add_local(const ShareMatrix& a, const ShareMatrix& b) {
    check_pair(a, b, "add_local");
    return ShareMatrix{a.owner_point, a.degree, add(a.values, b.values)};
}

ShareMatrix sub_local(const ShareMatrix& a, const ShareMatrix& b) {
    check_pair(a, b, "sub_local");
    return ShareMatrix{a.owner_point, a.degree, sub(a.values, b.values)};
}

ShareMatrix mul_const_local(const ShareMatrix& a, std::uint32_t c, int c_scale) {
    return ShareMatrix{a.owner_point, a.degree, mul_scalar(a.values, c, c_scale)};
}

ShareMatrix add_public_local(const ShareMatrix& a, const FieldMatrix& c) {
    return ShareMatrix{a.owner_point, a.degree, add(a.values, c)};
}

} // namespace copml
