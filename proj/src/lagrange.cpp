#include "copml/lagrange.hpp"

#include <string>

namespace copml {

CodingPoints make_coding_points(std::size_t k, std::size_t t, std::size_t n,
                                const FieldPrime& p) {
    if (k + t + n >= p.p)
        throw ConfigError("coding points: need p > K+T+N");
    CodingPoints pts;
    pts.p = p;
    pts.betas.reserve(k + t);
    for (std::size_t i = 1; i <= k + t; ++i) pts.betas.push_back(std::uint32_t(i));
    pts.alphas.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) pts.alphas.push_back(std::uint32_t(k + t + i));
    return pts;
}

std::uint64_t recovery_threshold(std::uint64_t r, std::uint64_t k, std::uint64_t t) {
    return (2 * r + 1) * (k + t - 1) + 1;
}

std::uint32_t lagrange_basis(const CodingPoints& pts, std::size_t k, std::uint32_t z) {
    const std::uint32_t p = pts.p.p;
    std::uint32_t num = 1, den = 1;
    for (std::size_t l = 0; l < pts.betas.size(); ++l) {
        if (l == k) continue;
        num = mul_mod(num, sub_mod(z % p, pts.betas[l], p), p);
        den = mul_mod(den, sub_mod(pts.betas[k], pts.betas[l], p), p);
    }
    return mul_mod(num, inv_mod(den, p), p);
}

FieldMatrix lagrange_combine(const std::vector<FieldMatrix>& values_at_betas,
                             const CodingPoints& pts, std::uint32_t z) {
    if (values_at_betas.size() != pts.betas.size())
        throw DimensionError("lagrange_combine: need one value per beta");
    const std::uint32_t p = pts.p.p;
    FieldMatrix out(values_at_betas[0].rows(), values_at_betas[0].cols(), pts.p,
                    values_at_betas[0].scale());
    for (std::size_t k = 0; k < values_at_betas.size(); ++k) {
        if (!values_at_betas[k].same_shape(out))
            throw DimensionError("lagrange_combine: shape mismatch");
        const std::uint32_t b = lagrange_basis(pts, k, z);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = add_mod(out[i], mul_mod(values_at_betas[k][i], b, p), p);
    }
    return out;
}

namespace {

std::vector<ShareMatrix> encode_at_alphas(const std::vector<const ShareMatrix*>& at_betas,
                                          const CodingPoints& pts) {
    std::vector<ShareMatrix> out;
    out.reserve(pts.alphas.size());
    const std::uint32_t p = pts.p.p;
    for (std::uint32_t alpha : pts.alphas) {
        ShareMatrix enc;
        enc.owner_point = at_betas[0]->owner_point;
        enc.degree = at_betas[0]->degree;
        enc.values = FieldMatrix(at_betas[0]->values.rows(), at_betas[0]->values.cols(), pts.p,
                                 at_betas[0]->scale());
        for (std::size_t k = 0; k < at_betas.size(); ++k) {
            const std::uint32_t b = lagrange_basis(pts, k, alpha);
            const auto& v = at_betas[k]->values;
            for (std::size_t i = 0; i < enc.values.size(); ++i)
                enc.values[i] = add_mod(enc.values[i], mul_mod(v[i], b, p), p);
        }
        out.push_back(std::move(enc));
    }
    return out;
}

} // namespace

std::vector<ShareMatrix> encode_dataset_shares(const std::vector<ShareMatrix>& partition_shares,
                                               const std::vector<ShareMatrix>& noise_shares,
                                               const CodingPoints& pts) {
    if (partition_shares.size() + noise_shares.size() != pts.betas.size())
        throw DimensionError("encode_dataset_shares: K+T inputs required");
    std::vector<const ShareMatrix*> at_betas;
    for (const auto& s : partition_shares) {
        if (!s.values.same_shape(partition_shares[0].values))
            throw DimensionError("encode_dataset_shares: partition shape mismatch");
        at_betas.push_back(&s);
    }
    for (const auto& s : noise_shares) {
        if (!s.values.same_shape(partition_shares[0].values))
            throw DimensionError("encode_dataset_shares: noise shape mismatch");
        at_betas.push_back(&s);
    }
    return encode_at_alphas(at_betas, pts);
}

std::vector<ShareMatrix> encode_model_shares(const ShareMatrix& w_share,
                                             const std::vector<ShareMatrix>& noise_shares,
                                             const CodingPoints& pts, std::size_t k) {
    if (k + noise_shares.size() != pts.betas.size())
        throw DimensionError("encode_model_shares: K+T inputs required");
    std::vector<const ShareMatrix*> at_betas;
    for (std::size_t i = 0; i < k; ++i) at_betas.push_back(&w_share);
    for (const auto& s : noise_shares) {
        if (!s.values.same_shape(w_share.values))
            throw DimensionError("encode_model_shares: noise shape mismatch");
        at_betas.push_back(&s);
    }
    return encode_at_alphas(at_betas, pts);
}

namespace {

void check_decode_inputs(std::size_t have, const std::vector<std::uint32_t>& alpha_points,
                         std::uint64_t r, std::size_t k, std::size_t t) {
    const std::uint64_t need = recovery_threshold(r, k, t);
    if (have < need || alpha_points.size() != have)
        throw InsufficientSharesError("decode: have " + std::to_string(have) +
                                      " evaluations, recovery threshold is " +
                                      std::to_string(need));
}

} // namespace

std::vector<ShareMatrix> decode_gradient_shares(const std::vector<ShareMatrix>& comp_shares,
                                                const std::vector<std::uint32_t>& alpha_points,
                                                const CodingPoints& pts, std::uint64_t r,
                                                std::size_t k, std::size_t t) {
    check_decode_inputs(comp_shares.size(), alpha_points, r, k, t);
    const std::uint32_t p = pts.p.p;
    std::vector<ShareMatrix> out;
    out.reserve(k);
    for (std::size_t kk = 0; kk < k; ++kk) {
        auto w = interpolation_coeffs(alpha_points, pts.betas[kk], pts.p);
        ShareMatrix dec;
        dec.owner_point = comp_shares[0].owner_point;
        dec.degree = comp_shares[0].degree;
        dec.values = FieldMatrix(comp_shares[0].values.rows(), comp_shares[0].values.cols(),
                                 pts.p, comp_shares[0].scale());
        for (std::size_t j = 0; j < comp_shares.size(); ++j)
            for (std::size_t i = 0; i < dec.values.size(); ++i)
                dec.values[i] =
                    add_mod(dec.values[i], mul_mod(comp_shares[j].values[i], w[j], p), p);
        out.push_back(std::move(dec));
    }
    return out;
}

std::vector<FieldMatrix> decode_gradient_plain(const std::vector<FieldMatrix>& computations,
                                               const std::vector<std::uint32_t>& alpha_points,
                                               const CodingPoints& pts, std::uint64_t r,
                                               std::size_t k, std::size_t t) {
    check_decode_inputs(computations.size(), alpha_points, r, k, t);
    const std::uint32_t p = pts.p.p;
    std::vector<FieldMatrix> out;
    out.reserve(k);
    for (std::size_t kk = 0; kk < k; ++kk) {
        auto w = interpolation_coeffs(alpha_points, pts.betas[kk], pts.p);
        FieldMatrix dec(computations[0].rows(), computations[0].cols(), pts.p,
                        computations[0].scale());
        for (std::size_t j = 0; j < computations.size(); ++j)
            for (std::size_t i = 0; i < dec.size(); ++i)
                dec[i] = add_mod(dec[i], mul_mod(computations[j][i], w[j], p), p);
        out.push_back(std::move(dec));
    }
    return out;
}

ShareMatrix aggregate_subgradients(const std::vector<ShareMatrix>& per_partition) {
    if (per_partition.empty())
        throw InsufficientSharesError("aggregate_subgradients: no partitions");
    ShareMatrix acc = per_partition[0];
    for (std::size_t k = 1; k < per_partition.size(); ++k)
        acc = add_local(acc, per_partition[k]);
    return acc;
}

} // namespace copml
