#pragma once

#include <cstdint>
#include <vector>

#include "copml/shamir.hpp"

namespace copml {

/// Interpolation points for Lagrange coding: beta_k anchor the K data blocks
/// plus T masks, alpha_i are the per-party evaluation points. The two sets
/// are disjoint by construction (betas 1..K+T, alphas K+T+1..K+T+N).
struct CodingPoints {
    std::vector<std::uint32_t> betas;
    std::vector<std::uint32_t> alphas;
    FieldPrime p;
};

CodingPoints make_coding_points(std::size_t k, std::size_t t, std::size_t n,
                                const FieldPrime& p);

/// Minimum number of evaluation results needed to interpolate the composed
/// polynomial: (2r+1)(K+T-1)+1.
std::uint64_t recovery_threshold(std::uint64_t r, std::uint64_t k, std::uint64_t t);

/// The k-th Lagrange basis polynomial over the betas, evaluated at z.
std::uint32_t lagrange_basis(const CodingPoints& pts, std::size_t k, std::uint32_t z);

/// Evaluate the degree-(K+T-1) interpolation polynomial through
/// (beta_k, values[k]) at z. Plaintext counterpart of the share encoders.
FieldMatrix lagrange_combine(const std::vector<FieldMatrix>& values_at_betas,
                             const CodingPoints& pts, std::uint32_t z);

/// One party's encoding step: from its shares of the K dataset partitions and
/// T masking matrices, produce its share of the encoded shard u(alpha_j) for
/// every j. Pure linear combination of shares; no communication.
std::vector<ShareMatrix> encode_dataset_shares(const std::vector<ShareMatrix>& partition_shares,
                                               const std::vector<ShareMatrix>& noise_shares,
                                               const CodingPoints& pts);

/// Model encoding: the same model share sits at all K data points,
/// T random vectors at the mask points.
std::vector<ShareMatrix> encode_model_shares(const ShareMatrix& w_share,
                                             const std::vector<ShareMatrix>& noise_shares,
                                             const CodingPoints& pts, std::size_t k);

/// Decode: from one party's shares of the local computations f(X~_j, w~_j)
/// evaluated at the alphas in `alpha_points` (at least the recovery
/// threshold), interpolate h(z) and evaluate at each beta_k, k in [K].
/// Public-coefficient linear combination of shares.
std::vector<ShareMatrix> decode_gradient_shares(const std::vector<ShareMatrix>& comp_shares,
                                                const std::vector<std::uint32_t>& alpha_points,
                                                const CodingPoints& pts, std::uint64_t r,
                                                std::size_t k, std::size_t t);

/// Plaintext decode used on clear values (and by oracles).
std::vector<FieldMatrix> decode_gradient_plain(const std::vector<FieldMatrix>& computations,
                                               const std::vector<std::uint32_t>& alpha_points,
                                               const CodingPoints& pts, std::uint64_t r,
                                               std::size_t k, std::size_t t);

/// Sum of the K decoded sub-gradient shares.
ShareMatrix aggregate_subgradients(const std::vector<ShareMatrix>& per_partition);

} // namespace copml
