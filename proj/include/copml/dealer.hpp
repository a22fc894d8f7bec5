#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "copml/shamir.hpp"

namespace copml {

/// Offline randomness pair for one secure multiplication: the same uniform
/// rho shared at degree T and at degree 2T.
struct RhoPair {
    std::vector<ShareMatrix> deg_t;  // per participant
    std::vector<ShareMatrix> deg_2t; // per participant
};

/// Shared randomness consumed by one secure truncation: per-element r' in
/// [0, 2^k1) and the wider mask r = r''*2^k1 + r' with r'' in [0, 2^(k2-k1)).
struct TruncRandomness {
    std::vector<ShareMatrix> r_low;  // shares of r'
    std::vector<ShareMatrix> r_full; // shares of r
};

/// Trusted crypto-service provider generating all offline randomness: Lagrange
/// masking matrices, rho pairs for BH08 multiplication, and truncation masks.
/// Fully deterministic given the seed.
class Dealer {
public:
    Dealer(FieldPrime p, std::uint32_t threshold, std::uint64_t seed);

    const FieldPrime& prime() const { return p_; }
    std::uint32_t threshold() const { return t_; }

    /// `count` uniform matrices, each Shamir-shared at degree T over `points`.
    /// Returns [count][participant].
    std::vector<std::vector<ShareMatrix>> noise_shares(std::size_t rows, std::size_t cols,
                                                       std::size_t count, int scale,
                                                       const std::vector<std::uint32_t>& points);

    RhoPair rho_pair(std::size_t rows, std::size_t cols, int scale,
                     const std::vector<std::uint32_t>& points);

    TruncRandomness truncation_randomness(std::size_t rows, std::size_t cols, int k1, int k2,
                                          int scale, const std::vector<std::uint32_t>& points);

    /// A uniform secret shared at degree T (used for random model init).
    std::vector<ShareMatrix> shared_uniform(std::size_t rows, std::size_t cols,
                                            std::uint32_t bound, int scale,
                                            const std::vector<std::uint32_t>& points);

    /// Test hook: when enabled, raw r' values handed out by
    /// truncation_randomness are appended here in generation order.
    void record_truncation(bool on) { record_ = on; }
    const std::vector<std::uint32_t>& recorded_r_low() const { return r_low_log_; }

private:
    FieldPrime p_;
    std::uint32_t t_;
    // Independent streams per purpose, so e.g. consuming rho pairs (BH08
    // only) does not shift the truncation randomness a BGW run would see.
    // Sharing polynomials draw from their own stream so the secret values
    // themselves are invariant to how many parties they are shared among.
    std::mt19937_64 rng_noise_, rng_rho_, rng_trunc_, rng_init_, rng_share_;
    bool record_ = false;
    std::vector<std::uint32_t> r_low_log_;
};

} // namespace copml
