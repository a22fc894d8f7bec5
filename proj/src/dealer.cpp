#include "copml/dealer.hpp"

namespace copml {

Dealer::Dealer(FieldPrime p, std::uint32_t threshold, std::uint64_t seed)
    : p_(p), t_(threshold), rng_noise_(seed ^ 0xa076'1d64'78bd'642full),
      rng_rho_(seed ^ 0xe703'7ed1'a0b4'28dbull), rng_trunc_(seed ^ 0x8ebc'6af0'9c88'c6e3ull),
      rng_init_(seed ^ 0x5897'89e6'b7b0'44d2ull), rng_share_(seed ^ 0x1d8e'4e27'c47d'124full) {}

std::vector<std::vector<ShareMatrix>> Dealer::noise_shares(
    std::size_t rows, std::size_t cols, std::size_t count, int scale,
    const std::vector<std::uint32_t>& points) {
    std::vector<std::vector<ShareMatrix>> out;
    out.reserve(count);
    for (std::size_t c = 0; c < count; ++c) {
        FieldMatrix z = random_matrix(rows, cols, p_, rng_noise_, scale);
        out.push_back(share(z, t_, points, rng_share_));
    }
    return out;
}

RhoPair Dealer::rho_pair(std::size_t rows, std::size_t cols, int scale,
                         const std::vector<std::uint32_t>& points) {
    FieldMatrix rho = random_matrix(rows, cols, p_, rng_rho_, scale);
    RhoPair pair;
    pair.deg_t = share(rho, t_, points, rng_share_);
    pair.deg_2t = share(rho, 2 * t_, points, rng_share_);
    return pair;
}

TruncRandomness Dealer::truncation_randomness(std::size_t rows, std::size_t cols, int k1,
                                              int k2, int scale,
                                              const std::vector<std::uint32_t>& points) {
    if (k1 <= 0 || k1 >= k2) throw ConfigError("truncation: need 0 < k1 < k2");
    FieldMatrix r_low(rows, cols, p_, scale);
    FieldMatrix r_full(rows, cols, p_, scale);
    std::uniform_int_distribution<std::uint32_t> low(0, (1u << k1) - 1);
    std::uniform_int_distribution<std::uint32_t> high(0, (1u << (k2 - k1)) - 1);
    for (std::size_t i = 0; i < r_low.size(); ++i) {
        std::uint32_t rl = low(rng_trunc_);
        std::uint32_t rh = high(rng_trunc_);
        r_low[i] = rl;
        r_full[i] = std::uint32_t((std::uint64_t(rh) << k1) + rl);
        if (record_) r_low_log_.push_back(rl);
    }
    TruncRandomness tr;
    tr.r_low = share(r_low, t_, points, rng_share_);
    tr.r_full = share(r_full, t_, points, rng_share_);
    return tr;
}

std::vector<ShareMatrix> Dealer::shared_uniform(std::size_t rows, std::size_t cols,
                                                std::uint32_t bound, int scale,
                                                const std::vector<std::uint32_t>& points) {
    FieldMatrix v(rows, cols, p_, scale);
    std::uniform_int_distribution<std::uint32_t> dist(0, bound - 1);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = dist(rng_init_);
    return share(v, t_, points, rng_share_);
}

} // namespace copml
