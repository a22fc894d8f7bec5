#include "copml/mpc.hpp"

#include <string>

#include "copml/wire.hpp"

namespace copml {

namespace {

FieldMatrix local_product(const ShareMatrix& a, const ShareMatrix& b, MulKind kind,
                          std::uint64_t* cost) {
    switch (kind) {
    case MulKind::ElementWise:
        if (cost) *cost += a.values.size();
        return mul_elementwise(a.values, b.values);
    case MulKind::MatProduct:
        if (cost) *cost += matmul_cost(a.values.rows(), a.values.cols(), b.values.cols());
        return matmul(a.values, b.values);
    case MulKind::TransposeATimesB:
        if (cost) *cost += matmul_cost(a.values.cols(), a.values.rows(), b.values.cols());
        return matmul(a.values.transposed(), b.values);
    }
    throw Error("unreachable");
}

std::vector<std::uint32_t> participant_points(const std::vector<ShareMatrix>& shares) {
    std::vector<std::uint32_t> pts;
    pts.reserve(shares.size());
    for (const auto& s : shares) pts.push_back(s.owner_point);
    return pts;
}

} // namespace

std::vector<ShareMatrix> mul_secure(const std::vector<ShareMatrix>& a,
                                    const std::vector<ShareMatrix>& b, MulKind kind,
                                    MpcScheme scheme, Dealer& dealer, Transport& net,
                                    const std::vector<int>& participants,
                                    std::vector<std::mt19937_64>& party_rngs,
                                    const std::string& tag, std::vector<PartyCost>* costs,
                                    bool gradient_cost) {
    const std::size_t n = participants.size();
    if (a.size() != n || b.size() != n)
        throw DimensionError("mul_secure: share count != participant count");
    const std::uint32_t t = dealer.threshold();
    if (n < 2 * t + 1)
        throw ConfigError("mul_secure: need at least 2T+1 = " + std::to_string(2 * t + 1) +
                          " participants, have " + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i)
        if (a[i].degree != t || b[i].degree != t)
            throw Error("mul_secure: inputs must be degree-T sharings");

    const auto points = participant_points(a);
    const FieldPrime fp = a[0].prime();

    // Local degree-2T share products.
    std::vector<FieldMatrix> products;
    products.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t cost = 0;
        products.push_back(local_product(a[i], b[i], kind, &cost));
        if (costs) (*costs)[std::size_t(participants[i])].add(cost, gradient_cost);
    }
    const int prod_scale = products[0].scale();
    const std::size_t reduce_count = 2 * t + 1;

    std::vector<ShareMatrix> result(n);

    if (scheme == MpcScheme::BGW) {
        // Parties in the reduction set re-share their degree-2T product at
        // degree T; everyone recombines with interpolation-at-zero weights.
        net.advance_round();
        std::vector<std::vector<ShareMatrix>> reshared(reduce_count);
        for (std::size_t k = 0; k < reduce_count; ++k) {
            const int pid = participants[k];
            reshared[k] = share(products[k], t, points, party_rngs[std::size_t(pid)]);
            if (costs)
                (*costs)[std::size_t(pid)].add((t + 1) * products[k].size() * n, false);
            for (std::size_t j = 0; j < n; ++j) {
                if (participants[j] == pid) continue;
                net.send(pid, participants[j], serialize(reshared[k][j]), tag + "/reduce:" +
                                                                              std::to_string(k));
            }
        }
        net.advance_round();
        std::vector<std::uint32_t> reduce_points(points.begin(),
                                                 points.begin() + long(reduce_count));
        auto w = interpolation_coeffs(reduce_points, 0, fp);
        for (std::size_t j = 0; j < n; ++j) {
            FieldMatrix acc(products[j].rows(), products[j].cols(), fp, prod_scale);
            for (std::size_t k = 0; k < reduce_count; ++k) {
                ShareMatrix piece =
                    participants[k] == participants[j]
                        ? reshared[k][j]
                        : deserialize_share(net.recv(participants[j], participants[k],
                                                     tag + "/reduce:" + std::to_string(k)));
                for (std::size_t i = 0; i < acc.size(); ++i)
                    acc[i] = add_mod(acc[i], mul_mod(piece.values[i], w[k], fp.p), fp.p);
            }
            if (costs)
                (*costs)[std::size_t(participants[j])].add(reduce_count * acc.size(), false);
            result[j] = ShareMatrix{points[j], t, std::move(acc)};
        }
        return result;
    }

    // BH08: open a*b - rho from the degree-2T shares, then add rho back at
    // degree T.
    RhoPair rho = dealer.rho_pair(products[0].rows(), products[0].cols(), prod_scale, points);
    net.advance_round();
    std::vector<ShareMatrix> masked(n);
    for (std::size_t i = 0; i < n; ++i) {
        masked[i] = ShareMatrix{points[i], 2 * t, sub(products[i], rho.deg_2t[i].values)};
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            net.send(participants[i], participants[j], serialize(masked[i]), tag + "/open");
        }
    }
    net.advance_round();
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<ShareMatrix> opening;
        opening.reserve(reduce_count);
        for (std::size_t k = 0; k < reduce_count; ++k) {
            opening.push_back(k == j ? masked[k]
                                     : deserialize_share(net.recv(participants[j],
                                                                  participants[k],
                                                                  tag + "/open")));
        }
        FieldMatrix open_value = reconstruct(opening);
        if (costs)
            (*costs)[std::size_t(participants[j])].add(reduce_count * open_value.size(), false);
        result[j] = add_public_local(rho.deg_t[j], open_value);
    }
    return result;
}

std::vector<ShareMatrix> truncate_secure(const std::vector<ShareMatrix>& a, int k1, int k2,
                                         Dealer& dealer, Transport& net,
                                         const std::vector<int>& participants,
                                         const std::string& tag) {
    const std::size_t n = participants.size();
    if (a.size() != n) throw DimensionError("truncate_secure: share/participant mismatch");
    if (k1 <= 0 || k1 >= k2) throw ConfigError("truncate_secure: need 0 < k1 < k2");
    const FieldPrime fp = a[0].prime();
    const std::uint32_t t = dealer.threshold();
    if ((std::uint64_t(1) << (k2 + 1)) >= fp.p)
        throw ConfigError("truncate_secure: need 2^(k2+1) < p");

    // Simulation-level range validation: the protocol contract requires the
    // shared value to fit in k2 bits as a signed quantity.
    {
        std::vector<ShareMatrix> probe(a.begin(), a.begin() + t + 1);
        FieldMatrix plain = reconstruct(probe);
        const std::int64_t bound = std::int64_t(1) << (k2 - 1);
        for (std::size_t i = 0; i < plain.size(); ++i) {
            std::int64_t v = phi_inv(plain[i], fp);
            if (v >= bound || v <= -bound)
                throw OverflowError("truncate_secure: |" + std::to_string(v) +
                                    "| >= 2^(k2-1) with k2=" + std::to_string(k2));
        }
    }

    const auto points = participant_points(a);
    const int sa = a[0].scale();
    const std::size_t rows = a[0].values.rows(), cols = a[0].values.cols();
    TruncRandomness tr = dealer.truncation_randomness(rows, cols, k1, k2, sa, points);

    // Open c = a + 2^(k2-1) + r; the offset makes the opened value a
    // nonnegative integer below 2^(k2+1), so no field wrap occurs.
    FieldMatrix offset(rows, cols, fp, sa);
    const std::uint32_t half_range = std::uint32_t(1) << (k2 - 1);
    for (std::size_t i = 0; i < offset.size(); ++i) offset[i] = half_range;

    net.advance_round();
    std::vector<ShareMatrix> c_shares(n);
    for (std::size_t i = 0; i < n; ++i) {
        c_shares[i] = add_local(add_public_local(a[i], offset), tr.r_full[i]);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            net.send(participants[i], participants[j], serialize(c_shares[i]), tag + "/open");
        }
    }
    net.advance_round();

    const std::uint32_t mask = (std::uint32_t(1) << k1) - 1;
    const std::uint32_t inv2k1 = inv_mod(pow_mod(2, std::uint64_t(k1), fp.p), fp.p);
    std::vector<ShareMatrix> result(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<ShareMatrix> opening;
        for (std::size_t k = 0; k < t + 1; ++k) {
            opening.push_back(k == j ? c_shares[k]
                                     : deserialize_share(net.recv(participants[j],
                                                                  participants[k],
                                                                  tag + "/open")));
        }
        FieldMatrix c = reconstruct(opening);
        // c mod 2^k1, negated in the field so it can be added to the shares.
        FieldMatrix neg_c_low(rows, cols, fp, sa);
        for (std::size_t i = 0; i < c.size(); ++i)
            neg_c_low[i] = (fp.p - (c[i] & mask)) % fp.p;
        ShareMatrix z = add_public_local(add_local(a[j], tr.r_low[j]), neg_c_low);
        result[j] = mul_const_local(z, inv2k1, -k1);
    }
    return result;
}

} // namespace copml
