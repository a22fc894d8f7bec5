#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "copml/dealer.hpp"
#include "copml/shamir.hpp"
#include "copml/simulator.hpp"

namespace copml {

enum class MpcScheme { BGW, BH08 };

/// What the local share product computes per party.
enum class MulKind {
    ElementWise,     // a .* b
    MatProduct,      // a * b
    TransposeATimesB // a^T * b
};

/// Per-party operation tallies. gradient_muls counts only multiplications
/// that are part of gradient evaluation (the counter behind the
/// parallelization comparison); field_muls counts everything.
struct PartyCost {
    std::uint64_t field_muls = 0;
    std::uint64_t gradient_muls = 0;

    void add(std::uint64_t n, bool gradient) {
        field_muls += n;
        if (gradient) gradient_muls += n;
    }
};

/// Secure multiplication on degree-T sharings: local products give degree-2T
/// shares, then either BGW re-share-and-recombine degree reduction or BH08
/// open-ab-minus-rho. `participants[k]` maps share slot k to a transport
/// party id; shares a[k], b[k] belong to that party. Requires
/// |participants| >= 2T+1. Returns degree-T shares of the product.
std::vector<ShareMatrix> mul_secure(const std::vector<ShareMatrix>& a,
                                    const std::vector<ShareMatrix>& b, MulKind kind,
                                    MpcScheme scheme, Dealer& dealer, Transport& net,
                                    const std::vector<int>& participants,
                                    std::vector<std::mt19937_64>& party_rngs,
                                    const std::string& tag,
                                    std::vector<PartyCost>* costs = nullptr,
                                    bool gradient_cost = false);

/// Probabilistic secure truncation: given degree-T shares of a with
/// |a| < 2^(k2-1) (as a signed value), returns degree-T shares of
/// z = floor(a / 2^k1) + s, where s is a Bernoulli bit with
/// P(s=1) = (a mod 2^k1) / 2^k1. Output scale = input scale - k1.
/// Element-wise over the shared matrix.
std::vector<ShareMatrix> truncate_secure(const std::vector<ShareMatrix>& a, int k1, int k2,
                                         Dealer& dealer, Transport& net,
                                         const std::vector<int>& participants,
                                         const std::string& tag);

} // namespace copml
